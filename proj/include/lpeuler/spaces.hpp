#ifndef LPEULER_SPACES_HPP_
#define LPEULER_SPACES_HPP_

#include <map>
#include <string>
#include <tuple>

#include "lpeuler/lp.hpp"
#include "lpeuler/weights.hpp"

namespace lpeuler {

/// Descriptor of B^{s,psi}_{p,q} or F^{s,psi}_{p,q} (homogeneous or not).
class SpaceSpec {
 public:
  enum class Family { besov, triebel };

  SpaceSpec(Family family, double s, double p, double q, SlowlyVaryingWeight weight,
            bool homogeneous = false);

  /// Parses `B:s=<f>,p=<f>,q=<f>[,hom]` or `F:...`; `inf` is accepted for p, q.
  static SpaceSpec parse(const std::string& text, SlowlyVaryingWeight weight);

  /// Unweighted (psi = 1) space.
  static SpaceSpec classical(Family family, double s, double p, double q, bool homogeneous = false);

  Family family() const { return family_; }
  double s() const { return s_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double p_conj() const { return p_conj_; }
  double q_conj() const { return q_conj_; }
  bool homogeneous() const { return homogeneous_; }
  const SlowlyVaryingWeight& weight() const { return weight_; }
  bool weighted() const { return weighted_; }

  SpaceSpec with_s(double s) const;
  SpaceSpec with_homogeneous(bool hom) const;
  SpaceSpec with_family(Family family) const;
  SpaceSpec with_pq(double p, double q) const;
  SpaceSpec unweighted() const;

  /// 2^{js} psi(2^j) (psi omitted when unweighted).
  double band_weight(int j) const;

  std::string describe() const;

 private:
  void validate() const;

  Family family_;
  double s_, p_, q_;
  double p_conj_ = 0, q_conj_ = 0;
  SlowlyVaryingWeight weight_;
  bool weighted_ = true;
  bool homogeneous_;
};

/// Weighted l^q combination of a band sequence (q = inf gives the max).
double lq_combine(const std::vector<double>& terms, double q);

/// The norm of `spec` evaluated on given physical blocks (band index -> samples)
/// instead of the blocks of a field.
double block_sequence_norm(const std::map<int, RealGrid>& blocks, const SpaceSpec& spec);

/// ||f|| in the given space; vector fields combine per-component norms in l^2.
double norm(const SpectralField& f, const SpaceSpec& spec, const DyadicPartition& part);

/// The (||.||_{L^p} + homogeneous norm) alternative and the norm itself.
std::pair<double, double> inhomogeneous_equivalence(const SpectralField& f, const SpaceSpec& spec,
                                                    const DyadicPartition& part);

struct EmbeddingConstant {
  double truncated = 0.0;   // (sum_{j=-1}^{j_max} psi^{-r}(2^j))^{1/r}
  double tail_bound = 0.0;  // bound for sum_{j > j_max} psi^{-r}(2^j)
  double r = 2.0;           // q' (Besov) or p' (Triebel-Lizorkin)
  bool empirical = false;
  /// (truncated^r + tail_bound)^{1/r}, the constant for the full dyadic range.
  double value() const;
};

/// Hoelder constant of the embedding into B^{s-d/p}_{inf,1}; throws
/// AdmissibilityError when the weight is analytically outside M_{q'} (M_{p'}).
EmbeddingConstant embedding_constant(const SpaceSpec& spec, const DyadicPartition& part);

struct EmbeddingCheck {
  double lhs = 0.0;    // ||f||_{B^{s-d/p}_{inf,1}}
  double rhs = 0.0;    // constant * ||f||_spec
  double ratio = 0.0;  // lhs / rhs, 0 for f = 0
  double holder_ratio = 0.0;  // sum_j 2^{js}||Delta_j f||_p / (constant * ||f||), <= 1 exactly
};

EmbeddingCheck verify_embedding(const SpectralField& f, const SpaceSpec& spec,
                                const DyadicPartition& part);

/// ||omega||_{homogeneous B^0_{inf,1}} = sum_j ||hom Delta_j omega||_inf.
double bkm_integrand(const SpectralField& omega, const DyadicPartition& part);
/// ||omega||_{B^0_{inf,1}} including the low-frequency block.
double besov_0_inf_1(const SpectralField& omega, const DyadicPartition& part);

struct GradUBoundTerms {
  double omega_lp = 0.0;
  double bkm = 0.0;
  double grad_u_linf = 0.0;
};

GradUBoundTerms grad_u_linf_bound_terms(const SpectralField& omega, const DyadicPartition& part,
                                        double p);

}  // namespace lpeuler

#endif  // LPEULER_SPACES_HPP_
