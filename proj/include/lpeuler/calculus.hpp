#ifndef LPEULER_CALCULUS_HPP_
#define LPEULER_CALCULUS_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "lpeuler/lp.hpp"
#include "lpeuler/spaces.hpp"

namespace lpeuler {

/// Bony decomposition fg = T_f g + T_g f + R(f, g) with
/// T_g f = sum_{j >= 1} S_{j-2} g Delta_j f and R = sum_{|j - j'| <= 1} Delta_j f Delta_j' g.
struct Bony {
  SpectralField t_f_g;
  SpectralField t_g_f;
  SpectralField remainder;
};

Bony paraproduct(const SpectralField& f, const SpectralField& g, const DyadicPartition& part);

/// ||fg - (T_f g + T_g f + R)||_inf.
double paraproduct_residual(const SpectralField& f, const SpectralField& g,
                            const DyadicPartition& part);

/// One lhs/rhs pair. For the commutator estimates both right-hand variants are
/// kept and rhs is their minimum.
struct EstimateSample {
  double lhs = 0.0;
  double rhs = 0.0;
  double rhs_bad = std::numeric_limits<double>::quiet_NaN();
  double rhs_good = std::numeric_limits<double>::quiet_NaN();
};

struct EstimateReport {
  std::string estimate_id;
  std::size_t samples = 0;
  std::vector<double> lhs, rhs;
  std::vector<double> rhs_bad, rhs_good;
  double empirical_constant = 0.0;  // max lhs / rhs over samples with rhs > 0
  std::size_t violations = 0;       // lhs > 0 with rhs == 0, or non-finite values
  std::map<int, double> resolution_sweep;

  void add(const EstimateSample& s);
  double ratio(std::size_t i) const;
};

/// ||fg||, ||f||_inf ||g|| + ||g||_inf ||f|| in a Besov or Triebel-Lizorkin
/// space; the family is taken from spec.
EstimateSample leibniz_sample(const SpectralField& f, const SpectralField& g, const SpaceSpec& spec,
                              const DyadicPartition& part);

/// u . grad Delta_j omega - Delta_j (u . grad omega); the homogeneous flag
/// selects the homogeneous block. Requires div u = 0.
SpectralField commutator(const SpectralField& u, const SpectralField& omega, int j,
                         const DyadicPartition& part, bool homogeneous = false);

/// All commutators for the band range at once (shares the product u . grad omega).
std::map<int, SpectralField> commutators(const SpectralField& u, const SpectralField& omega,
                                         const DyadicPartition& part, bool homogeneous);

EstimateSample commutator_besov_sample(const SpectralField& u, const SpectralField& omega,
                                       const SpaceSpec& spec, const DyadicPartition& part);
EstimateSample commutator_tl_sample(const SpectralField& u, const SpectralField& omega,
                                    const SpaceSpec& spec, const DyadicPartition& part);

struct RemainderExponents {
  double s1 = 0.5, p1 = 4.0, r1 = 4.0;
  double s2 = 0.5, p2 = 4.0, r2 = 4.0;

  /// Validated target exponents (s, p, r); throws ConfigError when
  /// 1/p1 + 1/p2 > 1, 1/r1 + 1/r2 > 1, s1 or s2 < 0, or s1 + s2 <= 0.
  std::tuple<double, double, double> target() const;
  /// s1 = s2 = s/2, p1 = p2 = 2p, r1 = r2 = 2r.
  static RemainderExponents split(double s, double p, double r);
};

EstimateSample remainder_sample(const SpectralField& f, const SpectralField& g,
                                const RemainderExponents& ex, const SlowlyVaryingWeight& weight,
                                const DyadicPartition& part);

struct Symbol {
  enum class Kind { riesz, grad_invlap_div };
  Kind kind = Kind::riesz;
  int i = 0, j = 0;    // riesz indices
  double degree = 0.0; // extra factor |xi|^-degree

  static Symbol parse(const std::string& text);
};

/// sigma(D) f with sigma(0) = 0. riesz: xi_i xi_j / |xi|^2; grad_invlap_div
/// maps a scalar omega to the 4-component gradient of its Biot-Savart field.
/// Throws PreconditionError when f has a nonzero mean.
SpectralField multiplier_apply(const Symbol& symbol, const SpectralField& f);

/// lhs = ||sigma(D) f|| in the homogeneous space, rhs = ||f|| with s shifted by -degree.
EstimateSample multiplier_sample(const Symbol& symbol, const SpectralField& f, const SpaceSpec& spec,
                                 const DyadicPartition& part);

/// Discrete Hardy-Littlewood maximal operator over periodic discs with 32
/// geometric radii from one cell to l/2, evaluated by FFT convolution.
class MaximalOperator {
 public:
  explicit MaximalOperator(GridPtr grid, int radii = 32);

  RealGrid operator()(const RealGrid& f) const;
  const std::vector<double>& radii() const { return radii_; }

 private:
  GridPtr grid_;
  std::vector<double> radii_;
  std::vector<CoeffGrid> kernels_;  // transforms of normalized disc indicators
};

RealGrid maximal_function(const SpectralField& f);

/// Radial-majorant mass of the band kernel: sum over grid points of
/// sup_{|y'| >= |y|} |K_j(y')|.
double radial_majorant_mass(const DyadicPartition& part, int j);

/// max_x sup_j |Delta_j f|(x) / (A M f(x)) with A the largest band majorant mass.
double convolution_bound_ratio(const SpectralField& f, const DyadicPartition& part,
                               const MaximalOperator& maximal);

/// Vector maximal inequality: lhs = ||(sum_j |M Delta_j f|^q)^{1/q}||_p,
/// rhs = ||(sum_j |Delta_j f|^q)^{1/q}||_p.
EstimateSample fefferman_stein_sample(const SpectralField& f, double p, double q,
                                      const DyadicPartition& part, const MaximalOperator& maximal);

/// ||f||_{F^1_{p,2}} and its Hoelder bound by ||f||_{F^{s,psi}_{p,q}} (s > 1).
struct TlEmbeddingSample {
  double lhs = 0.0;
  double constant = 0.0;
  double norm = 0.0;
};
TlEmbeddingSample tl_first_order_embedding(const SpectralField& f, const SpaceSpec& spec,
                                           const DyadicPartition& part);

/// ||Delta_j f||_{hom F^{s-1}} / (2^{-j} ||f||_{hom F^s}).
double tl_bernstein_ratio(const SpectralField& f, int j, const SpaceSpec& spec,
                          const DyadicPartition& part);

/// Ensemble harness behind `verify`.
struct SuiteConfig {
  std::string suite = "paraproduct";
  int grid_n = 64;
  int samples = 20;
  std::uint64_t seed = 1;
  std::string space;  // empty selects the suite default
  std::string weight = "log:alpha=1";
  std::string symbol = "riesz:i=0,j=0,a=0";
  /// Spectral slope of the ensemble; <= 0 picks the suite default: 2, except
  /// s + 2 for embedding so the fields stay bounded in the space as n grows.
  double slope = 0.0;
};

const std::vector<std::string>& suite_names();
std::string default_space(const std::string& suite);
double effective_slope(const SuiteConfig& cfg, const SpaceSpec& spec);

EstimateReport run_suite(const SuiteConfig& cfg);

/// Whether a finished report breaks its suite's pass rule: structural
/// violations anywhere, plus the residual bound for paraproduct, ratio <= 1 for
/// embedding and a band spread below 10 for bernstein.
bool suite_violated(const EstimateReport& report, const std::string& suite);

/// Empirical constants of the suite at each grid size.
std::map<int, double> resolution_sweep(SuiteConfig cfg, const std::vector<int>& sizes);

}  // namespace lpeuler

#endif  // LPEULER_CALCULUS_HPP_
