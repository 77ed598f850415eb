#ifndef LPEULER_WEIGHTS_HPP_
#define LPEULER_WEIGHTS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lpeuler {

/// A slowly varying weight psi on [0, inf).
///
/// Two families are supported: the closed form psi(t) = log^alpha(e + t) - 1,
/// and a tabulated weight given by samples (t_i, psi_i) with t_0 = 0, linearly
/// interpolated between samples and held constant past the last sample.
/// Construction rejects weights that are negative, decreasing, or vanish on
/// [1, inf); every weight that exists is a valid member of the monotone class.
class SlowlyVaryingWeight {
 public:
  enum class Family { log_power, tabulated };

  static SlowlyVaryingWeight log_power(double alpha);
  static SlowlyVaryingWeight tabulated(std::vector<double> t, std::vector<double> psi);
  static SlowlyVaryingWeight constant(double value, double t_max = 1e12);

  /// Parses `log:alpha=<float>` or `table:<path>` (CSV with header `t,psi`).
  static SlowlyVaryingWeight parse(const std::string& text);

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& table_t() const { return t_; }
  const std::vector<double>& table_psi() const { return psi_; }

  /// psi(t); throws DomainError for t < 0.
  double operator()(double t) const;

  std::string describe() const;

 private:
  SlowlyVaryingWeight() = default;
  void validate() const;

  Family family_ = Family::log_power;
  double alpha_ = 1.0;
  std::vector<double> t_;
  std::vector<double> psi_;
};

double eval(const SlowlyVaryingWeight& w, double t);

/// |psi(lambda t)/psi(t) - 1| on each grid point (all t >= 1).
std::vector<double> slow_variation_defect(const SlowlyVaryingWeight& w, double lambda,
                                          const std::vector<double>& t_grid);

/// psi(t) = c(t) exp(int_a^t eps(s)/s ds).
struct KaramataRepresentation {
  double a = 1.0;
  double c_limit = 1.0;
  std::function<double(double)> c_of_t;
  std::function<double(double)> eps_of_t;

  /// eps(s) = alpha/log(e+s), a = e-1, c = 1. Reproduces log^alpha(e+t) - 1
  /// only up to a factor that tends to a constant as t grows.
  static KaramataRepresentation log_power_textbook(double alpha);

  /// eps(s) = s psi'(s)/psi(s), c = psi(a) with a = 1. Reconstructs
  /// log^alpha(e+t) - 1 exactly for t >= 1.
  static KaramataRepresentation log_power_exact(double alpha);
};

/// c(t) exp(int_a^t eps(s)/s ds) by adaptive Gauss-Kronrod quadrature in
/// log-variable (relative tolerance 1e-12).
double karamata_reconstruct(const KaramataRepresentation& rep, double t);

struct AdmissibilityIntegral {
  double partial_integral = 0.0;  // int_1^{t_max} dt/(t psi^r)
  double dyadic_sum = 0.0;        // sum_{j >= 0, 2^j <= t_max} psi^{-r}(2^j)
  bool divergent = false;         // psi vanished somewhere on [1, t_max]
};

AdmissibilityIntegral admissibility_integral(const SlowlyVaryingWeight& w, double r,
                                             double t_max);

struct Admissibility {
  bool admissible = false;
  bool empirical = false;  // decided by a finite tail test, not analytically
  double tail_exponent = 0.0;  // fitted decay index of psi^{-r}(2^j) in j
  std::string diagnostic;
};

/// Membership in M_r: non-decreasing and int_1^inf dt/(t psi^r) < inf.
/// log_power: alpha > 1/r. tabulated: power-law fit of the dyadic terms over
/// the upper half of the table range (decay index > 1), flagged empirical.
Admissibility is_admissible(const SlowlyVaryingWeight& w, double r);

/// Upper bound for sum_{j > j_last} psi^{-r}(2^j) from the integral tail
/// (1/ln 2) int_{2^{j_last}}^inf dt/(t psi^r). Infinite if not admissible.
double dyadic_tail_bound(const SlowlyVaryingWeight& w, double r, int j_last);

/// C_{l,psi} = max over j' in [j_lo, j_hi] of psi(2^{j'+l})/psi(2^{j'}).
double dyadic_ratio_constant(const SlowlyVaryingWeight& w, int l, int j_lo, int j_hi);

}  // namespace lpeuler

#endif  // LPEULER_WEIGHTS_HPP_
