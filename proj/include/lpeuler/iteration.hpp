#ifndef LPEULER_ITERATION_HPP_
#define LPEULER_ITERATION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "lpeuler/euler.hpp"
#include "lpeuler/spaces.hpp"

namespace lpeuler {

/// Raised when the short-time formula has no positive solution (C >= 5/4).
struct ConstantTooLargeError : DomainError {
  using DomainError::DomainError;
};

/// min{(5 - 4C) / (16 C N), ln(5/4) / (2 N)} for 0 < C < 5/4 and N = ||u0||.
/// Returns +inf for N = 0.
double t0(double c, double u0_norm);

/// A velocity history on a uniform time grid with its time derivative, so
/// intermediate RK stages can be evaluated by cubic Hermite interpolation.
struct VelocitySeries {
  double dt = 0.0;
  std::vector<SpectralField> u;
  std::vector<SpectralField> dudt;

  double horizon() const { return dt * static_cast<double>(u.size() - 1); }
  /// u at time k dt + theta dt, theta in [0, 1].
  SpectralField at(std::size_t k, double theta) const;
};

struct LinearizedResult {
  VelocitySeries series;
  double divergence_residual = 0.0;  // max over steps of ||div||_inf before projection
  double residual_relative = 0.0;    // same, divided by ||grad u||_inf at that step
};

/// Advances d_t u + (a . grad) u = -grad p(a), u(0) = u_init over [0, T] with
/// the advecting field a taken from `prev` (empty series means a = 0, p = 0).
/// Every step ends with a Leray projection; the divergence removed is logged.
LinearizedResult linearized_advance(const VelocitySeries& prev, const SpectralField& u_init, double dt,
                                    double horizon, double cfl = 0.5);

struct IterationConfig {
  int n_max = 8;
  double horizon = 0.0;    // used when T0 is not enforced or not applicable
  double dt = 1e-3;
  int grid_n = 64;
  double domain_l = 2.0 * 3.14159265358979323846;
  bool dealias = true;
  std::string init = "taylor";
  std::string space = "B:s=2,p=2,q=2";
  std::string weight = "log:alpha=1";
  std::uint64_t seed = 0;
  bool enforce_t0 = true;
  std::optional<double> c_empirical;  // fitted from an Euler run when empty
  double cfl = 0.5;
  int sample_every = 1;
};

struct IterateRecord {
  int n = 0;
  double sup_norm = 0.0;    // sup_t ||u^(n)||_spec
  double delta = 0.0;       // sup_t ||u^(n) - u^(n-1)||_{spec(s-1)}
  double rho = std::numeric_limits<double>::quiet_NaN();  // delta_n / delta_{n-1}
  double divergence_residual = 0.0;
  double residual_relative = 0.0;
  bool uniform_ok = true;   // sup_norm <= 2 ||u0||_spec
};

struct IterationResult {
  std::vector<IterateRecord> records;
  double u0_norm = 0.0;
  double c_used = 0.0;
  bool t0_applicable = true;  // false when C >= 5/4 and the fixed horizon was used
  double horizon = 0.0;
  double rho = 0.0;  // max delta ratio over iterates with delta above the noise floor
  bool uniform_ok = true;
  /// sup_t ||u^(n) - u_euler||_{spec(s-1)} for n = 1..n_max (filled by convergence_vs_solver).
  std::vector<double> solver_gap;
};

/// Initial velocity for a preset (biot_savart of the preset vorticity).
SpectralField initial_velocity(const IterationConfig& cfg);

/// Fits the a priori constant from an Euler run on the same data.
double fit_apriori_constant(const IterationConfig& cfg, const SpectralField& u0);

IterationResult iterate(const SpectralField& u0, const IterationConfig& cfg);
/// Runs the iteration and the Euler solver on the same data and returns
/// sup_t ||u^(n_max) - u_euler||_{spec(s-1)}; `detail` receives every n.
double convergence_vs_solver(const SpectralField& u0, const IterationConfig& cfg,
                             IterationResult* detail = nullptr);

}  // namespace lpeuler

#endif  // LPEULER_ITERATION_HPP_
