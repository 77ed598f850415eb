#ifndef LPEULER_CORE_HPP_
#define LPEULER_CORE_HPP_

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lpeuler {

using Complex = std::complex<double>;

// Row-major storage matches the FFTW r2c/c2r layout: rows run over the first
// axis (x), columns over the second (y). Spectral arrays are n x (n/2 + 1).
using RealGrid = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CoeffGrid = Eigen::Array<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Invalid user configuration (bad spec strings, unknown keys, coarse grids).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AdmissibilityError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Thrown by the time stepper when dt exceeds the CFL limit.
struct StepSizeError : std::runtime_error {
  StepSizeError(const std::string& what, double suggested)
      : std::runtime_error(what), suggested_dt(suggested) {}
  double suggested_dt;
};

/// Worker count: LPEULER_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is processed exactly once;
/// callers write results into per-index slots so output order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lpeuler

#endif  // LPEULER_CORE_HPP_
