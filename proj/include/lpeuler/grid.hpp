#ifndef LPEULER_GRID_HPP_
#define LPEULER_GRID_HPP_

#include <memory>

#include "lpeuler/core.hpp"

namespace lpeuler {

/// Periodic n x n grid on [0, l)^2 with its half-plane (r2c) wavenumber tables.
///
/// Retained modes: with dealiasing on, |k| <= n/3 in integer units (radial 2/3
/// rule); with it off, every mode except the Nyquist row and column. Fields
/// carry coefficients only on retained modes, so products of two fields are
/// resolved exactly on the 3n/2 padded grid.
class FrequencyGrid {
 public:
  FrequencyGrid(int n, double l = 2.0 * 3.14159265358979323846, bool dealias = true);

  static std::shared_ptr<const FrequencyGrid> make(int n, double l = 2.0 * 3.14159265358979323846,
                                                   bool dealias = true);

  int n() const { return n_; }
  int half() const { return n_ / 2 + 1; }
  double l() const { return l_; }
  bool dealias() const { return dealias_; }
  double dx() const { return l_ / n_; }
  /// 2 pi / l, the spacing of the wavenumber lattice.
  double k0() const { return 2.0 * 3.14159265358979323846 / l_; }

  /// Integer mode index along x for spectral row r (FFT ordering).
  int mode_x(int row) const { return row < n_ / 2 ? row : row - n_; }
  int mode_y(int col) const { return col; }

  const RealGrid& kx() const { return kx_; }
  const RealGrid& ky() const { return ky_; }
  const RealGrid& kmag() const { return kmag_; }
  /// 1 on retained modes, 0 elsewhere.
  const RealGrid& mask() const { return mask_; }

  /// Largest |xi| over retained modes.
  double max_retained_k() const { return max_k_; }
  /// Radius of the retained disc in physical wavenumber (infinite-like when off).
  double cutoff() const { return cutoff_; }

  /// Padded size used for products (3n/2).
  int padded_n() const { return 3 * n_ / 2; }

 private:
  int n_;
  double l_;
  bool dealias_;
  RealGrid kx_, ky_, kmag_, mask_;
  double max_k_ = 0.0;
  double cutoff_ = 0.0;
};

using GridPtr = std::shared_ptr<const FrequencyGrid>;

namespace fft {

/// Forward transform of an m x m real array into Fourier-series coefficients
/// (normalized by 1/m^2), half-plane layout m x (m/2 + 1).
CoeffGrid forward(const RealGrid& physical);

/// Inverse of forward: physical samples from Fourier-series coefficients.
RealGrid backward(const CoeffGrid& coeffs, int m);

}  // namespace fft

}  // namespace lpeuler

#endif  // LPEULER_GRID_HPP_
