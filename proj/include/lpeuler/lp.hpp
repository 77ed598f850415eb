#ifndef LPEULER_LP_HPP_
#define LPEULER_LP_HPP_

#include <map>
#include <vector>

#include "lpeuler/field.hpp"

namespace lpeuler {

/// Smooth radial profiles of the dyadic partition of unity.
///
/// theta(r) = 1 for r <= 3/5, 0 for r >= 5/6, with a C-infinity ramp glued
/// from h(x) = exp(-1/x). chi_hat(xi) = theta(|xi|) and
/// phi_hat(xi) = theta(|xi|/2) - theta(|xi|), supported in [3/5, 5/3].
namespace profile {
double smooth_step(double x);  // 0 for x <= 0, 1 for x >= 1
double theta(double r);
double chi_hat(double r);
double phi_hat(double r);
}  // namespace profile

/// Band tables of the partition on a frequency grid.
///
/// Inhomogeneous blocks: j = -1 (chi_hat) and j = 0..j_max (phi_hat(2^-j .)).
/// Homogeneous blocks: j = j_min..j_max. The top band is usable (its annulus
/// meets retained modes) but may be clipped by the cutoff; bands up to
/// j_clean lie entirely inside the retained disc.
class DyadicPartition {
 public:
  explicit DyadicPartition(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int j_clean() const { return j_clean_; }

  /// Multiplier table of Delta_j (j >= -1).
  const RealGrid& band(int j) const;
  /// Multiplier table of the homogeneous block (j >= j_min).
  const RealGrid& hom_band(int j) const;
  /// S_n = sum_{j <= n} Delta_j, n >= -1.
  RealGrid low_pass(int n) const;
  /// Homogeneous S_n = sum_{j_min <= j <= n} homogeneous blocks.
  RealGrid hom_low_pass(int n) const;

  /// Inhomogeneous indices -1..j_max.
  std::vector<int> bands() const;
  /// Homogeneous indices j_min..j_max.
  std::vector<int> hom_bands() const;

 private:
  GridPtr grid_;
  int j_min_ = 0;
  int j_max_ = 0;
  int j_clean_ = 0;
  RealGrid chi_;
  std::map<int, RealGrid> phi_;
};

DyadicPartition build_partition(GridPtr grid);

/// Delta_j f for j in [-1, j_max].
SpectralField delta_j(const SpectralField& f, int j, const DyadicPartition& part);
/// Homogeneous block for j in [j_min, j_max].
SpectralField delta_j_homogeneous(const SpectralField& f, int j, const DyadicPartition& part);
/// Delta_{j-1} + Delta_j + Delta_{j+1}, clipped to the available range.
SpectralField fattened_delta_j(const SpectralField& f, int j, const DyadicPartition& part);
/// Delta_{-1} f.
SpectralField low_freq_block(const SpectralField& f, const DyadicPartition& part);
/// S_n f for n >= -1 (n past j_max returns f).
SpectralField s_n(const SpectralField& f, int n, const DyadicPartition& part);
/// Homogeneous S_n f.
SpectralField s_n_homogeneous(const SpectralField& f, int n, const DyadicPartition& part);

/// sup_{|a| = k} ||d^a Delta_j f||_{L^b} / (2^{j(k + d(1/p - 1/b))} ||Delta_j f||_{L^p}).
double bernstein_ratio(const SpectralField& f, int j, int k, double p, double b,
                       const DyadicPartition& part);

}  // namespace lpeuler

#endif  // LPEULER_LP_HPP_
