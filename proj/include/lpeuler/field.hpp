#ifndef LPEULER_FIELD_HPP_
#define LPEULER_FIELD_HPP_

#include <cmath>
#include <vector>

#include "lpeuler/grid.hpp"

namespace lpeuler {

/// A real field on the periodic grid, stored as Fourier-series coefficients of
/// each component on the retained half-plane modes.
///
/// Components: 1 (scalar), 2 (vector) or 4 (2x2 tensor, row-major
/// d_k u_i at index 2*i + k). All operations return new fields.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(GridPtr grid, int components);

  static SpectralField zeros(GridPtr grid, int components = 1);
  /// Projects physical samples (one n x n array per component) onto retained modes.
  static SpectralField from_physical(GridPtr grid, const std::vector<RealGrid>& samples);
  static SpectralField from_physical(GridPtr grid, const RealGrid& samples);

  const GridPtr& grid() const { return grid_; }
  int components() const { return static_cast<int>(coeffs_.size()); }
  const CoeffGrid& coeffs(int c = 0) const { return coeffs_.at(c); }
  CoeffGrid& coeffs(int c = 0) { return coeffs_.at(c); }

  SpectralField component(int c) const;
  static SpectralField stack(const std::vector<SpectralField>& parts);

  RealGrid physical(int c = 0) const;
  std::vector<RealGrid> physical_all() const;

  /// Zero-mode coefficient of component c.
  double mean(int c = 0) const { return coeffs_.at(c)(0, 0).real(); }
  bool is_zero() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

 private:
  GridPtr grid_;
  std::vector<CoeffGrid> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Coefficient-wise multiplication of every component by a real table.
SpectralField apply_multiplier(const SpectralField& f, const RealGrid& table);

/// d/dx_axis of every component (axis 0 = x, 1 = y).
SpectralField derivative(const SpectralField& f, int axis);
/// Gradient of a scalar (2 components) or of a vector (4 components, d_k u_i at 2i+k).
SpectralField gradient(const SpectralField& f);
/// div of a 2-vector.
SpectralField divergence(const SpectralField& u);
/// d_x u_y - d_y u_x of a 2-vector.
SpectralField curl(const SpectralField& u);

/// Product of two scalar fields formed on the 3n/2 padded grid and truncated
/// back to retained modes.
SpectralField product(const SpectralField& f, const SpectralField& g);

/// Physical-space samples of f on the padded 3n/2 grid (exact interpolation).
RealGrid padded_physical(const SpectralField& f, int c = 0);
/// Forward transform of padded samples, truncated to the retained modes of grid.
SpectralField from_padded(const GridPtr& grid, const RealGrid& padded);

/// Orthogonal (Leray) projection of a 2-vector onto divergence-free fields.
SpectralField leray_project(const SpectralField& u);

/// max over modes of |coefficient| across components.
double max_coeff(const SpectralField& f);

/// L^p norm for the normalized (probability) measure on the torus; p = inf is
/// the sample max. Works on any Eigen array expression.
template <typename Derived>
double lp_norm(const Eigen::ArrayBase<Derived>& samples, double p) {
  if (std::isinf(p)) return samples.abs().maxCoeff();
  if (p == 2.0) return std::sqrt(samples.abs2().mean());
  if (p == 1.0) return samples.abs().mean();
  return std::pow(samples.abs().pow(p).mean(), 1.0 / p);
}

/// L^p norm of a field: scalar L^p of each component, combined in l^2.
double lp_norm(const SpectralField& f, double p);

/// Pointwise Euclidean magnitude across components.
RealGrid pointwise_magnitude(const SpectralField& f);

/// sup_x of the spectral (operator 2-) norm of a 4-component tensor field.
double tensor_linf(const SpectralField& grad);

/// Largest singular value of a 2x2 matrix.
double spectral_norm(const Mat2& m);

}  // namespace lpeuler

#endif  // LPEULER_FIELD_HPP_
