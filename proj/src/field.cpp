#include "lpeuler/field.hpp"

#include <algorithm>

namespace lpeuler {

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid() && (a.grid()->n() != b.grid()->n() || a.grid()->l() != b.grid()->l())) {
    throw DomainError("fields live on different grids");
  }
  if (a.components() != b.components()) throw DomainError("component count mismatch");
}

const Complex kI{0.0, 1.0};

}  // namespace

SpectralField::SpectralField(GridPtr grid, int components) : grid_(std::move(grid)) {
  if (components < 1) throw DomainError("field needs at least one component");
  coeffs_.assign(components, CoeffGrid::Zero(grid_->n(), grid_->half()));
}

SpectralField SpectralField::zeros(GridPtr grid, int components) {
  return SpectralField(std::move(grid), components);
}

SpectralField SpectralField::from_physical(GridPtr grid, const std::vector<RealGrid>& samples) {
  SpectralField f(grid, static_cast<int>(samples.size()));
  for (std::size_t c = 0; c < samples.size(); ++c) {
    if (samples[c].rows() != grid->n() || samples[c].cols() != grid->n()) {
      throw DomainError("sample array does not match grid size");
    }
    f.coeffs_[c] = fft::forward(samples[c]) * grid->mask().cast<Complex>();
  }
  return f;
}

SpectralField SpectralField::from_physical(GridPtr grid, const RealGrid& samples) {
  return from_physical(std::move(grid), std::vector<RealGrid>{samples});
}

SpectralField SpectralField::component(int c) const {
  SpectralField out(grid_, 1);
  out.coeffs_[0] = coeffs_.at(c);
  return out;
}

SpectralField SpectralField::stack(const std::vector<SpectralField>& parts) {
  if (parts.empty()) throw DomainError("stack of no fields");
  SpectralField out = parts.front();
  out.coeffs_.clear();
  for (const auto& p : parts) {
    for (int c = 0; c < p.components(); ++c) out.coeffs_.push_back(p.coeffs(c));
  }
  return out;
}

RealGrid SpectralField::physical(int c) const { return fft::backward(coeffs_.at(c), grid_->n()); }

std::vector<RealGrid> SpectralField::physical_all() const {
  std::vector<RealGrid> out;
  for (int c = 0; c < components(); ++c) out.push_back(physical(c));
  return out;
}

bool SpectralField::is_zero() const {
  for (const auto& c : coeffs_) {
    if ((c.abs() != 0.0).any()) return false;
  }
  return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(*this, o);
  for (int c = 0; c < components(); ++c) coeffs_[c] += o.coeffs_[c];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(*this, o);
  for (int c = 0; c < components(); ++c) coeffs_[c] -= o.coeffs_[c];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField apply_multiplier(const SpectralField& f, const RealGrid& table) {
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) out.coeffs(c) *= table.cast<Complex>();
  return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
  const RealGrid& k = axis == 0 ? f.grid()->kx() : f.grid()->ky();
  SpectralField out = f;
  const CoeffGrid symbol = kI * k.cast<Complex>() * f.grid()->mask().cast<Complex>();
  for (int c = 0; c < f.components(); ++c) out.coeffs(c) *= symbol;
  return out;
}

SpectralField gradient(const SpectralField& f) {
  if (f.components() == 1) {
    return SpectralField::stack({derivative(f, 0), derivative(f, 1)});
  }
  if (f.components() == 2) {
    const auto ux = f.component(0), uy = f.component(1);
    return SpectralField::stack(
        {derivative(ux, 0), derivative(ux, 1), derivative(uy, 0), derivative(uy, 1)});
  }
  throw DomainError("gradient expects a scalar or 2-vector field");
}

SpectralField divergence(const SpectralField& u) {
  if (u.components() != 2) throw DomainError("divergence expects a 2-vector field");
  return derivative(u.component(0), 0) + derivative(u.component(1), 1);
}

SpectralField curl(const SpectralField& u) {
  if (u.components() != 2) throw DomainError("curl expects a 2-vector field");
  return derivative(u.component(1), 0) - derivative(u.component(0), 1);
}

RealGrid padded_physical(const SpectralField& f, int c) {
  const auto& g = *f.grid();
  const int n = g.n(), m = g.padded_n();
  CoeffGrid padded = CoeffGrid::Zero(m, m / 2 + 1);
  const CoeffGrid& src = f.coeffs(c);
  for (int r = 0; r < n; ++r) {
    const int mx = g.mode_x(r);
    if (mx == -n / 2) continue;
    const int pr = mx >= 0 ? mx : mx + m;
    padded.row(pr).head(n / 2) = src.row(r).head(n / 2);
  }
  return fft::backward(padded, m);
}

SpectralField from_padded(const GridPtr& grid, const RealGrid& padded) {
  const int n = grid->n(), m = grid->padded_n();
  const CoeffGrid full = fft::forward(padded);
  SpectralField out(grid, 1);
  CoeffGrid& dst = out.coeffs();
  for (int r = 0; r < n; ++r) {
    const int mx = grid->mode_x(r);
    if (mx == -n / 2) continue;
    const int pr = mx >= 0 ? mx : mx + m;
    dst.row(r).head(n / 2) = full.row(pr).head(n / 2);
  }
  dst *= grid->mask().cast<Complex>();
  return out;
}

SpectralField product(const SpectralField& f, const SpectralField& g) {
  if (f.components() != 1 || g.components() != 1) throw DomainError("product expects scalars");
  const RealGrid pf = padded_physical(f), pg = padded_physical(g);
  return from_padded(f.grid(), pf * pg);
}

SpectralField leray_project(const SpectralField& u) {
  if (u.components() != 2) throw DomainError("Leray projection expects a 2-vector field");
  const auto& g = *u.grid();
  const CoeffGrid kx = g.kx().cast<Complex>(), ky = g.ky().cast<Complex>();
  RealGrid k2 = g.kmag().square();
  k2(0, 0) = 1.0;
  const CoeffGrid kdotu = (kx * u.coeffs(0) + ky * u.coeffs(1)) / k2.cast<Complex>();
  SpectralField out = u;
  out.coeffs(0) -= kx * kdotu;
  out.coeffs(1) -= ky * kdotu;
  return out;
}

double max_coeff(const SpectralField& f) {
  double m = 0.0;
  for (int c = 0; c < f.components(); ++c) m = std::max(m, f.coeffs(c).abs().maxCoeff());
  return m;
}

double lp_norm(const SpectralField& f, double p) {
  double acc = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    const double v = lp_norm(f.physical(c), p);
    acc += v * v;
  }
  return std::sqrt(acc);
}

RealGrid pointwise_magnitude(const SpectralField& f) {
  RealGrid acc = RealGrid::Zero(f.grid()->n(), f.grid()->n());
  for (int c = 0; c < f.components(); ++c) acc += f.physical(c).square();
  return acc.sqrt();
}

double spectral_norm(const Mat2& m) {
  const double s = m.squaredNorm();
  const double det = m.determinant();
  const double disc = std::max(0.0, s * s - 4.0 * det * det);
  return std::sqrt(0.5 * (s + std::sqrt(disc)));
}

double tensor_linf(const SpectralField& grad) {
  if (grad.components() != 4) throw DomainError("tensor_linf expects a 4-component field");
  const auto p = grad.physical_all();
  double best = 0.0;
  for (Eigen::Index i = 0; i < p[0].size(); ++i) {
    Mat2 m;
    m << p[0](i), p[1](i), p[2](i), p[3](i);
    best = std::max(best, spectral_norm(m));
  }
  return best;
}

}  // namespace lpeuler
