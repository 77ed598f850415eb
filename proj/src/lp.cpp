#include "lpeuler/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpeuler {

namespace profile {

namespace {
double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
constexpr double kInner = 3.0 / 5.0;
constexpr double kOuter = 5.0 / 6.0;
}  // namespace

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = glue(x), b = glue(1.0 - x);
  return a / (a + b);
}

double theta(double r) { return 1.0 - smooth_step((r - kInner) / (kOuter - kInner)); }

double chi_hat(double r) { return theta(r); }

double phi_hat(double r) { return theta(0.5 * r) - theta(r); }

}  // namespace profile

namespace {

RealGrid radial_table(const RealGrid& kmag, const RealGrid& mask, double scale,
                      double (*fn)(double)) {
  return kmag.unaryExpr([&](double k) { return fn(scale * k); }) * mask;
}

}  // namespace

DyadicPartition::DyadicPartition(GridPtr grid) : grid_(std::move(grid)) {
  const double kmax = grid_->max_retained_k();
  const double kmin = grid_->k0();
  j_max_ = static_cast<int>(std::floor(std::log2(kmax / 0.6)));
  while (std::ldexp(0.6, j_max_ + 1) <= kmax) ++j_max_;
  while (std::ldexp(0.6, j_max_) > kmax) --j_max_;
  j_min_ = static_cast<int>(std::ceil(std::log2(kmin * 0.6)));
  while (std::ldexp(5.0 / 3.0, j_min_ - 1) >= kmin) --j_min_;
  while (std::ldexp(5.0 / 3.0, j_min_) < kmin) ++j_min_;
  j_clean_ = j_min_ - 1;
  while (j_clean_ + 1 <= j_max_ && std::ldexp(5.0 / 3.0, j_clean_ + 1) <= grid_->cutoff()) {
    ++j_clean_;
  }
  if (j_max_ - j_min_ + 1 < 3) {
    throw ConfigError("grid too coarse: fewer than three dyadic bands fit below the cutoff");
  }
  const RealGrid& km = grid_->kmag();
  const RealGrid& mask = grid_->mask();
  chi_ = radial_table(km, mask, 1.0, profile::chi_hat);
  for (int j = std::min(j_min_, 0); j <= j_max_; ++j) {
    phi_[j] = radial_table(km, mask, std::ldexp(1.0, -j), profile::phi_hat);
  }
}

DyadicPartition build_partition(GridPtr grid) { return DyadicPartition(std::move(grid)); }

const RealGrid& DyadicPartition::band(int j) const {
  if (j < -1 || j > j_max_) {
    throw RangeError("band index " + std::to_string(j) + " outside [-1, " +
                     std::to_string(j_max_) + "]");
  }
  return j == -1 ? chi_ : phi_.at(j);
}

const RealGrid& DyadicPartition::hom_band(int j) const {
  if (j < j_min_ || j > j_max_) {
    throw RangeError("homogeneous band index " + std::to_string(j) + " outside [" +
                     std::to_string(j_min_) + ", " + std::to_string(j_max_) + "]");
  }
  return phi_.at(j);
}

RealGrid DyadicPartition::low_pass(int n) const {
  if (n < -1) return RealGrid::Zero(chi_.rows(), chi_.cols());
  RealGrid acc = chi_;
  for (int j = 0; j <= std::min(n, j_max_); ++j) acc += phi_.at(j);
  return acc;
}

RealGrid DyadicPartition::hom_low_pass(int n) const {
  RealGrid acc = RealGrid::Zero(chi_.rows(), chi_.cols());
  for (int j = j_min_; j <= std::min(n, j_max_); ++j) acc += phi_.at(j);
  return acc;
}

std::vector<int> DyadicPartition::bands() const {
  std::vector<int> out;
  for (int j = -1; j <= j_max_; ++j) out.push_back(j);
  return out;
}

std::vector<int> DyadicPartition::hom_bands() const {
  std::vector<int> out;
  for (int j = j_min_; j <= j_max_; ++j) out.push_back(j);
  return out;
}

SpectralField delta_j(const SpectralField& f, int j, const DyadicPartition& part) {
  return apply_multiplier(f, part.band(j));
}

SpectralField delta_j_homogeneous(const SpectralField& f, int j, const DyadicPartition& part) {
  return apply_multiplier(f, part.hom_band(j));
}

SpectralField fattened_delta_j(const SpectralField& f, int j, const DyadicPartition& part) {
  RealGrid table = part.band(j);
  if (j - 1 >= -1) table += part.band(j - 1);
  if (j + 1 <= part.j_max()) table += part.band(j + 1);
  return apply_multiplier(f, table);
}

SpectralField low_freq_block(const SpectralField& f, const DyadicPartition& part) {
  return delta_j(f, -1, part);
}

SpectralField s_n(const SpectralField& f, int n, const DyadicPartition& part) {
  return apply_multiplier(f, part.low_pass(n));
}

SpectralField s_n_homogeneous(const SpectralField& f, int n, const DyadicPartition& part) {
  return apply_multiplier(f, part.hom_low_pass(n));
}

double bernstein_ratio(const SpectralField& f, int j, int k, double p, double b,
                       const DyadicPartition& part) {
  if (k < 0) throw DomainError("derivative order must be non-negative");
  const SpectralField block = delta_j(f, j, part);
  const double base = lp_norm(block, p);
  if (base == 0.0) throw DomainError("band is empty: Bernstein ratio undefined");
  double best = 0.0;
  for (int ax = 0; ax <= k; ++ax) {
    // Multi-index (k - ax, ax).
    SpectralField d = block;
    for (int i = 0; i < k - ax; ++i) d = derivative(d, 0);
    for (int i = 0; i < ax; ++i) d = derivative(d, 1);
    best = std::max(best, lp_norm(d, b));
  }
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double inv_b = std::isinf(b) ? 0.0 : 1.0 / b;
  const double scale = std::pow(2.0, j * (k + 2.0 * (inv_p - inv_b)));
  return best / (scale * base);
}

}  // namespace lpeuler
