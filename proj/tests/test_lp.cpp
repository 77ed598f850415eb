#include <doctest.h>

#include <cmath>

#include "lpeuler/ensemble.hpp"
#include "lpeuler/lp.hpp"

using namespace lpeuler;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// cos(a x + b y) sampled on the grid (integer mode numbers, l = 2 pi).
SpectralField plane_wave(const GridPtr& g, int a, int b) {
  const int n = g->n();
  RealGrid w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = std::cos((a * i + b * j) * g->dx());
  }
  return SpectralField::from_physical(g, w);
}

double l2(const SpectralField& f) { return lp_norm(f, 2.0); }

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(FrequencyGrid(8), ConfigError);
  CHECK_THROWS_AS(FrequencyGrid(48), ConfigError);
  CHECK_THROWS_AS(FrequencyGrid(64, -1.0), ConfigError);
  const FrequencyGrid g(64);
  CHECK(g.max_retained_k() <= 64.0 / 3.0);
  CHECK(g.padded_n() == 96);
}

TEST_CASE("transform round trip") {
  const auto g = FrequencyGrid::make(32, 2.0 * M_PI, false);
  const SpectralField f = random_field(g, 3, 0, {});
  const SpectralField back = SpectralField::from_physical(g, f.physical());
  CHECK((back.coeffs() - f.coeffs()).abs().maxCoeff() < 1e-15);
}

TEST_CASE("profiles") {
  CHECK(profile::chi_hat(0.0) == 1.0);
  CHECK(profile::phi_hat(0.0) == 0.0);
  CHECK(profile::phi_hat(0.59) == 0.0);
  CHECK(profile::phi_hat(1.67) == 0.0);
  CHECK(profile::chi_hat(5.0 / 6.0 + 1e-12) == 0.0);
  CHECK(profile::phi_hat(1.0) == 1.0);
  for (double r = 0.0; r < 4.0; r += 0.01) {
    double sum = profile::chi_hat(r);
    for (int j = 0; j < 4; ++j) sum += profile::phi_hat(std::ldexp(r, -j));
    CHECK(sum == Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("partition of unity on retained modes") {
  const auto g = FrequencyGrid::make(128);
  const DyadicPartition part(g);
  RealGrid sum = RealGrid::Zero(g->n(), g->half());
  for (int j : part.bands()) sum += part.band(j);
  const double dev = ((sum - 1.0).abs() * g->mask()).maxCoeff();
  CHECK(dev < 1e-12);
  // zero frequency belongs to the low block only
  CHECK(part.band(-1)(0, 0) == 1.0);
  for (int j = 0; j <= part.j_max(); ++j) CHECK(part.band(j)(0, 0) == 0.0);
}

TEST_CASE("band range by exhaustive scan") {
  for (int n : {64, 128, 256}) {
    const auto g = FrequencyGrid::make(n);
    const DyadicPartition part(g);
    int top = -1;
    for (int r = 0; r < g->n(); ++r) {
      for (int c = 0; c < g->half(); ++c) {
        if (g->mask()(r, c) == 0.0) continue;
        for (int j = 0; j < 20; ++j) {
          if (profile::phi_hat(std::ldexp(g->kmag()(r, c), -j)) > 0.0) top = std::max(top, j);
        }
      }
    }
    CAPTURE(n);
    CHECK(part.j_max() == top);
    CHECK(part.j_min() == 0);  // 5/6 < 1 <= 5/3 for l = 2 pi
  }
  CHECK(DyadicPartition(FrequencyGrid::make(64)).j_clean() == 3);
  CHECK(DyadicPartition(FrequencyGrid::make(256)).j_clean() == 5);
}

TEST_CASE("support and adjacent overlap") {
  const auto g = FrequencyGrid::make(128);
  const DyadicPartition part(g);
  const RealGrid& k = g->kmag();
  for (int j = 0; j <= part.j_max(); ++j) {
    const RealGrid& b = part.band(j);
    const double lo = 0.6 * std::ldexp(1.0, j), hi = 5.0 / 3.0 * std::ldexp(1.0, j);
    CHECK(((k < lo || k > hi).cast<double>() * b).abs().maxCoeff() == 0.0);
    for (int jj = j + 2; jj <= part.j_max(); ++jj) CHECK((b * part.band(jj)).abs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(part.band(part.j_max() + 1), RangeError);
  CHECK_THROWS_AS(part.band(-2), RangeError);
  CHECK_THROWS_AS(part.hom_band(part.j_min() - 1), RangeError);
}

TEST_CASE("single-mode projections") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  // |xi| = 8 lies where phi_hat(xi / 8) = 1
  const SpectralField f = plane_wave(g, 8, 0);
  CHECK((delta_j(f, 3, part).coeffs() - f.coeffs()).abs().maxCoeff() < 1e-15);
  CHECK(max_coeff(delta_j(f, 2, part)) < 1e-16);
  // |xi| = 10: the multiplier value itself
  const SpectralField h = plane_wave(g, 6, 8);
  const double m = profile::phi_hat(10.0 / 8.0);
  CHECK(m > 0.0);
  CHECK(m < 1.0);
  CHECK((delta_j(h, 3, part).coeffs() - m * h.coeffs()).abs().maxCoeff() < 1e-15);
}

TEST_CASE("reconstruction, fattening and derivatives") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const SpectralField f = random_field(g, 11, s, {});
    SpectralField sum = SpectralField::zeros(g);
    for (int j : part.bands()) sum += delta_j(f, j, part);
    CHECK((sum.coeffs() - f.coeffs()).abs().maxCoeff() < 1e-15);
    CHECK(l2(s_n(f, part.j_max(), part) - f) < 1e-14 * l2(f));
    for (int j : part.bands()) {
      const SpectralField dj = delta_j(f, j, part);
      CHECK(l2(dj - fattened_delta_j(dj, j, part)) < 1e-12 * l2(f));
      const SpectralField a = derivative(dj, 0), b = delta_j(derivative(f, 0), j, part);
      CHECK(max_coeff(a - b) < 1e-15 * max_coeff(f) * g->max_retained_k());
    }
    CHECK(l2(low_freq_block(f, part) - delta_j(f, -1, part)) == 0.0);
  }
}

TEST_CASE("almost orthogonality") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const SpectralField f = random_field(g, 5, s, {});
    double acc = 0.0;
    for (int j : part.bands()) acc += std::pow(l2(delta_j(f, j, part)), 2);
    const double r = acc / std::pow(l2(f), 2);
    CHECK(r >= 0.5 - 1e-10);
    CHECK(r <= 1.0 + 1e-10);
  }
}

TEST_CASE("Bernstein ratios") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  CHECK(bernstein_ratio(plane_wave(g, 8, 0), 3, 1, 2.0, 2.0, part) == Approx(1.0).epsilon(1e-13));
  CHECK(bernstein_ratio(plane_wave(g, 10, 0), 3, 1, 2.0, 2.0, part) == Approx(1.25).epsilon(1e-13));
  const SpectralField f = random_field(g, 1, 0, {});
  CHECK(bernstein_ratio(f, 2, 0, 2.0, 2.0, part) == Approx(1.0).epsilon(1e-14));
  SpectralField exact = SpectralField::zeros(g);
  exact.coeffs()(8, 0) = exact.coeffs()(g->n() - 8, 0) = 0.5;
  CHECK_THROWS_AS(bernstein_ratio(exact, 1, 1, 2.0, 2.0, part), DomainError);

  double lo = kInf, hi = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SpectralField h = random_field(g, 2, s, {.slope = 0.0, .band_limit = 21.0});
    for (int j = 0; j <= part.j_clean(); ++j) {
      const double r = bernstein_ratio(h, j, 1, kInf, kInf, part);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  CHECK(hi / lo < 10.0);
}

TEST_CASE("real output") {
  const auto g = FrequencyGrid::make(32);
  const DyadicPartition part(g);
  const SpectralField f = random_field(g, 9, 0, {});
  // coefficients on the real axis of the half plane are Hermitian-paired
  const SpectralField d = delta_j(f, 1, part);
  for (int r = 1; r < g->n() / 2; ++r) {
    CHECK(std::abs(d.coeffs()(r, 0) - std::conj(d.coeffs()(g->n() - r, 0))) < 1e-15);
  }
}
