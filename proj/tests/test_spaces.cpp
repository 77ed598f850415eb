#include <doctest.h>

#include <cmath>

#include "lpeuler/calculus.hpp"
#include "lpeuler/ensemble.hpp"
#include "lpeuler/euler.hpp"
#include "lpeuler/spaces.hpp"

using namespace lpeuler;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpectralField sampled(const GridPtr& g, double (*fn)(double, double)) {
  const int n = g->n();
  RealGrid w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = fn(i * g->dx(), j * g->dx());
  }
  return SpectralField::from_physical(g, w);
}

SpaceSpec parse(const std::string& s, double alpha = 1.0) {
  return SpaceSpec::parse(s, SlowlyVaryingWeight::log_power(alpha));
}

}  // namespace

TEST_CASE("space spec parsing") {
  const SpaceSpec b = parse("B:s=2,p=2,q=1");
  CHECK(b.q_conj() == kInf);
  CHECK(b.p_conj() == 2.0);
  CHECK(parse("B:s=0,p=inf,q=inf").p() == kInf);
  CHECK_THROWS_AS(parse("F:s=1,p=inf,q=2"), ConfigError);
  CHECK_THROWS_AS(parse("B:s=1,p=1,q=2"), ConfigError);
  CHECK_THROWS_AS(parse("B:s=1,p=2"), ConfigError);
  CHECK_THROWS_AS(parse("X:s=1,p=2,q=2"), ConfigError);
  CHECK(parse("F:s=1,p=2,q=2,hom").homogeneous());
}

TEST_CASE("norms of simple fields") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  const auto cos8 = sampled(g, [](double x, double) { return std::cos(8 * x); });
  const double psi8 = std::log(std::exp(1.0) + 8.0) - 1.0;

  for (const char* s : {"B:s=2,p=2,q=2", "F:s=1,p=3,q=inf", "B:s=0,p=inf,q=1,hom"}) {
    CHECK(norm(SpectralField::zeros(g), parse(s), part) == 0.0);
  }
  // single band j = 3 with multiplier 1: 2^{3s} psi(8) ||cos||_p
  CHECK(norm(cos8, parse("B:s=2,p=2,q=2"), part) == Approx(64.0 * psi8 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(norm(cos8, parse("B:s=1,p=4,q=3"), part) ==
        Approx(8.0 * psi8 * std::pow(3.0 / 8.0, 0.25)).epsilon(1e-13));
  CHECK(norm(cos8, parse("B:s=0.5,p=inf,q=1"), part) == Approx(std::sqrt(8.0) * psi8).epsilon(1e-13));
}

TEST_CASE("Besov and Triebel-Lizorkin agree at p = q = 2") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const SpectralField f = random_field(g, 4, s, {});
    const double b = norm(f, parse("B:s=1.5,p=2,q=2"), part);
    CHECK(norm(f, parse("F:s=1.5,p=2,q=2"), part) == Approx(b).epsilon(1e-10));
  }
}

TEST_CASE("amplitude homogeneity and monotonicity in s") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  const SpectralField f = random_field(g, 8, 0, {});
  for (const char* s : {"B:s=2,p=2,q=2", "F:s=1,p=3,q=1.5", "B:s=-1,p=inf,q=inf,hom"}) {
    CHECK(norm(-3.5 * f, parse(s), part) == Approx(3.5 * norm(f, parse(s), part)).epsilon(1e-12));
  }
  // mean-zero fields have no low block, so only j >= 0 weights enter
  double prev = 0.0;
  for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double v = norm(f, SpaceSpec(SpaceSpec::Family::besov, s, 2.0, 2.0,
                                       SlowlyVaryingWeight::log_power(1.0)),
                          part);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("vector norms combine components in l2") {
  const auto g = FrequencyGrid::make(32);
  const DyadicPartition part(g);
  const SpectralField a = random_field(g, 1, 0, {}), b = random_field(g, 1, 1, {});
  const SpaceSpec spec = parse("B:s=1,p=2,q=2");
  const double na = norm(a, spec, part), nb = norm(b, spec, part);
  CHECK(norm(SpectralField::stack({a, b}), spec, part) == Approx(std::hypot(na, nb)).epsilon(1e-14));
}

TEST_CASE("block sequence norm matches the field norm") {
  const auto g = FrequencyGrid::make(32);
  const DyadicPartition part(g);
  const SpectralField f = random_field(g, 2, 0, {});
  for (const char* s : {"B:s=1,p=3,q=2", "F:s=0.5,p=2,q=inf"}) {
    std::map<int, RealGrid> blocks;
    for (int j : part.bands()) blocks.emplace(j, delta_j(f, j, part).physical());
    CHECK(block_sequence_norm(blocks, parse(s)) == Approx(norm(f, parse(s), part)).epsilon(1e-14));
  }
}

TEST_CASE("inhomogeneous equivalence") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  const SpaceSpec spec = parse("B:s=2,p=2,q=2");
  const auto zero = inhomogeneous_equivalence(SpectralField::zeros(g), spec, part);
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);
  const auto low = inhomogeneous_equivalence(sampled(g, [](double x, double) { return std::sin(x); }),
                                             spec, part);
  CHECK(std::isfinite(low.first / low.second));
  CHECK(low.first > 0.0);
  double lo = kInf, hi = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto [a, b] = inhomogeneous_equivalence(random_field(g, 6, s, {}), spec, part);
    lo = std::min(lo, a / b);
    hi = std::max(hi, a / b);
  }
  CHECK(hi / lo < 10.0);
  CHECK_THROWS_AS(inhomogeneous_equivalence(SpectralField::zeros(g), parse("B:s=2,p=2,q=2,hom"), part),
                  DomainError);
}

TEST_CASE("embedding constant") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  REQUIRE(part.j_max() == 5);
  const EmbeddingConstant k = embedding_constant(parse("B:s=2,p=2,q=2"), part);
  CHECK(k.r == 2.0);
  // frozen: 50-digit sums of psi(2^j)^-2 over j = -1..5 and j = -1..60
  CHECK(k.truncated == Approx(7.1225113777745545).epsilon(1e-13));
  CHECK(k.value() >= 7.155537692061748);
  CHECK(k.value() < 1.05 * 7.155537692061748);

  const SpaceSpec flat(SpaceSpec::Family::besov, 2.0, 2.0, 2.0, SlowlyVaryingWeight::constant(1e3));
  const EmbeddingConstant kc = embedding_constant(flat, part);
  CHECK(kc.truncated == Approx(std::sqrt(part.j_max() + 2.0) / 1e3).epsilon(1e-13));
  CHECK(kc.empirical);

  CHECK_THROWS_AS(embedding_constant(parse("B:s=2,p=2,q=2", 0.5), part), AdmissibilityError);
  CHECK_THROWS_AS(embedding_constant(SpaceSpec::classical(SpaceSpec::Family::besov, 2, 2, 2), part),
                  AdmissibilityError);
}

TEST_CASE("embedding check") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  const SpaceSpec spec = parse("B:s=2,p=2,q=2");
  CHECK(verify_embedding(SpectralField::zeros(g), spec, part).ratio == 0.0);

  // one band, j = 3: lhs = 2^3, ||f|| = 2^6 psi(8) / sqrt 2
  const auto cos8 = sampled(g, [](double x, double) { return std::cos(8 * x); });
  const double psi8 = std::log(std::exp(1.0) + 8.0) - 1.0;
  const double k = embedding_constant(spec, part).value();
  const EmbeddingCheck one = verify_embedding(cos8, spec, part);
  CHECK(one.lhs == Approx(8.0).epsilon(1e-13));
  CHECK(one.ratio == Approx(8.0 * std::sqrt(2.0) / (64.0 * psi8 * k)).epsilon(1e-12));

  double worst = 0.0, worst_holder = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const EmbeddingCheck e = verify_embedding(random_field(g, 21, s, {}), spec, part);
    worst = std::max(worst, e.ratio);
    worst_holder = std::max(worst_holder, e.holder_ratio);
  }
  CHECK(worst <= 1.0);
  CHECK(worst_holder <= 1.0 + 1e-12);
  CHECK_THROWS_AS(verify_embedding(cos8, parse("B:s=0.5,p=2,q=2"), part), DomainError);
}

TEST_CASE("BKM integrand") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  CHECK(bkm_integrand(SpectralField::zeros(g), part) == 0.0);
  // |xi| = sqrt 2 is shared by j = 0 and j = 1 with multipliers summing to 1
  const auto taylor = sampled(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  CHECK(bkm_integrand(taylor, part) == Approx(1.0).epsilon(1e-13));

  const auto far = sampled(g, [](double x, double y) { return std::cos(16 * x + 3 * y); });
  const auto both = taylor + far;
  CHECK(bkm_integrand(both, part) ==
        Approx(bkm_integrand(taylor, part) + bkm_integrand(far, part)).epsilon(1e-10));
}

TEST_CASE("gradient bound terms") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  const auto zero = grad_u_linf_bound_terms(SpectralField::zeros(g), part, 2.0);
  CHECK(zero.grad_u_linf == 0.0);
  CHECK(zero.bkm == 0.0);
  const auto taylor = sampled(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  const auto t = grad_u_linf_bound_terms(taylor, part, 2.0);
  CHECK(t.grad_u_linf == Approx(0.5).epsilon(1e-13));
  CHECK(t.omega_lp == Approx(0.5).epsilon(1e-13));
  double c = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = grad_u_linf_bound_terms(random_field(g, 13, s, {}), part, 2.0);
    c = std::max(c, r.grad_u_linf / (r.omega_lp + r.bkm));
  }
  CHECK(c > 0.0);
  CHECK(c < 2.0);
}

TEST_CASE("Triebel-Lizorkin first-order embedding and Bernstein") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  for (const char* s : {"F:s=2,p=2,q=4", "F:s=1.5,p=3,q=2", "F:s=2,p=2,q=1.5"}) {
    for (std::uint64_t k = 0; k < 10; ++k) {
      const auto e = tl_first_order_embedding(random_field(g, 31, k, {}), parse(s), part);
      CHECK(e.lhs <= e.constant * e.norm * (1.0 + 1e-12));
    }
  }
  const SpaceSpec tl = parse("F:s=2,p=2,q=2,hom");
  for (std::uint64_t k = 0; k < 10; ++k) {
    const SpectralField f = random_field(g, 32, k, {});
    for (int j = part.j_min(); j <= part.j_max(); ++j) CHECK(tl_bernstein_ratio(f, j, tl, part) <= 4.0);
  }
}
