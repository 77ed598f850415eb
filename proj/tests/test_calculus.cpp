#include <doctest.h>

#include <cmath>

#include "lpeuler/calculus.hpp"
#include "lpeuler/ensemble.hpp"
#include "lpeuler/euler.hpp"

using namespace lpeuler;
using doctest::Approx;

namespace {

SpectralField wave(const GridPtr& g, int a, int b) {
  const int n = g->n();
  RealGrid w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = std::cos((a * i + b * j) * g->dx());
  }
  return SpectralField::from_physical(g, w);
}

SpectralField constant(const GridPtr& g, double c, int components = 1) {
  SpectralField f = SpectralField::zeros(g, components);
  for (int k = 0; k < components; ++k) f.coeffs(k)(0, 0) = c * (k + 1);
  return f;
}

double sup(const SpectralField& f) { return lp_norm(f, std::numeric_limits<double>::infinity()); }

}  // namespace

TEST_CASE("paraproduct decomposition") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SpectralField f = random_field(g, 3, s, {}), h = random_field(g, 3, s, {.stream = 1});
    CHECK(paraproduct_residual(f, h, part) < 1e-12 * sup(f) * sup(h));
  }

  // g = 1 sits in the low block: T_g f takes every band from j = 1 on, R the rest
  const SpectralField f = random_field(g, 4, 0, {.mean_zero = false});
  const Bony b = paraproduct(f, constant(g, 1.0), part);
  CHECK(b.t_f_g.is_zero());
  CHECK(max_coeff(b.t_g_f - (f - s_n(f, 0, part))) < 1e-15);
  CHECK(max_coeff(b.remainder - s_n(f, 0, part)) < 1e-15);

  // bands 1 and 5 never meet in the remainder
  const auto g128 = FrequencyGrid::make(128);
  const DyadicPartition p128(g128);
  const Bony far = paraproduct(wave(g128, 2, 0), wave(g128, 0, 32), p128);
  CHECK(max_coeff(far.remainder) < 1e-15);

  CHECK_THROWS_AS(paraproduct(SpectralField::zeros(g, 2), f, part), DomainError);
}

TEST_CASE("Leibniz samples") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  const SpaceSpec spec = SpaceSpec::parse("B:s=2,p=2,q=2", SlowlyVaryingWeight::log_power(1.0));
  const EstimateSample zero = leibniz_sample(SpectralField::zeros(g), random_field(g, 1, 0, {}), spec, part);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  for (const SpaceSpec& sp : {spec, spec.with_family(SpaceSpec::Family::triebel)}) {
    const EstimateSample e = leibniz_sample(random_field(g, 1, 1, {}), random_field(g, 1, 2, {}), sp, part);
    CHECK(e.lhs > 0.0);
    CHECK(e.lhs <= 10.0 * e.rhs);
  }
  CHECK_THROWS_AS(leibniz_sample(random_field(g, 1, 0, {}), random_field(g, 1, 1, {}), spec.with_s(0.0), part),
                  DomainError);
}

TEST_CASE("commutator") {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  const SpectralField omega = random_field(g, 5, 0, {});
  // constant transport commutes with every block
  const SpectralField c = constant(g, 0.7, 2);
  for (int j : part.bands()) CHECK(max_coeff(commutator(c, omega, j, part)) < 1e-15);
  for (int j : part.hom_bands()) CHECK(max_coeff(commutator(c, omega, j, part, true)) < 1e-15);

  const SpectralField u = biot_savart(omega);
  const auto all = commutators(u, omega, part, false);
  for (int j : part.bands()) {
    CHECK(max_coeff(all.at(j) - commutator(u, omega, j, part)) < 1e-14);
  }
  const SpectralField not_free = SpectralField::stack({wave(g, 1, 0), SpectralField::zeros(g)});
  CHECK_THROWS_AS(commutator(not_free, omega, 0, part), PreconditionError);

  const SpaceSpec spec = SpaceSpec::parse("B:s=2,p=2,q=2", SlowlyVaryingWeight::log_power(1.0));
  const EstimateSample b = commutator_besov_sample(u, omega, spec, part);
  CHECK(b.rhs == std::min(b.rhs_bad, b.rhs_good));
  const EstimateSample t =
      commutator_tl_sample(u, omega, spec.with_family(SpaceSpec::Family::triebel), part);
  CHECK(t.rhs == std::min(t.rhs_bad, t.rhs_good));
  CHECK(std::isfinite(t.lhs));
}

TEST_CASE("remainder exponents") {
  RemainderExponents ex;
  const auto [s, p, r] = ex.target();
  CHECK(s == 1.0);
  CHECK(p == 2.0);
  CHECK(r == 2.0);
  const RemainderExponents sp = RemainderExponents::split(1.0, 2.0, 2.0);
  CHECK(sp.s1 == 0.5);
  CHECK(sp.p2 == 4.0);

  RemainderExponents bad = ex;
  bad.p1 = bad.p2 = 1.5;
  CHECK_THROWS_AS(bad.target(), ConfigError);
  bad = ex;
  bad.r1 = 1.2;
  CHECK_THROWS_AS(bad.target(), ConfigError);
  bad = ex;
  bad.s1 = -0.5;
  CHECK_THROWS_AS(bad.target(), ConfigError);
  bad = ex;
  bad.s1 = bad.s2 = 0.0;
  CHECK_THROWS_AS(bad.target(), ConfigError);

  const auto g = FrequencyGrid::make(128);
  const DyadicPartition part(g);
  const auto w = SlowlyVaryingWeight::log_power(1.0);
  CHECK(remainder_sample(wave(g, 2, 0), wave(g, 0, 32), ex, w, part).lhs < 1e-12);
  const EstimateSample e = remainder_sample(random_field(g, 2, 0, {}), random_field(g, 2, 1, {}), ex, w, part);
  CHECK(e.lhs > 0.0);
  CHECK(e.lhs <= e.rhs * 10.0);
}

TEST_CASE("Fourier multipliers") {
  const auto g = FrequencyGrid::make(64);
  const SpectralField f = wave(g, 3, 4);
  const Symbol r00 = Symbol::parse("riesz:i=0,j=0,a=0");
  CHECK(max_coeff(multiplier_apply(r00, f) - (9.0 / 25.0) * f) < 1e-16);
  const Symbol r01 = Symbol::parse("riesz:i=0,j=1,a=1");
  CHECK(r01.degree == 1.0);
  CHECK(max_coeff(multiplier_apply(r01, f) - (12.0 / 125.0) * f) < 1e-16);
  CHECK(multiplier_apply(r00, SpectralField::zeros(g)).is_zero());

  const SpectralField omega = random_field(g, 6, 0, {});
  const Symbol grad{Symbol::Kind::grad_invlap_div};
  CHECK(max_coeff(multiplier_apply(grad, omega) - gradient(biot_savart(omega))) < 1e-15);

  CHECK_THROWS_AS(multiplier_apply(r00, constant(g, 1.0)), PreconditionError);
  CHECK_THROWS_AS(Symbol::parse("riesz:i=2,j=0"), ConfigError);
  CHECK_THROWS_AS(Symbol::parse("hilbert"), ConfigError);
}

TEST_CASE("maximal function") {
  const auto g = FrequencyGrid::make(128);
  const MaximalOperator m(g);
  CHECK(m.radii().size() == 32);
  CHECK(m.radii().front() == Approx(g->dx()));
  CHECK(m.radii().back() == Approx(g->l() / 2));

  const RealGrid mc = maximal_function(constant(g, -2.0));
  CHECK((mc - 2.0).abs().maxCoeff() < 1e-12);

  const SpectralField bump = wave(g, 1, 0) + wave(g, 0, 1);
  const RealGrid mb = maximal_function(bump);
  CHECK((bump.physical().abs() - mb).maxCoeff() < 1e-3);

  const auto g64 = FrequencyGrid::make(64);
  const DyadicPartition part(g64);
  const MaximalOperator m64(g64);
  for (int j = 0; j <= part.j_max(); ++j) CHECK(radial_majorant_mass(part, j) >= 1.0 - 1e-12);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const double r = convolution_bound_ratio(random_field(g64, 7, s, {}), part, m64);
    CHECK(r > 0.0);
    CHECK(r <= 1.0);
  }
  const EstimateSample fs = fefferman_stein_sample(random_field(g64, 7, 0, {}), 2.0, 2.0, part, m64);
  CHECK(fs.lhs >= fs.rhs * (1.0 - 1e-12));
  CHECK(fs.lhs <= 10.0 * fs.rhs);
}

TEST_CASE("suite harness") {
  CHECK(suite_names().size() == 9);
  SuiteConfig cfg;
  cfg.samples = 6;
  for (const std::string& name : {std::string("paraproduct"), std::string("embedding"),
                                  std::string("bernstein")}) {
    cfg.suite = name;
    const EstimateReport a = run_suite(cfg), b = run_suite(cfg);
    CAPTURE(name);
    CHECK(a.samples == b.samples);
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK_FALSE(suite_violated(a, name));
  }
  cfg.suite = "embedding";
  CHECK(effective_slope(cfg, SpaceSpec::parse("B:s=2,p=2,q=2", SlowlyVaryingWeight::log_power(1.0))) == 4.0);
  cfg.slope = 3.0;
  CHECK(effective_slope(cfg, SpaceSpec::parse("B:s=2,p=2,q=2", SlowlyVaryingWeight::log_power(1.0))) == 3.0);
  cfg.suite = "nope";
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
  cfg.suite = "leibniz";
  cfg.samples = 0;
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
}

TEST_CASE("report bookkeeping") {
  EstimateReport r;
  r.add({.lhs = 1.0, .rhs = 2.0});
  r.add({.lhs = 3.0, .rhs = 4.0});
  CHECK(r.samples == 2);
  CHECK(r.empirical_constant == 0.75);
  CHECK(r.ratio(0) == 0.5);
  r.add({.lhs = 1.0, .rhs = 0.0});
  CHECK(r.violations == 1);
  r.add({.lhs = 0.0, .rhs = 0.0});
  CHECK(r.violations == 1);
}
