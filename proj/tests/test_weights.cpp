#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <fstream>

#include "lpeuler/core.hpp"
#include "lpeuler/weights.hpp"

using namespace lpeuler;
using doctest::Approx;

namespace {

const double kE = std::exp(1.0);

}  // namespace

TEST_CASE("log weight closed-form values") {
  CHECK(eval(SlowlyVaryingWeight::log_power(1.0), 0.0) == 0.0);
  CHECK(eval(SlowlyVaryingWeight::log_power(2.0), kE * kE - kE) == Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(eval(SlowlyVaryingWeight::log_power(1.0), -1.0), DomainError);
}

TEST_CASE("log weight against a 50-digit evaluation") {
  using Big = boost::multiprecision::cpp_dec_float_50;
  const Big e = boost::multiprecision::exp(Big(1));
  const Big ref = boost::multiprecision::pow(boost::multiprecision::log(e + 1000), Big("0.6")) - 1;
  const double got = eval(SlowlyVaryingWeight::log_power(0.6), 1000.0);
  CHECK(got == Approx(ref.convert_to<double>()).epsilon(1e-14));
  // frozen from an independent mpmath evaluation
  CHECK(got == Approx(2.1893673704934812).epsilon(1e-14));
}

TEST_CASE("slow variation defect") {
  const auto w = SlowlyVaryingWeight::log_power(1.0);
  CHECK(slow_variation_defect(w, 2.0, {1e6})[0] < 0.2);
  CHECK(slow_variation_defect(w, 2.0, {1e6})[0] == Approx(0.05408646586998323).epsilon(1e-12));
  for (double d : slow_variation_defect(w, 1.0, {1.0, 7.0, 1e5})) CHECK(d == 0.0);

  std::vector<double> grid;
  for (int k = 2; k <= 8; ++k) grid.push_back(std::pow(10.0, k));
  const auto d = slow_variation_defect(w, 2.0, grid);
  for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] < d[i - 1]);
}

TEST_CASE("defect needs t >= 1") {
  CHECK_THROWS(slow_variation_defect(SlowlyVaryingWeight::log_power(1.0), 2.0, {0.5}));
}

TEST_CASE("Karamata reconstruction") {
  SUBCASE("exact representation reproduces the weight") {
    for (double alpha : {0.6, 1.0, 2.5}) {
      const auto rep = KaramataRepresentation::log_power_exact(alpha);
      const auto w = SlowlyVaryingWeight::log_power(alpha);
      for (double t : {1.0, 3.0, 10.0, 1e3, 1e6}) {
        CHECK(karamata_reconstruct(rep, t) == Approx(w(t)).epsilon(1e-10));
      }
    }
  }
  SUBCASE("textbook eps gives the weight up to a factor tending to a constant") {
    const auto rep = KaramataRepresentation::log_power_textbook(1.0);
    const auto w = SlowlyVaryingWeight::log_power(1.0);
    CHECK(karamata_reconstruct(rep, kE - 1.0) == Approx(1.0).epsilon(1e-14));
    std::vector<double> ratios;
    for (double t : {1e2, 1e4, 1e6, 1e8, 1e10}) ratios.push_back(karamata_reconstruct(rep, t) / w(t));
    for (std::size_t i = 2; i < ratios.size(); ++i) {
      CHECK(std::abs(ratios[i] - ratios[i - 1]) < std::abs(ratios[i - 1] - ratios[i - 2]));
    }
  }
  SUBCASE("constant eps") {
    KaramataRepresentation rep;
    rep.a = 1.0;
    rep.c_of_t = [](double) { return 5.0; };
    rep.eps_of_t = [](double) { return 0.0; };
    CHECK(karamata_reconstruct(rep, 17.0) == Approx(5.0));
    rep.c_of_t = [](double) { return 2.0; };
    rep.eps_of_t = [](double) { return 0.1; };
    CHECK(karamata_reconstruct(rep, kE) == Approx(2.0 * std::exp(0.1)).epsilon(1e-12));
    CHECK_THROWS_AS(karamata_reconstruct(rep, 0.5), DomainError);
  }
}

TEST_CASE("admissibility integral") {
  SUBCASE("log alpha = 1, r = 2 converges") {
    const auto w = SlowlyVaryingWeight::log_power(1.0);
    const auto res = admissibility_integral(w, 2.0, 1e8);
    // frozen from mpmath quadrature and direct summation over 2^0..2^26
    CHECK(res.partial_integral == Approx(6.931286189056765).epsilon(1e-9));
    CHECK(res.dyadic_sum == Approx(16.077905958907869).epsilon(1e-12));
    const double ratio = res.dyadic_sum / res.partial_integral;
    CHECK(ratio >= 0.25);
    CHECK(ratio <= 4.0);
    // increments per decade shrink
    double prev = admissibility_integral(w, 2.0, 1e3).partial_integral, last_inc = 1e300;
    for (int k = 4; k <= 8; ++k) {
      const double cur = admissibility_integral(w, 2.0, std::pow(10.0, k)).partial_integral;
      CHECK(cur - prev < last_inc);
      last_inc = cur - prev;
      prev = cur;
    }
  }
  SUBCASE("log alpha = 0.4, r = 2 does not settle") {
    const auto w = SlowlyVaryingWeight::log_power(0.4);
    double prev = admissibility_integral(w, 2.0, 1e4).partial_integral;
    std::vector<double> inc;
    for (int k = 5; k <= 8; ++k) {
      const double cur = admissibility_integral(w, 2.0, std::pow(10.0, k)).partial_integral;
      inc.push_back(cur - prev);
      prev = cur;
    }
    // a convergent tail would shrink geometrically; here the increments stay
    // of the same size (mpmath: 0.97, 0.75, 0.61, 0.51 per decade)
    CHECK(inc.back() > 0.4 * inc.front());
    CHECK(inc.back() > 0.5);
  }
  SUBCASE("constant weight, r = 1") {
    const auto w = SlowlyVaryingWeight::constant(3.0);
    const auto res = admissibility_integral(w, 1.0, 1e6);
    CHECK(res.partial_integral == Approx(std::log(1e6) / 3.0).epsilon(1e-10));
    CHECK_FALSE(is_admissible(w, 1.0).admissible);
  }
}

TEST_CASE("admissibility classes") {
  CHECK(is_admissible(SlowlyVaryingWeight::log_power(1.0), 2.0).admissible);
  CHECK_FALSE(is_admissible(SlowlyVaryingWeight::log_power(0.5), 2.0).admissible);
  CHECK(is_admissible(SlowlyVaryingWeight::log_power(3.0), 1.0).admissible);
  CHECK_FALSE(is_admissible(SlowlyVaryingWeight::log_power(1.0), 2.0).empirical);
}

TEST_CASE("dyadic sum and integral agree within a factor 4") {
  // The factor is not uniform in the weight: the j = 0 term psi(1)^-r
  // dominates once alpha r is large (alpha = 2, r = 4 gives 4.14).
  for (double alpha : {0.4, 0.5, 0.6, 1.0}) {
    for (double r : {1.0, 1.5, 2.0, 4.0}) {
      const auto res = admissibility_integral(SlowlyVaryingWeight::log_power(alpha), r, 1e8);
      const double ratio = res.dyadic_sum / res.partial_integral;
      CAPTURE(alpha);
      CAPTURE(r);
      CHECK(ratio >= 0.25);
      CHECK(ratio <= 4.0);
    }
  }
  for (double r : {1.0, 1.5, 2.0}) {
    const auto res = admissibility_integral(SlowlyVaryingWeight::log_power(3.0), r, 1e8);
    CHECK(res.dyadic_sum / res.partial_integral <= 4.0);
  }
}

TEST_CASE("monotone and sub-power growth on the dyadic grid") {
  const auto w = SlowlyVaryingWeight::log_power(1.0);
  for (int j = -1; j < 40; ++j) CHECK(w(std::ldexp(1.0, j)) <= w(std::ldexp(1.0, j + 1)));
  // log t / t^beta decreases once log t > 1 / beta
  for (double beta : {0.05, 0.5}) {
    double prev = 1e300;
    for (int k = 10; k <= 40; k += 5) {
      const double t = std::pow(10.0, k);
      const double v = w(t) / std::pow(t, beta);
      CHECK(v < prev);
      prev = v;
    }
  }
  const double c2 = dyadic_ratio_constant(w, 2, 0, 40);
  CHECK(c2 >= 1.0);
  CHECK(std::isfinite(c2));
}

TEST_CASE("tabulated weights") {
  CHECK_THROWS_AS(SlowlyVaryingWeight::tabulated({0.0, 1.0, 2.0}, {0.0, 2.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(SlowlyVaryingWeight::tabulated({0.0, 1.0, 2.0}, {0.0, 0.0, 0.0}), ConfigError);
  const auto w = SlowlyVaryingWeight::tabulated({0.0, 1.0, 3.0}, {0.0, 1.0, 2.0});
  CHECK(w(2.0) == Approx(1.5));
  CHECK(w(100.0) == Approx(2.0));

  const std::string path = "weights_table_test.csv";
  {
    std::ofstream os(path);
    os << "t,psi\n0,0\n1,1\n3,2\n";
  }
  CHECK(SlowlyVaryingWeight::parse("table:" + path)(2.0) == Approx(1.5));
  CHECK(SlowlyVaryingWeight::parse("log:alpha=2")(kE * kE - kE) == Approx(3.0));
  CHECK_THROWS_AS(SlowlyVaryingWeight::parse("log:beta=2"), ConfigError);
}
