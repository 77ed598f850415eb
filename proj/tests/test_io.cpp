#include <doctest.h>

#include <fstream>
#include <sstream>

#include "lpeuler/ensemble.hpp"
#include "lpeuler/experiment.hpp"
#include "lpeuler/io.hpp"

using namespace lpeuler;

namespace {

// CSV body without the comment preamble (which carries a timestamp).
std::string body(const std::string& csv) {
  std::stringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out += line + '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("format_double round trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.283185307179586, 1e-300, 1.7976931348623157e308}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("field files round trip") {
  const auto g = FrequencyGrid::make(32, 3.0);
  const SpectralField u = SpectralField::stack({random_field(g, 1, 0, {}), random_field(g, 1, 1, {})});
  for (const std::string path : {"io_test_field.lpf", "io_test_field.csv"}) {
    write_field(path, u);
    const StoredField back = read_field(path);
    CAPTURE(path);
    CHECK(back.n == 32);
    CHECK(back.l == 3.0);
    REQUIRE(back.samples.size() == 2);
    CHECK((back.samples[0] - u.physical(0)).abs().maxCoeff() == 0.0);
    CHECK((back.samples[1] - u.physical(1)).abs().maxCoeff() == 0.0);
  }
  {
    std::ofstream os("io_test_bad.lpf", std::ios::binary);
    os << "LPF2";
  }
  CHECK_THROWS_AS(read_field("io_test_bad.lpf"), ConfigError);
  {
    std::ofstream os("io_test_bad.csv");
    os << "x,y,value\n0,0,1\n0,1,2\n0,2,3\n";
  }
  CHECK_THROWS_AS(read_field("io_test_bad.csv"), ConfigError);
  CHECK_THROWS_AS(read_field("io_test_missing.lpf"), ConfigError);
}

TEST_CASE("config documents") {
  const ConfigMap doc = parse_config("# comment\n\ngrid_n = 32\n  dt=0.01  \ninit = random:slope=3,seed=2\n",
                                     simulate_keys());
  CHECK(doc.at("grid_n") == "32");
  CHECK(doc.at("dt") == "0.01");
  CHECK(doc.at("init") == "random:slope=3,seed=2");
  CHECK_THROWS_AS(parse_config("grid = 32\n", simulate_keys()), ConfigError);
  CHECK_THROWS_AS(parse_config("grid_n 32\n", simulate_keys()), ConfigError);
  CHECK_THROWS_AS(parse_config("n_max = 3\n", simulate_keys()), ConfigError);
  CHECK(parse_config("n_max = 3\n", iterate_keys()).at("n_max") == "3");

  const EulerConfig e = euler_config(parse_config("grid_n = 32\nlp_exponents = 4,inf\n", simulate_keys()));
  CHECK(e.grid_n == 32);
  REQUIRE(e.lp_exponents.size() == 3);
  CHECK(e.lp_exponents.front() == 2.0);
  CHECK_THROWS_AS(euler_config({{"grid_n", "3.5"}}), ConfigError);
  CHECK_THROWS_AS(euler_config({{"dealias", "maybe"}}), ConfigError);
  CHECK_THROWS_AS(parse_exponent_list("0.5"), ConfigError);

  const IterationConfig it = iteration_config({{"T", "0.25"}, {"c_empirical", "0.5"}});
  CHECK(it.horizon == 0.25);
  CHECK(*it.c_empirical == 0.5);
  CHECK(resolved(it).at("c_empirical") == "0.5");
  CHECK(resolved(IterationConfig{}).at("c_empirical") == "fit");
}

TEST_CASE("CSV outputs") {
  SuiteConfig sc;
  sc.samples = 3;
  const EstimateReport rep = run_suite(sc);
  std::ostringstream a, b;
  write_report_csv(a, rep, resolved(sc));
  write_report_csv(b, run_suite(sc), resolved(sc));
  CHECK(body(a.str()) == body(b.str()));
  CHECK(a.str().rfind("# generated ", 0) == 0);
  CHECK(a.str().find("# space = B:s=2,p=2,q=2\n") != std::string::npos);
  CHECK(body(a.str()).rfind("sample_id,lhs,rhs,ratio\n", 0) == 0);
  CHECK(body(a.str()).find("\nmax_ratio,,,") != std::string::npos);

  EulerConfig ec;
  ec.grid_n = 32;
  ec.t_end = 0.02;
  ec.dt = 0.01;
  ec.sample_every = 1;
  ec.lp_exponents = {2.0, 4.0};
  std::ostringstream sim;
  write_simulation_csv(sim, run(ec), ec);
  const std::string sb = body(sim.str());
  CHECK(sb.rfind("t,energy,enstrophy,linf_vorticity,lp2_vorticity,grad_u_linf,bkm_integrand,bkm_integral,"
                 "space_norm,apriori_bound,bkm_bound,lp4_vorticity\n",
                 0) == 0);
  CHECK(std::count(sb.begin(), sb.end(), '\n') == 4);
}
