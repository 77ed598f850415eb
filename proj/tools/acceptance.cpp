// Runs the twelve acceptance checks and prints one PASS/FAIL line per check;
// exits 1 if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lpeuler/calculus.hpp"
#include "lpeuler/ensemble.hpp"
#include "lpeuler/euler.hpp"
#include "lpeuler/experiment.hpp"
#include "lpeuler/iteration.hpp"

using namespace lpeuler;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double spread(const std::vector<double>& xs) {
  double lo = kInf, hi = 0.0;
  for (double x : xs) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi / lo;
}

Outcome partition_of_unity() {
  const auto g = FrequencyGrid::make(128);
  const DyadicPartition part(g);
  RealGrid sum = RealGrid::Zero(g->n(), g->half());
  for (int j : part.bands()) sum += part.band(j);
  const double dev = ((sum - 1.0).abs() * g->mask()).maxCoeff();
  return {dev < 1e-12, "max deviation " + fmt(dev)};
}

Outcome almost_orthogonality() {
  const auto g = FrequencyGrid::make(128);
  const DyadicPartition part(g);
  double lo = kInf, hi = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const SpectralField f = random_field(g, 2, s);
    double acc = 0.0;
    for (int j : part.bands()) acc += std::pow(lp_norm(delta_j(f, j, part), 2.0), 2);
    const double r = acc / std::pow(lp_norm(f, 2.0), 2);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo >= 0.5 - 1e-10 && hi <= 1.0 + 1e-10, "ratios in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

Outcome bernstein_stability() {
  SuiteConfig cfg;
  cfg.suite = "bernstein";
  cfg.samples = 30;
  std::vector<double> spreads;
  bool ok = true;
  std::string detail = "band spread";
  for (int n : {64, 128, 256}) {
    cfg.grid_n = n;
    const EstimateReport r = run_suite(cfg);
    ok = ok && !suite_violated(r, cfg.suite);
    spreads.push_back(r.empirical_constant);
    detail += " n=" + std::to_string(n) + ":" + fmt(r.empirical_constant);
  }
  const double drift = spread(spreads);
  ok = ok && drift < 2.0;
  for (double s : spreads) ok = ok && s < 10.0;
  return {ok, detail + ", drift " + fmt(drift)};
}

Outcome paraproduct_identity() {
  const auto g = FrequencyGrid::make(64);
  const DyadicPartition part(g);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SpectralField f = random_field(g, 4, s), h = random_field(g, 4, s, {.stream = 1});
    const double scale = lp_norm(f, kInf) * lp_norm(h, kInf);
    worst = std::max(worst, paraproduct_residual(f, h, part) / scale);
  }
  return {worst < 1e-10, "worst relative residual " + fmt(worst)};
}

Outcome estimate_suites() {
  struct Case {
    std::string label, suite, space;
  };
  const std::vector<Case> cases{
      {"leibniz-B", "leibniz", "B:s=2,p=2,q=2"},     {"leibniz-F", "leibniz", "F:s=2,p=3,q=2"},
      {"commutator-B", "commutator-b", ""},         {"commutator-F", "commutator-tl", ""},
      {"remainder", "remainder", ""},               {"multiplier", "multiplier", ""},
      {"embedding", "embedding", ""},
  };
  bool ok = true;
  std::ostringstream detail;
  auto judge = [&](const std::string& label, const std::vector<double>& constants) {
    const double d = spread(constants);
    bool finite = true;
    for (double c : constants) finite = finite && std::isfinite(c) && c > 0.0;
    ok = ok && finite && d < 2.0;
    detail << ' ' << label << ":" << fmt(d) << (finite && d < 2.0 ? "" : "(!)");
  };
  for (const Case& c : cases) {
    SuiteConfig cfg;
    cfg.suite = c.suite;
    cfg.space = c.space;
    cfg.samples = 20;
    std::vector<double> all, bad, good;
    for (int n : {64, 128, 256}) {
      cfg.grid_n = n;
      const EstimateReport r = run_suite(cfg);
      if (suite_violated(r, c.suite)) {
        ok = false;
        detail << ' ' << c.label << " violated at n=" << n;
      }
      all.push_back(r.empirical_constant);
      if (!r.rhs_bad.empty() && !std::isnan(r.rhs_bad.front())) {
        double cb = 0.0, cg = 0.0;
        for (std::size_t i = 0; i < r.samples; ++i) {
          if (r.rhs_bad[i] > 0.0) cb = std::max(cb, r.lhs[i] / r.rhs_bad[i]);
          if (r.rhs_good[i] > 0.0) cg = std::max(cg, r.lhs[i] / r.rhs_good[i]);
        }
        bad.push_back(cb);
        good.push_back(cg);
      }
    }
    judge(c.label, all);
    if (!bad.empty()) {
      judge(c.label + "/bad", bad);
      judge(c.label + "/good", good);
    }
  }
  return {ok, "sweep spreads" + detail.str()};
}

Outcome biot_savart_exactness() {
  const auto g = FrequencyGrid::make(128);
  double curl_err = 0.0, div_err = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SpectralField w = random_field(g, 6, s);
    const SpectralField u = biot_savart(w);
    curl_err = std::max(curl_err, lp_norm(curl(u) - w, kInf));
    div_err = std::max(div_err, lp_norm(divergence(u), kInf));
  }
  return {curl_err < 1e-12 && div_err < 1e-12, "curl " + fmt(curl_err) + ", div " + fmt(div_err)};
}

Outcome stationary_taylor() {
  EulerConfig cfg;
  cfg.grid_n = 128;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.sample_every = 100;
  const GridPtr g = FrequencyGrid::make(cfg.grid_n);
  const SpectralField w0 = initial_vorticity("taylor", g);
  const RunResult res = run(cfg, w0);
  const double dev = lp_norm(res.final_state.omega - w0, kInf);
  const ConservationDrift d = conservation_check(res.records);
  return {dev < 1e-6 && d.energy < 1e-8 && d.enstrophy < 1e-8,
          "|w - w0| " + fmt(dev) + ", energy drift " + fmt(d.energy) + ", enstrophy drift " +
              fmt(d.enstrophy)};
}

std::vector<RunResult> random_runs() {
  std::vector<RunResult> out;
  for (int seed = 1; seed <= 5; ++seed) {
    EulerConfig cfg;
    cfg.grid_n = 64;
    cfg.dt = 2e-3;
    cfg.t_end = 2.0;
    cfg.sample_every = 10;
    cfg.init = "random:slope=3,seed=" + std::to_string(seed);
    out.push_back(run(cfg));
  }
  return out;
}

Outcome apriori_bound(const std::vector<RunResult>& runs) {
  bool ok = true;
  std::string detail = "C per seed";
  for (const RunResult& r : runs) {
    ok = ok && r.apriori_ok;
    detail += ' ' + fmt(r.c_apriori) + (r.apriori_ok ? "" : "(!)");
  }
  return {ok, detail};
}

Outcome bkm_chain(const std::vector<RunResult>& runs) {
  bool ok = true;
  std::string detail = "C chain/global per seed";
  for (const RunResult& r : runs) {
    ok = ok && r.bkm_chain_ok && r.global_ok;
    detail += ' ' + fmt(r.c_bkm_chain) + '/' + fmt(r.c_global) + (r.bkm_chain_ok && r.global_ok ? "" : "(!)");
  }
  return {ok, detail};
}

Outcome iteration() {
  bool ok = true;
  std::ostringstream detail;
  for (const std::string init : {"taylor", "random:slope=3,amp=0.3,seed=3"}) {
    IterationConfig cfg;
    cfg.grid_n = 64;
    cfg.dt = 2e-3;
    cfg.n_max = 8;
    cfg.init = init;
    cfg.sample_every = 5;
    IterationResult res;
    convergence_vs_solver(initial_velocity(cfg), cfg, &res);
    const auto& gap = res.solver_gap;
    const bool decreasing = (gap[3] < gap[1] && gap[7] < gap[3]) || gap[1] < 1e-6;
    const bool pass = res.t0_applicable && res.uniform_ok && res.rho < 0.9 && decreasing;
    ok = ok && pass;
    detail << (init == "taylor" ? "taylor" : "random") << ": C " << fmt(res.c_used) << ", T0 "
           << fmt(res.horizon) << ", rho " << fmt(res.rho) << (res.rho <= 0.5 ? " (<= 1/2)" : "")
           << ", gap n=2/4/8 " << fmt(gap[1]) << '/' << fmt(gap[3]) << '/' << fmt(gap[7])
           << (pass ? "" : " (!)") << "; ";
  }
  return {ok, detail.str()};
}

Outcome t0_formula() {
  bool ok = t0(1.0, 1.0) == 0.0625;
  try {
    t0(1.25, 1.0);
    ok = false;
  } catch (const ConstantTooLargeError&) {
  }
  return {ok, "t0(1, 1) = " + format_double(t0(1.0, 1.0))};
}

std::string csv_body(const std::string& csv) {
  return csv.substr(csv.find('\n') + 1);  // drop the timestamp line
}

Outcome determinism() {
  bool ok = true;
  for (const std::string& suite : suite_names()) {
    SuiteConfig cfg;
    cfg.suite = suite;
    cfg.samples = 5;
    std::ostringstream a, b;
    write_report_csv(a, run_suite(cfg), resolved(cfg));
    write_report_csv(b, run_suite(cfg), resolved(cfg));
    ok = ok && csv_body(a.str()) == csv_body(b.str());
  }
  EulerConfig ec;
  ec.grid_n = 32;
  ec.t_end = 0.1;
  ec.dt = 1e-2;
  ec.init = "random:slope=3,seed=7";
  std::ostringstream a, b;
  write_simulation_csv(a, run(ec), ec);
  write_simulation_csv(b, run(ec), ec);
  ok = ok && csv_body(a.str()) == csv_body(b.str());
  return {ok, std::to_string(suite_names().size()) + " suites and one simulation compared"};
}

}  // namespace

int main() {
  struct Check {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> body;
  };
  std::vector<RunResult> runs;
  auto ensure_runs = [&]() -> const std::vector<RunResult>& {
    if (runs.empty()) runs = random_runs();
    return runs;
  };
  const std::vector<Check> checks{
      {1, "partition of unity", 1, partition_of_unity},
      {2, "almost orthogonality", 10, almost_orthogonality},
      {3, "Bernstein stability", 60, bernstein_stability},
      {4, "paraproduct identity", 60, paraproduct_identity},
      {5, "estimate suites", 600, estimate_suites},
      {6, "Biot-Savart exactness", 10, biot_savart_exactness},
      {7, "stationary Taylor flow", 60, stationary_taylor},
      {8, "a priori bound", 300, [&] { return apriori_bound(ensure_runs()); }},
      {9, "BKM chain and global bound", 300, [&] { return bkm_chain(ensure_runs()); }},
      {10, "iteration", 600, iteration},
      {11, "t0 formula", 1, t0_formula},
      {12, "determinism", 60, determinism},
  };
  int failed = 0;
  for (const Check& c : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.pass && secs < c.budget_s;
    if (!pass) ++failed;
    std::printf("%s %2d %-28s %8.2fs  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                out.detail.c_str(), out.pass && !pass ? " (over time budget)" : "");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
