// Command-line entry point: norms, verify, simulate, iterate, weights.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "lpeuler/experiment.hpp"

using namespace lpeuler;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kConfigError = 2;

// Writes to the file if a path is given, else to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

bool quiet(const ConfigMap& doc) {
  const auto it = doc.find("log_level");
  return it != doc.end() && (it->second == "quiet" || it->second == "error");
}

int cmd_norms(const std::string& input, const std::string& space, const std::string& weight) {
  const StoredField stored = read_field(input);
  const GridPtr grid = FrequencyGrid::make(stored.n, stored.l);
  const SpectralField f = SpectralField::from_physical(grid, stored.samples);
  const DyadicPartition part(grid);
  const SpaceSpec spec = SpaceSpec::parse(space, SlowlyVaryingWeight::parse(weight));
  std::cout << format_double(norm(f, spec, part)) << '\n';
  return kOk;
}

int cmd_verify(const SuiteConfig& cfg, const std::string& sweep, const std::string& out) {
  const EstimateReport report = run_suite(cfg);
  Output o(out);
  write_report_csv(o.stream(), report, resolved(cfg));
  std::cerr << report.estimate_id << ": empirical constant " << format_double(report.empirical_constant)
            << ", violations " << report.violations << '\n';
  bool violated = suite_violated(report, cfg.suite);
  if (!sweep.empty()) {
    std::vector<int> sizes;
    for (double n : parse_exponent_list(sweep)) sizes.push_back(static_cast<int>(n));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& [n, c] : resolution_sweep(cfg, sizes)) {
      std::cerr << "  n=" << n << ": " << format_double(c) << '\n';
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (cfg.suite != "paraproduct" && lo > 0.0 && hi / lo >= 2.0) {
      std::cerr << "  resolution sweep varies by " << format_double(hi / lo) << "x\n";
      violated = true;
    }
  }
  return violated ? kViolation : kOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_flag) {
  const ConfigMap doc = read_config(config_path, simulate_keys());
  const EulerConfig cfg = euler_config(doc);
  const std::string out = out_flag.empty() ? (doc.count("out") ? doc.at("out") : "") : out_flag;
  RunResult res;
  try {
    res = run(cfg);
  } catch (const SimulationAborted& e) {
    const std::string dump = (out.empty() ? std::string("lpeuler") : out) + ".lastgood.lpf";
    write_field(dump, e.last_good.omega);
    std::cerr << e.what() << "; last finite state (t = " << e.last_good.t << ") written to " << dump
              << '\n';
    return kViolation;
  }
  Output o(out);
  write_simulation_csv(o.stream(), res, cfg);
  const bool ok = res.apriori_ok && res.bkm_chain_ok && res.global_ok;
  if (!quiet(doc)) {
    const ConservationDrift drift = conservation_check(res.records);
    std::cerr << "fitted on t <= " << format_double(res.fit_end) << ": C_apriori "
              << format_double(res.c_apriori) << (res.apriori_ok ? " (holds)" : " (VIOLATED)")
              << ", C_bkm " << format_double(res.c_bkm_chain) << (res.bkm_chain_ok ? " (holds)" : " (VIOLATED)")
              << ", C_global " << format_double(res.c_global) << (res.global_ok ? " (holds)" : " (VIOLATED)")
              << ", C_reverse " << format_double(res.c_reverse) << '\n'
              << "sharp window constants: a priori " << format_double(res.c_apriori_sharp)
              << ", bkm " << format_double(res.c_bkm_sharp) << '\n'
              << "drift: energy " << format_double(drift.energy) << ", enstrophy "
              << format_double(drift.enstrophy) << '\n';
  }
  return ok ? kOk : kViolation;
}

int cmd_iterate(const std::string& config_path, const std::string& out_flag, bool solver) {
  const ConfigMap doc = read_config(config_path, iterate_keys());
  const IterationConfig cfg = iteration_config(doc);
  const std::string out = out_flag.empty() ? (doc.count("out") ? doc.at("out") : "") : out_flag;
  const SpectralField u0 = initial_velocity(cfg);
  IterationResult res;
  if (solver) {
    convergence_vs_solver(u0, cfg, &res);
  } else {
    res = iterate(u0, cfg);
  }
  Output o(out);
  write_iteration_csv(o.stream(), res, resolved(cfg));
  if (!quiet(doc)) {
    std::cerr << "||u0|| = " << format_double(res.u0_norm) << ", C = " << format_double(res.c_used)
              << ", T = " << format_double(res.horizon)
              << (res.t0_applicable ? "" : " (T0 gate inapplicable: C >= 5/4)") << ", rho = "
              << format_double(res.rho) << ", uniform bound " << (res.uniform_ok ? "holds" : "FAILS")
              << '\n';
    for (std::size_t i = 0; i < res.solver_gap.size(); ++i) {
      std::cerr << "  n=" << i + 1 << " gap to solver " << format_double(res.solver_gap[i]) << '\n';
    }
  }
  return res.uniform_ok ? kOk : kViolation;
}

int cmd_weights(const std::string& weight, double r) {
  const SlowlyVaryingWeight w = SlowlyVaryingWeight::parse(weight);
  const Admissibility adm = is_admissible(w, r);
  const AdmissibilityIntegral integral = admissibility_integral(w, r, 1e8);
  std::cout << "weight " << w.describe() << '\n'
            << "r " << format_double(r) << '\n'
            << "admissible " << (adm.admissible ? "yes" : "no") << (adm.empirical ? " (empirical)" : "")
            << '\n'
            << "diagnostic " << adm.diagnostic << '\n'
            << "integral_1e8 " << format_double(integral.partial_integral) << '\n'
            << "dyadic_sum_1e8 " << format_double(integral.dyadic_sum) << '\n';
  for (double t : {1.0, 10.0, 1e3, 1e6}) {
    std::cout << "psi(" << format_double(t) << ") " << format_double(w(t)) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley norms, estimate verification and 2D Euler experiments"};
  app.require_subcommand(1);

  std::string input, space = "B:s=2,p=2,q=2", weight = "log:alpha=1";
  auto* norms = app.add_subcommand("norms", "norm of a stored field");
  norms->add_option("--input", input, "field file (.lpf or .csv)")->required();
  norms->add_option("--space", space, "B:s=..,p=..,q=..[,hom] or F:...");
  norms->add_option("--weight", weight, "log:alpha=<a> or table:<csv>");

  SuiteConfig suite;
  std::string verify_out, sweep;
  auto* verify = app.add_subcommand("verify", "estimate-verification suites");
  verify->add_option("--suite", suite.suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--samples", suite.samples);
  verify->add_option("--grid", suite.grid_n);
  verify->add_option("--seed", suite.seed);
  verify->add_option("--space", suite.space);
  verify->add_option("--weight", suite.weight);
  verify->add_option("--symbol", suite.symbol, "riesz:i=0,j=1,a=0 or grad_invlap_div:a=0");
  verify->add_option("--slope", suite.slope, "spectral slope of the random ensemble (default 2; s + 2 for embedding)");
  verify->add_option("--sweep", sweep, "comma-separated grid sizes for a resolution sweep");
  verify->add_option("--out", verify_out, "output CSV (stdout if omitted)");

  std::string sim_config, sim_out;
  auto* simulate = app.add_subcommand("simulate", "2D Euler run with diagnostics");
  simulate->add_option("--config", sim_config)->required();
  simulate->add_option("--out", sim_out);

  std::string it_config, it_out;
  bool it_solver = false;
  auto* iter = app.add_subcommand("iterate", "approximating sequence for local existence");
  iter->add_option("--config", it_config)->required();
  iter->add_option("--out", it_out);
  iter->add_flag("--solver", it_solver, "also compare every iterate with the Euler solver");

  std::string w_spec = "log:alpha=1";
  double w_r = 2.0;
  auto* weights = app.add_subcommand("weights", "admissibility report for a weight");
  weights->add_option("--weight", w_spec);
  weights->add_option("--r", w_r);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*norms) return cmd_norms(input, space, weight);
    if (*verify) return cmd_verify(suite, sweep, verify_out);
    if (*simulate) return cmd_simulate(sim_config, sim_out);
    if (*iter) return cmd_iterate(it_config, it_out, it_solver);
    if (*weights) return cmd_weights(w_spec, w_r);
  } catch (const StepSizeError& e) {
    std::cerr << "error: " << e.what() << " (try dt <= " << e.suggested_dt << ")\n";
    return kConfigError;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
