#include "lpeuler/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lpeuler {

namespace {

double to_double(const ConfigMap& doc, const std::string& key, double fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  const std::string& v = it->second;
  if (v == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("bad number for " + key + ": '" + v + "'");
}

int to_int(const ConfigMap& doc, const std::string& key, int fallback) {
  const double d = to_double(doc, key, fallback);
  if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError(key + " must be an integer");
  return static_cast<int>(d);
}

bool to_bool(const ConfigMap& doc, const std::string& key, bool fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw ConfigError("bad boolean for " + key + ": '" + it->second + "'");
}

std::string to_string(const ConfigMap& doc, const std::string& key, const std::string& fallback) {
  const auto it = doc.find(key);
  return it == doc.end() ? fallback : it->second;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_double(xs[i]);
  return out;
}

}  // namespace

std::vector<double> parse_exponent_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    ConfigMap one{{"p", item}};
    const double p = to_double(one, "p", 0.0);
    if (!(p >= 1.0)) throw ConfigError("Lebesgue exponents must be >= 1");
    out.push_back(p);
  }
  if (out.empty()) throw ConfigError("empty exponent list");
  return out;
}

const std::set<std::string>& simulate_keys() {
  static const std::set<std::string> keys{"grid_n", "domain_l", "dt",          "t_end",
                                          "cfl",    "dealias",  "init",        "space",
                                          "weight", "lp_exponents", "sample_every", "seed",
                                          "out",    "log_level"};
  return keys;
}

const std::set<std::string>& iterate_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = simulate_keys();
    k.insert({"n_max", "enforce_t0", "c_empirical", "T"});
    return k;
  }();
  return keys;
}

EulerConfig euler_config(const ConfigMap& doc) {
  EulerConfig c;
  c.grid_n = to_int(doc, "grid_n", c.grid_n);
  c.domain_l = to_double(doc, "domain_l", c.domain_l);
  c.dt = to_double(doc, "dt", c.dt);
  c.t_end = to_double(doc, "t_end", c.t_end);
  c.cfl = to_double(doc, "cfl", c.cfl);
  c.dealias = to_bool(doc, "dealias", c.dealias);
  c.init = to_string(doc, "init", c.init);
  c.space = to_string(doc, "space", c.space);
  c.weight = to_string(doc, "weight", c.weight);
  if (doc.count("lp_exponents")) c.lp_exponents = parse_exponent_list(doc.at("lp_exponents"));
  // The output schema always carries the L^2 column.
  if (std::find(c.lp_exponents.begin(), c.lp_exponents.end(), 2.0) == c.lp_exponents.end()) {
    c.lp_exponents.insert(c.lp_exponents.begin(), 2.0);
  }
  c.sample_every = to_int(doc, "sample_every", c.sample_every);
  c.seed = static_cast<std::uint64_t>(to_int(doc, "seed", static_cast<int>(c.seed)));
  return c;
}

IterationConfig iteration_config(const ConfigMap& doc) {
  IterationConfig c;
  c.grid_n = to_int(doc, "grid_n", c.grid_n);
  c.domain_l = to_double(doc, "domain_l", c.domain_l);
  c.dt = to_double(doc, "dt", c.dt);
  c.horizon = to_double(doc, "T", to_double(doc, "t_end", c.horizon));
  c.cfl = to_double(doc, "cfl", c.cfl);
  c.dealias = to_bool(doc, "dealias", c.dealias);
  c.init = to_string(doc, "init", c.init);
  c.space = to_string(doc, "space", c.space);
  c.weight = to_string(doc, "weight", c.weight);
  c.sample_every = to_int(doc, "sample_every", c.sample_every);
  c.seed = static_cast<std::uint64_t>(to_int(doc, "seed", static_cast<int>(c.seed)));
  c.n_max = to_int(doc, "n_max", c.n_max);
  c.enforce_t0 = to_bool(doc, "enforce_t0", c.enforce_t0);
  if (doc.count("c_empirical")) c.c_empirical = to_double(doc, "c_empirical", 0.0);
  return c;
}

ConfigMap resolved(const EulerConfig& c) {
  return {{"grid_n", std::to_string(c.grid_n)},
          {"domain_l", format_double(c.domain_l)},
          {"dt", format_double(c.dt)},
          {"t_end", format_double(c.t_end)},
          {"cfl", format_double(c.cfl)},
          {"dealias", c.dealias ? "true" : "false"},
          {"init", c.init},
          {"space", c.space},
          {"weight", c.weight},
          {"lp_exponents", join(c.lp_exponents)},
          {"sample_every", std::to_string(c.sample_every)},
          {"seed", std::to_string(c.seed)}};
}

ConfigMap resolved(const IterationConfig& c) {
  ConfigMap m{{"grid_n", std::to_string(c.grid_n)},
              {"domain_l", format_double(c.domain_l)},
              {"dt", format_double(c.dt)},
              {"T", format_double(c.horizon)},
              {"cfl", format_double(c.cfl)},
              {"dealias", c.dealias ? "true" : "false"},
              {"init", c.init},
              {"space", c.space},
              {"weight", c.weight},
              {"sample_every", std::to_string(c.sample_every)},
              {"seed", std::to_string(c.seed)},
              {"n_max", std::to_string(c.n_max)},
              {"enforce_t0", c.enforce_t0 ? "true" : "false"}};
  m["c_empirical"] = c.c_empirical ? format_double(*c.c_empirical) : "fit";
  return m;
}

ConfigMap resolved(const SuiteConfig& c) {
  return {{"suite", c.suite},
          {"grid_n", std::to_string(c.grid_n)},
          {"samples", std::to_string(c.samples)},
          {"seed", std::to_string(c.seed)},
          {"space", c.space.empty() ? default_space(c.suite) : c.space},
          {"weight", c.weight},
          {"symbol", c.symbol},
          {"slope", c.slope > 0.0 ? format_double(c.slope) : "suite default"}};
}

void write_report_csv(std::ostream& os, const EstimateReport& report, const ConfigMap& header) {
  write_csv_preamble(os, header);
  os << "sample_id,lhs,rhs,ratio\n";
  for (std::size_t i = 0; i < report.samples; ++i) {
    os << i << ',' << format_double(report.lhs[i]) << ',' << format_double(report.rhs[i]) << ','
       << format_double(report.ratio(i)) << '\n';
  }
  os << "max_ratio,,," << format_double(report.empirical_constant) << '\n';
}

void write_simulation_csv(std::ostream& os, const RunResult& run, const EulerConfig& cfg) {
  ConfigMap header = resolved(cfg);
  write_csv_preamble(os, header);
  os << "t,energy,enstrophy,linf_vorticity,lp2_vorticity,grad_u_linf,bkm_integrand,bkm_integral,"
        "space_norm,apriori_bound,bkm_bound";
  std::size_t idx2 = 0;
  for (std::size_t i = 0; i < cfg.lp_exponents.size(); ++i) {
    if (cfg.lp_exponents[i] == 2.0) {
      idx2 = i;
    } else {
      os << ",lp" << format_double(cfg.lp_exponents[i]) << "_vorticity";
    }
  }
  os << '\n';
  for (const auto& r : run.records) {
    os << format_double(r.t) << ',' << format_double(r.energy) << ',' << format_double(r.enstrophy)
       << ',' << format_double(r.linf_vorticity) << ',' << format_double(r.lp_vorticity.at(idx2))
       << ',' << format_double(r.grad_u_linf) << ',' << format_double(r.bkm_integrand) << ','
       << format_double(r.bkm_integral) << ',' << format_double(r.space_norm) << ','
       << format_double(r.apriori_bound) << ',' << format_double(r.bkm_bound);
    for (std::size_t i = 0; i < cfg.lp_exponents.size(); ++i) {
      if (i != idx2) os << ',' << format_double(r.lp_vorticity[i]);
    }
    os << '\n';
  }
}

void write_iteration_csv(std::ostream& os, const IterationResult& res, const ConfigMap& header) {
  write_csv_preamble(os, header);
  os << "n,sup_norm,delta_n,rho_n,uniform_ok\n";
  for (const auto& r : res.records) {
    os << r.n << ',' << format_double(r.sup_norm) << ',' << format_double(r.delta) << ','
       << format_double(r.rho) << ',' << (r.uniform_ok ? 1 : 0) << '\n';
  }
}

}  // namespace lpeuler
