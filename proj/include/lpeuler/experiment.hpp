#ifndef LPEULER_EXPERIMENT_HPP_
#define LPEULER_EXPERIMENT_HPP_

#include <ostream>
#include <set>

#include "lpeuler/calculus.hpp"
#include "lpeuler/euler.hpp"
#include "lpeuler/io.hpp"
#include "lpeuler/iteration.hpp"

namespace lpeuler {

/// Keys accepted by `simulate` and `iterate` config files.
const std::set<std::string>& simulate_keys();
const std::set<std::string>& iterate_keys();

EulerConfig euler_config(const ConfigMap& doc);
IterationConfig iteration_config(const ConfigMap& doc);

/// Every setting of a config with defaults filled in, as written to CSV headers.
ConfigMap resolved(const EulerConfig& cfg);
ConfigMap resolved(const IterationConfig& cfg);
ConfigMap resolved(const SuiteConfig& cfg);

/// `sample_id,lhs,rhs,ratio` rows and a final `max_ratio` row.
void write_report_csv(std::ostream& os, const EstimateReport& report, const ConfigMap& header);
/// `t,energy,enstrophy,linf_vorticity,lp2_vorticity,grad_u_linf,bkm_integrand,
/// bkm_integral,space_norm,apriori_bound,bkm_bound`, then `lp<p>_vorticity`
/// for every configured exponent other than 2.
void write_simulation_csv(std::ostream& os, const RunResult& run, const EulerConfig& cfg);
/// `n,sup_norm,delta_n,rho_n,uniform_ok`.
void write_iteration_csv(std::ostream& os, const IterationResult& res, const ConfigMap& header);

std::vector<double> parse_exponent_list(const std::string& text);

}  // namespace lpeuler

#endif  // LPEULER_EXPERIMENT_HPP_
