#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include <plsim/experiments.hpp>

namespace plsim {

/// "alpha=1.04 b=150"
std::string params_label(const pareto::ParetoParams& params);

/// Columns: params, schedule, var_level, random_avg, bracket_avg,
/// pct_bracket_higher, random_std, bracket_std, rel_diff_pct.
/// Standard deviations are left blank when there is a single run.
void write_bracketing_csv(const BracketingResult& result, std::ostream& out);

/// Columns: params, schedule, var_level, uncapped_avg, then for each cap c:
/// cap_<c>_avg, cap_<c>_pct_higher.
void write_caps_csv(const CapResult& result, std::ostream& out);

/// Config, aggregated table and every per-run value.
nlohmann::json to_json(const BracketingResult& result);
nlohmann::json to_json(const CapResult& result);

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Overlays the fields present in `document` onto `base`. Field names match
/// ExperimentConfig; `pareto` is {"alpha", "b"} and each schedule is
/// {"count", "multiple"}. Throws std::invalid_argument on malformed input.
ExperimentConfig config_from_json(const nlohmann::json& document, ExperimentConfig base);

} // namespace plsim
