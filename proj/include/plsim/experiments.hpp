#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <plsim/drawing.hpp>
#include <plsim/pareto.hpp>
#include <plsim/rng.hpp>

namespace plsim {

/// Settings shared by the bracketing and cap experiments. An empty `caps`
/// list means no cap levels beyond the uncapped one.
struct ExperimentConfig {
    pareto::ParetoParams pareto{1.04, 150.0};
    std::size_t n_accounts = 100000;
    std::vector<PrizeSchedule> schedules;
    std::size_t draws_per_run = 10000;
    std::size_t runs = 200;
    std::vector<double> caps;
    std::vector<double> var_levels{0.05, 0.01, 0.001, 0.0001};
    std::uint64_t master_seed = kDefaultSeed;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// The four prize setups with an expected interest near 1% over 100,000
/// accounts: 1000x100%, 500x200%, 100x900%, 10x9900%.
std::vector<PrizeSchedule> reference_schedules();

/// 100,000 accounts, reference schedules, 10,000 draws x 200 runs.
ExperimentConfig reference_bracketing_config(const pareto::ParetoParams& params);

/// 100,000 accounts, reference schedules, 1,000 draws x 2,000 runs, caps
/// 250,000 / 50,000 / 10,000, VaR levels 5% / 1% / 0.1%.
ExperimentConfig reference_caps_config(const pareto::ParetoParams& params);

/// A table row is either a VaR level or the analytic worst payout.
struct RiskRow {
    std::optional<double> level;
    std::string label() const;
};

std::vector<RiskRow> risk_rows(std::span<const double> var_levels);

/// Per-run scaled statistics for one mechanism and schedule.
struct MechanismRun {
    std::vector<double> var_values;  // one per configured VaR level
    double worst = 0.0;              // analytic worst payout, scaled
    double best = 0.0;               // analytic best payout, scaled
    double mean_scaled = 0.0;        // mean of all scaled payouts in the run

    /// var_values followed by worst, aligned with risk_rows().
    double row_value(std::size_t row) const;
};

struct BracketingScheduleRun {
    MechanismRun random;
    MechanismRun bracketed;
};

struct BracketingRun {
    double population_mean = 0.0;
    std::vector<BracketingScheduleRun> schedules;
};

struct BracketingRow {
    RiskRow row;
    double random_avg = 0.0;
    double bracket_avg = 0.0;
    double pct_bracket_higher = 0.0;
    std::optional<double> random_std;  // absent with a single run
    std::optional<double> bracket_std;
    double rel_diff_pct = 0.0;
};

struct BracketingResult {
    ExperimentConfig config;
    std::vector<BracketingRun> runs;
    std::vector<std::vector<BracketingRow>> table;  // [schedule][row]
};

struct CapScheduleRun {
    std::vector<std::vector<double>> var_values;  // [cap level][VaR level]
    std::vector<double> worst;                    // [cap level]
    std::size_t drawings = 0;
    std::size_t monotonicity_violations = 0;      // raw payout rose as the cap fell

    double row_value(std::size_t cap_level, std::size_t row) const;
};

struct CapRun {
    std::vector<double> population_means;  // [cap level]
    std::vector<CapScheduleRun> schedules;
};

struct CapCell {
    double avg = 0.0;
    std::optional<double> pct_higher;  // vs the previous cap level; absent for uncapped
};

struct CapRow {
    RiskRow row;
    std::vector<CapCell> cells;  // [cap level]
};

struct CapResult {
    ExperimentConfig config;
    std::vector<CapRun> runs;
    std::vector<std::vector<CapRow>> table;  // [schedule][row]
    std::size_t drawings_checked = 0;
    std::size_t monotonicity_violations = 0;
};

/// Called after each completed run with (completed, total).
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

/// Per run: fresh population; for each schedule, draws_per_run random and
/// draws_per_run bracketed drawings scaled by the expected payout, with VaR
/// approximations and analytic worst/best payouts. Output is identical for
/// any thread count.
BracketingResult run_bracketing(const ExperimentConfig& config, std::size_t threads = 1,
                                const ProgressFn& progress = {});

/// Per run: fresh population; for each schedule, draws_per_run random
/// winner sets, each re-evaluated against every cap level (uncapped first,
/// then config.caps) and scaled by that level's expected payout.
CapResult run_caps(const ExperimentConfig& config, std::size_t threads = 1,
                   const ProgressFn& progress = {});

/// Cap levels evaluated by run_caps: +infinity (uncapped) followed by caps.
std::vector<double> cap_levels(const ExperimentConfig& config);

} // namespace plsim
