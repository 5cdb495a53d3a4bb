#include <plsim/experiments.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <plsim/population.hpp>
#include <plsim/risk.hpp>

namespace plsim {

namespace {

// Substream ids under a run index.
constexpr std::uint64_t kPopulationStream = 0;
constexpr std::uint64_t kRandomStream = 1;
constexpr std::uint64_t kBracketStream = 2;

// Runs body(run) for every run index, spreading work over `threads` workers.
// Results are written into per-run slots by the body, so the output does not
// depend on scheduling.
template <class Body>
void for_each_run(std::size_t runs, std::size_t threads, const ProgressFn& progress, Body body) {
    threads = std::clamp<std::size_t>(threads, 1, runs);
    std::atomic<std::size_t> next{0};
    std::size_t completed = 0;
    std::mutex mutex;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t run = next.fetch_add(1);
            if (run >= runs) {
                return;
            }
            try {
                body(run);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(runs);
                return;
            }
            std::lock_guard lock(mutex);
            ++completed;
            if (progress) {
                progress(completed, runs);
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

MechanismRun summarize(std::span<const double> payouts, double expected, std::span<const double> levels,
                       double worst, double best) {
    const PayoutDistribution distribution = scale(payouts, expected);
    MechanismRun out;
    out.var_values.reserve(levels.size());
    for (const double level : levels) {
        out.var_values.push_back(var_approx(distribution, level));
    }
    out.worst = worst / expected;
    out.best = best / expected;
    out.mean_scaled = mean_of(distribution.values());
    return out;
}

std::optional<double> maybe_std(std::span<const double> values) {
    if (values.size() < 2) {
        return std::nullopt;
    }
    return std_dev(values);
}

BracketingRun bracketing_run(const ExperimentConfig& config, std::size_t run) {
    const auto population =
        generate_population(config.pareto, config.n_accounts, derive_seed(config.master_seed, {run, kPopulationStream}));
    const std::vector<std::size_t> order = sorted_indices(population);
    BracketingRun out;
    out.population_mean = population.mean();
    std::vector<double> payouts(config.draws_per_run);

    for (std::size_t s = 0; s < config.schedules.size(); ++s) {
        const PrizeSchedule& schedule = config.schedules[s];
        const double expected = expected_payout(population, schedule);
        BracketingScheduleRun record;

        RandomSelector random_selector(population.count());
        Rng random_rng(derive_seed(config.master_seed, {run, kRandomStream, s}));
        for (double& payout : payouts) {
            payout = payout_of(population, schedule.multiple(), random_selector.select(schedule.count(), random_rng));
        }
        record.random = summarize(payouts, expected, config.var_levels,
                                  worst_payout(population, schedule, Mechanism::random, order),
                                  best_payout(population, schedule, Mechanism::random, order));

        BracketSelector bracket_selector(order, schedule.count());
        Rng bracket_rng(derive_seed(config.master_seed, {run, kBracketStream, s}));
        for (double& payout : payouts) {
            payout = payout_of(population, schedule.multiple(), bracket_selector.select(bracket_rng));
        }
        record.bracketed = summarize(payouts, expected, config.var_levels,
                                     worst_payout(population, schedule, Mechanism::bracketed, order),
                                     best_payout(population, schedule, Mechanism::bracketed, order));
        out.schedules.push_back(std::move(record));
    }
    return out;
}

CapRun caps_run(const ExperimentConfig& config, std::size_t run) {
    const auto population =
        generate_population(config.pareto, config.n_accounts, derive_seed(config.master_seed, {run, kPopulationStream}));
    const std::vector<double> levels = cap_levels(config);
    const std::size_t n_levels = levels.size();
    // Capping is monotone, so one ascending order serves every cap level.
    const std::vector<std::size_t> order = sorted_indices(population);

    std::vector<AccountPopulation> capped;
    capped.reserve(n_levels);
    CapRun out;
    for (const double cap : levels) {
        capped.push_back(std::isinf(cap) ? population : apply_cap(population, cap));
        out.population_means.push_back(capped.back().mean());
    }

    std::vector<std::vector<double>> payouts(n_levels, std::vector<double>(config.draws_per_run));
    for (std::size_t s = 0; s < config.schedules.size(); ++s) {
        const PrizeSchedule& schedule = config.schedules[s];
        CapScheduleRun record;
        record.drawings = config.draws_per_run;

        RandomSelector selector(population.count());
        Rng rng(derive_seed(config.master_seed, {run, kRandomStream, s}));
        for (std::size_t d = 0; d < config.draws_per_run; ++d) {
            // One winner set, re-priced at every cap level.
            const auto winners = selector.select(schedule.count(), rng);
            for (std::size_t level = 0; level < n_levels; ++level) {
                payouts[level][d] = payout_of(capped[level], schedule.multiple(), winners);
                if (level > 0 && payouts[level][d] > payouts[level - 1][d]) {
                    ++record.monotonicity_violations;
                }
            }
        }
        for (std::size_t level = 0; level < n_levels; ++level) {
            const double expected = expected_payout(capped[level], schedule);
            const MechanismRun summary =
                summarize(payouts[level], expected, config.var_levels,
                          worst_payout(capped[level], schedule, Mechanism::random, order),
                          best_payout(capped[level], schedule, Mechanism::random, order));
            record.var_values.push_back(summary.var_values);
            record.worst.push_back(summary.worst);
        }
        out.schedules.push_back(std::move(record));
    }
    return out;
}

} // namespace

void ExperimentConfig::validate() const {
    if (runs == 0) {
        throw std::invalid_argument("runs must be at least 1");
    }
    if (draws_per_run == 0) {
        throw std::invalid_argument("draws_per_run must be at least 1");
    }
    if (n_accounts == 0) {
        throw std::invalid_argument("n_accounts must be at least 1");
    }
    if (schedules.empty()) {
        throw std::invalid_argument("at least one prize schedule is required");
    }
    for (const auto& schedule : schedules) {
        if (schedule.count() > n_accounts) {
            throw std::invalid_argument("prize schedule " + schedule.label() + " exceeds n_accounts");
        }
    }
    for (std::size_t i = 0; i < caps.size(); ++i) {
        if (!(caps[i] > 0.0)) {
            throw std::invalid_argument("caps must be positive");
        }
        if (i > 0 && !(caps[i] < caps[i - 1])) {
            throw std::invalid_argument("caps must be strictly descending");
        }
    }
    if (var_levels.empty()) {
        throw std::invalid_argument("at least one VaR level is required");
    }
    for (const double level : var_levels) {
        if (!(level > 0.0 && level < 1.0)) {
            throw std::invalid_argument("VaR levels must lie in (0, 1)");
        }
    }
}

std::vector<PrizeSchedule> reference_schedules() {
    return {PrizeSchedule(1000, 1.0), PrizeSchedule(500, 2.0), PrizeSchedule(100, 9.0), PrizeSchedule(10, 99.0)};
}

ExperimentConfig reference_bracketing_config(const pareto::ParetoParams& params) {
    ExperimentConfig config;
    config.pareto = params;
    config.schedules = reference_schedules();
    return config;
}

ExperimentConfig reference_caps_config(const pareto::ParetoParams& params) {
    ExperimentConfig config;
    config.pareto = params;
    config.schedules = reference_schedules();
    config.draws_per_run = 1000;
    config.runs = 2000;
    config.caps = {250000.0, 50000.0, 10000.0};
    config.var_levels = {0.05, 0.01, 0.001};
    return config;
}

std::string RiskRow::label() const {
    return level ? format_level(*level) : std::string("worst");
}

std::vector<RiskRow> risk_rows(std::span<const double> var_levels) {
    std::vector<RiskRow> rows;
    for (const double level : var_levels) {
        rows.push_back({level});
    }
    rows.push_back({std::nullopt});
    return rows;
}

double MechanismRun::row_value(std::size_t row) const {
    return row < var_values.size() ? var_values[row] : worst;
}

double CapScheduleRun::row_value(std::size_t cap_level, std::size_t row) const {
    const auto& values = var_values[cap_level];
    return row < values.size() ? values[row] : worst[cap_level];
}

std::vector<double> cap_levels(const ExperimentConfig& config) {
    std::vector<double> levels{std::numeric_limits<double>::infinity()};
    levels.insert(levels.end(), config.caps.begin(), config.caps.end());
    return levels;
}

BracketingResult run_bracketing(const ExperimentConfig& config, std::size_t threads, const ProgressFn& progress) {
    config.validate();
    BracketingResult result{config, std::vector<BracketingRun>(config.runs), {}};
    for_each_run(config.runs, threads, progress,
                 [&](std::size_t run) { result.runs[run] = bracketing_run(config, run); });

    const auto rows = risk_rows(config.var_levels);
    std::vector<double> random_values(config.runs);
    std::vector<double> bracket_values(config.runs);
    for (std::size_t s = 0; s < config.schedules.size(); ++s) {
        std::vector<BracketingRow> table;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t run = 0; run < config.runs; ++run) {
                random_values[run] = result.runs[run].schedules[s].random.row_value(r);
                bracket_values[run] = result.runs[run].schedules[s].bracketed.row_value(r);
            }
            BracketingRow row;
            row.row = rows[r];
            row.random_avg = mean_of(random_values);
            row.bracket_avg = mean_of(bracket_values);
            row.pct_bracket_higher = compare_percentage_higher(bracket_values, random_values);
            row.random_std = maybe_std(random_values);
            row.bracket_std = maybe_std(bracket_values);
            row.rel_diff_pct = relative_difference(row.random_avg, row.bracket_avg);
            table.push_back(row);
        }
        result.table.push_back(std::move(table));
    }
    return result;
}

CapResult run_caps(const ExperimentConfig& config, std::size_t threads, const ProgressFn& progress) {
    config.validate();
    CapResult result{config, std::vector<CapRun>(config.runs), {}, 0, 0};
    for_each_run(config.runs, threads, progress, [&](std::size_t run) { result.runs[run] = caps_run(config, run); });

    const auto rows = risk_rows(config.var_levels);
    const std::size_t n_levels = config.caps.size() + 1;
    std::vector<std::vector<double>> values(n_levels, std::vector<double>(config.runs));
    for (std::size_t s = 0; s < config.schedules.size(); ++s) {
        std::vector<CapRow> table;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            CapRow row{rows[r], {}};
            for (std::size_t level = 0; level < n_levels; ++level) {
                for (std::size_t run = 0; run < config.runs; ++run) {
                    values[level][run] = result.runs[run].schedules[s].row_value(level, r);
                }
                CapCell cell{mean_of(values[level]), std::nullopt};
                if (level > 0) {
                    cell.pct_higher = compare_percentage_higher(values[level], values[level - 1]);
                }
                row.cells.push_back(cell);
            }
            table.push_back(std::move(row));
        }
        result.table.push_back(std::move(table));
    }
    for (const auto& run : result.runs) {
        for (const auto& schedule : run.schedules) {
            result.drawings_checked += schedule.drawings;
            result.monotonicity_violations += schedule.monotonicity_violations;
        }
    }
    return result;
}

} // namespace plsim
