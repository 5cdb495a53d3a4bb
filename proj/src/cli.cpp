#include <plsim/cli.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include <plsim/cpt.hpp>
#include <plsim/drawing.hpp>
#include <plsim/experiments.hpp>
#include <plsim/pareto.hpp>
#include <plsim/population.hpp>
#include <plsim/report.hpp>

namespace plsim::cli {

namespace {

struct ExperimentFlags {
    std::string config_path;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> draws;
    std::optional<std::size_t> accounts;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<double> b;
    std::vector<std::string> schedules;
    std::vector<double> caps;
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    std::string out_path;
    std::string json_path;
    bool quiet = false;
};

struct CptFlags {
    std::string model = "dynamic";
    double x_min = 1.0;
    double x_max = 100000.0;
    std::size_t points = 200;
    std::string spacing = "log";
    cpt::CptParams params;
    cpt::FixedPrizeSpec fixed;
    cpt::DynamicPrizeSpec dynamic;
    std::optional<double> growth;  // applies to whichever model is chosen
    std::string out_path;
};

struct DrawFlags {
    double alpha = 1.04;
    double b = 150.0;
    std::size_t accounts = 100000;
    std::size_t prizes = 1000;
    double multiple = 1.0;
    std::string mechanism = "random";
    std::uint64_t seed = kDefaultSeed;
    bool winners = false;
    std::string population_path;
};

std::string number(double value, const char* format) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, value);
    return buffer;
}

// "1000x1" or "1000x100%".
PrizeSchedule parse_schedule(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) {
        throw std::invalid_argument("schedule '" + text + "' must look like COUNTxMULTIPLE, e.g. 1000x1 or 500x200%");
    }
    std::string multiple = text.substr(x + 1);
    double scale = 1.0;
    if (!multiple.empty() && multiple.back() == '%') {
        multiple.pop_back();
        scale = 0.01;
    }
    try {
        return PrizeSchedule(std::stoul(text.substr(0, x)), std::stod(multiple) * scale);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("schedule '" + text + "' is not COUNTxMULTIPLE");
    }
}

// Writes through `emit` to the named file, or to `fallback` when the path is
// empty. Returns false if the stream failed.
template <class Emit>
bool write_output(const std::string& path, std::ostream& fallback, std::ostream& err, Emit emit) {
    if (path.empty() || path == "-") {
        emit(fallback);
        fallback.flush();
        return static_cast<bool>(fallback);
    }
    std::ofstream file(path);
    if (!file) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    emit(file);
    file.close();
    if (!file) {
        err << "error: failed writing '" << path << "'\n";
        return false;
    }
    return true;
}

ExperimentConfig resolve_config(const ExperimentFlags& flags, ExperimentConfig base) {
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            throw std::invalid_argument("cannot read config '" + flags.config_path + "'");
        }
        nlohmann::json document;
        try {
            in >> document;
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("config '" + flags.config_path + "': " + e.what());
        }
        base = config_from_json(document, std::move(base));
    }
    if (flags.alpha || flags.b) {
        base.pareto = pareto::ParetoParams(flags.alpha.value_or(base.pareto.alpha()), flags.b.value_or(base.pareto.scale()));
    }
    if (flags.runs) {
        base.runs = *flags.runs;
    }
    if (flags.draws) {
        base.draws_per_run = *flags.draws;
    }
    if (flags.accounts) {
        base.n_accounts = *flags.accounts;
    }
    if (flags.seed) {
        base.master_seed = *flags.seed;
    }
    if (!flags.schedules.empty()) {
        base.schedules.clear();
        for (const auto& text : flags.schedules) {
            base.schedules.push_back(parse_schedule(text));
        }
    }
    if (!flags.caps.empty()) {
        base.caps = flags.caps;
    }
    base.validate();
    return base;
}

ProgressFn progress_reporter(const ExperimentFlags& flags, std::ostream& err, const char* name) {
    if (flags.quiet) {
        return {};
    }
    return [&err, name, last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
        const std::size_t decile = done * 10 / total;
        if (decile != last || done == total) {
            last = decile;
            err << name << ": " << done << "/" << total << " runs\n";
        }
    };
}

void add_experiment_flags(CLI::App& command, ExperimentFlags& flags) {
    command.add_option("--config", flags.config_path, "JSON experiment config (fields mirror ExperimentConfig)");
    command.add_option("--runs", flags.runs, "Number of runs");
    command.add_option("--draws", flags.draws, "Drawings per run");
    command.add_option("--accounts", flags.accounts, "Accounts per generated population");
    command.add_option("--seed", flags.seed, "Master seed");
    command.add_option("--alpha", flags.alpha, "Pareto shape");
    command.add_option("--b", flags.b, "Pareto scale (minimum balance)");
    command.add_option("--schedules", flags.schedules, "Prize schedules as COUNTxMULTIPLE, e.g. 1000x1 500x200%")
        ->delimiter(',');
    command.add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
    command.add_option("--out", flags.out_path, "CSV output file (default: stdout)");
    command.add_option("--json", flags.json_path, "JSON output with every per-run value");
    command.add_flag("--quiet", flags.quiet, "No progress on stderr");
}

int cmd_table1(const std::vector<double>& values, const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (values.empty() || values.size() % 2 != 0) {
        throw std::invalid_argument("--params needs alpha,b pairs");
    }
    std::vector<pareto::ParetoParams> sets;
    for (std::size_t i = 0; i < values.size(); i += 2) {
        sets.emplace_back(values[i], values[i + 1]);
    }
    const bool ok = write_output(out_path, out, err, [&](std::ostream& os) {
        os << "params,mean,median,p90,p95,p99,p99.9,p99.99\n";
        for (const auto& params : sets) {
            os << params_label(params) << ',' << number(pareto::mean(params), "%.2f");
            for (const double p : {0.5, 0.9, 0.95, 0.99, 0.999, 0.9999}) {
                os << ',' << number(pareto::quantile(params, p), "%.2f");
            }
            os << '\n';
        }
    });
    return ok ? 0 : 1;
}

int cmd_bracketing(const ExperimentFlags& flags, std::ostream& out, std::ostream& err) {
    const ExperimentConfig config = resolve_config(flags, reference_bracketing_config(pareto::ParetoParams(1.04, 150.0)));
    const BracketingResult result = run_bracketing(config, flags.threads, progress_reporter(flags, err, "bracketing"));
    bool ok = write_output(flags.out_path, out, err, [&](std::ostream& os) { write_bracketing_csv(result, os); });
    if (!flags.json_path.empty()) {
        ok = write_output(flags.json_path, out, err, [&](std::ostream& os) { os << to_json(result).dump(2) << '\n'; }) && ok;
    }
    return ok ? 0 : 1;
}

int cmd_caps(const ExperimentFlags& flags, std::ostream& out, std::ostream& err) {
    const ExperimentConfig config = resolve_config(flags, reference_caps_config(pareto::ParetoParams(1.04, 150.0)));
    if (config.caps.empty()) {
        throw std::invalid_argument("caps experiment needs at least one cap level");
    }
    const CapResult result = run_caps(config, flags.threads, progress_reporter(flags, err, "caps"));
    if (result.monotonicity_violations > 0) {
        err << "warning: " << result.monotonicity_violations << " drawings paid more after a cap was lowered\n";
    }
    bool ok = write_output(flags.out_path, out, err, [&](std::ostream& os) { write_caps_csv(result, os); });
    if (!flags.json_path.empty()) {
        ok = write_output(flags.json_path, out, err, [&](std::ostream& os) { os << to_json(result).dump(2) << '\n'; }) && ok;
    }
    return ok ? 0 : 1;
}

int cmd_cpt(CptFlags flags, std::ostream& out, std::ostream& err) {
    if (flags.growth) {
        flags.fixed.growth = flags.dynamic.growth = *flags.growth;
    }
    for (const auto& note : flags.params.warnings()) {
        err << "warning: " << note << '\n';
    }
    const cpt::ModelKind kind = cpt::parse_model(flags.model);
    const cpt::UtilityModel model = kind == cpt::ModelKind::dynamic ? cpt::UtilityModel::dynamic(flags.params, flags.dynamic)
                                    : kind == cpt::ModelKind::fixed ? cpt::UtilityModel::fixed(flags.params, flags.fixed)
                                                                    : cpt::UtilityModel::fixed_growth(flags.params, flags.fixed);
    const auto grid = flags.spacing == "log" ? cpt::log_grid(flags.x_min, flags.x_max, flags.points)
                                             : cpt::linear_grid(flags.x_min, flags.x_max, flags.points);
    const auto report = cpt::sign_report(model, grid);
    // A lone grid point is a value probe: no stencil across the grid.
    const bool with_differences = grid.size() > 1;

    const bool ok = write_output(flags.out_path, out, err, [&](std::ostream& os) {
        os << "x,gain,loss,total,d1_gain,d1_loss,d1_total,d2_gain,d2_loss,d2_total,"
              "sign_d1_gain,sign_d1_loss,sign_d1_total,sign_d2_gain,sign_d2_loss,sign_d2_total\n";
        for (const auto& point : report) {
            os << number(point.x, "%.10g") << ',' << number(point.utility.gain, "%.10g") << ','
               << number(point.utility.loss, "%.10g") << ',' << number(point.utility.total(), "%.10g");
            const auto emit = [&](const std::optional<cpt::Differences>& d, bool signs) {
                const bool present = with_differences && d.has_value();
                for (const double v : {present ? d->gain : 0.0, present ? d->loss : 0.0, present ? d->total : 0.0}) {
                    os << ',';
                    if (present) {
                        os << (signs ? std::to_string(cpt::sign_of(v)) : number(v, "%.10g"));
                    }
                }
            };
            emit(point.first, false);
            emit(point.second, false);
            emit(point.first, true);
            emit(point.second, true);
            os << '\n';
        }
    });
    return ok ? 0 : 1;
}

int cmd_draw(const DrawFlags& flags, std::ostream& out, std::ostream& err) {
    const pareto::ParetoParams params(flags.alpha, flags.b);
    const Mechanism mechanism = parse_mechanism(flags.mechanism);
    const PrizeSchedule schedule(flags.prizes, flags.multiple);
    const AccountPopulation population = generate_population(params, flags.accounts, derive_seed(flags.seed, {0}));
    Rng rng(derive_seed(flags.seed, {1}));
    const DrawOutcome outcome = draw(population, schedule, mechanism, rng);
    const double expected = expected_payout(population, schedule);

    bool ok = write_output("", out, err, [&](std::ostream& os) {
        os << "mechanism,accounts,prizes,multiple,population_mean,expected_payout,payout,scaled_payout,best_payout,"
              "worst_payout\n";
        os << to_string(mechanism) << ',' << population.count() << ',' << schedule.count() << ','
           << number(schedule.multiple(), "%g") << ',' << number(population.mean(), "%.6f") << ','
           << number(expected, "%.6f") << ',' << number(outcome.payout, "%.6f") << ','
           << number(outcome.payout / expected, "%.6f") << ','
           << number(best_payout(population, schedule, mechanism), "%.6f") << ','
           << number(worst_payout(population, schedule, mechanism), "%.6f") << '\n';
        if (flags.winners) {
            os << "\nwinner_index,balance\n";
            for (const std::size_t index : outcome.winners) {
                os << index << ',' << number(population[index], "%.6f") << '\n';
            }
        }
    });
    if (!flags.population_path.empty()) {
        ok = write_output(flags.population_path, out, err,
                          [&](std::ostream& os) { write_population_csv(population, os); }) && ok;
    }
    return ok ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Prize-linked savings risk simulator"};
    app.name(args.empty() ? "plsim" : args.front());
    app.require_subcommand(1);

    std::vector<double> table1_params{1.04, 150.0, 1.12, 250.0};
    std::string table1_out;
    auto* table1 = app.add_subcommand("table1", "Pareto mean and quantile table");
    table1->add_option("--params", table1_params, "alpha,b pairs")->delimiter(',');
    table1->add_option("--out", table1_out, "CSV output file (default: stdout)");

    ExperimentFlags bracketing_flags;
    auto* bracketing = app.add_subcommand("bracketing", "Random vs bracketed drawing experiment");
    add_experiment_flags(*bracketing, bracketing_flags);

    ExperimentFlags caps_flags;
    auto* caps = app.add_subcommand("caps", "Account cap experiment");
    add_experiment_flags(*caps, caps_flags);
    caps->add_option("--caps", caps_flags.caps, "Descending cap levels, e.g. 250000,50000,10000")->delimiter(',');

    CptFlags cpt_flags;
    auto* cpt_command = app.add_subcommand("cpt", "Prospect-theory utility curve dump");
    cpt_command->add_option("--model", cpt_flags.model, "fixed | fixed-growth | dynamic")
        ->check(CLI::IsMember({"fixed", "fixed-growth", "dynamic"}));
    cpt_command->add_option("--x-min", cpt_flags.x_min, "Smallest account size on the grid");
    cpt_command->add_option("--x-max", cpt_flags.x_max, "Largest account size on the grid");
    cpt_command->add_option("--points", cpt_flags.points, "Grid points")->check(CLI::PositiveNumber);
    cpt_command->add_option("--spacing", cpt_flags.spacing, "log | linear")->check(CLI::IsMember({"log", "linear"}));
    cpt_command->add_option("--y", cpt_flags.fixed.prize, "Fixed prize amount");
    cpt_command->add_option("--c", cpt_flags.fixed.prob_per_unit, "Win probability per unit saved");
    cpt_command->add_option("--r", cpt_flags.growth, "Growth rate");
    cpt_command->add_option("--w", cpt_flags.dynamic.multiple, "Dynamic prize multiple");
    cpt_command->add_option("--p", cpt_flags.dynamic.win_probability, "Dynamic win probability");
    cpt_command->add_option("--alpha-v", cpt_flags.params.alpha_v, "Gain curvature");
    cpt_command->add_option("--beta-v", cpt_flags.params.beta_v, "Loss curvature");
    cpt_command->add_option("--lambda", cpt_flags.params.lambda, "Loss aversion");
    cpt_command->add_option("--gamma", cpt_flags.params.gamma, "Gain weighting exponent");
    cpt_command->add_option("--delta", cpt_flags.params.delta, "Loss weighting exponent");
    cpt_command->add_option("--out", cpt_flags.out_path, "CSV output file (default: stdout)");

    DrawFlags draw_flags;
    auto* draw_command = app.add_subcommand("draw", "Single drawing on a generated population");
    draw_command->add_option("--alpha", draw_flags.alpha, "Pareto shape");
    draw_command->add_option("--b", draw_flags.b, "Pareto scale");
    draw_command->add_option("--accounts", draw_flags.accounts, "Number of accounts");
    draw_command->add_option("--prizes", draw_flags.prizes, "Prizes in the drawing");
    draw_command->add_option("--multiple", draw_flags.multiple, "Prize multiple (1 = 100%)");
    draw_command->add_option("--mechanism", draw_flags.mechanism, "random | bracketed")
        ->check(CLI::IsMember({"random", "bracketed"}));
    draw_command->add_option("--seed", draw_flags.seed, "Seed");
    draw_command->add_flag("--winners", draw_flags.winners, "List winning accounts");
    draw_command->add_option("--dump-population", draw_flags.population_path, "Write the population as CSV");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (table1->parsed()) {
            return cmd_table1(table1_params, table1_out, out, err);
        }
        if (bracketing->parsed()) {
            return cmd_bracketing(bracketing_flags, out, err);
        }
        if (caps->parsed()) {
            return cmd_caps(caps_flags, out, err);
        }
        if (cpt_command->parsed()) {
            return cmd_cpt(cpt_flags, out, err);
        }
        return cmd_draw(draw_flags, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace plsim::cli
