#include <plsim/report.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace plsim {

namespace {

using nlohmann::json;

std::string fixed(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
    return buffer;
}

std::string optional_fixed(const std::optional<double>& value, int decimals) {
    return value ? fixed(*value, decimals) : std::string();
}

std::string cap_name(double cap) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.0f", cap);
    return buffer;
}

json level_json(const RiskRow& row) {
    return row.level ? json(*row.level) : json("worst");
}

json mechanism_json(const MechanismRun& run) {
    return {{"var", run.var_values}, {"worst", run.worst}, {"best", run.best}, {"mean_scaled", run.mean_scaled}};
}

template <class T>
T required(const json& object, const char* key) {
    if (!object.contains(key)) {
        throw std::invalid_argument(std::string("config: missing field '") + key + "'");
    }
    return object.at(key).get<T>();
}

} // namespace

std::string params_label(const pareto::ParetoParams& params) {
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, "alpha=%g b=%g", params.alpha(), params.scale());
    return buffer;
}

void write_bracketing_csv(const BracketingResult& result, std::ostream& out) {
    out << "params,schedule,var_level,random_avg,bracket_avg,pct_bracket_higher,random_std,bracket_std,rel_diff_pct\n";
    const std::string params = params_label(result.config.pareto);
    for (std::size_t s = 0; s < result.table.size(); ++s) {
        const std::string schedule = result.config.schedules[s].label();
        for (const auto& row : result.table[s]) {
            out << params << ',' << schedule << ',' << row.row.label() << ',' << fixed(row.random_avg, 6) << ','
                << fixed(row.bracket_avg, 6) << ',' << fixed(row.pct_bracket_higher, 2) << ','
                << optional_fixed(row.random_std, 6) << ',' << optional_fixed(row.bracket_std, 6) << ','
                << fixed(row.rel_diff_pct, 2) << '\n';
        }
    }
}

void write_caps_csv(const CapResult& result, std::ostream& out) {
    out << "params,schedule,var_level,uncapped_avg";
    for (const double cap : result.config.caps) {
        const std::string name = std::isinf(cap) ? std::string("inf") : cap_name(cap);
        out << ",cap_" << name << "_avg,cap_" << name << "_pct_higher";
    }
    out << '\n';
    const std::string params = params_label(result.config.pareto);
    for (std::size_t s = 0; s < result.table.size(); ++s) {
        const std::string schedule = result.config.schedules[s].label();
        for (const auto& row : result.table[s]) {
            out << params << ',' << schedule << ',' << row.row.label();
            for (std::size_t level = 0; level < row.cells.size(); ++level) {
                out << ',' << fixed(row.cells[level].avg, 6);
                if (level > 0) {
                    out << ',' << optional_fixed(row.cells[level].pct_higher, 2);
                }
            }
            out << '\n';
        }
    }
}

json config_to_json(const ExperimentConfig& config) {
    json schedules = json::array();
    for (const auto& schedule : config.schedules) {
        schedules.push_back({{"count", schedule.count()}, {"multiple", schedule.multiple()}});
    }
    return {{"pareto", {{"alpha", config.pareto.alpha()}, {"b", config.pareto.scale()}}},
            {"n_accounts", config.n_accounts},
            {"schedules", schedules},
            {"draws_per_run", config.draws_per_run},
            {"runs", config.runs},
            {"caps", config.caps},
            {"var_levels", config.var_levels},
            {"master_seed", config.master_seed}};
}

ExperimentConfig config_from_json(const json& document, ExperimentConfig base) {
    if (!document.is_object()) {
        throw std::invalid_argument("config: top level must be a JSON object");
    }
    static const std::set<std::string> known{"pareto", "n_accounts", "schedules", "draws_per_run",
                                             "runs", "caps", "var_levels", "master_seed"};
    for (const auto& item : document.items()) {
        if (!known.contains(item.key())) {
            throw std::invalid_argument("config: unknown key '" + item.key() + "'");
        }
    }
    try {
        if (document.contains("pareto")) {
            const json& pareto = document.at("pareto");
            base.pareto = pareto::ParetoParams(required<double>(pareto, "alpha"), required<double>(pareto, "b"));
        }
        if (document.contains("n_accounts")) {
            base.n_accounts = document.at("n_accounts").get<std::size_t>();
        }
        if (document.contains("schedules")) {
            base.schedules.clear();
            for (const json& entry : document.at("schedules")) {
                base.schedules.emplace_back(required<std::size_t>(entry, "count"), required<double>(entry, "multiple"));
            }
        }
        if (document.contains("draws_per_run")) {
            base.draws_per_run = document.at("draws_per_run").get<std::size_t>();
        }
        if (document.contains("runs")) {
            base.runs = document.at("runs").get<std::size_t>();
        }
        if (document.contains("caps")) {
            base.caps = document.at("caps").get<std::vector<double>>();
        }
        if (document.contains("var_levels")) {
            base.var_levels = document.at("var_levels").get<std::vector<double>>();
        }
        if (document.contains("master_seed")) {
            base.master_seed = document.at("master_seed").get<std::uint64_t>();
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return base;
}

json to_json(const BracketingResult& result) {
    json table = json::array();
    for (std::size_t s = 0; s < result.table.size(); ++s) {
        for (const auto& row : result.table[s]) {
            table.push_back({{"schedule", result.config.schedules[s].label()},
                             {"var_level", level_json(row.row)},
                             {"random_avg", row.random_avg},
                             {"bracket_avg", row.bracket_avg},
                             {"pct_bracket_higher", row.pct_bracket_higher},
                             {"random_std", row.random_std ? json(*row.random_std) : json(nullptr)},
                             {"bracket_std", row.bracket_std ? json(*row.bracket_std) : json(nullptr)},
                             {"rel_diff_pct", row.rel_diff_pct}});
        }
    }
    json runs = json::array();
    for (const auto& run : result.runs) {
        json schedules = json::array();
        for (const auto& schedule : run.schedules) {
            schedules.push_back({{"random", mechanism_json(schedule.random)},
                                 {"bracketed", mechanism_json(schedule.bracketed)}});
        }
        runs.push_back({{"population_mean", run.population_mean}, {"schedules", schedules}});
    }
    return {{"experiment", "bracketing"}, {"config", config_to_json(result.config)}, {"table", table}, {"runs", runs}};
}

json to_json(const CapResult& result) {
    json table = json::array();
    for (std::size_t s = 0; s < result.table.size(); ++s) {
        for (const auto& row : result.table[s]) {
            json cells = json::array();
            for (const auto& cell : row.cells) {
                cells.push_back({{"avg", cell.avg},
                                 {"pct_higher", cell.pct_higher ? json(*cell.pct_higher) : json(nullptr)}});
            }
            table.push_back({{"schedule", result.config.schedules[s].label()},
                             {"var_level", level_json(row.row)},
                             {"cap_levels", cells}});
        }
    }
    json runs = json::array();
    for (const auto& run : result.runs) {
        json schedules = json::array();
        for (const auto& schedule : run.schedules) {
            schedules.push_back({{"var", schedule.var_values},
                                 {"worst", schedule.worst},
                                 {"monotonicity_violations", schedule.monotonicity_violations}});
        }
        runs.push_back({{"population_means", run.population_means}, {"schedules", schedules}});
    }
    return {{"experiment", "caps"},
            {"config", config_to_json(result.config)},
            {"table", table},
            {"drawings_checked", result.drawings_checked},
            {"monotonicity_violations", result.monotonicity_violations},
            {"runs", runs}};
}

} // namespace plsim
