#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <plsim/cpt.hpp>
#include <plsim/drawing.hpp>
#include <plsim/experiments.hpp>
#include <plsim/pareto.hpp>
#include <plsim/population.hpp>
#include <plsim/report.hpp>
#include <plsim/risk.hpp>

namespace py = pybind11;

namespace {

py::object to_python(const nlohmann::json& document) {
    return py::module_::import("json").attr("loads")(document.dump());
}

py::tuple utility_tuple(const plsim::cpt::Utility& u) {
    return py::make_tuple(u.gain, u.loss, u.total());
}

} // namespace

PYBIND11_MODULE(plsim, m) {
    m.doc() = "Prize-linked savings payout risk simulator";

    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

    using plsim::pareto::ParetoParams;
    py::class_<ParetoParams>(m, "ParetoParams")
        .def(py::init<double, double>(), py::arg("alpha"), py::arg("b"))
        .def_property_readonly("alpha", &ParetoParams::alpha)
        .def_property_readonly("b", &ParetoParams::scale)
        .def("__repr__", [](const ParetoParams& p) { return "ParetoParams(" + plsim::params_label(p) + ")"; });

    m.def("pdf", &plsim::pareto::pdf, py::arg("params"), py::arg("x"));
    m.def("mean", &plsim::pareto::mean, py::arg("params"));
    m.def("quantile", &plsim::pareto::quantile, py::arg("params"), py::arg("p"));
    m.def("tail_fraction", &plsim::pareto::tail_fraction, py::arg("params"), py::arg("x"));
    m.def("gini_from_alpha", &plsim::pareto::gini_from_alpha, py::arg("alpha"));
    m.def("alpha_from_gini", &plsim::pareto::alpha_from_gini, py::arg("gini"));

    py::class_<plsim::AccountPopulation>(m, "AccountPopulation")
        .def(py::init<std::vector<double>>(), py::arg("balances"))
        .def_property_readonly("balances", [](const plsim::AccountPopulation& p) {
            return std::vector<double>(p.balances().begin(), p.balances().end());
        })
        .def_property_readonly("mean", &plsim::AccountPopulation::mean)
        .def_property_readonly("count", &plsim::AccountPopulation::count)
        .def("__len__", &plsim::AccountPopulation::count);

    m.def("generate_population", &plsim::generate_population, py::arg("params"), py::arg("n"),
          py::arg("seed") = plsim::kDefaultSeed);
    m.def("apply_cap", &plsim::apply_cap, py::arg("population"), py::arg("cap"));

    py::class_<plsim::PrizeSchedule>(m, "PrizeSchedule")
        .def(py::init<std::size_t, double>(), py::arg("count"), py::arg("multiple"))
        .def_property_readonly("count", &plsim::PrizeSchedule::count)
        .def_property_readonly("multiple", &plsim::PrizeSchedule::multiple)
        .def("__repr__", [](const plsim::PrizeSchedule& s) { return "PrizeSchedule(" + s.label() + ")"; });

    m.def("expected_payout", &plsim::expected_payout, py::arg("population"), py::arg("schedule"));
    m.def("expected_interest",
          [](const std::vector<plsim::PrizeSchedule>& s, std::size_t n) { return plsim::expected_interest(s, n); },
          py::arg("schedules"), py::arg("n_accounts"));
    m.def(
        "draw",
        [](const plsim::AccountPopulation& population, const plsim::PrizeSchedule& schedule,
           const std::string& mechanism, std::uint64_t seed) {
            plsim::Rng rng(seed);
            auto outcome = plsim::draw(population, schedule, plsim::parse_mechanism(mechanism), rng);
            return py::make_tuple(outcome.winners, outcome.payout);
        },
        py::arg("population"), py::arg("schedule"), py::arg("mechanism") = "random",
        py::arg("seed") = plsim::kDefaultSeed, "Returns (winner indices, payout).");
    m.def(
        "worst_payout",
        [](const plsim::AccountPopulation& p, const plsim::PrizeSchedule& s, const std::string& mechanism) {
            return plsim::worst_payout(p, s, plsim::parse_mechanism(mechanism));
        },
        py::arg("population"), py::arg("schedule"), py::arg("mechanism") = "random");
    m.def(
        "best_payout",
        [](const plsim::AccountPopulation& p, const plsim::PrizeSchedule& s, const std::string& mechanism) {
            return plsim::best_payout(p, s, plsim::parse_mechanism(mechanism));
        },
        py::arg("population"), py::arg("schedule"), py::arg("mechanism") = "random");

    m.def(
        "scale",
        [](const std::vector<double>& payouts, double expected) {
            const auto d = plsim::scale(payouts, expected);
            return std::vector<double>(d.values().begin(), d.values().end());
        },
        py::arg("payouts"), py::arg("expected"), "Scaled payouts, sorted ascending.");
    m.def(
        "var_approx",
        [](const std::vector<double>& values, double level) {
            return plsim::var_approx(plsim::PayoutDistribution(values), level);
        },
        py::arg("values"), py::arg("level"));
    m.def("var_rank", &plsim::var_rank, py::arg("draws"), py::arg("level"));
    m.def(
        "compare_percentage_higher",
        [](const std::vector<double>& a, const std::vector<double>& b) { return plsim::compare_percentage_higher(a, b); },
        py::arg("a"), py::arg("b"));
    m.def("relative_difference", &plsim::relative_difference, py::arg("random_avg"), py::arg("bracket_avg"));
    m.def("std_dev", [](const std::vector<double>& v) { return plsim::std_dev(v); }, py::arg("values"));

    py::class_<plsim::ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("pareto", &plsim::ExperimentConfig::pareto)
        .def_readwrite("n_accounts", &plsim::ExperimentConfig::n_accounts)
        .def_readwrite("schedules", &plsim::ExperimentConfig::schedules)
        .def_readwrite("draws_per_run", &plsim::ExperimentConfig::draws_per_run)
        .def_readwrite("runs", &plsim::ExperimentConfig::runs)
        .def_readwrite("caps", &plsim::ExperimentConfig::caps)
        .def_readwrite("var_levels", &plsim::ExperimentConfig::var_levels)
        .def_readwrite("master_seed", &plsim::ExperimentConfig::master_seed)
        .def("validate", &plsim::ExperimentConfig::validate);

    m.def("reference_schedules", &plsim::reference_schedules);
    m.def("reference_bracketing_config", &plsim::reference_bracketing_config, py::arg("params"));
    m.def("reference_caps_config", &plsim::reference_caps_config, py::arg("params"));
    m.def(
        "run_bracketing",
        [](const plsim::ExperimentConfig& config, std::size_t threads) {
            plsim::BracketingResult result = [&] {
                py::gil_scoped_release release;
                return plsim::run_bracketing(config, threads);
            }();
            return to_python(plsim::to_json(result));
        },
        py::arg("config"), py::arg("threads") = 1, "Runs the bracketing experiment; returns the JSON document as a dict.");
    m.def(
        "run_caps",
        [](const plsim::ExperimentConfig& config, std::size_t threads) {
            plsim::CapResult result = [&] {
                py::gil_scoped_release release;
                return plsim::run_caps(config, threads);
            }();
            return to_python(plsim::to_json(result));
        },
        py::arg("config"), py::arg("threads") = 1, "Runs the cap experiment; returns the JSON document as a dict.");

    namespace cpt = plsim::cpt;
    py::class_<cpt::CptParams>(m, "CptParams")
        .def(py::init([](double a, double b, double l, double g, double d) {
                 cpt::CptParams p{a, b, l, g, d};
                 p.validate();
                 return p;
             }),
             py::arg("alpha_v") = 0.88, py::arg("beta_v") = 0.88, py::arg("lambda_") = 2.25, py::arg("gamma") = 0.61,
             py::arg("delta") = 0.69)
        .def_readonly("alpha_v", &cpt::CptParams::alpha_v)
        .def_readonly("beta_v", &cpt::CptParams::beta_v)
        .def_readonly("lambda_", &cpt::CptParams::lambda)
        .def_readonly("gamma", &cpt::CptParams::gamma)
        .def_readonly("delta", &cpt::CptParams::delta)
        .def("warnings", &cpt::CptParams::warnings);

    m.def("value", &cpt::value, py::arg("params"), py::arg("x"));
    m.def("weight_gain", &cpt::weight_gain, py::arg("params"), py::arg("p"));
    m.def("weight_loss", &cpt::weight_loss, py::arg("params"), py::arg("p"));
    m.def(
        "utility_fixed_no_growth",
        [](const cpt::CptParams& p, double y, double c, double x) {
            return utility_tuple(cpt::utility_fixed_no_growth(p, {y, c, 0.0}, x));
        },
        py::arg("params"), py::arg("y"), py::arg("c"), py::arg("x"), "Returns (gain, loss, total).");
    m.def(
        "utility_fixed_growth",
        [](const cpt::CptParams& p, double y, double c, double r, double x) {
            return utility_tuple(cpt::utility_fixed_growth(p, {y, c, r}, x));
        },
        py::arg("params"), py::arg("y"), py::arg("c"), py::arg("r"), py::arg("x"), "Returns (gain, loss, total).");
    m.def(
        "utility_dynamic",
        [](const cpt::CptParams& p, double w, double prob, double r, double x) {
            return utility_tuple(cpt::utility_dynamic(p, {w, prob, r}, x));
        },
        py::arg("params"), py::arg("w"), py::arg("p"), py::arg("r"), py::arg("x"), "Returns (gain, loss, total).");
}
