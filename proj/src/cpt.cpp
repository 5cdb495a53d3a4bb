#include <plsim/cpt.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace plsim::cpt {

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("probability must lie in [0, 1]");
    }
}

// Second derivative of the weighting function, from w'' = w (L'' + L'^2)
// with L = ln w.
double tk_weight_curvature(double p, double e) {
    const double q = 1.0 - p;
    const double s = std::pow(p, e) + std::pow(q, e);
    const double s1 = e * (std::pow(p, e - 1.0) - std::pow(q, e - 1.0));
    const double s2 = e * (e - 1.0) * (std::pow(p, e - 2.0) + std::pow(q, e - 2.0));
    const double l1 = e / p - s1 / (e * s);
    const double l2 = -e / (p * p) - (s2 / s - (s1 / s) * (s1 / s)) / e;
    return tk_weight(p, e) * (l2 + l1 * l1);
}

void check_fixed_domain(const FixedPrizeSpec& spec, double x) {
    if (!(x >= 0.0) || !(x * spec.prob_per_unit <= 1.0)) {
        throw std::domain_error("fixed-prize model requires 0 <= X and X*c <= 1");
    }
}

double growth_limit(const FixedPrizeSpec& spec) {
    return spec.growth > 0.0 ? spec.prize / spec.growth : std::numeric_limits<double>::infinity();
}

void check_growth_domain(const FixedPrizeSpec& spec, double x) {
    check_fixed_domain(spec, x);
    if (!(x < growth_limit(spec))) {
        throw std::domain_error("fixed-prize growth model requires X < y/r");
    }
}

} // namespace

void CptParams::validate() const {
    if (!(alpha_v > 0.0 && alpha_v < 1.0) || !(beta_v > 0.0 && beta_v < 1.0)) {
        throw std::invalid_argument("value-function exponents must lie in (0, 1)");
    }
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("loss aversion must be finite and >= 1");
    }
    if (!(gamma > 0.0 && gamma <= 1.0) || !(delta > 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("weighting exponents must lie in (0, 1]");
    }
}

std::vector<std::string> CptParams::warnings() const {
    constexpr double kMonotoneFloor = 0.28;
    std::vector<std::string> notes;
    char buffer[160];
    if (gamma < kMonotoneFloor) {
        std::snprintf(buffer, sizeof buffer, "gamma=%g is below %.2f; the gain weighting curve is not monotone",
                      gamma, kMonotoneFloor);
        notes.emplace_back(buffer);
    }
    if (delta < kMonotoneFloor) {
        std::snprintf(buffer, sizeof buffer, "delta=%g is below %.2f; the loss weighting curve is not monotone",
                      delta, kMonotoneFloor);
        notes.emplace_back(buffer);
    }
    return notes;
}

void FixedPrizeSpec::validate() const {
    if (!(prize > 0.0) || !(prob_per_unit > 0.0) || !(growth >= 0.0)) {
        throw std::invalid_argument("fixed prize spec requires y > 0, c > 0 and r >= 0");
    }
}

void DynamicPrizeSpec::validate() const {
    if (!(growth >= 0.0) || !(multiple > growth)) {
        throw std::invalid_argument("dynamic prize spec requires w > r >= 0");
    }
    if (!(win_probability > 0.0 && win_probability < 1.0)) {
        throw std::invalid_argument("dynamic prize spec requires 0 < p < 1");
    }
}

double value(const CptParams& params, double x) {
    return x >= 0.0 ? std::pow(x, params.alpha_v) : -params.lambda * std::pow(-x, params.beta_v);
}

double tk_weight(double p, double exponent) {
    check_probability(p);
    if (p == 0.0 || p == 1.0) {
        return p;
    }
    const double pe = std::pow(p, exponent);
    return pe / std::pow(pe + std::pow(1.0 - p, exponent), 1.0 / exponent);
}

double tk_weight_slope(double p, double exponent) {
    check_probability(p);
    if (p == 0.0 || p == 1.0) {
        return exponent < 1.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    const double q = 1.0 - p;
    const double s = std::pow(p, exponent) + std::pow(q, exponent);
    const double log_slope = exponent / p - (std::pow(p, exponent - 1.0) - std::pow(q, exponent - 1.0)) / s;
    return tk_weight(p, exponent) * log_slope;
}

double weight_gain(const CptParams& params, double p) { return tk_weight(p, params.gamma); }

double weight_loss(const CptParams& params, double p) { return tk_weight(p, params.delta); }

double weight_gain_inflection(const CptParams& params) {
    double lo = 1e-6;
    double hi = 1.0 - 1e-6;
    if (tk_weight_curvature(lo, params.gamma) >= 0.0) {
        return 0.0;
    }
    if (tk_weight_curvature(hi, params.gamma) <= 0.0) {
        return 1.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tk_weight_curvature(mid, params.gamma) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Utility utility_fixed_no_growth(const CptParams& params, const FixedPrizeSpec& spec, double x) {
    check_fixed_domain(spec, x);
    return {value(params, spec.prize) * weight_gain(params, x * spec.prob_per_unit), 0.0};
}

Utility utility_fixed_growth(const CptParams& params, const FixedPrizeSpec& spec, double x) {
    check_growth_domain(spec, x);
    const double p = x * spec.prob_per_unit;
    return {value(params, spec.prize - x * spec.growth) * weight_gain(params, p),
            value(params, -x * spec.growth) * weight_loss(params, 1.0 - p)};
}

Utility utility_dynamic(const CptParams& params, const DynamicPrizeSpec& spec, double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("dynamic-prize model requires X >= 0");
    }
    return {value(params, x * (spec.multiple - spec.growth)) * weight_gain(params, spec.win_probability),
            value(params, -x * spec.growth) * weight_loss(params, 1.0 - spec.win_probability)};
}

double prize_value_slope(const CptParams& params, const FixedPrizeSpec& spec, double x) {
    check_growth_domain(spec, x);
    return -params.alpha_v * spec.growth / std::pow(spec.prize - x * spec.growth, 1.0 - params.alpha_v);
}

Slopes fixed_no_growth_gain_slopes(const CptParams& params, const FixedPrizeSpec& spec, double x) {
    check_fixed_domain(spec, x);
    const double c = spec.prob_per_unit;
    const double p = x * c;
    const double v = value(params, spec.prize);
    return {v * c * tk_weight_slope(p, params.gamma), v * c * c * tk_weight_curvature(p, params.gamma)};
}

Slopes fixed_growth_gain_slopes(const CptParams& params, const FixedPrizeSpec& spec, double x) {
    check_growth_domain(spec, x);
    const double a = params.alpha_v;
    const double r = spec.growth;
    const double c = spec.prob_per_unit;
    const double u = spec.prize - x * r;
    const double p = x * c;
    const double v = std::pow(u, a);
    const double v1 = -a * r * std::pow(u, a - 1.0);
    const double v2 = a * (a - 1.0) * r * r * std::pow(u, a - 2.0);
    const double w = weight_gain(params, p);
    const double w1 = tk_weight_slope(p, params.gamma);
    const double w2 = tk_weight_curvature(p, params.gamma);
    return {v1 * w + v * c * w1, v2 * w + 2.0 * v1 * c * w1 + v * c * c * w2};
}

Slopes dynamic_gain_slopes(const CptParams& params, const DynamicPrizeSpec& spec, double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("dynamic-prize slopes require X > 0");
    }
    const double a = params.alpha_v;
    const double scaled = std::pow(spec.multiple - spec.growth, a) * weight_gain(params, spec.win_probability);
    return {a * scaled * std::pow(x, a - 1.0), a * (a - 1.0) * scaled * std::pow(x, a - 2.0)};
}

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
    case ModelKind::fixed:
        return "fixed";
    case ModelKind::fixed_growth:
        return "fixed-growth";
    case ModelKind::dynamic:
        return "dynamic";
    }
    return "unknown";
}

ModelKind parse_model(std::string_view text) {
    if (text == "fixed") {
        return ModelKind::fixed;
    }
    if (text == "fixed-growth") {
        return ModelKind::fixed_growth;
    }
    if (text == "dynamic") {
        return ModelKind::dynamic;
    }
    throw std::invalid_argument("unknown utility model '" + std::string(text) + "'");
}

UtilityModel::UtilityModel(ModelKind kind, const CptParams& params, FixedPrizeSpec fixed, DynamicPrizeSpec dynamic)
    : kind_(kind), params_(params), fixed_(fixed), dynamic_(dynamic) {
    params_.validate();
    if (kind_ == ModelKind::dynamic) {
        dynamic_.validate();
    } else {
        fixed_.validate();
    }
}

UtilityModel UtilityModel::fixed(const CptParams& params, const FixedPrizeSpec& spec) {
    return UtilityModel(ModelKind::fixed, params, spec, {});
}

UtilityModel UtilityModel::fixed_growth(const CptParams& params, const FixedPrizeSpec& spec) {
    return UtilityModel(ModelKind::fixed_growth, params, spec, {});
}

UtilityModel UtilityModel::dynamic(const CptParams& params, const DynamicPrizeSpec& spec) {
    return UtilityModel(ModelKind::dynamic, params, {}, spec);
}

double UtilityModel::upper_limit() const noexcept {
    switch (kind_) {
    case ModelKind::fixed:
        return 1.0 / fixed_.prob_per_unit;
    case ModelKind::fixed_growth:
        return std::min(1.0 / fixed_.prob_per_unit, growth_limit(fixed_));
    case ModelKind::dynamic:
        break;
    }
    return std::numeric_limits<double>::infinity();
}

bool UtilityModel::in_domain(double x) const noexcept {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        return false;
    }
    switch (kind_) {
    case ModelKind::fixed:
        return x * fixed_.prob_per_unit <= 1.0;
    case ModelKind::fixed_growth:
        return x * fixed_.prob_per_unit <= 1.0 && x < growth_limit(fixed_);
    case ModelKind::dynamic:
        break;
    }
    return true;
}

Utility UtilityModel::evaluate(double x) const {
    switch (kind_) {
    case ModelKind::fixed:
        return utility_fixed_no_growth(params_, fixed_, x);
    case ModelKind::fixed_growth:
        return utility_fixed_growth(params_, fixed_, x);
    case ModelKind::dynamic:
        break;
    }
    return utility_dynamic(params_, dynamic_, x);
}

Slopes UtilityModel::gain_slopes(double x) const {
    switch (kind_) {
    case ModelKind::fixed:
        return fixed_no_growth_gain_slopes(params_, fixed_, x);
    case ModelKind::fixed_growth:
        return fixed_growth_gain_slopes(params_, fixed_, x);
    case ModelKind::dynamic:
        break;
    }
    return dynamic_gain_slopes(params_, dynamic_, x);
}

double difference_step(double x, double scale) {
    return std::max(1e-6, scale * std::abs(x));
}

std::vector<SignPoint> sign_report(const UtilityModel& model, std::span<const double> grid, double step_scale) {
    std::string offending;
    for (const double x : grid) {
        if (!model.in_domain(x)) {
            char buffer[48];
            std::snprintf(buffer, sizeof buffer, "%s%.17g", offending.empty() ? "" : ", ", x);
            offending += buffer;
        }
    }
    if (!offending.empty()) {
        throw std::domain_error("grid points outside the " + std::string(to_string(model.kind())) +
                                " model's domain: " + offending);
    }

    std::vector<SignPoint> report;
    report.reserve(grid.size());
    for (const double x : grid) {
        SignPoint point{x, model.evaluate(x), std::nullopt, std::nullopt};
        // Near a finite upper limit the step also shrinks with the distance to
        // it; the fixed-growth gain is singular in curvature at y/r.
        const double h = std::min(difference_step(x, step_scale), 1e-3 * (model.upper_limit() - x));
        if (h > 0.0 && model.in_domain(x - h) && model.in_domain(x + h)) {
            const Utility lo = model.evaluate(x - h);
            const Utility hi = model.evaluate(x + h);
            const auto first = [&](double a, double b) { return (b - a) / (2.0 * h); };
            const auto second = [&](double a, double mid, double b) { return (b - 2.0 * mid + a) / (h * h); };
            point.first = Differences{first(lo.gain, hi.gain), first(lo.loss, hi.loss), first(lo.total(), hi.total())};
            point.second = Differences{second(lo.gain, point.utility.gain, hi.gain),
                                       second(lo.loss, point.utility.loss, hi.loss),
                                       second(lo.total(), point.utility.total(), hi.total())};
        }
        report.push_back(point);
    }
    return report;
}

int sign_of(double value) noexcept {
    return (value > 0.0) - (value < 0.0);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    if (points == 0 || !(hi >= lo)) {
        throw std::invalid_argument("linear_grid: need points >= 1 and hi >= lo");
    }
    std::vector<double> grid(points, lo);
    for (std::size_t i = 1; i < points; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (points == 0 || !(lo > 0.0) || !(hi >= lo)) {
        throw std::invalid_argument("log_grid: need points >= 1 and 0 < lo <= hi");
    }
    std::vector<double> grid(points, lo);
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 1; i < points; ++i) {
        grid[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    if (points > 1) {
        grid.back() = hi;
    }
    return grid;
}

} // namespace plsim::cpt
