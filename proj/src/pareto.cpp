#include <plsim/pareto.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace plsim::pareto {

ParetoParams::ParetoParams(double alpha, double scale) : alpha_(alpha), scale_(scale) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw std::domain_error("pareto shape must be finite and > 1 for a finite mean, got " +
                                std::to_string(alpha));
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::domain_error("pareto scale must be finite and > 0, got " + std::to_string(scale));
    }
}

double pdf(const ParetoParams& params, double x) {
    if (!(x >= params.scale())) {
        throw std::domain_error("pareto pdf: x below the scale parameter");
    }
    const double a = params.alpha();
    return a / params.scale() * std::pow(params.scale() / x, a + 1.0);
}

double mean(const ParetoParams& params) noexcept {
    return params.alpha() * params.scale() / (params.alpha() - 1.0);
}

double gini_from_alpha(double alpha) {
    if (!(alpha > 0.5)) {
        throw std::domain_error("gini_from_alpha: alpha must exceed 0.5");
    }
    return 1.0 / (2.0 * alpha - 1.0);
}

double alpha_from_gini(double gini) {
    if (!(gini > 0.0 && gini <= 1.0)) {
        throw std::domain_error("alpha_from_gini: gini must lie in (0, 1]");
    }
    return (1.0 / gini + 1.0) / 2.0;
}

double quantile(const ParetoParams& params, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::domain_error("pareto quantile: p must lie in [0, 1)");
    }
    return params.scale() * std::pow(1.0 - p, -1.0 / params.alpha());
}

double tail_fraction(const ParetoParams& params, double x) {
    if (!(x >= params.scale())) {
        throw std::domain_error("pareto tail_fraction: x below the scale parameter");
    }
    return std::pow(params.scale() / x, params.alpha());
}

} // namespace plsim::pareto
