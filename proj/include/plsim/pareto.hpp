#pragma once

#include <plsim/rng.hpp>

namespace plsim::pareto {

/// Shape/scale pair of a Pareto account-size distribution. The scale is the
/// smallest possible balance. Construction enforces alpha > 1 (finite mean)
/// and scale > 0; violations throw std::domain_error.
class ParetoParams {
public:
    ParetoParams(double alpha, double scale);

    double alpha() const noexcept { return alpha_; }
    double scale() const noexcept { return scale_; }

    friend bool operator==(const ParetoParams&, const ParetoParams&) = default;

private:
    double alpha_;
    double scale_;
};

/// Density alpha * b^alpha / x^(alpha+1). Throws std::domain_error for x < b.
double pdf(const ParetoParams& params, double x);

double mean(const ParetoParams& params) noexcept;

/// G = 1 / (2 alpha - 1); alpha must exceed 0.5.
double gini_from_alpha(double alpha);

/// Inverse of gini_from_alpha; gini must lie in (0, 1].
double alpha_from_gini(double gini);

/// b / (1 - p)^(1/alpha) for p in [0, 1).
double quantile(const ParetoParams& params, double p);

/// Survival function P(X > x) = (b / x)^alpha for x >= b.
double tail_fraction(const ParetoParams& params, double x);

/// Inverse-transform draw.
template <UniformSource Source>
double sample(const ParetoParams& params, Source& source) {
    return quantile(params, source.uniform());
}

} // namespace plsim::pareto
