#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plsim::cpt {

/// Value-function curvature (alpha_v, beta_v), loss aversion (lambda) and
/// probability-weighting exponents (gamma for gains, delta for losses).
/// Defaults are the Tversky-Kahneman (1992) median estimates.
struct CptParams {
    double alpha_v = 0.88;
    double beta_v = 0.88;
    double lambda = 2.25;
    double gamma = 0.61;
    double delta = 0.69;

    /// Throws std::invalid_argument unless 0 < alpha_v, beta_v < 1,
    /// lambda >= 1 and 0 < gamma, delta <= 1.
    void validate() const;

    /// Non-fatal notes, e.g. exponents below ~0.28 where the weighting
    /// function stops being monotone.
    std::vector<std::string> warnings() const;
};

/// Fixed prize of size `prize`; win probability grows by `prob_per_unit`
/// per unit saved; `growth` is the return forgone per unit saved.
struct FixedPrizeSpec {
    double prize = 1000.0;
    double prob_per_unit = 1e-6;
    double growth = 0.02;

    void validate() const;
};

/// Prize paying `multiple` times the balance with constant win probability.
struct DynamicPrizeSpec {
    double multiple = 1.0;
    double win_probability = 0.01;
    double growth = 0.02;

    void validate() const;
};

struct Utility {
    double gain = 0.0;
    double loss = 0.0;
    double total() const noexcept { return gain + loss; }
};

/// x^alpha_v for gains, -lambda (-x)^beta_v for losses.
double value(const CptParams& params, double x);

/// p^e / (p^e + (1-p)^e)^(1/e), and its derivative in p.
double tk_weight(double p, double exponent);
double tk_weight_slope(double p, double exponent);

double weight_gain(const CptParams& params, double p);
double weight_loss(const CptParams& params, double p);

/// Probability at which the gain weighting curve turns from concave to
/// convex, located by bisection on its second difference.
double weight_gain_inflection(const CptParams& params);

/// value(y) * w+(X c); no loss branch. Requires 0 <= X c <= 1.
Utility utility_fixed_no_growth(const CptParams& params, const FixedPrizeSpec& spec, double x);

/// Gain value(y - X r) * w+(X c); loss value(-X r) * w-(1 - X c).
/// Requires 0 <= X < y / r and X c <= 1.
Utility utility_fixed_growth(const CptParams& params, const FixedPrizeSpec& spec, double x);

/// Gain value(X (w - r)) * w+(p); loss value(-X r) * w-(1 - p). Requires X >= 0.
Utility utility_dynamic(const CptParams& params, const DynamicPrizeSpec& spec, double x);

/// d/dX of value(y - X r): -alpha r / (y - X r)^(1 - alpha).
double prize_value_slope(const CptParams& params, const FixedPrizeSpec& spec, double x);

struct Slopes {
    double first = 0.0;
    double second = 0.0;
};

/// Analytic derivatives of each model's gain component in X.
Slopes fixed_no_growth_gain_slopes(const CptParams& params, const FixedPrizeSpec& spec, double x);
Slopes fixed_growth_gain_slopes(const CptParams& params, const FixedPrizeSpec& spec, double x);
Slopes dynamic_gain_slopes(const CptParams& params, const DynamicPrizeSpec& spec, double x);

enum class ModelKind { fixed, fixed_growth, dynamic };

std::string_view to_string(ModelKind kind) noexcept;
ModelKind parse_model(std::string_view text);

/// One of the three utility models bound to its parameters.
class UtilityModel {
public:
    static UtilityModel fixed(const CptParams& params, const FixedPrizeSpec& spec);
    static UtilityModel fixed_growth(const CptParams& params, const FixedPrizeSpec& spec);
    static UtilityModel dynamic(const CptParams& params, const DynamicPrizeSpec& spec);

    ModelKind kind() const noexcept { return kind_; }
    const CptParams& params() const noexcept { return params_; }

    bool in_domain(double x) const noexcept;
    Utility evaluate(double x) const;
    Slopes gain_slopes(double x) const;

    /// Supremum of the domain (y/r, 1/c or infinity).
    double upper_limit() const noexcept;

private:
    UtilityModel(ModelKind kind, const CptParams& params, FixedPrizeSpec fixed, DynamicPrizeSpec dynamic);

    ModelKind kind_;
    CptParams params_;
    FixedPrizeSpec fixed_;
    DynamicPrizeSpec dynamic_;
};

struct Differences {
    double gain = 0.0;
    double loss = 0.0;
    double total = 0.0;
};

struct SignPoint {
    double x = 0.0;
    Utility utility;
    std::optional<Differences> first;   // absent when the stencil leaves the domain
    std::optional<Differences> second;
};

/// Central-difference step at x: max(1e-6, scale * x).
double difference_step(double x, double scale = 1e-6);

/// First and second central differences of gain, loss and total at each
/// grid point. The step is difference_step(x, step_scale), capped at
/// 1e-3 * (upper_limit - x). Throws std::domain_error naming every grid point outside the
/// model's domain.
std::vector<SignPoint> sign_report(const UtilityModel& model, std::span<const double> grid,
                                   double step_scale = 1e-6);

int sign_of(double value) noexcept;

std::vector<double> linear_grid(double lo, double hi, std::size_t points);
/// Requires 0 < lo.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

} // namespace plsim::cpt
