#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace plsim {

/// Ascending payout/expected-payout ratios from repeated drawings.
class PayoutDistribution {
public:
    /// Sorts `values`. Throws std::invalid_argument when empty or when a
    /// value is not finite and positive.
    explicit PayoutDistribution(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t draws() const noexcept { return values_.size(); }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }

    /// 1-based ascending order statistic.
    double order_statistic(std::size_t rank) const;

private:
    std::vector<double> values_;
};

/// Divides every payout by `expected` and sorts. Throws std::domain_error
/// when expected <= 0.
PayoutDistribution scale(std::span<const double> payouts, double expected);

/// 1-based rank used to approximate VaR at `level` from `draws` ordered
/// payouts. With m = round(level * draws) payouts in the tail, the rank is
/// draws - m (9500 of 10000 at 5%, 990 of 1000 at 1%); once the tail holds a
/// single payout or fewer, the maximum is used (10000 of 10000 at 0.01%,
/// 1000 of 1000 at 0.1%).
std::size_t var_rank(std::size_t draws, double level);

/// Order-statistic VaR approximation; level must lie in (0, 1).
double var_approx(const PayoutDistribution& distribution, double level);

struct VarPoint {
    double level;
    double value;
};

std::vector<VarPoint> var_levels(const PayoutDistribution& distribution, std::span<const double> levels);

/// Percentage of pairs with a[i] > b[i] (strict). Throws on length mismatch
/// or empty input.
double compare_percentage_higher(std::span<const double> a, std::span<const double> b);

/// (random_avg / bracket_avg - 1) * 100.
double relative_difference(double random_avg, double bracket_avg);

double mean_of(std::span<const double> values);

/// Sample standard deviation (n - 1 denominator); needs at least two values.
double std_dev(std::span<const double> values);

/// "5%", "0.1%", "0.01%" ...
std::string format_level(double level);

} // namespace plsim
