#include <plsim/risk.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace plsim {

PayoutDistribution::PayoutDistribution(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("payout distribution must not be empty");
    }
    for (const double v : values_) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("scaled payouts must be finite and positive");
        }
    }
    std::sort(values_.begin(), values_.end());
}

double PayoutDistribution::order_statistic(std::size_t rank) const {
    if (rank == 0 || rank > values_.size()) {
        throw std::out_of_range("order statistic rank out of range");
    }
    return values_[rank - 1];
}

PayoutDistribution scale(std::span<const double> payouts, double expected) {
    if (!(expected > 0.0)) {
        throw std::domain_error("scale: expected payout must be positive");
    }
    std::vector<double> ratios(payouts.size());
    std::transform(payouts.begin(), payouts.end(), ratios.begin(),
                   [expected](double payout) { return payout / expected; });
    return PayoutDistribution(std::move(ratios));
}

std::size_t var_rank(std::size_t draws, double level) {
    if (draws == 0) {
        throw std::invalid_argument("var_rank: empty distribution");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::domain_error("var_rank: level must lie in (0, 1)");
    }
    const double tail = std::round(level * static_cast<double>(draws));
    if (tail <= 1.0) {
        return draws;
    }
    return draws - static_cast<std::size_t>(tail);
}

double var_approx(const PayoutDistribution& distribution, double level) {
    return distribution.order_statistic(var_rank(distribution.draws(), level));
}

std::vector<VarPoint> var_levels(const PayoutDistribution& distribution, std::span<const double> levels) {
    std::vector<VarPoint> points;
    points.reserve(levels.size());
    for (const double level : levels) {
        points.push_back({level, var_approx(distribution, level)});
    }
    return points;
}

double compare_percentage_higher(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("compare_percentage_higher: sequences differ in length");
    }
    if (a.empty()) {
        throw std::invalid_argument("compare_percentage_higher: no pairs to compare");
    }
    std::size_t higher = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            ++higher;
        }
    }
    return 100.0 * static_cast<double>(higher) / static_cast<double>(a.size());
}

double relative_difference(double random_avg, double bracket_avg) {
    if (!(bracket_avg > 0.0)) {
        throw std::domain_error("relative_difference: bracket average must be positive");
    }
    return (random_avg / bracket_avg - 1.0) * 100.0;
}

double mean_of(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("mean_of: no values");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double std_dev(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("std_dev: need at least two values");
    }
    const double mu = mean_of(values);
    double sq = 0.0;
    for (const double v : values) {
        sq += (v - mu) * (v - mu);
    }
    return std::sqrt(sq / static_cast<double>(values.size() - 1));
}

std::string format_level(double level) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%g%%", level * 100.0);
    return buffer;
}

} // namespace plsim
