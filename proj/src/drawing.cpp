#include <plsim/drawing.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace plsim {

namespace {

void check_fits(const AccountPopulation& population, const PrizeSchedule& schedule) {
    if (schedule.count() > population.count()) {
        throw std::invalid_argument("prize schedule " + schedule.label() + " needs more winners than the " +
                                    std::to_string(population.count()) + " accounts available");
    }
}

void check_order(const AccountPopulation& population, const PrizeSchedule& schedule,
                 std::span<const std::size_t> order) {
    check_fits(population, schedule);
    if (order.size() != population.count()) {
        throw std::invalid_argument("sorted order does not match the population size");
    }
}

std::vector<std::size_t> bracket_bounds(std::size_t n, std::size_t k) {
    std::vector<std::size_t> bounds(k + 1, 0);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    for (std::size_t i = 0; i < k; ++i) {
        bounds[i + 1] = bounds[i] + base + (i < extra ? 1 : 0);
    }
    return bounds;
}

} // namespace

PrizeSchedule::PrizeSchedule(std::size_t count, double multiple) : count_(count), multiple_(multiple) {
    if (count == 0) {
        throw std::invalid_argument("prize schedule needs at least one prize");
    }
    if (!(multiple > 0.0) || !std::isfinite(multiple)) {
        throw std::invalid_argument("prize multiple must be finite and positive");
    }
}

std::string PrizeSchedule::label() const {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%zux%g%%", count_, multiple_ * 100.0);
    return buffer;
}

std::string_view to_string(Mechanism mechanism) noexcept {
    return mechanism == Mechanism::random ? "random" : "bracketed";
}

Mechanism parse_mechanism(std::string_view text) {
    if (text == "random") {
        return Mechanism::random;
    }
    if (text == "bracketed") {
        return Mechanism::bracketed;
    }
    throw std::invalid_argument("unknown drawing mechanism '" + std::string(text) + "'");
}

double expected_payout(const AccountPopulation& population, const PrizeSchedule& schedule) noexcept {
    return static_cast<double>(schedule.count()) * schedule.multiple() * population.mean();
}

double expected_interest(std::span<const PrizeSchedule> schedules, std::size_t n_accounts) {
    if (n_accounts == 0) {
        throw std::invalid_argument("expected_interest: need at least one account");
    }
    double prize_units = 0.0;
    for (const auto& schedule : schedules) {
        prize_units += static_cast<double>(schedule.count()) * schedule.multiple();
    }
    return prize_units / static_cast<double>(n_accounts);
}

double payout_of(const AccountPopulation& population, double multiple,
                 std::span<const std::size_t> winners) noexcept {
    double sum = 0.0;
    for (const std::size_t index : winners) {
        sum += population[index];
    }
    return multiple * sum;
}

RandomSelector::RandomSelector(std::size_t population_size) : permutation_(population_size) {
    std::iota(permutation_.begin(), permutation_.end(), std::size_t{0});
}

void RandomSelector::check_count(std::size_t count) const {
    if (count > permutation_.size()) {
        throw std::invalid_argument("RandomSelector: more winners requested than accounts");
    }
}

std::vector<std::size_t> sorted_indices(const AccountPopulation& population) {
    std::vector<std::size_t> order(population.count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return population[a] < population[b]; });
    return order;
}

BracketSelector::BracketSelector(const AccountPopulation& population, std::size_t bracket_count)
    : BracketSelector(sorted_indices(population), bracket_count) {}

BracketSelector::BracketSelector(std::vector<std::size_t> order, std::size_t bracket_count)
    : sorted_(std::move(order)) {
    if (bracket_count == 0 || bracket_count > sorted_.size()) {
        throw std::invalid_argument("BracketSelector: bracket count must lie in [1, population size]");
    }
    bounds_ = bracket_bounds(sorted_.size(), bracket_count);
    winners_.resize(bracket_count);
}

std::span<const std::size_t> BracketSelector::bracket(std::size_t i) const noexcept {
    return std::span<const std::size_t>(sorted_).subspan(bounds_[i], bounds_[i + 1] - bounds_[i]);
}

DrawOutcome draw_random(const AccountPopulation& population, const PrizeSchedule& schedule, Rng& rng) {
    check_fits(population, schedule);
    RandomSelector selector(population.count());
    const auto winners = selector.select(schedule.count(), rng);
    return {std::vector<std::size_t>(winners.begin(), winners.end()),
            payout_of(population, schedule.multiple(), winners)};
}

DrawOutcome draw_bracketed(const AccountPopulation& population, const PrizeSchedule& schedule, Rng& rng) {
    check_fits(population, schedule);
    BracketSelector selector(population, schedule.count());
    const auto winners = selector.select(rng);
    return {std::vector<std::size_t>(winners.begin(), winners.end()),
            payout_of(population, schedule.multiple(), winners)};
}

DrawOutcome draw(const AccountPopulation& population, const PrizeSchedule& schedule,
                 Mechanism mechanism, Rng& rng) {
    return mechanism == Mechanism::random ? draw_random(population, schedule, rng)
                                          : draw_bracketed(population, schedule, rng);
}

double worst_payout(const AccountPopulation& population, const PrizeSchedule& schedule,
                    Mechanism mechanism) {
    check_fits(population, schedule);
    return worst_payout(population, schedule, mechanism, sorted_indices(population));
}

double worst_payout(const AccountPopulation& population, const PrizeSchedule& schedule, Mechanism mechanism,
                    std::span<const std::size_t> order) {
    check_order(population, schedule, order);
    const std::size_t n = order.size();
    const std::size_t k = schedule.count();
    double sum = 0.0;
    if (mechanism == Mechanism::random) {
        for (std::size_t i = n - k; i < n; ++i) {
            sum += population[order[i]];
        }
    } else {
        const auto bounds = bracket_bounds(n, k);
        for (std::size_t i = 0; i < k; ++i) {
            sum += population[order[bounds[i + 1] - 1]];
        }
    }
    return schedule.multiple() * sum;
}

double best_payout(const AccountPopulation& population, const PrizeSchedule& schedule,
                   Mechanism mechanism) {
    check_fits(population, schedule);
    return best_payout(population, schedule, mechanism, sorted_indices(population));
}

double best_payout(const AccountPopulation& population, const PrizeSchedule& schedule, Mechanism mechanism,
                   std::span<const std::size_t> order) {
    check_order(population, schedule, order);
    const std::size_t k = schedule.count();
    double sum = 0.0;
    if (mechanism == Mechanism::random) {
        for (std::size_t i = 0; i < k; ++i) {
            sum += population[order[i]];
        }
    } else {
        const auto bounds = bracket_bounds(order.size(), k);
        for (std::size_t i = 0; i < k; ++i) {
            sum += population[order[bounds[i]]];
        }
    }
    return schedule.multiple() * sum;
}

} // namespace plsim
