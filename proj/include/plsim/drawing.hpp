#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <plsim/population.hpp>
#include <plsim/rng.hpp>

namespace plsim {

/// `count` prizes per drawing, each paying `multiple` times the winner's
/// balance (1.0 is a "100% prize").
class PrizeSchedule {
public:
    /// Throws std::invalid_argument unless count >= 1 and multiple > 0.
    PrizeSchedule(std::size_t count, double multiple);

    std::size_t count() const noexcept { return count_; }
    double multiple() const noexcept { return multiple_; }

    /// e.g. "1000x100%".
    std::string label() const;

    friend bool operator==(const PrizeSchedule&, const PrizeSchedule&) = default;

private:
    std::size_t count_;
    double multiple_;
};

enum class Mechanism { random, bracketed };

std::string_view to_string(Mechanism mechanism) noexcept;
Mechanism parse_mechanism(std::string_view text);

struct DrawOutcome {
    std::vector<std::size_t> winners;
    double payout = 0.0;
};

/// count * multiple * mean balance.
double expected_payout(const AccountPopulation& population, const PrizeSchedule& schedule) noexcept;

/// Sum over schedules of count * multiple, divided by the number of accounts.
double expected_interest(std::span<const PrizeSchedule> schedules, std::size_t n_accounts);

/// multiple * sum of the winners' balances.
double payout_of(const AccountPopulation& population, double multiple,
                 std::span<const std::size_t> winners) noexcept;

/// Uniform k-subsets of account indices, without replacement, by partial
/// Fisher-Yates over a persistent index permutation. The permutation is not
/// reset between draws: a partial shuffle from any fixed arrangement still
/// yields a uniform subset, so each draw costs O(k).
class RandomSelector {
public:
    explicit RandomSelector(std::size_t population_size);

    /// Returns a view of `count` distinct indices, valid until the next call.
    template <BoundedSource Source>
    std::span<const std::size_t> select(std::size_t count, Source& source) {
        const std::size_t n = permutation_.size();
        check_count(count);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(source.below(n - i));
            std::swap(permutation_[i], permutation_[j]);
        }
        return std::span<const std::size_t>(permutation_).first(count);
    }

private:
    void check_count(std::size_t count) const;

    std::vector<std::size_t> permutation_;
};

/// Accounts sorted ascending by balance (ties by index) and cut into
/// `bracket_count` contiguous brackets; the first (n mod k) brackets hold
/// one extra account. One winner is drawn uniformly from each bracket.
class BracketSelector {
public:
    BracketSelector(const AccountPopulation& population, std::size_t bracket_count);

    /// Uses a precomputed ascending order (see sorted_indices).
    BracketSelector(std::vector<std::size_t> order, std::size_t bracket_count);

    std::size_t bracket_count() const noexcept { return bounds_.size() - 1; }

    /// Account indices in bracket `i`, ascending by balance.
    std::span<const std::size_t> bracket(std::size_t i) const noexcept;

    /// One index per bracket, valid until the next call.
    template <BoundedSource Source>
    std::span<const std::size_t> select(Source& source) {
        for (std::size_t i = 0; i + 1 < bounds_.size(); ++i) {
            const std::size_t size = bounds_[i + 1] - bounds_[i];
            winners_[i] = sorted_[bounds_[i] + static_cast<std::size_t>(source.below(size))];
        }
        return winners_;
    }

private:
    std::vector<std::size_t> sorted_;
    std::vector<std::size_t> bounds_;
    std::vector<std::size_t> winners_;
};

/// Indices sorted ascending by balance, ties broken by index.
std::vector<std::size_t> sorted_indices(const AccountPopulation& population);

/// Throws std::invalid_argument when the schedule has more prizes than accounts.
DrawOutcome draw_random(const AccountPopulation& population, const PrizeSchedule& schedule, Rng& rng);
DrawOutcome draw_bracketed(const AccountPopulation& population, const PrizeSchedule& schedule, Rng& rng);
DrawOutcome draw(const AccountPopulation& population, const PrizeSchedule& schedule,
                 Mechanism mechanism, Rng& rng);

/// Largest payout any single drawing can produce under `mechanism`.
double worst_payout(const AccountPopulation& population, const PrizeSchedule& schedule,
                    Mechanism mechanism);

/// Smallest payout any single drawing can produce under `mechanism`.
double best_payout(const AccountPopulation& population, const PrizeSchedule& schedule,
                   Mechanism mechanism);

/// As above, with `order` any ascending arrangement of the balances. An order
/// taken before capping stays valid after it, since capping is monotone.
double worst_payout(const AccountPopulation& population, const PrizeSchedule& schedule,
                    Mechanism mechanism, std::span<const std::size_t> order);
double best_payout(const AccountPopulation& population, const PrizeSchedule& schedule,
                   Mechanism mechanism, std::span<const std::size_t> order);

} // namespace plsim
