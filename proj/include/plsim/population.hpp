#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <plsim/pareto.hpp>

namespace plsim {

/// Immutable sample of account balances in generation order, with the mean
/// cached at construction.
class AccountPopulation {
public:
    /// Throws std::invalid_argument when `balances` is empty or holds a
    /// non-positive or non-finite value.
    explicit AccountPopulation(std::vector<double> balances);

    std::span<const double> balances() const noexcept { return balances_; }
    double operator[](std::size_t index) const noexcept { return balances_[index]; }
    std::size_t count() const noexcept { return balances_.size(); }
    double mean() const noexcept { return mean_; }
    double total() const noexcept { return total_; }

private:
    std::vector<double> balances_;
    double total_ = 0.0;
    double mean_ = 0.0;
};

/// Draws `n` independent balances by inverse transform. Deterministic per seed.
AccountPopulation generate_population(const pareto::ParetoParams& params, std::size_t n,
                                      std::uint64_t seed);

/// Returns a copy with every balance replaced by min(balance, cap) and the
/// mean recomputed. A cap of +infinity is the identity.
AccountPopulation apply_cap(const AccountPopulation& population, double cap);

/// Number of balances strictly above `cap`.
std::size_t count_above(const AccountPopulation& population, double cap) noexcept;

/// One balance per line under a `balance` header.
void write_population_csv(const AccountPopulation& population, std::ostream& out);

} // namespace plsim
