#include <plsim/population.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace plsim {

AccountPopulation::AccountPopulation(std::vector<double> balances) : balances_(std::move(balances)) {
    if (balances_.empty()) {
        throw std::invalid_argument("account population must not be empty");
    }
    for (const double balance : balances_) {
        if (!(balance > 0.0) || !std::isfinite(balance)) {
            throw std::invalid_argument("account balances must be finite and positive");
        }
    }
    total_ = std::accumulate(balances_.begin(), balances_.end(), 0.0);
    mean_ = total_ / static_cast<double>(balances_.size());
}

AccountPopulation generate_population(const pareto::ParetoParams& params, std::size_t n,
                                      std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("generate_population: population size must be at least 1");
    }
    Rng rng(seed);
    std::vector<double> balances(n);
    for (double& balance : balances) {
        balance = pareto::sample(params, rng);
    }
    return AccountPopulation(std::move(balances));
}

AccountPopulation apply_cap(const AccountPopulation& population, double cap) {
    if (!(cap > 0.0)) {
        throw std::invalid_argument("apply_cap: cap must be positive");
    }
    std::vector<double> capped(population.balances().begin(), population.balances().end());
    for (double& balance : capped) {
        balance = std::min(balance, cap);
    }
    return AccountPopulation(std::move(capped));
}

std::size_t count_above(const AccountPopulation& population, double cap) noexcept {
    const auto balances = population.balances();
    return static_cast<std::size_t>(
        std::count_if(balances.begin(), balances.end(), [cap](double b) { return b > cap; }));
}

void write_population_csv(const AccountPopulation& population, std::ostream& out) {
    out << "balance\n";
    char buffer[32];
    for (const double balance : population.balances()) {
        std::snprintf(buffer, sizeof buffer, "%.17g\n", balance);
        out << buffer;
    }
}

} // namespace plsim
