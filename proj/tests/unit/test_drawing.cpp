#include <plsim/drawing.hpp>
#include <plsim/pareto.hpp>
#include <plsim/rng.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "enumerate.hpp"

namespace {

using plsim::AccountPopulation;
using plsim::BracketSelector;
using plsim::Mechanism;
using plsim::PrizeSchedule;
using plsim::RandomSelector;
using plsim::testing::ChoiceEnumerator;

const AccountPopulation kFour({100.0, 200.0, 300.0, 400.0});

double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected) {
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

// Exact payout distribution of one drawing, by enumerating every choice path.
template <class Select>
std::map<double, double> payout_law(const AccountPopulation& pop, double multiple, Select select) {
    std::map<double, double> law;
    ChoiceEnumerator e;
    do {
        const auto winners = select(e);
        law[plsim::payout_of(pop, multiple, winners)] += e.probability();
    } while (e.next());
    return law;
}

// Exact per-account win probability.
template <class Select>
std::vector<double> win_law(std::size_t n, Select select) {
    std::vector<double> p(n, 0.0);
    ChoiceEnumerator e;
    do {
        const auto winners = select(e);
        const double weight = e.probability();
        for (const auto w : winners) {
            p[w] += weight;
        }
    } while (e.next());
    return p;
}

TEST(PrizeSchedule, ValidatesAndLabels) {
    EXPECT_THROW(PrizeSchedule(0, 1.0), std::invalid_argument);
    EXPECT_THROW(PrizeSchedule(1, 0.0), std::invalid_argument);
    EXPECT_THROW(PrizeSchedule(1, -1.0), std::invalid_argument);
    EXPECT_EQ(PrizeSchedule(1000, 1.0).label(), "1000x100%");
    EXPECT_EQ(PrizeSchedule(10, 99.0).label(), "10x9900%");
    EXPECT_EQ(PrizeSchedule(3, 0.5).label(), "3x50%");
}

TEST(Mechanism, ParsesAndPrints) {
    EXPECT_EQ(plsim::parse_mechanism("random"), Mechanism::random);
    EXPECT_EQ(plsim::parse_mechanism("bracketed"), Mechanism::bracketed);
    EXPECT_EQ(plsim::to_string(Mechanism::bracketed), "bracketed");
    EXPECT_THROW(plsim::parse_mechanism("lottery"), std::invalid_argument);
}

TEST(ExpectedPayout, Examples) {
    EXPECT_DOUBLE_EQ(plsim::expected_payout(AccountPopulation({3900.0}), PrizeSchedule(1000, 1.0)), 3900000.0);
    EXPECT_DOUBLE_EQ(plsim::expected_payout(AccountPopulation({250.0}), PrizeSchedule(1, 2.0)), 500.0);
    EXPECT_DOUBLE_EQ(plsim::expected_payout(kFour, PrizeSchedule(2, 1.0)), 500.0);
}

TEST(ExpectedInterest, Examples) {
    const PrizeSchedule one[] = {PrizeSchedule(1000, 1.0)};
    const PrizeSchedule nine[] = {PrizeSchedule(100, 9.0)};
    EXPECT_DOUBLE_EQ(plsim::expected_interest(one, 100000), 0.01);
    EXPECT_DOUBLE_EQ(plsim::expected_interest(nine, 100000), 0.009);
    EXPECT_EQ(plsim::expected_interest({}, 100000), 0.0);
    EXPECT_THROW(plsim::expected_interest(one, 0), std::invalid_argument);
}

TEST(DrawRandom, EnumeratedLawOnFourAccounts) {
    const auto law = payout_law(kFour, 1.0, [](ChoiceEnumerator& e) {
        RandomSelector selector(4);
        const auto s = selector.select(2, e);
        return std::vector<std::size_t>(s.begin(), s.end());
    });
    const std::map<double, double> expected{{300, 1.0 / 6}, {400, 1.0 / 6}, {500, 2.0 / 6},
                                            {600, 1.0 / 6}, {700, 1.0 / 6}};
    ASSERT_EQ(law.size(), expected.size());
    double mean = 0.0;
    for (const auto& [payout, p] : expected) {
        EXPECT_NEAR(law.at(payout), p, 1e-12) << payout;
        mean += payout * p;
    }
    EXPECT_NEAR(mean, 500.0, 1e-9);
}

TEST(DrawBracketed, EnumeratedLawOnFourAccounts) {
    BracketSelector selector(kFour, 2);
    EXPECT_EQ(std::vector<std::size_t>(selector.bracket(0).begin(), selector.bracket(0).end()),
              (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(std::vector<std::size_t>(selector.bracket(1).begin(), selector.bracket(1).end()),
              (std::vector<std::size_t>{2, 3}));
    const auto law = payout_law(kFour, 1.0, [&](ChoiceEnumerator& e) {
        const auto s = selector.select(e);
        return std::vector<std::size_t>(s.begin(), s.end());
    });
    const std::map<double, double> expected{{400, 0.25}, {500, 0.5}, {600, 0.25}};
    ASSERT_EQ(law.size(), expected.size());
    for (const auto& [payout, p] : expected) {
        EXPECT_NEAR(law.at(payout), p, 1e-12) << payout;
    }
}

TEST(EqualChance, ExhaustiveOnSmallPopulations) {
    // Shuffled balances so bracket membership differs from index order.
    const AccountPopulation pop({520.0, 180.0, 910.0, 150.0, 330.0, 275.0, 700.0, 410.0});
    for (std::size_t n = 1; n <= 8; ++n) {
        const AccountPopulation sub(std::vector<double>(pop.balances().begin(), pop.balances().begin() + n));
        for (std::size_t k = 1; k <= n; ++k) {
            const auto random = win_law(n, [&](ChoiceEnumerator& e) {
                RandomSelector selector(n);
                const auto s = selector.select(k, e);
                return std::vector<std::size_t>(s.begin(), s.end());
            });
            for (const double p : random) {
                ASSERT_NEAR(p, static_cast<double>(k) / n, 1e-12) << n << " " << k;
            }
            if (n % k != 0) {
                continue;
            }
            BracketSelector selector(sub, k);
            const auto bracketed = win_law(n, [&](ChoiceEnumerator& e) {
                const auto s = selector.select(e);
                return std::vector<std::size_t>(s.begin(), s.end());
            });
            for (const double p : bracketed) {
                ASSERT_NEAR(p, static_cast<double>(k) / n, 1e-12) << n << " " << k;
            }
        }
    }
}

TEST(EqualChance, RandomSelectorStaysUniformAfterPriorDraws) {
    // The permutation persists between draws; uniformity must not depend on it.
    RandomSelector warm(6);
    plsim::Rng rng(5);
    for (int i = 0; i < 17; ++i) {
        warm.select(3, rng);
    }
    std::map<std::vector<std::size_t>, double> subsets;
    ChoiceEnumerator e;
    do {
        RandomSelector copy = warm;
        const auto s = copy.select(3, e);
        std::vector<std::size_t> key(s.begin(), s.end());
        std::ranges::sort(key);
        subsets[key] += e.probability();
    } while (e.next());
    ASSERT_EQ(subsets.size(), 20U);
    for (const auto& [key, p] : subsets) {
        EXPECT_NEAR(p, 1.0 / 20.0, 1e-12);
    }
}

TEST(BracketSelector, RemainderGoesToFirstBrackets) {
    const AccountPopulation pop({7.0, 1.0, 5.0, 3.0, 2.0, 6.0, 4.0});
    BracketSelector selector(pop, 3);
    ASSERT_EQ(selector.bracket_count(), 3U);
    EXPECT_EQ(selector.bracket(0).size(), 3U);
    EXPECT_EQ(selector.bracket(1).size(), 2U);
    EXPECT_EQ(selector.bracket(2).size(), 2U);
    // Ascending by balance: 1,2,3 | 4,5 | 6,7.
    EXPECT_EQ(pop[selector.bracket(0)[0]], 1.0);
    EXPECT_EQ(pop[selector.bracket(1)[0]], 4.0);
    EXPECT_EQ(pop[selector.bracket(2)[1]], 7.0);
    // With a remainder each account wins with 1/(its bracket size).
    const auto law = win_law(7, [&](ChoiceEnumerator& e) {
        const auto s = selector.select(e);
        return std::vector<std::size_t>(s.begin(), s.end());
    });
    for (std::size_t b = 0; b < 3; ++b) {
        for (const auto i : selector.bracket(b)) {
            EXPECT_NEAR(law[i], 1.0 / selector.bracket(b).size(), 1e-12);
        }
    }
}

TEST(SortedIndices, TiesBrokenByIndex) {
    const AccountPopulation pop({5.0, 1.0, 5.0, 1.0});
    EXPECT_EQ(plsim::sorted_indices(pop), (std::vector<std::size_t>{1, 3, 0, 2}));
}

TEST(DrawRandom, ChiSquareOverOutcomes) {
    plsim::Rng rng(8080);
    std::map<double, double> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        ++counts[plsim::draw_random(kFour, PrizeSchedule(2, 1.0), rng).payout];
    }
    const std::vector<double> observed{counts[300], counts[400], counts[500], counts[600], counts[700]};
    const std::vector<double> expected{draws / 6.0, draws / 6.0, draws / 3.0, draws / 6.0, draws / 6.0};
    EXPECT_EQ(counts.size(), 5U);
    EXPECT_GT(chi_square_p(observed, expected), 0.001);
}

TEST(DrawRandom, AccountFrequenciesOnFourAccounts) {
    plsim::Rng rng(99);
    std::vector<double> wins(4, 0.0);
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        for (const auto w : plsim::draw_random(kFour, PrizeSchedule(2, 1.0), rng).winners) {
            ++wins[w];
        }
    }
    EXPECT_GT(chi_square_p(wins, std::vector<double>(4, draws / 2.0)), 0.001);
}

TEST(DrawBracketed, ChiSquareOverAccounts) {
    const auto pop = plsim::generate_population({1.04, 150.0}, 100, 12);
    plsim::Rng rng(13);
    std::vector<double> wins(100, 0.0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        for (const auto w : plsim::draw_bracketed(pop, PrizeSchedule(10, 1.0), rng).winners) {
            ++wins[w];
        }
    }
    EXPECT_GT(chi_square_p(wins, std::vector<double>(100, draws / 10.0)), 0.001);
}

TEST(Draw, OutcomeInvariants) {
    const auto pop = plsim::generate_population({1.12, 250.0}, 500, 44);
    plsim::Rng rng(45);
    for (const auto mechanism : {Mechanism::random, Mechanism::bracketed}) {
        for (const auto& schedule : {PrizeSchedule(1, 1.0), PrizeSchedule(7, 2.0), PrizeSchedule(50, 9.0)}) {
            const double worst = plsim::worst_payout(pop, schedule, mechanism);
            const double best = plsim::best_payout(pop, schedule, mechanism);
            for (int i = 0; i < 200; ++i) {
                const auto outcome = plsim::draw(pop, schedule, mechanism, rng);
                ASSERT_EQ(outcome.winners.size(), schedule.count());
                std::set<std::size_t> distinct(outcome.winners.begin(), outcome.winners.end());
                ASSERT_EQ(distinct.size(), schedule.count());
                ASSERT_LT(*distinct.rbegin(), pop.count());
                double sum = 0.0;
                for (const auto w : outcome.winners) {
                    sum += pop[w];
                }
                ASSERT_NEAR(outcome.payout, schedule.multiple() * sum, 1e-9 * outcome.payout);
                ASSERT_LE(outcome.payout, worst * (1 + 1e-12));
                ASSERT_GE(outcome.payout, best * (1 - 1e-12));
            }
        }
    }
}

TEST(Draw, PayoutLinearInMultiple) {
    const auto pop = plsim::generate_population({1.04, 150.0}, 300, 3);
    for (const auto mechanism : {Mechanism::random, Mechanism::bracketed}) {
        plsim::Rng a(17);
        plsim::Rng b(17);
        for (int i = 0; i < 100; ++i) {
            const auto one = plsim::draw(pop, PrizeSchedule(20, 1.0), mechanism, a);
            const auto two = plsim::draw(pop, PrizeSchedule(20, 2.0), mechanism, b);
            ASSERT_EQ(one.winners, two.winners);
            ASSERT_DOUBLE_EQ(two.payout, 2.0 * one.payout);
        }
    }
}

TEST(Draw, AllAccountsWin) {
    plsim::Rng rng(1);
    EXPECT_DOUBLE_EQ(plsim::draw_random(kFour, PrizeSchedule(4, 2.0), rng).payout, 2000.0);
    EXPECT_DOUBLE_EQ(plsim::draw_bracketed(kFour, PrizeSchedule(4, 2.0), rng).payout, 2000.0);
}

TEST(Draw, TooManyPrizesThrows) {
    plsim::Rng rng(1);
    EXPECT_THROW(plsim::draw_random(kFour, PrizeSchedule(5, 1.0), rng), std::invalid_argument);
    EXPECT_THROW(plsim::draw_bracketed(kFour, PrizeSchedule(5, 1.0), rng), std::invalid_argument);
}

TEST(Draw, SinglePrizeBracketMatchesRandomInDistribution) {
    BracketSelector bracket(kFour, 1);
    const auto b = win_law(4, [&](ChoiceEnumerator& e) {
        const auto s = bracket.select(e);
        return std::vector<std::size_t>(s.begin(), s.end());
    });
    const auto r = win_law(4, [](ChoiceEnumerator& e) {
        RandomSelector selector(4);
        const auto s = selector.select(1, e);
        return std::vector<std::size_t>(s.begin(), s.end());
    });
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(b[i], r[i], 1e-12);
    }
}

TEST(WorstBest, Examples) {
    const PrizeSchedule two(2, 1.0);
    EXPECT_DOUBLE_EQ(plsim::worst_payout(kFour, two, Mechanism::random), 700.0);
    EXPECT_DOUBLE_EQ(plsim::worst_payout(kFour, two, Mechanism::bracketed), 600.0);
    EXPECT_DOUBLE_EQ(plsim::best_payout(kFour, two, Mechanism::random), 300.0);
    EXPECT_DOUBLE_EQ(plsim::best_payout(kFour, two, Mechanism::bracketed), 400.0);
}

TEST(WorstBest, MatchEnumeratedExtremes) {
    const AccountPopulation pop({520.0, 180.0, 910.0, 150.0, 330.0, 275.0, 700.0});
    for (std::size_t k = 1; k <= 7; ++k) {
        const PrizeSchedule schedule(k, 1.5);
        const auto random = payout_law(pop, 1.5, [&](ChoiceEnumerator& e) {
            RandomSelector selector(7);
            const auto s = selector.select(k, e);
            return std::vector<std::size_t>(s.begin(), s.end());
        });
        EXPECT_NEAR(random.rbegin()->first, plsim::worst_payout(pop, schedule, Mechanism::random), 1e-9);
        EXPECT_NEAR(random.begin()->first, plsim::best_payout(pop, schedule, Mechanism::random), 1e-9);
        BracketSelector selector(pop, k);
        const auto bracketed = payout_law(pop, 1.5, [&](ChoiceEnumerator& e) {
            const auto s = selector.select(e);
            return std::vector<std::size_t>(s.begin(), s.end());
        });
        EXPECT_NEAR(bracketed.rbegin()->first, plsim::worst_payout(pop, schedule, Mechanism::bracketed), 1e-9);
        EXPECT_NEAR(bracketed.begin()->first, plsim::best_payout(pop, schedule, Mechanism::bracketed), 1e-9);
    }
}

TEST(WorstBest, PreCapOrderStaysValidAfterCapping) {
    const auto pop = plsim::generate_population({1.04, 150.0}, 5000, 71);
    const auto order = plsim::sorted_indices(pop);
    for (const double cap : {50000.0, 2000.0, 300.0, 100.0}) {
        const auto capped = plsim::apply_cap(pop, cap);
        for (const auto mechanism : {Mechanism::random, Mechanism::bracketed}) {
            for (const auto& schedule : {PrizeSchedule(1, 1.0), PrizeSchedule(37, 2.0), PrizeSchedule(500, 9.0)}) {
                EXPECT_EQ(plsim::worst_payout(capped, schedule, mechanism, order),
                          plsim::worst_payout(capped, schedule, mechanism));
                EXPECT_EQ(plsim::best_payout(capped, schedule, mechanism, order),
                          plsim::best_payout(capped, schedule, mechanism));
            }
        }
    }
    const std::vector<std::size_t> short_order{0, 1};
    EXPECT_THROW(plsim::worst_payout(pop, PrizeSchedule(1, 1.0), Mechanism::random, short_order),
                 std::invalid_argument);
}

TEST(WorstBest, BracketingBoundsOnRandomPopulations) {
    plsim::Rng rng(2718);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(400);
        const auto pop = plsim::generate_population({1.04 + 0.5 * rng.uniform(), 150.0}, n, rng());
        const PrizeSchedule schedule(1 + rng.below(n), 0.5 + 3.0 * rng.uniform());
        ASSERT_LE(plsim::worst_payout(pop, schedule, Mechanism::bracketed),
                  plsim::worst_payout(pop, schedule, Mechanism::random));
        ASSERT_GE(plsim::best_payout(pop, schedule, Mechanism::bracketed),
                  plsim::best_payout(pop, schedule, Mechanism::random));
    }
}

} // namespace
