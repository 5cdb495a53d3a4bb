#include <plsim/rng.hpp>

#include <array>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

namespace {

using plsim::Rng;

TEST(Rng, SameSeedSameStream) {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(a(), b());
    }
}

TEST(Rng, MatchesReferenceMt19937_64) {
    // The standard pins the 10000th output of mt19937_64 seeded with 5489.
    Rng rng(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) {
        x = rng();
    }
    EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(Rng, UniformInHalfOpenUnitInterval) {
    Rng rng(7);
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    EXPECT_LT(lo, 1e-3);
    EXPECT_GT(hi, 1.0 - 1e-3);
}

TEST(Rng, BelowStaysInRangeAndHitsEveryValue) {
    Rng rng(11);
    std::array<int, 7> seen{};
    for (int i = 0; i < 7000; ++i) {
        const auto v = rng.below(7);
        ASSERT_LT(v, 7U);
        ++seen[v];
    }
    for (const int count : seen) {
        EXPECT_GT(count, 850);
        EXPECT_LT(count, 1150);
    }
    EXPECT_EQ(rng.below(1), 0U);
}

TEST(Rng, BelowZeroThrows) {
    Rng rng(1);
    EXPECT_THROW(rng.below(0), std::invalid_argument);
}

TEST(DeriveSeed, DistinctPathsGiveDistinctSeeds) {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t run = 0; run < 200; ++run) {
        for (std::uint64_t stream = 0; stream < 3; ++stream) {
            for (std::uint64_t s = 0; s < 4; ++s) {
                seeds.insert(plsim::derive_seed(plsim::kDefaultSeed, {run, stream, s}));
            }
        }
    }
    EXPECT_EQ(seeds.size(), 200U * 3U * 4U);
    EXPECT_NE(plsim::derive_seed(1, {0}), plsim::derive_seed(2, {0}));
    EXPECT_NE(plsim::derive_seed(1, {0}), plsim::derive_seed(1, {0, 0}));
}

TEST(DeriveSeed, IsAPureFunction) {
    EXPECT_EQ(plsim::derive_seed(99, {3, 1, 2}), plsim::derive_seed(99, {3, 1, 2}));
}

} // namespace
