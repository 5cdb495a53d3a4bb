#pragma once

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace plsim {

/// Seed used by every entry point when the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED2017ULL;

/// One step of the splitmix64 sequence; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Derives an independent substream seed from a master seed and a path of
/// counters (run index, stream id, ...). Same inputs give the same seed on
/// every platform.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// Anything that can hand out uniform doubles in [0, 1).
template <class T>
concept UniformSource = requires(T& source) {
    { source.uniform() } -> std::convertible_to<double>;
};

/// Anything that can hand out uniform integers in [0, bound).
template <class T>
concept BoundedSource = requires(T& source, std::uint64_t bound) {
    { source.below(bound) } -> std::convertible_to<std::uint64_t>;
};

/// Portable random stream: mt19937_64 underneath, with the uniform and
/// bounded-integer transforms defined here rather than by the standard
/// library so results are bit-identical across toolchains.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() noexcept { return std::mt19937_64::min(); }
    static constexpr result_type max() noexcept { return std::mt19937_64::max(); }

    result_type operator()() { return engine_(); }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). `bound` must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

} // namespace plsim
