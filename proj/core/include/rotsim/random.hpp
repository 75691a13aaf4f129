#pragma once

#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <cstdint>
#include <random>

namespace rotsim {

/// Per-block random stream.
///
/// Streams are keyed by (seed, key, block) through std::seed_seq, so the
/// numbers a block sees depend only on those three values and never on
/// which worker thread runs it.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t key, std::uint64_t block);
    explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0, 0) {}

    /// Standard normal N(0, 1).
    double normal() { return normal_(engine_); }
    /// Uniform integer in [0, n).
    int uniform_index(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    // Ziggurat sampler; several times faster than std::normal_distribution.
    boost::random::normal_distribution<double> normal_{0.0, 1.0};
};

/// |h| for h ~ CN(0, 1): two N(0, 1/2) draws, real part first.
inline double rayleigh(RandomStream& rng)
{
    const double re = rng.normal();
    const double im = rng.normal();
    return std::sqrt(0.5 * (re * re + im * im));
}

/// Stable 64-bit key for a double (used to key streams by SNR value).
std::uint64_t stream_key(double value);

}  // namespace rotsim
