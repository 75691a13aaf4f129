#include "rotsim/random.hpp"

#include <bit>

namespace rotsim {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t key, std::uint64_t block)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    engine_.seed(seq);
}

std::uint64_t stream_key(double value)
{
    return std::bit_cast<std::uint64_t>(value + 0.0);
}

}  // namespace rotsim
