#pragma once

#include <cstdint>
#include <random>

namespace graphtrack {

// Named substreams of one master seed. Streams with distinct (stream, step)
// are independent and reproducible in any call order.
enum class RngStream : std::uint64_t {
    GraphGen = 1,
    Resample = 2,
    Signal = 3,
    Lambda0 = 4,
};

inline std::mt19937_64 make_rng(std::uint64_t seed, RngStream stream,
                                std::uint64_t step = 0) {
    const auto s = static_cast<std::uint64_t>(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s),    static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace graphtrack
