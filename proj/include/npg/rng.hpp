#pragma once

#include <cstdint>
#include <random>

namespace npg {

// Scrambles raw seeds so that consecutive integers (seed, seed+1, ...) give
// unrelated streams.
std::uint64_t splitmix64(std::uint64_t x);

std::mt19937_64 make_engine(std::uint64_t seed);

}  // namespace npg
