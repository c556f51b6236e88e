#pragma once

#include <cstdint>
#include <random>

namespace revmc {

/// Explicit seed for every randomized routine. There is no ambient entropy.
struct RngSeed {
  std::uint64_t value = 0;
};

/// Independent generator for (seed, stream). Results depend only on the pair,
/// so loops over streams can be split across threads without changing output.
std::mt19937_64 make_stream(RngSeed seed, std::uint64_t stream = 0);

}  // namespace revmc
