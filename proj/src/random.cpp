#include "revmc/random.hpp"

namespace revmc {

std::mt19937_64 make_stream(RngSeed seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.value),
                    static_cast<std::uint32_t>(seed.value >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace revmc
