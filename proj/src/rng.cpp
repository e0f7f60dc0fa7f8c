#include "grn/rng.hpp"

#include <limits>
#include <stdexcept>

namespace grn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^
                    splitmix64(index + 0x9E3779B97F4A7C15ULL));
}

std::uint64_t Rng::geometric(double p) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::domain_error("geometric: parameter must lie in (0, 1]");
  }
  if (p == 1.0) {
    return 0;
  }
  const double k = std::floor(std::log(uniform()) / std::log1p(-p));
  if (k >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(k);
}

}  // namespace grn
