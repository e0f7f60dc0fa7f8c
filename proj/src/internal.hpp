#pragma once

#include <span>
#include <stdexcept>

namespace grn::detail {

inline void check_horizon(double horizon) {
  if (!(horizon >= 0.0)) {
    throw std::invalid_argument("horizon must be >= 0");
  }
}

inline void check_observation_times(std::span<const double> times, double horizon) {
  double prev = 0.0;
  for (double t : times) {
    if (!(t >= prev) || t > horizon) {
      throw std::invalid_argument(
          "observation times must be nondecreasing and lie in [0, horizon]");
    }
    prev = t;
  }
}

}  // namespace grn::detail
