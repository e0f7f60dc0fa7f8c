#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grn/model.hpp"
#include "grn/state.hpp"

namespace grn {

/// i.i.d. draws of a state vector at a fixed time, stored row by row.
struct SampleCloud {
  std::vector<double> data;
  std::size_t dim = 0;
  std::string label;
  double time = 0.0;

  std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(data).subspan(i * dim, dim);
  }
  void push(std::span<const double> x);
};

/// Clouds for the mRNA-protein model are stored as (eps_i y_i, z_i) so the l1
/// ground cost is the eps-weighted distance used by the coupling.
std::vector<double> weighted_mp_point(std::span<const double> eps, std::span<const double> yz);

inline constexpr std::size_t kMaxExactSamples = 2048;

/// Exact optimal transport between two equal-size empirical measures under the
/// l1 ground cost (shortest augmenting path assignment, O(N^3)). If
/// `assignment` is non-null it receives the matched index of b for each a.
double empirical_w1_exact(const SampleCloud& a, const SampleCloud& b,
                          std::vector<std::size_t>* assignment = nullptr);

struct W1Estimate {
  double value = 0.0;
  double se = 0.0;  ///< sd of the matched costs / sqrt(N)
};

W1Estimate empirical_w1_with_se(const SampleCloud& a, const SampleCloud& b);

/// W1 between two equal-size 1-D samples via sorted matching.
double w1_sorted_1d(std::span<const double> a, std::span<const double> b);

/// Sum over coordinates of the 1-D W1; a lower bound on the l1 W1.
double w1_lower_marginals(const SampleCloud& a, const SampleCloud& b);

struct McEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::size_t runs = 0;
};

McEstimate mc_estimate(std::span<const double> values);

/// Coupling estimate of E||X1(t) - X2(t)||_1 from the synchronizing coupling;
/// run k uses stream_seed(seed, k).
McEstimate w1_upper_coupling_p(const NetworkSpec& net, const StateP& x1, const StateP& x2,
                               double t, std::size_t runs, std::uint64_t seed,
                               unsigned workers = 1);

/// Same for the mRNA-protein model with the eps-weighted distance.
McEstimate w1_upper_coupling_mp(const NetworkSpec& net, const StateMP& s1,
                                const StateMP& s2, double t, std::size_t runs,
                                std::uint64_t seed, unsigned workers = 1);

}  // namespace grn
