#include "grn/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "grn/coupling.hpp"
#include "grn/ensemble.hpp"
#include "grn/rng.hpp"

namespace grn {

void SampleCloud::push(std::span<const double> x) {
  if (dim == 0) {
    dim = x.size();
  } else if (x.size() != dim) {
    throw std::invalid_argument("SampleCloud::push: dimension mismatch");
  }
  data.insert(data.end(), x.begin(), x.end());
}

std::vector<double> weighted_mp_point(std::span<const double> eps,
                                      std::span<const double> yz) {
  const std::size_t n = eps.size();
  if (yz.size() != 2 * n) {
    throw std::invalid_argument("weighted_mp_point: dimension mismatch");
  }
  std::vector<double> out(yz.begin(), yz.end());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] *= eps[i];
  }
  return out;
}

namespace {

void check_pair(const SampleCloud& a, const SampleCloud& b) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("sample clouds have different dimensions");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument("sample clouds have different sizes");
  }
}

// Shortest augmenting path with potentials (rows = a, columns = b).
std::vector<std::size_t> solve_assignment(const SampleCloud& a, const SampleCloud& b) {
  const std::size_t n = a.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      const auto row = a.point(i0 - 1);
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) {
          continue;
        }
        const double cur = l1_distance(row, b.point(j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> match(n);
  for (std::size_t j = 1; j <= n; ++j) {
    match[p[j] - 1] = j - 1;
  }
  return match;
}

}  // namespace

W1Estimate empirical_w1_with_se(const SampleCloud& a, const SampleCloud& b) {
  check_pair(a, b);
  const std::size_t n = a.size();
  if (n == 0) {
    throw std::invalid_argument("empirical_w1: empty sample clouds");
  }
  if (n > kMaxExactSamples) {
    throw std::invalid_argument("empirical_w1: sample count exceeds 2048");
  }
  const auto match = solve_assignment(a, b);
  std::vector<double> costs(n);
  for (std::size_t i = 0; i < n; ++i) {
    costs[i] = l1_distance(a.point(i), b.point(match[i]));
  }
  const auto est = mc_estimate(costs);
  return {est.mean, est.se};
}

double empirical_w1_exact(const SampleCloud& a, const SampleCloud& b,
                          std::vector<std::size_t>* assignment) {
  check_pair(a, b);
  if (a.size() == 0) {
    throw std::invalid_argument("empirical_w1: empty sample clouds");
  }
  if (a.size() > kMaxExactSamples) {
    throw std::invalid_argument("empirical_w1: sample count exceeds 2048");
  }
  const auto match = solve_assignment(a, b);
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += l1_distance(a.point(i), b.point(match[i]));
  }
  if (assignment != nullptr) {
    *assignment = match;
  }
  return total / static_cast<double>(a.size());
}

double w1_sorted_1d(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("w1_sorted_1d: size mismatch");
  }
  if (a.empty()) {
    return 0.0;
  }
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double total = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    total += std::abs(sa[i] - sb[i]);
  }
  return total / static_cast<double>(sa.size());
}

double w1_lower_marginals(const SampleCloud& a, const SampleCloud& b) {
  check_pair(a, b);
  const std::size_t n = a.size();
  double total = 0.0;
  std::vector<double> ca(n), cb(n);
  for (std::size_t k = 0; k < a.dim; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      ca[i] = a.data[i * a.dim + k];
      cb[i] = b.data[i * b.dim + k];
    }
    total += w1_sorted_1d(ca, cb);
  }
  return total;
}

McEstimate mc_estimate(std::span<const double> values) {
  RunningMoments m;
  for (double v : values) {
    m.add(v);
  }
  return {m.mean(), m.se(), m.count()};
}

McEstimate w1_upper_coupling_p(const NetworkSpec& net, const StateP& x1, const StateP& x2,
                               double t, std::size_t runs, std::uint64_t seed,
                               unsigned workers) {
  if (runs < 2) {
    throw std::invalid_argument("w1_upper_coupling: runs must be >= 2");
  }
  CoupledOptions opts;
  opts.record_events = false;
  const auto d = run_ensemble(runs, workers, [&](std::size_t k) {
    const auto tr = simulate_coupled_p(net, x1, x2, t, stream_seed(seed, k), opts);
    return coupled_distance_p(tr.copy1(tr.terminal), tr.copy2(tr.terminal));
  });
  return mc_estimate(d);
}

McEstimate w1_upper_coupling_mp(const NetworkSpec& net, const StateMP& s1,
                                const StateMP& s2, double t, std::size_t runs,
                                std::uint64_t seed, unsigned workers) {
  if (runs < 2) {
    throw std::invalid_argument("w1_upper_coupling: runs must be >= 2");
  }
  const auto eps = derived_constants(net).eps;
  CoupledOptions opts;
  opts.record_events = false;
  const auto d = run_ensemble(runs, workers, [&](std::size_t k) {
    const auto tr = simulate_coupled_mp(net, s1, s2, t, stream_seed(seed, k), opts);
    return coupled_distance_mp(eps, tr.copy1(tr.terminal), tr.copy2(tr.terminal));
  });
  return mc_estimate(d);
}

}  // namespace grn
