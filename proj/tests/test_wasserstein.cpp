#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "grn/rng.hpp"
#include "grn/wasserstein.hpp"
#include "test_util.hpp"

using namespace grn;

namespace {

SampleCloud random_cloud(Rng& rng, std::size_t n, std::size_t dim, double shift = 0.0) {
  SampleCloud c;
  c.dim = dim;
  for (std::size_t i = 0; i < n * dim; ++i) {
    c.data.push_back(shift + 3.0 * rng.uniform() * rng.uniform());
  }
  return c;
}

// Minimum over all permutations of the mean matched l1 cost.
double brute_force_w1(const SampleCloud& a, const SampleCloud& b) {
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      s += l1_distance(a.point(i), b.point(perm[i]));
    }
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("exact assignment agrees with exhaustive search") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const std::size_t dim = 1 + trial % 3;
    const auto a = random_cloud(rng, n, dim);
    const auto b = random_cloud(rng, n, dim, 0.4);
    std::vector<std::size_t> assignment;
    const double w = empirical_w1_exact(a, b, &assignment);
    CHECK(w == doctest::Approx(brute_force_w1(a, b)).epsilon(1e-12));
    REQUIRE(assignment.size() == n);
    auto sorted = assignment;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(sorted[i] == i);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += l1_distance(a.point(i), b.point(assignment[i]));
    }
    CHECK(s / static_cast<double>(n) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("one-dimensional transport is sorted matching") {
  Rng rng(3);
  const auto a = random_cloud(rng, 300, 1);
  const auto b = random_cloud(rng, 300, 1, 0.2);
  CHECK(empirical_w1_exact(a, b) == doctest::Approx(w1_sorted_1d(a.data, b.data)).epsilon(1e-12));
  const std::vector<double> x{0.0, 1.0, 2.0}, y{5.0, 3.0, 4.0};
  CHECK(w1_sorted_1d(x, y) == doctest::Approx(3.0));
}

TEST_CASE("product clouds split across coordinates") {
  // Grid clouds that are products of 1-D sets: the l1 transport cost is the
  // sum of the coordinate costs.
  SampleCloud a, b;
  a.dim = b.dim = 2;
  const std::vector<double> ax{0.0, 1.0, 3.0}, ay{0.0, 2.0};
  const std::vector<double> bx{0.5, 2.0, 2.5}, by{1.0, 4.0};
  for (double x : ax) {
    for (double y : ay) {
      a.push(std::vector<double>{x, y});
    }
  }
  for (double x : bx) {
    for (double y : by) {
      b.push(std::vector<double>{x, y});
    }
  }
  const double expected = w1_sorted_1d(ax, bx) + w1_sorted_1d(ay, by);
  CHECK(empirical_w1_exact(a, b) == doctest::Approx(expected));
  CHECK(w1_lower_marginals(a, b) == doctest::Approx(expected));
}

TEST_CASE("metric properties and the marginal lower bound") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_cloud(rng, 40, 2);
    const auto b = random_cloud(rng, 40, 2, 0.3);
    const auto c = random_cloud(rng, 40, 2, -0.2);
    const double ab = empirical_w1_exact(a, b);
    CHECK(ab == doctest::Approx(empirical_w1_exact(b, a)).epsilon(1e-12));
    CHECK(empirical_w1_exact(a, a) == doctest::Approx(0.0));
    CHECK(ab <= empirical_w1_exact(a, c) + empirical_w1_exact(c, b) + 1e-12);
    CHECK(w1_lower_marginals(a, b) <= ab + 1e-12);
  }
}

TEST_CASE("standard error of the matched costs") {
  SampleCloud a, b;
  a.dim = b.dim = 1;
  for (double v : {0.0, 10.0}) {
    a.push(std::vector<double>{v});
  }
  for (double v : {1.0, 13.0}) {
    b.push(std::vector<double>{v});
  }
  const auto est = empirical_w1_with_se(a, b);
  CHECK(est.value == doctest::Approx(2.0));
  // costs {1, 3}: sample sd sqrt(2), se 1.
  CHECK(est.se == doctest::Approx(1.0));
}

TEST_CASE("weighted mRNA-protein points") {
  const std::vector<double> eps{0.5, 2.0};
  const std::vector<double> yz{4.0, 1.0, 7.0, 8.0};
  const auto w = weighted_mp_point(eps, yz);
  CHECK(w == std::vector<double>{2.0, 2.0, 7.0, 8.0});
  CHECK_THROWS_AS(weighted_mp_point(eps, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("cloud size errors") {
  SampleCloud a, b, c;
  a.dim = b.dim = 1;
  c.dim = 2;
  a.push(std::vector<double>{1.0});
  CHECK_THROWS_AS(a.push(std::vector<double>{1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_w1_exact(a, b), std::invalid_argument);
  c.push(std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(empirical_w1_exact(a, c), std::invalid_argument);
  SampleCloud big1, big2;
  big1.dim = big2.dim = 1;
  big1.data.assign(kMaxExactSamples + 1, 0.0);
  big2.data.assign(kMaxExactSamples + 1, 0.0);
  CHECK_THROWS_AS(empirical_w1_exact(big1, big2), std::invalid_argument);
  CHECK_THROWS_AS(w1_sorted_1d(std::vector<double>{1.0}, std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("coupling estimate brackets the empirical distance") {
  auto net = testutil::toggle(1.0, 1.0, 0.5, 4.0);
  const StateP x1{{1.0, 0.0}}, x2{{0.0, 1.0}};
  const auto est = w1_upper_coupling_p(net, x1, x2, 0.0, 10, 4);
  CHECK(est.mean == doctest::Approx(2.0));
  CHECK(est.se == doctest::Approx(0.0));
  const auto later = w1_upper_coupling_p(net, x1, x2, 1.0, 400, 4);
  CHECK(later.runs == 400);
  CHECK(later.mean < 2.0);
  const auto again = w1_upper_coupling_p(net, x1, x2, 1.0, 400, 4, 3);
  CHECK(again.mean == later.mean);
  CHECK_THROWS_AS(w1_upper_coupling_p(net, x1, x2, 1.0, 1, 4), std::invalid_argument);

  const StateMP s1{{0.0, 0.0}, {1.0, 0.0}}, s2{{0.0, 0.0}, {0.0, 1.0}};
  const auto mp = w1_upper_coupling_mp(net, s1, s2, 0.0, 5, 2);
  CHECK(mp.mean == doctest::Approx(2.0));
}

TEST_CASE("Monte Carlo summary") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto m = mc_estimate(v);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(m.runs == 4);
}
