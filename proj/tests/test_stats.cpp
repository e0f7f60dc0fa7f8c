#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "grn/rng.hpp"
#include "grn/stats.hpp"

using namespace grn;

namespace {

std::vector<double> exponential_sample(std::uint64_t seed, std::size_t n, double rate) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) {
    x = rng.exponential(rate);
  }
  return v;
}

}  // namespace

TEST_CASE("DKW band") {
  CHECK(dkw_band(10000, 0.01) == doctest::Approx(std::sqrt(std::log(200.0) / 20000.0)));
  CHECK(dkw_band(10000, 0.01) == doctest::Approx(0.01628).epsilon(1e-3));
  CHECK_THROWS_AS(dkw_band(0), std::invalid_argument);
  CHECK_THROWS_AS(dkw_band(10, 1.5), std::invalid_argument);
}

TEST_CASE("dominance test holds at its level for the true law") {
  auto cdf = [](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-2.0 * t); };
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = exponential_sample(stream_seed(40, trial), 1000, 2.0);
    failures += dominance_test(v, cdf).pass ? 0 : 1;
  }
  // One-sided DKW: the false alarm rate is at most alpha / 2 = 0.005.
  CHECK(failures <= 4);
}

TEST_CASE("dominance test separates smaller and larger laws") {
  auto ref = [](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-t); };
  const auto smaller = exponential_sample(1, 5000, 1.5);
  const auto larger = exponential_sample(2, 5000, 0.7);
  const auto ok = dominance_test(smaller, ref);
  CHECK(ok.pass);
  CHECK(ok.margin > -0.1 * ok.band);
  const auto bad = dominance_test(larger, ref);
  CHECK_FALSE(bad.pass);
  CHECK(bad.margin < -bad.band);
  CHECK_THROWS_AS(dominance_test(std::vector<double>(50, 1.0), ref), std::invalid_argument);
}

TEST_CASE("integer support dominance") {
  // Geometric on {0, 1, ...} with success probability 0.4 against itself and
  // against a heavier one.
  auto geom_cdf = [](double p) {
    return [p](double k) { return k < 0.0 ? 0.0 : 1.0 - std::pow(1.0 - p, std::floor(k) + 1.0); };
  };
  Rng rng(6);
  std::vector<double> v(4000);
  for (auto& x : v) {
    x = static_cast<double>(rng.geometric(0.4));
  }
  CHECK(dominance_test(v, geom_cdf(0.4), 0.01, Support::integer).pass);
  CHECK_FALSE(dominance_test(v, geom_cdf(0.6), 0.01, Support::integer).pass);
  CHECK(dominance_test(v, geom_cdf(0.2), 0.01, Support::integer).pass);
}

TEST_CASE("Kolmogorov distribution") {
  CHECK(ks_critical_constant(0.01) == doctest::Approx(1.628));
  CHECK(ks_critical_constant(0.05) == doctest::Approx(1.3581).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.628) == doctest::Approx(0.01).epsilon(0.02));
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(5.0) < 1e-20);
}

TEST_CASE("two-sample KS") {
  const std::vector<double> a{1.0, 2.0, 3.0}, b{1.5, 2.5, 3.5, 4.5};
  // Largest gap: after 3.0 (1 vs 1/2).
  CHECK(ks_two_sample(a, b).statistic == doctest::Approx(0.5));
  const std::vector<double> tied_a{1.0, 1.0, 2.0}, tied_b{1.0, 2.0, 2.0};
  CHECK(ks_two_sample(tied_a, tied_b).statistic == doctest::Approx(1.0 / 3.0));

  const auto x = exponential_sample(3, 2000, 1.0);
  const auto y = exponential_sample(4, 2000, 1.0);
  const auto z = exponential_sample(5, 2000, 1.3);
  CHECK_FALSE(ks_two_sample(x, y).reject);
  CHECK(ks_two_sample(x, z).reject);
  CHECK(ks_two_sample(x, z).p_value < 0.01);
  CHECK_THROWS_AS(ks_two_sample(x, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("one-sample KS") {
  const std::vector<double> u{0.1, 0.4, 0.9};
  auto uniform = [](double t) { return std::clamp(t, 0.0, 1.0); };
  // max(1/3 - 0.1, 0.4 - 1/3, 2/3 - 0.4, 0.9 - 2/3, 1 - 0.9) = 4/15.
  CHECK(ks_one_sample(u, uniform).statistic == doctest::Approx(0.2666666666666667));
  const auto x = exponential_sample(7, 3000, 2.0);
  CHECK_FALSE(ks_one_sample(x, [](double t) { return -std::expm1(-2.0 * t); }).reject);
  CHECK(ks_one_sample(x, [](double t) { return -std::expm1(-1.5 * t); }).reject);
}

TEST_CASE("dip statistic reference values") {
  const std::vector<double> x{0.1, 0.35, 0.4, 1.2, 2.5, 2.6, 2.65, 3.9, 4.0, 4.05, 6.0};
  CHECK(dip_statistic(x) == doctest::Approx(0.12175324675324677).epsilon(1e-12));
  const std::vector<double> z{0.0, 0.1, 0.2, 0.3, 10.0, 10.1, 10.2, 10.3};
  CHECK(dip_statistic(z) == doctest::Approx(0.2425).epsilon(1e-12));
  std::vector<double> even;
  for (int i = 1; i <= 10; ++i) {
    even.push_back(i);
  }
  CHECK(dip_statistic(even) == doctest::Approx(0.05));
  // Order does not matter.
  const std::vector<double> shuffled{10.2, 0.1, 10.0, 0.3, 10.3, 0.0, 0.2, 10.1};
  CHECK(dip_statistic(shuffled) == dip_statistic(z));
}

TEST_CASE("dip test tells one mode from two") {
  Rng rng(11);
  std::vector<double> one, two;
  for (int i = 0; i < 400; ++i) {
    const double g = std::sqrt(-2.0 * std::log(rng.uniform())) *
                     std::cos(2.0 * M_PI * rng.uniform());
    one.push_back(g);
    two.push_back(g + (i % 2 == 0 ? -3.0 : 3.0));
  }
  const auto a = dip_test(one, 0.05, 500, 2);
  const auto b = dip_test(two, 0.05, 500, 2);
  CHECK_FALSE(a.reject);
  CHECK(b.reject);
  CHECK(b.p_value < 0.01);
  CHECK(b.dip > a.dip);
  CHECK_THROWS_AS(dip_test(std::vector<double>{1.0, 2.0}), std::invalid_argument);
}
