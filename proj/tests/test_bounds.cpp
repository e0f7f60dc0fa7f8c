#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "grn/bounds.hpp"
#include "grn/config.hpp"
#include "grn/rng.hpp"
#include "test_util.hpp"

using namespace grn;

namespace {

DerivedConstants constants(double r, double d1, double lambda) {
  DerivedConstants c;
  c.r = r;
  c.d1_min = d1;
  c.lambda_cap = lambda;
  c.rho = r / d1;
  c.tau = std::min(r, d1);
  return c;
}

}  // namespace

TEST_CASE("gamma rate") {
  CHECK(gamma_rate(1.0, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(gamma_rate(0.5, 2.0, 1.0) == doctest::Approx(0.5));
  CHECK(gamma_rate(0.0, 2.0, 1.0) == 0.0);
  CHECK(gamma_rate(1.0, 3.0, 1.5) == doctest::Approx(1.0));
}

TEST_CASE("bound by hand at r = d1 = Lambda = 1") {
  const auto c = constants(1.0, 1.0, 1.0);
  const double ps = std::exp(-1.0);
  const double g = ps / (ps + 1.0);
  for (double t : {0.0, 0.5, 3.0, 40.0}) {
    const double expected = (1.0 + g * ps * (2.0 - ps) * t) * std::exp(-g * t);
    CHECK(bound_p(t, 1.0, c) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(bound_mp(t, 1.0, c) == doctest::Approx(expected).epsilon(1e-13));
  }
  // w0 = 3 > rho: p* = (1/3) e^{-1}.
  const double ps3 = std::exp(-1.0) / 3.0;
  const double g3 = ps3 / (ps3 + 1.0);
  CHECK(bound_p(2.0, 3.0, c) ==
        doctest::Approx((3.0 + g3 * std::exp(-1.0) * (3.0 + 1.0 - ps3) * 2.0) *
                        std::exp(-2.0 * g3)));
}

TEST_CASE("bound starts at max(w0, rho) and vanishes") {
  const auto c = constants(4.0, 2.0, 0.3);
  CHECK(bound_p(0.0, 0.5, c) == doctest::Approx(2.0));
  CHECK(bound_p(0.0, 7.0, c) == doctest::Approx(7.0));
  const CompanionParams p = CompanionParams::from(c);
  const double g = gamma_rate(p_star(p, 0.5), p.tau, p.d1_min);
  CHECK(bound_p(200.0 / g, 0.5, c) < 1e-60);
  CHECK_THROWS_AS(bound_p(-1.0, 1.0, c), std::domain_error);
}

TEST_CASE("companion mean stays under the bound") {
  for (const auto& c : {constants(1.0, 1.0, 1.0), constants(3.0, 1.0, 0.5)}) {
    const auto p = CompanionParams::from(c);
    const double u0 = 2.0;
    for (double t : {0.5, 2.0, 6.0}) {
      std::vector<double> v;
      for (int k = 0; k < 3000; ++k) {
        Rng rng(stream_seed(31, k));
        v.push_back(simulate_companion_thinning(p, u0, t, rng));
      }
      CHECK(testutil::mean(v) <= bound_p(t, u0, c) + 3.0 * testutil::standard_error(v));
    }
  }
}

TEST_CASE("Gronwall comparison exponent") {
  auto net = testutil::toggle(2.0, 0.0, 0.5, 4.5);
  const auto c = derived_constants(net);
  // Each gene: ell = 0.5, k1 - k0 = 4.
  CHECK(chen_exponent(c) == doctest::Approx(8.0 * 0.5 - 1.0));
  CHECK(chen_bound(0.5, 2.0, net) == doctest::Approx(2.0 * std::exp(1.5)));
  CHECK(chen_bound(0.0, 2.0, c) == 2.0);
  CHECK_THROWS_AS(chen_bound(-0.1, 1.0, c), std::domain_error);
}

TEST_CASE("dissipativity of the shipped toggle regimes") {
  const auto weak = parse_network_config(std::string(GRN_SOURCE_DIR) + "/configs/toggle_weak.json");
  const auto strong =
      parse_network_config(std::string(GRN_SOURCE_DIR) + "/configs/toggle_strong.json");
  CHECK(is_dissipative(weak));
  CHECK_FALSE(is_dissipative(strong));
  const auto cw = derived_constants(weak);
  CHECK(cw.lambda_cap * cw.rho == doctest::Approx(0.087).epsilon(0.01));
  const auto cs = derived_constants(strong);
  CHECK(cs.lambda_cap == doctest::Approx(0.6));
  CHECK(1.0 / cs.rho == doctest::Approx(0.024));
  CHECK(is_dissipative(constants(0.0, 1.0, 0.0)));
}
