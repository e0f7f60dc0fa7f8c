#include "grn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grn {

double gamma_rate(double p_star, double tau, double d1_min) {
  const double a = p_star * tau;
  if (a == 0.0) {
    return 0.0;
  }
  return a * d1_min / (a + d1_min);
}

double companion_mean_bound(double t, double mean_u0, const CompanionParams& p) {
  if (!(t >= 0.0) || !(mean_u0 >= 0.0)) {
    throw std::domain_error("companion_mean_bound: t and the initial mean must be >= 0");
  }
  const double ps = p_star(p, mean_u0);
  const double g = gamma_rate(ps, p.tau, p.d1_min);
  const double u = std::max(mean_u0, p.rho);
  return (u + g * std::exp(-1.0) * (mean_u0 + p.tau * (1.0 - ps)) * t) * std::exp(-g * t);
}

double bound_p(double t, double w1_0, const DerivedConstants& constants) {
  return companion_mean_bound(t, w1_0, CompanionParams::from(constants));
}

double bound_mp(double t, double w0, const DerivedConstants& constants) {
  return companion_mean_bound(t, w0, CompanionParams::from(constants));
}

double chen_exponent(const DerivedConstants& constants) {
  return constants.r * constants.lambda_cap - constants.d1_min;
}

double chen_bound(double t, double w1_0, const DerivedConstants& constants) {
  if (!(t >= 0.0)) {
    throw std::domain_error("chen_bound: t must be >= 0");
  }
  return w1_0 * std::exp(chen_exponent(constants) * t);
}

double chen_bound(double t, double w1_0, const NetworkSpec& net) {
  return chen_bound(t, w1_0, derived_constants(net));
}

bool is_dissipative(const DerivedConstants& constants) {
  return constants.lambda_cap * constants.rho < 1.0;
}

bool is_dissipative(const NetworkSpec& net) { return is_dissipative(derived_constants(net)); }

}  // namespace grn
