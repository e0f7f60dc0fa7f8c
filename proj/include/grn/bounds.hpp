#pragma once

#include "grn/companion.hpp"
#include "grn/model.hpp"

namespace grn {

/// p* tau d1_min / (p* tau + d1_min); 0 when p* tau == 0.
double gamma_rate(double p_star, double tau, double d1_min);

/// Mean decay bound of the companion process started with mean m:
/// (max(m, rho) + gamma e^{-1} (m + tau (1 - p*)) t) e^{-gamma t}, p* = p*(m).
double companion_mean_bound(double t, double mean_u0, const CompanionParams& p);

/// Wasserstein-1 bound for the protein-only model, started at distance w1_0.
double bound_p(double t, double w1_0, const DerivedConstants& constants);

/// Bound for the mRNA-protein model; w0 = W1(z-laws) + eps-weighted W1(y-laws).
double bound_mp(double t, double w0, const DerivedConstants& constants);

/// Growth exponent r Lambda - d1_min of the Gronwall comparison bound; this is
/// sum_i (k1_i - k0_i) ell_i - d1_min, the Lipschitz constant of kon minus d1_min.
double chen_exponent(const DerivedConstants& constants);

/// w1_0 exp(chen_exponent t).
double chen_bound(double t, double w1_0, const DerivedConstants& constants);
double chen_bound(double t, double w1_0, const NetworkSpec& net);

/// Lambda < 1 / rho (always true when r == 0).
bool is_dissipative(const DerivedConstants& constants);
bool is_dissipative(const NetworkSpec& net);

}  // namespace grn
