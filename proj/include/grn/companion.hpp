#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "grn/model.hpp"
#include "grn/rng.hpp"

namespace grn {

/// Parameters of the scalar companion process: decay at rate d1_min and
/// Exp(1) jumps at rate r min(1, Lambda u).
struct CompanionParams {
  double r = 0.0;
  double lambda_cap = 0.0;
  double d1_min = 0.0;
  double rho = 0.0;
  double tau = 0.0;

  static CompanionParams from(double r, double d1_min, double lambda_cap);
  static CompanionParams from(const DerivedConstants& c);
};

double lambda_u(const CompanionParams& p, double u);

/// Probability that the next waiting time is infinite, started from u0.
double p_infinite(const CompanionParams& p, double u0);
/// log of p_infinite, accurate when the probability underflows.
double log_p_infinite(const CompanionParams& p, double u0);

/// exp(-rho (1 ^ Lambda v)) (1 / (1 v Lambda v))^rho with v = u v rho.
double p_star(const CompanionParams& p, double u);
double p_star(double rho, double lambda_cap, double u);

/// t* = ln(Lambda u0) / d1_min, the time at which Lambda u reaches 1;
/// 0 when Lambda u0 <= 1.
double waiting_breakpoint(const CompanionParams& p, double u0);

/// P(T > t | U(0) = u0) for the next waiting time T.
double waiting_survival(const CompanionParams& p, double t, double u0);
double log_waiting_survival(const CompanionParams& p, double t, double u0);

/// P(T <= t | T < inf, U(0) = u0). Throws std::domain_error when the
/// conditioning event is null (u0 == 0, r == 0 or Lambda == 0).
double waiting_cdf_finite(const CompanionParams& p, double t, double u0);

/// Generalized inverse of waiting_cdf_finite in its first argument.
/// Requires 0 <= s < 1 (std::domain_error otherwise).
double invert_waiting_cdf(const CompanionParams& p, double s, double u0);

/// How alg1 splits the stopping draw W when p_U < p*.
enum class StopBands {
  /// Stop iff W <= p_U, so U has its exact law. The dominating count stops at
  /// the first W <= p*; runs where it stops before U are flagged.
  exact,
  /// Stop iff W <= max(p*, p_U): always N <= N', but U(t) is biased whenever
  /// p_U < p* occurs.
  literal,
};

struct Alg1Options {
  /// E[U(0)] for random starts; defaults to u0.
  std::optional<double> u_bar;
  StopBands bands = StopBands::exact;
  std::size_t max_jumps = 10'000'000;
};

struct CompanionRun {
  double terminal = 0.0;  ///< U(t)
  std::size_t jumps = 0;  ///< N
  std::size_t n_prime = 0;
  std::vector<double> waits;             ///< T_1..T_N
  std::vector<double> dominating_waits;  ///< V_1..V_{max(N, N')}
  std::vector<double> jump_times;        ///< cumulative jump instants
  std::vector<double> post_jump_values;  ///< U right after each jump
  double last_jump_time = 0.0;           ///< H
  double initial = 0.0;
  double p_star = 1.0;
  std::size_t low_pinf_events = 0;  ///< steps with p_U < p*
  bool geometric_dominated = true;  ///< N <= N'
};

/// U(t) reconstructed from the jump record of an alg1 run.
double companion_value_at(const CompanionParams& p, const CompanionRun& run, double t);

/// alg1 decides ahead of each step whether U jumps again, and draws
/// finite waiting times by inverting waiting_cdf_finite. The jump loop runs to
/// extinction so N, N' and H are complete; `terminal` is U(t).
CompanionRun simulate_companion_alg1(const CompanionParams& p, double u0, double t,
                                     Rng& rng, const Alg1Options& options = {});

/// Thinning against the constant majorant r.
double simulate_companion_thinning(const CompanionParams& p, double u0, double t, Rng& rng);

/// U at each of the sorted `times` along one thinning path.
std::vector<double> companion_thinning_path(const CompanionParams& p, double u0,
                                            std::span<const double> times, Rng& rng);

/// Mixture CDF G(t) = 1 - C/A e^{-d t} that bounds the conditional finite
/// waiting time from above, with C = rho e^{t*(d - r)} and
/// A = 1 - e^{-r t*}(1 - rho). Only valid for Lambda u0 > 1 and t >= t*;
/// throws std::domain_error otherwise.
double mixture_dominance_oracle(const CompanionParams& p, double u0, double t);

}  // namespace grn
