#include "grn/companion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace grn {

CompanionParams CompanionParams::from(double r, double d1_min, double lambda_cap) {
  if (!(r >= 0.0) || !(d1_min > 0.0) || !(lambda_cap >= 0.0)) {
    throw std::invalid_argument("companion parameters need r >= 0, d1_min > 0, Lambda >= 0");
  }
  CompanionParams p;
  p.r = r;
  p.d1_min = d1_min;
  p.lambda_cap = lambda_cap;
  p.rho = r / d1_min;
  p.tau = std::min(r, d1_min);
  return p;
}

CompanionParams CompanionParams::from(const DerivedConstants& c) {
  return from(c.r, c.d1_min, c.lambda_cap);
}

double lambda_u(const CompanionParams& p, double u) {
  return p.r * std::min(1.0, p.lambda_cap * u);
}

namespace {

bool never_jumps(const CompanionParams& p, double u0) {
  return p.r == 0.0 || p.lambda_cap == 0.0 || u0 == 0.0;
}

}  // namespace

double log_p_infinite(const CompanionParams& p, double u0) {
  if (never_jumps(p, u0)) {
    return 0.0;
  }
  const double a = p.lambda_cap * u0;
  if (a <= 1.0) {
    return -p.rho * a;
  }
  return -p.rho * (std::log(a) + 1.0);
}

double p_infinite(const CompanionParams& p, double u0) {
  return std::exp(log_p_infinite(p, u0));
}

double p_star(double rho, double lambda_cap, double u) {
  const double a = lambda_cap * std::max(u, rho);
  return std::exp(-rho * std::min(1.0, a) - rho * std::log(std::max(1.0, a)));
}

double p_star(const CompanionParams& p, double u) { return p_star(p.rho, p.lambda_cap, u); }

double waiting_breakpoint(const CompanionParams& p, double u0) {
  const double a = p.lambda_cap * u0;
  return a > 1.0 ? std::log(a) / p.d1_min : 0.0;
}

double log_waiting_survival(const CompanionParams& p, double t, double u0) {
  if (!(t >= 0.0) || !(u0 >= 0.0)) {
    throw std::domain_error("waiting_survival: t and u0 must be >= 0");
  }
  if (never_jumps(p, u0)) {
    return 0.0;
  }
  const double a = p.lambda_cap * u0;
  const double d = p.d1_min;
  if (a <= 1.0) {
    return p.rho * a * std::expm1(-d * t);
  }
  const double ts = std::log(a) / d;
  if (t <= ts) {
    return -p.r * t;
  }
  return -p.rho * std::log(a) + p.rho * std::expm1(-d * (t - ts));
}

double waiting_survival(const CompanionParams& p, double t, double u0) {
  return std::exp(log_waiting_survival(p, t, u0));
}

namespace {

void require_finite_conditioning(const CompanionParams& p, double u0) {
  if (!(u0 > 0.0)) {
    throw std::domain_error("conditional waiting time needs u0 > 0");
  }
  if (p.r == 0.0 || p.lambda_cap == 0.0) {
    throw std::domain_error("conditional waiting time needs r > 0 and Lambda > 0");
  }
}

}  // namespace

double waiting_cdf_finite(const CompanionParams& p, double t, double u0) {
  require_finite_conditioning(p, u0);
  if (std::isinf(t)) {
    return 1.0;
  }
  return std::expm1(log_waiting_survival(p, t, u0)) / std::expm1(log_p_infinite(p, u0));
}

double invert_waiting_cdf(const CompanionParams& p, double s, double u0) {
  require_finite_conditioning(p, u0);
  if (!(s >= 0.0) || !(s < 1.0)) {
    throw std::domain_error("invert_waiting_cdf: s must lie in [0, 1)");
  }
  if (s == 0.0) {
    return 0.0;
  }
  // Target log-survival: log(1 - s (1 - p_inf)).
  const double target = std::log1p(s * std::expm1(log_p_infinite(p, u0)));
  const double a = p.lambda_cap * u0;
  const double d = p.d1_min;
  if (a <= 1.0) {
    return -std::log1p(target / (p.rho * a)) / d;
  }
  const double ts = std::log(a) / d;
  const double seam = -p.r * ts;
  if (std::abs(target - seam) > 1e-12 * (1.0 + std::abs(seam))) {
    if (target > seam) {
      return -target / p.r;
    }
    return -std::log((target / p.rho + std::log(a) + 1.0) / a) / d;
  }
  double lo = 0.0;
  double hi = ts + 50.0 / d;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) {
      break;
    }
    if (log_waiting_survival(p, mid, u0) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double companion_value_at(const CompanionParams& p, const CompanionRun& run, double t) {
  double base = run.initial;
  double t0 = 0.0;
  for (std::size_t k = 0; k < run.jump_times.size() && run.jump_times[k] <= t; ++k) {
    base = run.post_jump_values[k];
    t0 = run.jump_times[k];
  }
  return base * std::exp(-p.d1_min * (t - t0));
}

CompanionRun simulate_companion_alg1(const CompanionParams& p, double u0, double t,
                                     Rng& rng, const Alg1Options& options) {
  if (!(u0 >= 0.0) || !(t >= 0.0)) {
    throw std::invalid_argument("simulate_companion_alg1: u0 and t must be >= 0");
  }
  CompanionRun run;
  run.initial = u0;
  run.p_star = p_star(p, options.u_bar.value_or(u0));
  const double pstar = run.p_star;

  double u = u0;
  double clock = 0.0;
  std::size_t k = 0;
  std::optional<std::size_t> dominating_stop;

  while (true) {
    if (k >= options.max_jumps) {
      throw std::runtime_error(
          "simulate_companion_alg1: jump cap exceeded before extinction (rho = " +
          std::to_string(p.rho) + ", Lambda = " + std::to_string(p.lambda_cap) +
          "); the companion is far from dissipative, raise max_jumps or use thinning");
    }
    const double pu = p_infinite(p, u);
    if (pu < pstar) {
      ++run.low_pinf_events;
    }
    const double w = rng.uniform();
    bool stop = false;
    if (options.bands == StopBands::literal) {
      if (w <= pstar) {
        run.n_prime = k;
        stop = true;
      } else if (w <= pu) {
        run.n_prime = k + rng.geometric(pstar);
        stop = true;
      }
    } else {
      if (w <= pu) {
        stop = true;
        if (!dominating_stop) {
          run.n_prime = w <= pstar ? k : k + 1 + rng.geometric(pstar);
        }
      } else if (w <= pstar && !dominating_stop) {
        dominating_stop = k;
      }
    }
    if (stop) {
      break;
    }
    const double s = rng.uniform();
    const double wait = invert_waiting_cdf(p, s, u);
    run.waits.push_back(wait);
    run.dominating_waits.push_back(-std::log1p(-s) / p.tau);
    u = u * std::exp(-p.d1_min * wait) + rng.exponential();
    clock += wait;
    run.jump_times.push_back(clock);
    run.post_jump_values.push_back(u);
    ++k;
  }

  run.jumps = k;
  if (dominating_stop) {
    run.n_prime = *dominating_stop;
  }
  run.geometric_dominated = run.jumps <= run.n_prime;
  while (run.dominating_waits.size() < run.n_prime) {
    run.dominating_waits.push_back(rng.exponential(p.tau));
  }
  run.last_jump_time = clock;
  run.terminal = companion_value_at(p, run, t);
  return run;
}

std::vector<double> companion_thinning_path(const CompanionParams& p, double u0,
                                            std::span<const double> times, Rng& rng) {
  if (!(u0 >= 0.0)) {
    throw std::invalid_argument("companion_thinning_path: u0 must be >= 0");
  }
  double prev = 0.0;
  for (double t : times) {
    if (!(t >= prev)) {
      throw std::invalid_argument("companion_thinning_path: times must be sorted and >= 0");
    }
    prev = t;
  }
  std::vector<double> out;
  out.reserve(times.size());
  const double horizon = times.empty() ? 0.0 : times.back();
  double anchor = u0;
  double t_anchor = 0.0;
  double clock = 0.0;
  std::size_t next = 0;
  while (next < times.size()) {
    const double t_next =
        p.r > 0.0 ? clock + rng.exponential(p.r) : std::numeric_limits<double>::infinity();
    while (next < times.size() && times[next] < t_next) {
      out.push_back(anchor * std::exp(-p.d1_min * (times[next] - t_anchor)));
      ++next;
    }
    if (t_next > horizon) {
      break;
    }
    clock = t_next;
    const double u = anchor * std::exp(-p.d1_min * (clock - t_anchor));
    if (rng.uniform() * p.r < lambda_u(p, u)) {
      anchor = u + rng.exponential();
      t_anchor = clock;
    }
  }
  return out;
}

double simulate_companion_thinning(const CompanionParams& p, double u0, double t, Rng& rng) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("simulate_companion_thinning: t must be >= 0");
  }
  const double times[] = {t};
  return companion_thinning_path(p, u0, times, rng).front();
}

double mixture_dominance_oracle(const CompanionParams& p, double u0, double t) {
  if (!(p.lambda_cap * u0 > 1.0)) {
    throw std::domain_error("mixture oracle needs Lambda u0 > 1");
  }
  const double ts = waiting_breakpoint(p, u0);
  if (!(t >= ts)) {
    throw std::domain_error("mixture oracle needs t >= t*");
  }
  const double d = p.d1_min;
  const double c = p.rho * std::exp(ts * (d - p.r));
  const double a = 1.0 - std::exp(-p.r * ts) * (1.0 - p.rho);
  return 1.0 - c / a * std::exp(-d * t);
}

}  // namespace grn
