#include "grn/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "grn/rng.hpp"
#include "grn/simulate.hpp"
#include "internal.hpp"

namespace grn {

double coupled_distance_p(std::span<const double> x1, std::span<const double> x2) {
  return l1_distance(x1, x2);
}

double coupled_distance_mp(std::span<const double> eps, std::span<const double> s1,
                           std::span<const double> s2) {
  const std::size_t n = eps.size();
  double d = l1_distance(s1.subspan(n, n), s2.subspan(n, n));
  for (std::size_t i = 0; i < n; ++i) {
    d += eps[i] * std::abs(s1[i] - s2[i]);
  }
  return d;
}

double initial_companion_p(const StateP& x1, const StateP& x2) {
  if (x1.size() != x2.size()) {
    throw std::invalid_argument("initial_companion_p: dimension mismatch");
  }
  return coupled_distance_p(x1.x, x2.x);
}

double initial_companion_mp(const NetworkSpec& net, const StateMP& s1, const StateMP& s2) {
  const auto c = derived_constants(net);
  const auto a = flatten(s1);
  const auto b = flatten(s2);
  if (a.size() != 2 * net.size() || b.size() != a.size()) {
    throw std::invalid_argument("initial_companion_mp: dimension mismatch");
  }
  return coupled_distance_mp(c.eps, a, b);
}

const char* to_string(CoupledEventKind k) {
  switch (k) {
    case CoupledEventKind::common: return "common";
    case CoupledEventKind::unilateral_1: return "unilateral_1";
    case CoupledEventKind::unilateral_2: return "unilateral_2";
    case CoupledEventKind::companion_only: return "companion_only";
    case CoupledEventKind::horizon: return "horizon";
  }
  return "unknown";
}

double CoupledRates::total() const {
  double s = companion_only;
  for (std::size_t i = 0; i < common.size(); ++i) {
    s += common[i] + uni1[i] + uni2[i];
  }
  return s;
}

double CoupledRates::companion_intensity() const {
  double s = companion_only;
  for (std::size_t i = 0; i < uni1.size(); ++i) {
    s += uni1[i] + uni2[i];
  }
  return s;
}

namespace {

double companion_rate(const DerivedConstants& c, double u) {
  return c.r * std::min(1.0, c.lambda_cap * u);
}

void fill_rates(std::span<const double> k1, std::span<const double> k2,
                const DerivedConstants& c, double u, CoupledRates& out) {
  const std::size_t n = k1.size();
  out.common.resize(n);
  out.uni1.resize(n);
  out.uni2.resize(n);
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.common[i] = std::min(k1[i], k2[i]);
    out.uni1[i] = std::max(k1[i] - k2[i], 0.0);
    out.uni2[i] = std::max(k2[i] - k1[i], 0.0);
    diff += out.uni1[i] + out.uni2[i];
  }
  out.companion_total = companion_rate(c, u);
  out.companion_only_raw = out.companion_total - diff;
  out.companion_only = std::max(out.companion_only_raw, 0.0);
}

}  // namespace

CoupledRates coupled_rates(const NetworkSpec& net, const DerivedConstants& constants,
                           std::span<const double> p1, std::span<const double> p2,
                           double u) {
  if (p1.size() != net.size() || p2.size() != net.size()) {
    throw std::invalid_argument("coupled_rates: dimension mismatch");
  }
  CoupledRates out;
  const auto k1 = kon(net, p1);
  const auto k2 = kon(net, p2);
  fill_rates(k1, k2, constants, u, out);
  return out;
}

CoupledRates coupled_rates_p(const NetworkSpec& net, const CoupledStateP& s) {
  return coupled_rates(net, derived_constants(net), s.x1.x, s.x2.x, s.u);
}

CoupledRates coupled_rates_mp(const NetworkSpec& net, const CoupledStateMP& s) {
  return coupled_rates(net, derived_constants(net), s.s1.z, s.s2.z, s.u);
}

namespace {

struct CoupledProtein {
  FlowP flow;
  std::size_t n;

  Model model() const { return Model::protein; }
  std::size_t copy_dim() const { return n; }
  std::span<const double> proteins(std::span<const double> copy) const { return copy; }
  double burst_scale(std::size_t) const { return 1.0; }
  double distance(std::span<const double> a, std::span<const double> b) const {
    return coupled_distance_p(a, b);
  }
};

struct CoupledMrnaProtein {
  FlowMP flow;
  std::size_t n;
  std::vector<double> inv_eps;

  Model model() const { return Model::mrna_protein; }
  std::size_t copy_dim() const { return 2 * n; }
  std::span<const double> proteins(std::span<const double> copy) const {
    return copy.subspan(n, n);
  }
  double burst_scale(std::size_t gene) const { return inv_eps[gene]; }
  double distance(std::span<const double> a, std::span<const double> b) const {
    return coupled_distance_mp(flow.eps(), a, b);
  }
};

// Coupled thinning with majorant sum_i k1_i + r. The full state is stored
// flat as (copy 1, copy 2, u) and always recomputed from the last accepted
// event, as in the single-copy simulator.
template <class Policy>
CoupledTrajectory run_coupled(const NetworkSpec& net, const Policy& policy,
                              std::vector<double> a, std::vector<double> b, double horizon,
                              std::uint64_t seed, const CoupledOptions& options) {
  require_valid(net);
  detail::check_horizon(horizon);
  detail::check_observation_times(options.observation_times, horizon);
  const std::size_t m = policy.copy_dim();
  if (a.size() != m || b.size() != m) {
    throw std::invalid_argument("coupled simulation: initial state dimension mismatch");
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!(a[k] >= 0.0) || !(b[k] >= 0.0)) {
      throw std::invalid_argument("initial states must be componentwise >= 0");
    }
  }

  const DerivedConstants c = derived_constants(net);
  const std::size_t n = net.size();
  const double u0 = options.initial_u.value_or(policy.distance(a, b));
  if (!(u0 >= 0.0)) {
    throw std::invalid_argument("initial companion value must be >= 0");
  }

  CoupledTrajectory traj;
  traj.model = policy.model();
  traj.seed = seed;
  traj.horizon = horizon;
  traj.copy_dim = m;
  traj.initial = a;
  traj.initial.insert(traj.initial.end(), b.begin(), b.end());
  traj.initial.push_back(u0);
  traj.min_slack = std::numeric_limits<double>::infinity();
  traj.min_normalized_slack = std::numeric_limits<double>::infinity();

  auto flow_full = [&](std::span<const double> from, double dt, std::span<double> to) {
    policy.flow.apply(from.subspan(0, m), dt, to.subspan(0, m));
    policy.flow.apply(from.subspan(m, m), dt, to.subspan(m, m));
    to[2 * m] = from[2 * m] * std::exp(-c.d1_min * dt);
  };
  auto check = [&](std::span<const double> s) {
    const double u = s[2 * m];
    const double gap = u - policy.distance(s.subspan(0, m), s.subspan(m, m));
    traj.min_slack = std::min(traj.min_slack, gap);
    traj.min_normalized_slack = std::min(traj.min_normalized_slack, gap / (1.0 + u));
    ++traj.checks;
    return gap;
  };

  std::vector<double> checkpoint_times;
  for (std::size_t k = 1; k <= options.checkpoints; ++k) {
    checkpoint_times.push_back(horizon * static_cast<double>(k) /
                               static_cast<double>(options.checkpoints));
  }

  Rng rng(seed);
  double majorant = c.r;
  for (const auto& g : net.genes) {
    majorant += g.k1;
  }

  std::vector<double> anchor = traj.initial;
  std::vector<double> current(anchor.size());
  std::vector<double> k1(n), k2(n);
  CoupledRates rates;
  double t_anchor = 0.0;
  double t = 0.0;
  std::size_t next_obs = 0;
  std::size_t next_cp = 0;
  const auto& obs = options.observation_times;
  check(anchor);

  while (true) {
    const double t_next = majorant > 0.0
                              ? t + rng.exponential(majorant)
                              : std::numeric_limits<double>::infinity();
    while (next_obs < obs.size() && obs[next_obs] < t_next) {
      std::vector<double> o(anchor.size());
      flow_full(anchor, obs[next_obs] - t_anchor, o);
      traj.observations.push_back(std::move(o));
      ++next_obs;
    }
    while (next_cp < checkpoint_times.size() && checkpoint_times[next_cp] < t_next) {
      flow_full(anchor, checkpoint_times[next_cp] - t_anchor, current);
      check(current);
      ++next_cp;
    }
    if (t_next > horizon) {
      break;
    }
    t = t_next;
    ++traj.proposals;
    flow_full(anchor, t - t_anchor, current);
    std::span<const double> cur(current);
    kon(net, policy.proteins(cur.subspan(0, m)), k1);
    kon(net, policy.proteins(cur.subspan(m, m)), k2);
    const double u = current[2 * m];
    fill_rates(k1, k2, c, u, rates);
    if (rates.clamped()) {
      ++traj.clamp_count;
    }
    traj.max_intensity_mismatch =
        std::max(traj.max_intensity_mismatch,
                 std::abs(rates.companion_intensity() - rates.companion_total));

    // Categories in a fixed order: per gene (common, uni1, uni2), then companion-only.
    const double pick = rng.uniform() * majorant;
    double acc = 0.0;
    CoupledEventKind kind = CoupledEventKind::horizon;
    std::size_t gene = 0;
    for (std::size_t i = 0; i < n && kind == CoupledEventKind::horizon; ++i) {
      if (pick < (acc += rates.common[i])) {
        kind = CoupledEventKind::common;
      } else if (pick < (acc += rates.uni1[i])) {
        kind = CoupledEventKind::unilateral_1;
      } else if (pick < (acc += rates.uni2[i])) {
        kind = CoupledEventKind::unilateral_2;
      }
      gene = i;
    }
    if (kind == CoupledEventKind::horizon) {
      if (pick < acc + rates.companion_only) {
        kind = CoupledEventKind::companion_only;
        gene = 0;
      } else {
        continue;
      }
    }

    check(current);
    const double e = rng.exponential();
    const double scaled = e * policy.burst_scale(gene);
    switch (kind) {
      case CoupledEventKind::common:
        current[gene] += scaled;
        current[m + gene] += scaled;
        ++traj.common_events;
        break;
      case CoupledEventKind::unilateral_1:
        current[gene] += scaled;
        current[2 * m] += e;
        ++traj.unilateral_events;
        break;
      case CoupledEventKind::unilateral_2:
        current[m + gene] += scaled;
        current[2 * m] += e;
        ++traj.unilateral_events;
        break;
      default:
        current[2 * m] += e;
        ++traj.companion_events;
        break;
    }
    const double gap = check(current);
    anchor = current;
    t_anchor = t;
    if (options.record_events) {
      traj.events.push_back({t, kind, gene, e, gap, current});
    }
  }

  traj.terminal.resize(anchor.size());
  flow_full(anchor, horizon - t_anchor, traj.terminal);
  const double gap = check(traj.terminal);
  if (options.record_events) {
    traj.events.push_back({horizon, CoupledEventKind::horizon, 0, 0.0, gap, traj.terminal});
  }
  return traj;
}

CoupledMrnaProtein make_coupled_mp(const NetworkSpec& net) {
  CoupledMrnaProtein p{FlowMP(net), net.size(), {}};
  for (double e : p.flow.eps()) {
    p.inv_eps.push_back(1.0 / e);
  }
  return p;
}

}  // namespace

CoupledTrajectory simulate_coupled_p(const NetworkSpec& net, const StateP& x1,
                                     const StateP& x2, double horizon, std::uint64_t seed,
                                     const CoupledOptions& options) {
  return run_coupled(net, CoupledProtein{FlowP(net), net.size()}, x1.x, x2.x, horizon,
                     seed, options);
}

CoupledTrajectory simulate_coupled_mp(const NetworkSpec& net, const StateMP& s1,
                                      const StateMP& s2, double horizon,
                                      std::uint64_t seed, const CoupledOptions& options) {
  require_valid(net);
  return run_coupled(net, make_coupled_mp(net), flatten(s1), flatten(s2), horizon, seed,
                     options);
}

double domination_gap(const CoupledTrajectory& traj) { return traj.min_slack; }

bool domination_holds(const CoupledTrajectory& traj, double tol) {
  return traj.min_normalized_slack >= -tol;
}

}  // namespace grn
