#include "grn/simulate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "internal.hpp"

namespace grn {

FlowP::FlowP(const NetworkSpec& net) {
  d1_.reserve(net.size());
  for (const auto& g : net.genes) {
    d1_.push_back(g.d1);
  }
}

void FlowP::apply(std::span<const double> from, double dt, std::span<double> to) const {
  for (std::size_t i = 0; i < d1_.size(); ++i) {
    to[i] = from[i] * std::exp(-d1_[i] * dt);
  }
}

FlowMP::FlowMP(const NetworkSpec& net) {
  for (const auto& g : net.genes) {
    d0_.push_back(g.d0);
    d1_.push_back(g.d1);
    eps_.push_back(epsilon(g.d0, g.d1));
  }
}

void FlowMP::apply(std::span<const double> from, double dt, std::span<double> to) const {
  const std::size_t n = d0_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double e0 = std::exp(-d0_[i] * dt);
    const double e1 = std::exp(-d1_[i] * dt);
    const double y = from[i];
    to[i] = y * e0;
    to[n + i] = from[n + i] * e1 + eps_[i] * y * (e1 - e0);
  }
}

StateP flow_p(const NetworkSpec& net, const StateP& x, double dt) {
  if (!(dt >= 0.0)) {
    throw std::invalid_argument("flow_p: dt must be >= 0");
  }
  StateP out{std::vector<double>(x.size())};
  FlowP(net).apply(x.x, dt, out.x);
  return out;
}

StateMP flow_mp(const NetworkSpec& net, const StateMP& s, double dt) {
  if (!(dt >= 0.0)) {
    throw std::invalid_argument("flow_mp: dt must be >= 0");
  }
  std::vector<double> flat = flatten(s);
  FlowMP(net).apply(flat, dt, flat);
  return unflatten_mp(flat);
}

double sample_burst(Rng& rng, double scale) { return scale * rng.exponential(); }

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::burst: return "burst";
    case EventKind::rejected: return "rejected";
    case EventKind::horizon: return "horizon";
  }
  return "unknown";
}

namespace {

// Model-specific pieces of the thinning loop.
struct ProteinPolicy {
  FlowP flow;
  std::size_t n;

  Model model() const { return Model::protein; }
  std::size_t dim() const { return n; }
  std::span<const double> proteins(std::span<const double> s) const { return s; }
  std::size_t burst_coordinate(std::size_t gene) const { return gene; }
  double burst_scale(std::size_t) const { return 1.0; }
};

struct MrnaProteinPolicy {
  FlowMP flow;
  std::size_t n;
  std::vector<double> inv_eps;

  Model model() const { return Model::mrna_protein; }
  std::size_t dim() const { return 2 * n; }
  std::span<const double> proteins(std::span<const double> s) const {
    return s.subspan(n, n);
  }
  std::size_t burst_coordinate(std::size_t gene) const { return gene; }
  double burst_scale(std::size_t gene) const { return inv_eps[gene]; }
};

MrnaProteinPolicy make_mp_policy(const NetworkSpec& net) {
  MrnaProteinPolicy p{FlowMP(net), net.size(), {}};
  for (double e : p.flow.eps()) {
    p.inv_eps.push_back(1.0 / e);
  }
  return p;
}

template <class Policy>
Trajectory run_thinning(const NetworkSpec& net, const Policy& policy,
                        std::vector<double> initial, double horizon,
                        std::uint64_t seed, const SimOptions& options) {
  require_valid(net);
  detail::check_horizon(horizon);
  detail::check_observation_times(options.observation_times, horizon);
  for (double v : initial) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("initial state must be componentwise >= 0");
    }
  }

  Trajectory traj;
  traj.model = policy.model();
  traj.seed = seed;
  traj.horizon = horizon;
  traj.initial = initial;

  Rng rng(seed);
  const std::size_t n = net.size();
  double majorant = 0.0;
  for (const auto& g : net.genes) {
    majorant += g.k1;
  }

  // The state is always obtained as flow(anchor, t - t_anchor) from the last
  // accepted burst, so a replay reproduces it exactly.
  std::vector<double> anchor = std::move(initial);
  std::vector<double> current(anchor.size());
  std::vector<double> rates(n);
  double t_anchor = 0.0;
  double t = 0.0;
  std::size_t next_obs = 0;
  const auto& obs = options.observation_times;
  traj.observations.reserve(obs.size());

  while (true) {
    const double t_next = majorant > 0.0
                              ? t + rng.exponential(majorant)
                              : std::numeric_limits<double>::infinity();
    while (next_obs < obs.size() && obs[next_obs] < t_next) {
      std::vector<double> o(anchor.size());
      policy.flow.apply(anchor, obs[next_obs] - t_anchor, o);
      traj.observations.push_back(std::move(o));
      ++next_obs;
    }
    if (t_next > horizon) {
      break;
    }
    t = t_next;
    ++traj.proposals;
    policy.flow.apply(anchor, t - t_anchor, current);
    kon(net, policy.proteins(current), rates);

    const double pick = rng.uniform() * majorant;
    double acc = 0.0;
    std::size_t gene = n;
    for (std::size_t i = 0; i < n; ++i) {
      acc += rates[i];
      if (pick < acc) {
        gene = i;
        break;
      }
    }
    if (gene == n) {
      if (options.record_events && options.record_rejections) {
        traj.events.push_back({t, EventKind::rejected, 0, 0.0, current});
      }
      continue;
    }
    const double jump = sample_burst(rng, policy.burst_scale(gene));
    current[policy.burst_coordinate(gene)] += jump;
    anchor = current;
    t_anchor = t;
    ++traj.bursts;
    if (options.record_events) {
      traj.events.push_back({t, EventKind::burst, gene, jump, current});
    }
  }

  traj.terminal.resize(anchor.size());
  policy.flow.apply(anchor, horizon - t_anchor, traj.terminal);
  if (options.record_events) {
    traj.events.push_back({horizon, EventKind::horizon, 0, 0.0, traj.terminal});
  }
  return traj;
}

template <class Policy>
bool replay_with(const Policy& policy, const Trajectory& traj) {
  std::vector<double> anchor = traj.initial;
  std::vector<double> current(anchor.size());
  double t_anchor = 0.0;
  double prev_time = 0.0;
  for (const auto& ev : traj.events) {
    if (ev.time < prev_time) {
      return false;
    }
    prev_time = ev.time;
    policy.flow.apply(anchor, ev.time - t_anchor, current);
    if (ev.kind == EventKind::burst) {
      if (!(ev.jump >= 0.0)) {
        return false;
      }
      current[policy.burst_coordinate(ev.gene)] += ev.jump;
      anchor = current;
      t_anchor = ev.time;
    }
    if (current != ev.state_after) {
      return false;
    }
  }
  return true;
}

template <class Policy>
std::vector<double> state_at_with(const Policy& policy, const Trajectory& traj,
                                  double t) {
  const std::vector<double>* anchor = &traj.initial;
  double t_anchor = 0.0;
  for (const auto& ev : traj.events) {
    if (ev.kind != EventKind::burst) {
      continue;
    }
    if (ev.time > t) {
      break;
    }
    anchor = &ev.state_after;
    t_anchor = ev.time;
  }
  std::vector<double> out(anchor->size());
  policy.flow.apply(*anchor, t - t_anchor, out);
  return out;
}

}  // namespace

Trajectory simulate_p(const NetworkSpec& net, const StateP& x0, double horizon,
                      std::uint64_t seed, const SimOptions& options) {
  if (x0.size() != net.size()) {
    throw std::invalid_argument("simulate_p: initial state dimension mismatch");
  }
  return run_thinning(net, ProteinPolicy{FlowP(net), net.size()}, x0.x, horizon, seed,
                      options);
}

Trajectory simulate_mp(const NetworkSpec& net, const StateMP& s0, double horizon,
                       std::uint64_t seed, const SimOptions& options) {
  if (s0.y.size() != net.size() || s0.z.size() != net.size()) {
    throw std::invalid_argument("simulate_mp: initial state dimension mismatch");
  }
  require_valid(net);
  return run_thinning(net, make_mp_policy(net), flatten(s0), horizon, seed, options);
}

bool replay_matches(const NetworkSpec& net, const Trajectory& traj) {
  if (traj.model == Model::protein) {
    return replay_with(ProteinPolicy{FlowP(net), net.size()}, traj);
  }
  return replay_with(make_mp_policy(net), traj);
}

std::vector<double> state_at(const NetworkSpec& net, const Trajectory& traj, double t) {
  if (!(t >= 0.0) || t > traj.horizon) {
    throw std::invalid_argument("state_at: time outside [0, horizon]");
  }
  if (traj.model == Model::protein) {
    return state_at_with(ProteinPolicy{FlowP(net), net.size()}, traj, t);
  }
  return state_at_with(make_mp_policy(net), traj, t);
}

}  // namespace grn
