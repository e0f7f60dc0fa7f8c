#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grn/model.hpp"
#include "grn/rng.hpp"
#include "grn/state.hpp"

namespace grn {

/// Precomputed deterministic flows between bursts.
class FlowP {
 public:
  explicit FlowP(const NetworkSpec& net);

  /// x_i exp(-d1_i dt).
  void apply(std::span<const double> from, double dt, std::span<double> to) const;

 private:
  std::vector<double> d1_;
};

class FlowMP {
 public:
  explicit FlowMP(const NetworkSpec& net);

  /// y_i e^{-d0 dt};  z_i e^{-d1 dt} + eps_i y_i (e^{-d1 dt} - e^{-d0 dt}).
  /// `from` and `to` use the flat (y, z) layout.
  void apply(std::span<const double> from, double dt, std::span<double> to) const;

  const std::vector<double>& eps() const { return eps_; }

 private:
  std::vector<double> d0_;
  std::vector<double> d1_;
  std::vector<double> eps_;
};

StateP flow_p(const NetworkSpec& net, const StateP& x, double dt);
StateMP flow_mp(const NetworkSpec& net, const StateMP& s, double dt);

/// scale x Exp(1).
double sample_burst(Rng& rng, double scale);

enum class EventKind { burst, rejected, horizon };

const char* to_string(EventKind k);

struct EventRecord {
  double time = 0.0;
  EventKind kind = EventKind::burst;
  std::size_t gene = 0;
  double jump = 0.0;
  std::vector<double> state_after;  ///< flat layout, see flatten()
};

struct SimOptions {
  /// Store accepted bursts and the horizon record.
  bool record_events = true;
  /// Also store rejected thinning proposals (debug).
  bool record_rejections = false;
  /// Sorted times in [0, horizon] at which the state is sampled.
  std::vector<double> observation_times;
};

struct Trajectory {
  Model model = Model::protein;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  std::vector<double> initial;
  std::vector<EventRecord> events;
  std::vector<double> terminal;
  std::size_t bursts = 0;
  std::size_t proposals = 0;
  /// One flat state per SimOptions::observation_times entry.
  std::vector<std::vector<double>> observations;
};

/// Exact simulation of the protein-only model by thinning against sum_i k1_i.
Trajectory simulate_p(const NetworkSpec& net, const StateP& x0, double horizon,
                      std::uint64_t seed, const SimOptions& options = {});

/// Exact simulation of the mRNA-protein model; bursts add Exp(1)/eps_i to y_i.
Trajectory simulate_mp(const NetworkSpec& net, const StateMP& s0, double horizon,
                       std::uint64_t seed, const SimOptions& options = {});

/// Replays flows and jumps from the initial state and checks that every
/// record's state_after is reproduced bit for bit.
bool replay_matches(const NetworkSpec& net, const Trajectory& traj);

/// State at time t in [0, horizon], reconstructed from the recorded bursts.
std::vector<double> state_at(const NetworkSpec& net, const Trajectory& traj, double t);

}  // namespace grn
