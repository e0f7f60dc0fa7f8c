#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "grn/model.hpp"
#include "grn/state.hpp"

namespace grn {

struct CoupledStateP {
  StateP x1;
  StateP x2;
  double u = 0.0;
};

struct CoupledStateMP {
  StateMP s1;
  StateMP s2;
  double u = 0.0;
};

/// Sanctioned companion start: ||x1 - x2||_1.
double initial_companion_p(const StateP& x1, const StateP& x2);
/// Sanctioned companion start: ||z1 - z2||_1 + sum_i eps_i |y1_i - y2_i|.
double initial_companion_mp(const NetworkSpec& net, const StateMP& s1, const StateMP& s2);

/// Difference norm dominated by u (the eps-weighted one for the mRNA-protein model).
double coupled_distance_p(std::span<const double> x1, std::span<const double> x2);
double coupled_distance_mp(std::span<const double> eps, std::span<const double> s1,
                           std::span<const double> s2);

enum class CoupledEventKind { common, unilateral_1, unilateral_2, companion_only, horizon };

const char* to_string(CoupledEventKind k);

struct CoupledRates {
  std::vector<double> common;
  std::vector<double> uni1;
  std::vector<double> uni2;
  double companion_only = 0.0;      ///< clamped at 0
  double companion_only_raw = 0.0;  ///< r (1 ^ Lambda u) - ||kon(x1) - kon(x2)||_1
  double companion_total = 0.0;     ///< r (1 ^ Lambda u)

  double total() const;
  /// Rate of all events that move u: sum of unilateral rates plus companion_only.
  double companion_intensity() const;
  bool clamped() const { return companion_only_raw < 0.0; }
};

/// Category rates given the two protein vectors (x for the protein model,
/// z for the mRNA-protein model) and the companion value.
CoupledRates coupled_rates(const NetworkSpec& net, const DerivedConstants& constants,
                           std::span<const double> p1, std::span<const double> p2,
                           double u);

CoupledRates coupled_rates_p(const NetworkSpec& net, const CoupledStateP& s);
CoupledRates coupled_rates_mp(const NetworkSpec& net, const CoupledStateMP& s);

struct CoupledOptions {
  bool record_events = true;
  /// Evenly spaced flow checkpoints of the domination inequality.
  std::size_t checkpoints = 32;
  /// Sorted times in [0, horizon] at which the coupled state is sampled.
  std::vector<double> observation_times;
  /// Overrides the sanctioned companion start.
  std::optional<double> initial_u;
};

struct CoupledEvent {
  double time = 0.0;
  CoupledEventKind kind = CoupledEventKind::common;
  std::size_t gene = 0;
  double jump = 0.0;
  double gap = 0.0;                 ///< u - distance after the event
  std::vector<double> state_after;  ///< layout: copy 1, copy 2, u
};

struct CoupledTrajectory {
  Model model = Model::protein;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  std::size_t copy_dim = 0;  ///< flat dimension of one copy
  std::vector<double> initial;
  std::vector<double> terminal;
  std::vector<CoupledEvent> events;
  /// One full coupled state per observation time.
  std::vector<std::vector<double>> observations;

  std::size_t proposals = 0;
  std::size_t common_events = 0;
  std::size_t unilateral_events = 0;
  std::size_t companion_events = 0;
  std::size_t clamp_count = 0;
  double max_intensity_mismatch = 0.0;

  double min_slack = 0.0;             ///< min of u - distance over all checks
  double min_normalized_slack = 0.0;  ///< min of (u - distance) / (1 + u)
  std::size_t checks = 0;

  std::span<const double> copy1(std::span<const double> full) const {
    return full.subspan(0, copy_dim);
  }
  std::span<const double> copy2(std::span<const double> full) const {
    return full.subspan(copy_dim, copy_dim);
  }
  double companion(std::span<const double> full) const { return full[2 * copy_dim]; }
};

CoupledTrajectory simulate_coupled_p(const NetworkSpec& net, const StateP& x1,
                                     const StateP& x2, double horizon, std::uint64_t seed,
                                     const CoupledOptions& options = {});

CoupledTrajectory simulate_coupled_mp(const NetworkSpec& net, const StateMP& s1,
                                      const StateMP& s2, double horizon,
                                      std::uint64_t seed,
                                      const CoupledOptions& options = {});

/// Minimum slack u - distance over every check of the trajectory.
double domination_gap(const CoupledTrajectory& traj);

/// True if (u - distance) >= -tol (1 + u) at every check.
bool domination_holds(const CoupledTrajectory& traj, double tol = 1e-9);

}  // namespace grn
