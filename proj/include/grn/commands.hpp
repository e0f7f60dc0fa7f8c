#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grn/companion.hpp"
#include "grn/manifest.hpp"
#include "grn/model.hpp"
#include "grn/state.hpp"

namespace grn {

/// Flags shared by every command.
struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::size_t runs = 0;  ///< 0 selects the command default
  unsigned workers = 1;
  std::string grid;  ///< empty selects the command default
};

/// Loads --config, or throws ConfigError naming the missing flag.
NetworkSpec load_network(const CommonArgs& args);

/// Splits a flat initial condition (x, or y followed by z) into a state of
/// the requested model; empty means all zeros.
std::vector<double> initial_condition(const NetworkSpec& net, Model model,
                                      const std::vector<double>& values,
                                      const std::string& flag);

Model parse_model(const std::string& text);

struct ValidateReport {
  ValidationReport validation;
  DerivedConstants constants;
  EnvelopeReport envelope;
  bool dissipative = false;
};

ValidateReport cmd_validate(const CommonArgs& args, std::size_t envelope_pairs = 10000);

struct SimulateArgs {
  Model model = Model::protein;
  double horizon = 10.0;
  std::vector<double> init;
};
RunManifest cmd_simulate(const CommonArgs& args, const SimulateArgs& sim);

struct CoupleArgs {
  Model model = Model::protein;
  double horizon = 10.0;
  std::vector<double> init1;
  std::vector<double> init2;
};
RunManifest cmd_couple(const CommonArgs& args, const CoupleArgs& couple);

struct CompanionArgs {
  double u0 = 1.0;
  double t = 1.0;
  /// Overrides of the network-derived constants.
  std::optional<double> r;
  std::optional<double> d1_min;
  std::optional<double> lambda_cap;
  StopBands bands = StopBands::exact;
};
RunManifest cmd_companion(const CommonArgs& args, const CompanionArgs& comp);

struct BoundsArgs {
  double w0 = 1.0;
};
RunManifest cmd_bounds(const CommonArgs& args, const BoundsArgs& bounds);

struct ConvergenceRow {
  double t = 0.0;
  double lower = 0.0;
  double exact = 0.0;
  double exact_se = 0.0;
  double upper = 0.0;
  double upper_se = 0.0;
  double bound = 0.0;
};

/// Coupled ensembles from two deterministic initial conditions (flat layout).
/// At each time, the two copies form matched sample clouds; the rows hold the
/// marginal lower bound, the exact empirical W1, the coupling mean and the
/// theoretical bound for w0 = initial coupled distance.
std::vector<ConvergenceRow> convergence_study(const NetworkSpec& net, Model model,
                                              const std::vector<double>& init1,
                                              const std::vector<double>& init2,
                                              const std::vector<double>& times,
                                              std::size_t runs, std::uint64_t seed,
                                              unsigned workers);

struct ConvergenceArgs {
  Model model = Model::protein;
  std::vector<double> init1;
  std::vector<double> init2;
};
RunManifest cmd_convergence(const CommonArgs& args, const ConvergenceArgs& conv);

struct PstarArgs {
  std::vector<double> lambdas{0.5, 1.0, 2.0};
  std::vector<double> rhos{0.5, 1.0, 2.0};
};
RunManifest cmd_pstar(const CommonArgs& args, const PstarArgs& pstar);

/// Fraction of time the protein pair sits in each half-plane {z1 > z2} and
/// {z2 > z1} along one trajectory of the mRNA-protein model, sampled every dt.
struct Occupancy {
  double first = 0.0;
  double second = 0.0;
};
Occupancy toggle_occupancy(const NetworkSpec& net, double horizon, double dt,
                           std::uint64_t seed);

/// z1 - z2 at time t over independent runs started from zero.
std::vector<double> toggle_contrast_samples(const NetworkSpec& net, double t,
                                            std::size_t runs, std::uint64_t seed,
                                            unsigned workers);

struct ToggleArgs {
  std::string strong_config = "configs/toggle_strong.json";
  std::string weak_config = "configs/toggle_weak.json";
  double horizon = 200.0;  ///< in units of 1 / d1_min
  double dt = 0.1;
};
RunManifest cmd_toggle_demo(const CommonArgs& args, const ToggleArgs& toggle);

}  // namespace grn
