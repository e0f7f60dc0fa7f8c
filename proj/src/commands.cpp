#include "grn/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "grn/bounds.hpp"
#include "grn/config.hpp"
#include "grn/coupling.hpp"
#include "grn/csv.hpp"
#include "grn/ensemble.hpp"
#include "grn/rng.hpp"
#include "grn/simulate.hpp"
#include "grn/stats.hpp"
#include "grn/wasserstein.hpp"

namespace grn {

using nlohmann::json;

NetworkSpec load_network(const CommonArgs& args) {
  if (args.config_path.empty()) {
    throw ConfigError("--config: a network file is required for this command");
  }
  return parse_network_config(args.config_path);
}

Model parse_model(const std::string& text) {
  if (text == "p") {
    return Model::protein;
  }
  if (text == "mp") {
    return Model::mrna_protein;
  }
  throw ConfigError("--model: expected 'p' or 'mp', got '" + text + "'");
}

std::vector<double> initial_condition(const NetworkSpec& net, Model model,
                                      const std::vector<double>& values,
                                      const std::string& flag) {
  const std::size_t dim = model == Model::protein ? net.size() : 2 * net.size();
  if (values.empty()) {
    return std::vector<double>(dim, 0.0);
  }
  if (values.size() != dim) {
    throw ConfigError(flag + ": expected " + std::to_string(dim) + " values (" +
                      (model == Model::protein ? "x" : "y then z") + "), got " +
                      std::to_string(values.size()));
  }
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw ConfigError(flag + ": values must be >= 0");
    }
  }
  return values;
}

namespace {

std::size_t runs_or(const CommonArgs& args, std::size_t fallback) {
  return args.runs == 0 ? fallback : args.runs;
}

std::vector<double> grid_or(const CommonArgs& args, const std::string& fallback) {
  return parse_time_grid(args.grid.empty() ? fallback : args.grid);
}

std::string prepare_out(const CommonArgs& args) {
  std::filesystem::create_directories(args.out_dir);
  return args.out_dir;
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::vector<std::string> state_columns(std::size_t n, Model model,
                                       const std::string& prefix = "") {
  std::vector<std::string> cols;
  if (model == Model::mrna_protein) {
    for (std::size_t i = 0; i < n; ++i) cols.push_back(prefix + "y" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) cols.push_back(prefix + "z" + std::to_string(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) cols.push_back(prefix + "x" + std::to_string(i));
  }
  return cols;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

RunManifest base_manifest(const std::string& command, const CommonArgs& args,
                          const NetworkSpec* net) {
  RunManifest m;
  m.command = command;
  m.seed = args.seed;
  m.arguments = {{"config", args.config_path}, {"runs", args.runs},
                 {"workers", args.workers},    {"grid", args.grid},
                 {"out", args.out_dir}};
  if (net != nullptr) {
    m.network = network_to_json(*net);
    m.constants = constants_to_json(derived_constants(*net));
  }
  return m;
}

void finish(RunManifest& m, CsvWriter& w, const std::string& desc) {
  w.close();
  m.outputs.push_back(
      {std::filesystem::path(w.path()).filename().string(), desc, w.rows()});
}

}  // namespace

ValidateReport cmd_validate(const CommonArgs& args, std::size_t envelope_pairs) {
  const NetworkSpec net = load_network(args);
  ValidateReport rep;
  rep.validation = validate_network(net);
  rep.constants = derived_constants(net);
  Rng rng(stream_seed(args.seed, 0));
  rep.envelope = check_lipschitz_envelope(net, rep.constants, envelope_pairs, rng);
  rep.dissipative = is_dissipative(rep.constants);
  return rep;
}

RunManifest cmd_simulate(const CommonArgs& args, const SimulateArgs& sim) {
  const NetworkSpec net = load_network(args);
  const auto init = initial_condition(net, sim.model, sim.init, "--init1");
  const std::string dir = prepare_out(args);
  SimOptions opts;
  if (!args.grid.empty()) {
    opts.observation_times = parse_time_grid(args.grid);
  }
  const std::size_t runs = runs_or(args, 1);
  const auto trajs = run_ensemble(runs, args.workers, [&](std::size_t k) {
    const auto seed = stream_seed(args.seed, k);
    return sim.model == Model::protein
               ? simulate_p(net, unflatten_p(init), sim.horizon, seed, opts)
               : simulate_mp(net, unflatten_mp(init), sim.horizon, seed, opts);
  });

  RunManifest m = base_manifest("simulate", args, &net);
  m.arguments["model"] = sim.model == Model::protein ? "p" : "mp";
  m.arguments["horizon"] = sim.horizon;
  m.arguments["init"] = init;
  const auto cols = state_columns(net.size(), sim.model);

  CsvWriter w(join(dir, "trajectory.csv"),
              concat({"run", "time", "kind", "gene", "jump"}, cols));
  std::uint64_t bursts = 0, proposals = 0;
  for (std::size_t k = 0; k < runs; ++k) {
    const auto& tr = trajs[k];
    bursts += tr.bursts;
    proposals += tr.proposals;
    w.cell(std::uint64_t{k}).cell(0.0).cell("initial").cell(std::uint64_t{0}).cell(0.0);
    for (double v : tr.initial) w.cell(v);
    w.end_row();
    for (const auto& ev : tr.events) {
      w.cell(std::uint64_t{k}).cell(ev.time).cell(to_string(ev.kind))
          .cell(std::uint64_t{ev.gene}).cell(ev.jump);
      for (double v : ev.state_after) w.cell(v);
      w.end_row();
    }
  }
  finish(m, w, "initial state, accepted bursts and horizon state of every run");

  if (!opts.observation_times.empty()) {
    CsvWriter o(join(dir, "observations.csv"), concat({"run", "time"}, cols));
    for (std::size_t k = 0; k < runs; ++k) {
      for (std::size_t j = 0; j < opts.observation_times.size(); ++j) {
        o.cell(std::uint64_t{k}).cell(opts.observation_times[j]);
        for (double v : trajs[k].observations[j]) o.cell(v);
        o.end_row();
      }
    }
    finish(m, o, "state of every run on the time grid");
  }
  m.counters["bursts"] = bursts;
  m.counters["proposals"] = proposals;
  write_manifest(dir, m);
  return m;
}

RunManifest cmd_couple(const CommonArgs& args, const CoupleArgs& couple) {
  const NetworkSpec net = load_network(args);
  const auto a = initial_condition(net, couple.model, couple.init1, "--init1");
  const auto b = initial_condition(net, couple.model, couple.init2, "--init2");
  const std::string dir = prepare_out(args);
  CoupledOptions opts;
  if (!args.grid.empty()) {
    opts.observation_times = parse_time_grid(args.grid);
  }
  const std::size_t runs = runs_or(args, 1);
  const auto trajs = run_ensemble(runs, args.workers, [&](std::size_t k) {
    const auto seed = stream_seed(args.seed, k);
    return couple.model == Model::protein
               ? simulate_coupled_p(net, unflatten_p(a), unflatten_p(b), couple.horizon,
                                    seed, opts)
               : simulate_coupled_mp(net, unflatten_mp(a), unflatten_mp(b), couple.horizon,
                                     seed, opts);
  });

  RunManifest m = base_manifest("couple", args, &net);
  m.arguments["model"] = couple.model == Model::protein ? "p" : "mp";
  m.arguments["horizon"] = couple.horizon;
  m.arguments["init1"] = a;
  m.arguments["init2"] = b;

  const auto cols = concat(concat(state_columns(net.size(), couple.model, "a_"),
                                  state_columns(net.size(), couple.model, "b_")),
                           {"u"});
  CsvWriter w(join(dir, "coupled_events.csv"),
              concat(concat({"run", "time", "kind", "gene", "jump"}, cols), {"gap"}));
  CsvWriter s(join(dir, "coupled_summary.csv"),
              {"run", "min_gap", "min_normalized_gap", "common", "unilateral",
               "companion_only", "clamped", "dominated"});
  std::uint64_t clamps = 0, events = 0, violations = 0;
  for (std::size_t k = 0; k < runs; ++k) {
    const auto& tr = trajs[k];
    for (const auto& ev : tr.events) {
      w.cell(std::uint64_t{k}).cell(ev.time).cell(to_string(ev.kind))
          .cell(std::uint64_t{ev.gene}).cell(ev.jump);
      for (double v : ev.state_after) w.cell(v);
      w.cell(ev.gap);
      w.end_row();
    }
    const bool ok = domination_holds(tr);
    s.cell(std::uint64_t{k}).cell(tr.min_slack).cell(tr.min_normalized_slack)
        .cell(std::uint64_t{tr.common_events}).cell(std::uint64_t{tr.unilateral_events})
        .cell(std::uint64_t{tr.companion_events}).cell(std::uint64_t{tr.clamp_count})
        .cell(ok ? "yes" : "no");
    s.end_row();
    clamps += tr.clamp_count;
    events += tr.common_events + tr.unilateral_events + tr.companion_events;
    violations += ok ? 0 : 1;
  }
  finish(m, w, "accepted coupled events with the domination gap u - distance");
  finish(m, s, "per-run event counts and minimum domination gap");

  if (!opts.observation_times.empty()) {
    CsvWriter o(join(dir, "coupled_observations.csv"), concat({"run", "time"}, cols));
    for (std::size_t k = 0; k < runs; ++k) {
      for (std::size_t j = 0; j < opts.observation_times.size(); ++j) {
        o.cell(std::uint64_t{k}).cell(opts.observation_times[j]);
        for (double v : trajs[k].observations[j]) o.cell(v);
        o.end_row();
      }
    }
    finish(m, o, "coupled state of every run on the time grid");
  }
  m.counters["events"] = events;
  m.counters["clamp_count"] = clamps;
  m.counters["domination_violations"] = violations;
  write_manifest(dir, m);
  return m;
}

RunManifest cmd_companion(const CommonArgs& args, const CompanionArgs& comp) {
  DerivedConstants c;
  std::optional<NetworkSpec> net;
  if (!args.config_path.empty()) {
    net = load_network(args);
    c = derived_constants(*net);
  } else if (!(comp.r && comp.d1_min && comp.lambda_cap)) {
    throw ConfigError("--config or all of --r, --d1min, --lambda are required");
  }
  const CompanionParams p = CompanionParams::from(comp.r.value_or(c.r),
                                                  comp.d1_min.value_or(c.d1_min),
                                                  comp.lambda_cap.value_or(c.lambda_cap));
  const std::string dir = prepare_out(args);
  const std::size_t runs = runs_or(args, 1000);

  struct Row {
    CompanionRun alg1;
    double thinning = 0.0;
  };
  Alg1Options opts;
  opts.bands = comp.bands;
  const auto rows = run_ensemble(runs, args.workers, [&](std::size_t k) {
    Rng ra(stream_seed(args.seed, 2 * k));
    Rng rb(stream_seed(args.seed, 2 * k + 1));
    Row row;
    row.alg1 = simulate_companion_alg1(p, comp.u0, comp.t, ra, opts);
    row.thinning = simulate_companion_thinning(p, comp.u0, comp.t, rb);
    return row;
  });

  RunManifest m = base_manifest("companion", args, net ? &*net : nullptr);
  m.arguments["u0"] = comp.u0;
  m.arguments["t"] = comp.t;
  m.arguments["bands"] = comp.bands == StopBands::exact ? "exact" : "literal";
  m.summary["params"] = {{"r", p.r}, {"lambda", p.lambda_cap}, {"d1_min", p.d1_min},
                         {"rho", p.rho}, {"tau", p.tau}};
  m.summary["p_star"] = p_star(p, comp.u0);

  CsvWriter w(join(dir, "companion_samples.csv"),
              {"run", "alg1_u", "thinning_u", "n", "n_prime", "h", "dominated",
               "low_pinf_events"});
  std::uint64_t low = 0, undominated = 0;
  RunningMoments ma, mt;
  for (std::size_t k = 0; k < runs; ++k) {
    const auto& r = rows[k];
    w.cell(std::uint64_t{k}).cell(r.alg1.terminal).cell(r.thinning)
        .cell(std::uint64_t{r.alg1.jumps}).cell(std::uint64_t{r.alg1.n_prime})
        .cell(r.alg1.last_jump_time).cell(r.alg1.geometric_dominated ? "yes" : "no")
        .cell(std::uint64_t{r.alg1.low_pinf_events});
    w.end_row();
    low += r.alg1.low_pinf_events;
    undominated += r.alg1.geometric_dominated ? 0 : 1;
    ma.add(r.alg1.terminal);
    mt.add(r.thinning);
  }
  finish(m, w, "alg1 and thinning samples of U(t) with jump bookkeeping");
  m.summary["mean_alg1"] = ma.mean();
  m.summary["mean_thinning"] = mt.mean();
  m.counters["low_pinf_events"] = low;
  m.counters["runs_with_n_above_n_prime"] = undominated;
  write_manifest(dir, m);
  return m;
}

RunManifest cmd_bounds(const CommonArgs& args, const BoundsArgs& bounds) {
  const NetworkSpec net = load_network(args);
  const auto c = derived_constants(net);
  const auto p = CompanionParams::from(c);
  const auto times = grid_or(args, "0:20:101");
  const std::string dir = prepare_out(args);

  RunManifest m = base_manifest("bounds", args, &net);
  m.arguments["w0"] = bounds.w0;
  const double ps = p_star(p, bounds.w0);
  m.summary["p_star"] = ps;
  m.summary["gamma"] = gamma_rate(ps, c.tau, c.d1_min);
  m.summary["chen_exponent"] = chen_exponent(c);
  m.summary["is_dissipative"] = is_dissipative(c);

  CsvWriter w(join(dir, "bounds.csv"), {"t", "bound_p", "bound_mp", "chen"});
  for (double t : times) {
    w.cell(t).cell(bound_p(t, bounds.w0, c)).cell(bound_mp(t, bounds.w0, c))
        .cell(chen_bound(t, bounds.w0, c));
    w.end_row();
  }
  finish(m, w, "coupling bounds and the Gronwall comparison curve");
  write_manifest(dir, m);
  return m;
}

std::vector<ConvergenceRow> convergence_study(const NetworkSpec& net, Model model,
                                              const std::vector<double>& init1,
                                              const std::vector<double>& init2,
                                              const std::vector<double>& times,
                                              std::size_t runs, std::uint64_t seed,
                                              unsigned workers) {
  if (times.empty()) {
    throw std::invalid_argument("convergence_study: empty time grid");
  }
  if (runs < 2 || runs > kMaxExactSamples) {
    throw std::invalid_argument("convergence_study: runs must lie in [2, 2048]");
  }
  const auto c = derived_constants(net);
  CoupledOptions opts;
  opts.record_events = false;
  opts.observation_times = times;
  const double horizon = times.back();
  const auto trajs = run_ensemble(runs, workers, [&](std::size_t k) {
    const auto s = stream_seed(seed, k);
    return model == Model::protein
               ? simulate_coupled_p(net, unflatten_p(init1), unflatten_p(init2), horizon,
                                    s, opts)
               : simulate_coupled_mp(net, unflatten_mp(init1), unflatten_mp(init2),
                                     horizon, s, opts);
  });

  auto cloud_point = [&](std::span<const double> copy) {
    return model == Model::protein ? std::vector<double>(copy.begin(), copy.end())
                                   : weighted_mp_point(c.eps, copy);
  };
  const double w0 = model == Model::protein
                        ? coupled_distance_p(init1, init2)
                        : coupled_distance_mp(c.eps, init1, init2);

  std::vector<ConvergenceRow> rows;
  for (std::size_t j = 0; j < times.size(); ++j) {
    SampleCloud a, b;
    RunningMoments dist;
    for (const auto& tr : trajs) {
      const auto& full = tr.observations[j];
      const auto pa = cloud_point(tr.copy1(full));
      const auto pb = cloud_point(tr.copy2(full));
      a.push(pa);
      b.push(pb);
      dist.add(l1_distance(pa, pb));
    }
    ConvergenceRow row;
    row.t = times[j];
    row.lower = w1_lower_marginals(a, b);
    const auto exact = empirical_w1_with_se(a, b);
    row.exact = exact.value;
    row.exact_se = exact.se;
    row.upper = dist.mean();
    row.upper_se = dist.se();
    row.bound = model == Model::protein ? bound_p(times[j], w0, c) : bound_mp(times[j], w0, c);
    rows.push_back(row);
  }
  return rows;
}

RunManifest cmd_convergence(const CommonArgs& args, const ConvergenceArgs& conv) {
  const NetworkSpec net = load_network(args);
  std::vector<double> d1 = conv.init1, d2 = conv.init2;
  if (d1.empty() && d2.empty() && net.size() >= 2) {
    // Default pair at l1 distance 2: protein 1 versus protein 2 elevated.
    const std::size_t n = net.size();
    const std::size_t off = conv.model == Model::protein ? 0 : n;
    d1.assign(off + n, 0.0);
    d2.assign(off + n, 0.0);
    d1[off] = 1.0;
    d2[off + 1] = 1.0;
  }
  const auto a = initial_condition(net, conv.model, d1, "--init1");
  const auto b = initial_condition(net, conv.model, d2, "--init2");
  const auto times = grid_or(args, "log:0.1:10:8");
  const std::size_t runs = runs_or(args, 500);
  const std::string dir = prepare_out(args);

  const auto rows = convergence_study(net, conv.model, a, b, times, runs, args.seed,
                                      args.workers);
  RunManifest m = base_manifest("convergence", args, &net);
  m.arguments["model"] = conv.model == Model::protein ? "p" : "mp";
  m.arguments["init1"] = a;
  m.arguments["init2"] = b;

  CsvWriter w(join(dir, "convergence.csv"),
              {"t", "lower", "exact", "exact_se", "upper", "upper_se", "bound"});
  std::uint64_t above = 0;
  for (const auto& r : rows) {
    w.cell(r.t).cell(r.lower).cell(r.exact).cell(r.exact_se).cell(r.upper)
        .cell(r.upper_se).cell(r.bound);
    w.end_row();
    above += r.exact > r.bound + 3.0 * r.exact_se ? 1 : 0;
  }
  finish(m, w, "Wasserstein-1 sandwich and theoretical bound per grid time");
  m.counters["rows_above_bound"] = above;
  write_manifest(dir, m);
  return m;
}

RunManifest cmd_pstar(const CommonArgs& args, const PstarArgs& pstar) {
  const auto us = grid_or(args, "0:5:101");
  const std::string dir = prepare_out(args);
  RunManifest m = base_manifest("pstar", args, nullptr);
  m.arguments["lambdas"] = pstar.lambdas;
  m.arguments["rhos"] = pstar.rhos;
  CsvWriter w(join(dir, "pstar.csv"), {"lambda", "rho", "u", "p_star"});
  for (double lam : pstar.lambdas) {
    for (double rho : pstar.rhos) {
      for (double u : us) {
        w.cell(lam).cell(rho).cell(u).cell(p_star(rho, lam, u));
        w.end_row();
      }
    }
  }
  finish(m, w, "p*(u) over the (Lambda, rho) grid");
  write_manifest(dir, m);
  return m;
}

namespace {

Trajectory toggle_trajectory(const NetworkSpec& net, double horizon, double dt,
                             std::uint64_t seed) {
  if (net.size() != 2) {
    throw std::invalid_argument("toggle analysis needs a 2-gene network");
  }
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("toggle analysis needs horizon > 0 and dt > 0");
  }
  SimOptions opts;
  opts.record_events = false;
  const auto steps = static_cast<std::size_t>(std::floor(horizon / dt));
  for (std::size_t k = 0; k <= steps; ++k) {
    opts.observation_times.push_back(std::min(horizon, dt * static_cast<double>(k)));
  }
  return simulate_mp(net, StateMP{{0.0, 0.0}, {0.0, 0.0}}, horizon, seed, opts);
}

Occupancy occupancy_of(const Trajectory& tr) {
  Occupancy occ;
  for (const auto& s : tr.observations) {
    if (s[2] > s[3]) occ.first += 1.0;
    if (s[3] > s[2]) occ.second += 1.0;
  }
  const double n = static_cast<double>(tr.observations.size());
  occ.first /= n;
  occ.second /= n;
  return occ;
}

}  // namespace

Occupancy toggle_occupancy(const NetworkSpec& net, double horizon, double dt,
                           std::uint64_t seed) {
  return occupancy_of(toggle_trajectory(net, horizon, dt, seed));
}

std::vector<double> toggle_contrast_samples(const NetworkSpec& net, double t,
                                            std::size_t runs, std::uint64_t seed,
                                            unsigned workers) {
  if (net.size() != 2) {
    throw std::invalid_argument("toggle analysis needs a 2-gene network");
  }
  SimOptions opts;
  opts.record_events = false;
  return run_ensemble(runs, workers, [&](std::size_t k) {
    const auto tr =
        simulate_mp(net, StateMP{{0.0, 0.0}, {0.0, 0.0}}, t, stream_seed(seed, k), opts);
    return tr.terminal[2] - tr.terminal[3];
  });
}

RunManifest cmd_toggle_demo(const CommonArgs& args, const ToggleArgs& toggle) {
  const std::string dir = prepare_out(args);
  const std::size_t runs = runs_or(args, 400);
  RunManifest m = base_manifest("toggle-demo", args, nullptr);
  m.arguments["strong"] = toggle.strong_config;
  m.arguments["weak"] = toggle.weak_config;
  m.arguments["horizon"] = toggle.horizon;
  m.arguments["dt"] = toggle.dt;

  CsvWriter summary(join(dir, "toggle_summary.csv"),
                    {"regime", "lambda", "rho_inverse", "is_dissipative", "occupancy_z1",
                     "occupancy_z2", "dip", "dip_p_value", "unimodality_rejected"});
  const std::pair<std::string, std::string> regimes[] = {{"strong", toggle.strong_config},
                                                         {"weak", toggle.weak_config}};
  std::uint64_t regime_index = 0;
  for (const auto& [name, path] : regimes) {
    const NetworkSpec net = parse_network_config(path);
    const auto c = derived_constants(net);
    const double horizon = toggle.horizon / c.d1_min;
    const auto tr = toggle_trajectory(net, horizon, toggle.dt,
                                      stream_seed(args.seed, 2 * regime_index));
    CsvWriter w(join(dir, "toggle_" + name + "_trajectory.csv"),
                {"t", "y0", "y1", "z0", "z1"});
    for (std::size_t k = 0; k < tr.observations.size(); ++k) {
      w.cell(std::min(horizon, toggle.dt * static_cast<double>(k)));
      for (double v : tr.observations[k]) w.cell(v);
      w.end_row();
    }
    finish(m, w, name + " regime trajectory of the mRNA-protein model from zero");

    const auto occ = occupancy_of(tr);
    const auto contrast = toggle_contrast_samples(
        net, 50.0 / c.d1_min, runs, stream_seed(args.seed, 2 * regime_index + 1),
        args.workers);
    const auto dip = dip_test(contrast, 0.05, 2000, args.seed);
    summary.cell(name).cell(c.lambda_cap).cell(c.rho > 0.0 ? 1.0 / c.rho : 0.0)
        .cell(is_dissipative(c) ? "yes" : "no").cell(occ.first).cell(occ.second)
        .cell(dip.dip).cell(dip.p_value).cell(dip.reject ? "yes" : "no");
    summary.end_row();
    m.summary[name] = {{"network", network_to_json(net)},
                       {"constants", constants_to_json(c)}};
    ++regime_index;
  }
  finish(m, summary, "dissipativity, attractor occupancy and dip test per regime");
  write_manifest(dir, m);
  return m;
}

}  // namespace grn
