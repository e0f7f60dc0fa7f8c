// Command-line front end: every subcommand writes CSV files and a
// manifest.json into --out.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "grn/commands.hpp"
#include "grn/config.hpp"

namespace {

std::vector<double> list_or_empty(const std::string& text) {
  return text.empty() ? std::vector<double>{} : grn::parse_double_list(text);
}

void print_outputs(const grn::RunManifest& m, const std::string& dir) {
  for (const auto& o : m.outputs) {
    std::cout << dir << "/" << o.file << "  (" << o.rows << " rows)\n";
  }
  std::cout << dir << "/manifest.json\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bursty gene-network PDMPs: simulation, couplings and convergence bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  grn::CommonArgs common;
  app.add_option("--config", common.config_path, "Network JSON file");
  app.add_option("--seed", common.seed, "Master seed (uint64)")->required();
  app.add_option("--out", common.out_dir, "Output directory")->capture_default_str();
  app.add_option("--runs", common.runs, "Number of runs (0: command default)");
  app.add_option("--workers", common.workers, "Worker threads (0: all cores)")
      ->capture_default_str();
  app.add_option("--grid", common.grid, "Time grid t0:t1:steps or log:t0:t1:steps");

  std::string model = "p";
  double horizon = 10.0;
  std::string init1, init2;

  auto* validate = app.add_subcommand("validate", "Check a network and print its constants");

  auto* simulate = app.add_subcommand("simulate", "Simulate trajectories");
  simulate->add_option("--model", model, "p or mp")->capture_default_str();
  simulate->add_option("--horizon", horizon)->capture_default_str();
  simulate->add_option("--init1", init1, "Initial state, comma separated (mp: y then z)");

  auto* couple = app.add_subcommand("couple", "Simulate the synchronizing coupling");
  couple->add_option("--model", model, "p or mp")->capture_default_str();
  couple->add_option("--horizon", horizon)->capture_default_str();
  couple->add_option("--init1", init1, "First initial state");
  couple->add_option("--init2", init2, "Second initial state");

  grn::CompanionArgs comp;
  std::string bands = "exact";
  double r_override = -1.0, d1_override = -1.0, lambda_override = -1.0;
  auto* companion = app.add_subcommand("companion", "alg1 versus thinning samples");
  companion->add_option("--u0", comp.u0)->capture_default_str();
  companion->add_option("--t", comp.t)->capture_default_str();
  companion->add_option("--r", r_override, "Override r");
  companion->add_option("--d1min", d1_override, "Override the minimal protein decay");
  companion->add_option("--lambda", lambda_override, "Override Lambda");
  companion->add_option("--bands", bands, "exact or literal")->capture_default_str();

  grn::BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the convergence bounds");
  bounds_cmd->add_option("--w0", bounds.w0, "Initial Wasserstein distance")
      ->capture_default_str();

  auto* convergence =
      app.add_subcommand("convergence", "Empirical W1 sandwich against the bound");
  convergence->add_option("--model", model, "p or mp")->capture_default_str();
  convergence->add_option("--init1", init1, "First initial state");
  convergence->add_option("--init2", init2, "Second initial state");

  std::string lambdas = "0.5,1,2", rhos = "0.5,1,2";
  auto* pstar = app.add_subcommand("pstar", "Tabulate p*(u) over (Lambda, rho)");
  pstar->add_option("--lambdas", lambdas)->capture_default_str();
  pstar->add_option("--rhos", rhos)->capture_default_str();

  grn::ToggleArgs toggle;
  auto* toggle_cmd = app.add_subcommand("toggle-demo", "Strong versus weak toggle switch");
  toggle_cmd->add_option("--strong", toggle.strong_config)->capture_default_str();
  toggle_cmd->add_option("--weak", toggle.weak_config)->capture_default_str();
  toggle_cmd->add_option("--horizon", toggle.horizon, "In units of 1/d1_min")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const auto rep = grn::cmd_validate(common);
      nlohmann::json out = grn::constants_to_json(rep.constants);
      out["valid"] = rep.validation.ok();
      out["is_dissipative"] = rep.dissipative;
      out["envelope_pairs"] = rep.envelope.pairs;
      out["envelope_violations"] = rep.envelope.violations;
      out["envelope_max_ratio"] = rep.envelope.max_ratio;
      std::cout << out.dump(2) << '\n';
      return rep.validation.ok() && rep.envelope.ok() ? 0 : 1;
    }
    if (*simulate) {
      grn::SimulateArgs a{grn::parse_model(model), horizon, list_or_empty(init1)};
      print_outputs(grn::cmd_simulate(common, a), common.out_dir);
    } else if (*couple) {
      grn::CoupleArgs a{grn::parse_model(model), horizon, list_or_empty(init1),
                        list_or_empty(init2)};
      print_outputs(grn::cmd_couple(common, a), common.out_dir);
    } else if (*companion) {
      if (bands != "exact" && bands != "literal") {
        throw grn::ConfigError("--bands: expected 'exact' or 'literal'");
      }
      comp.bands = bands == "exact" ? grn::StopBands::exact : grn::StopBands::literal;
      if (r_override >= 0.0) comp.r = r_override;
      if (d1_override >= 0.0) comp.d1_min = d1_override;
      if (lambda_override >= 0.0) comp.lambda_cap = lambda_override;
      print_outputs(grn::cmd_companion(common, comp), common.out_dir);
    } else if (*bounds_cmd) {
      print_outputs(grn::cmd_bounds(common, bounds), common.out_dir);
    } else if (*convergence) {
      grn::ConvergenceArgs a{grn::parse_model(model), list_or_empty(init1),
                             list_or_empty(init2)};
      print_outputs(grn::cmd_convergence(common, a), common.out_dir);
    } else if (*pstar) {
      grn::PstarArgs a{grn::parse_double_list(lambdas), grn::parse_double_list(rhos)};
      print_outputs(grn::cmd_pstar(common, a), common.out_dir);
    } else if (*toggle_cmd) {
      print_outputs(grn::cmd_toggle_demo(common, toggle), common.out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
