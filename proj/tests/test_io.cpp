#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "grn/commands.hpp"
#include "grn/config.hpp"
#include "grn/csv.hpp"
#include "grn/manifest.hpp"

using namespace grn;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string source_path(const std::string& rel) { return std::string(GRN_SOURCE_DIR) + "/" + rel; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("grnpdmp_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json valid_doc() {
  return json::parse(R"({
    "genes": [{"d0": 2, "d1": 1, "k0": 0.5, "k1": 3},
              {"d0": 3, "d1": 1.5, "k0": 0, "k1": 2, "b": 2, "s1": 4}],
    "theta": [[0, -1], [0.5, 0]],
    "beta": [1, -1]
  })");
}

std::string error_of(const json& doc) {
  try {
    parse_network_json(doc, "net.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("network JSON round trip") {
  const auto net = parse_network_json(valid_doc(), "inline");
  REQUIRE(net.size() == 2);
  CHECK(net.genes[0].b == 1.0);
  CHECK(net.genes[1].s1 == 4.0);
  CHECK(net.regulation.weight(0, 1) == -1.0);
  CHECK(net.genes[0].ell == doctest::Approx(0.25));
  CHECK(net.genes[1].ell == doctest::Approx(0.125));
  const auto again = parse_network_json(network_to_json(net), "again");
  CHECK(again.regulation.theta == net.regulation.theta);
  CHECK(again.genes[1].k1 == net.genes[1].k1);
}

TEST_CASE("config errors name the offending field") {
  auto doc = valid_doc();
  doc["genes"][1].erase("d0");
  CHECK(error_of(doc).find("genes[1].d0: missing field") != std::string::npos);

  doc = valid_doc();
  doc["genes"][0]["k1"] = "fast";
  CHECK(error_of(doc).find("genes[0].k1: expected a number") != std::string::npos);

  doc = valid_doc();
  doc["theta"][0] = json::array({1.0});
  CHECK(error_of(doc).find("theta[0]: expected 2 entries") != std::string::npos);

  doc = valid_doc();
  doc["beta"] = json::array({1.0});
  CHECK(error_of(doc).find("beta: expected 2 entries") != std::string::npos);

  doc = valid_doc();
  doc["genes"][1]["d0"] = 1.5;
  const auto msg = error_of(doc);
  CHECK(msg.find("genes[1]") != std::string::npos);
  CHECK(msg.find("degradation order") != std::string::npos);

  doc = valid_doc();
  doc.erase("theta");
  CHECK(error_of(doc).find("theta: missing field") != std::string::npos);

  CHECK_THROWS_AS(parse_network_config(source_path("tests/data/equal_degradation.json")),
                  ConfigError);
  CHECK_THROWS_AS(parse_network_config("/nonexistent/net.json"), ConfigError);

  const auto bad = scratch("badjson");
  fs::create_directories(bad);
  std::ofstream(bad / "net.json") << "{\"genes\": [";
  try {
    parse_network_config((bad / "net.json").string());
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("net.json") != std::string::npos);
  }
}

TEST_CASE("shipped configs load") {
  for (const char* name : {"configs/toggle_strong.json", "configs/toggle_weak.json",
                           "configs/single_gene.json"}) {
    CHECK_NOTHROW(parse_network_config(source_path(name)));
  }
}

TEST_CASE("time grids") {
  const auto lin = parse_time_grid("0:2:5");
  CHECK(lin == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  const auto lg = parse_time_grid("log:0.1:10:3");
  REQUIRE(lg.size() == 3);
  CHECK(lg[0] == doctest::Approx(0.1));
  CHECK(lg[1] == doctest::Approx(1.0));
  CHECK(lg[2] == doctest::Approx(10.0));
  CHECK_THROWS(parse_time_grid("0:2:1"));
  CHECK_THROWS(parse_time_grid("2:1:5"));
  CHECK_THROWS(parse_time_grid("log:0:1:5"));
  CHECK_THROWS(parse_time_grid("-1:1:5"));
  CHECK_THROWS(parse_time_grid("a:b:c"));
  CHECK(parse_double_list("1,2.5,0") == std::vector<double>{1.0, 2.5, 0.0});
  CHECK_THROWS(parse_double_list("1,,2"));
}

TEST_CASE("CSV output") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  const auto dir = scratch("csv");
  fs::create_directories(dir);
  {
    CsvWriter w((dir / "a.csv").string(), {"k", "v", "name"});
    w.cell(std::uint64_t{3}).cell(0.5).cell("x");
    w.end_row();
    w.cell(std::uint64_t{4}).cell(1.0);
    CHECK_THROWS(w.end_row());
    w.cell("y");
    w.end_row();
    CHECK(w.rows() == 2);
    w.close();
  }
  CHECK(slurp(dir / "a.csv") == "k,v,name\n3,0.5,x\n4,1,y\n");
}

TEST_CASE("manifest") {
  const auto dir = scratch("manifest");
  fs::create_directories(dir);
  RunManifest m;
  m.command = "demo";
  m.seed = 42;
  m.outputs.push_back({"a.csv", "rows", 3});
  m.counters["events"] = 7;
  write_manifest(dir.string(), m);
  const auto j = json::parse(slurp(dir / "manifest.json"));
  CHECK(j["command"] == "demo");
  CHECK(j["seed"] == 42);
  CHECK(j["version"] == kToolVersion);
  CHECK(j["csv_schema_version"] == kCsvSchemaVersion);
  CHECK(j["counters"]["events"] == 7);
  CHECK(j["outputs"][0]["rows"] == 3);
  CHECK_FALSE(fs::exists(dir / "manifest.json.tmp"));
}

TEST_CASE("pstar command") {
  const auto dir = scratch("pstar");
  CommonArgs args;
  args.seed = 1;
  args.out_dir = dir.string();
  args.grid = "0:2:3";
  PstarArgs p;
  p.lambdas = {1.0};
  p.rhos = {1.0, 2.0};
  const auto m = cmd_pstar(args, p);
  REQUIRE(m.outputs.size() == 1);
  CHECK(m.outputs[0].rows == 6);
  std::istringstream csv(slurp(dir / "pstar.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "lambda,rho,u,p_star");
  std::getline(csv, line);
  CHECK(line.rfind("1,1,0,", 0) == 0);
  CHECK(std::stod(line.substr(6)) == doctest::Approx(std::exp(-1.0)));
  CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("bounds command starts at max(w0, rho)") {
  const auto dir = scratch("bounds");
  CommonArgs args;
  args.seed = 1;
  args.out_dir = dir.string();
  args.config_path = source_path("configs/single_gene.json");
  args.grid = "0:1:2";
  BoundsArgs b;
  b.w0 = 0.25;
  cmd_bounds(args, b);
  std::istringstream csv(slurp(dir / "bounds.csv"));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  CHECK(header == "t,bound_p,bound_mp,chen");
  const auto c = derived_constants(parse_network_config(args.config_path));
  std::ostringstream expected;
  expected << "0," << format_double(std::max(0.25, c.rho)) << ","
           << format_double(std::max(0.25, c.rho)) << "," << format_double(0.25);
  CHECK(row == expected.str());
}

TEST_CASE("outputs do not depend on the worker count") {
  auto run = [](unsigned workers, const std::string& name) {
    const auto dir = scratch(name);
    CommonArgs args;
    args.seed = 9;
    args.out_dir = dir.string();
    args.config_path = source_path("configs/toggle_weak.json");
    args.runs = 12;
    args.workers = workers;
    args.grid = "0:1:3";
    CoupleArgs c;
    c.horizon = 1.0;
    c.init1 = {1.0, 0.0};
    c.init2 = {0.0, 1.0};
    cmd_couple(args, c);
    ConvergenceArgs conv;
    conv.init1 = c.init1;
    conv.init2 = c.init2;
    args.grid = "0.5:1:2";
    cmd_convergence(args, conv);
    return slurp(dir / "coupled_events.csv") + slurp(dir / "coupled_summary.csv") +
           slurp(dir / "coupled_observations.csv") + slurp(dir / "convergence.csv");
  };
  const auto one = run(1, "w1");
  CHECK(one.size() > 100);
  CHECK(one == run(4, "w4"));
}

TEST_CASE("command argument errors") {
  CommonArgs args;
  args.seed = 1;
  args.out_dir = scratch("errors").string();
  CHECK_THROWS_AS(load_network(args), ConfigError);
  args.config_path = source_path("configs/toggle_weak.json");
  const auto net = load_network(args);
  CHECK_THROWS(initial_condition(net, Model::protein, {1.0}, "--init1"));
  CHECK(initial_condition(net, Model::mrna_protein, {}, "--init1").size() == 4);
  CHECK(parse_model("mp") == Model::mrna_protein);
  CHECK_THROWS(parse_model("xyz"));
  const auto rep = cmd_validate(args, 2000);
  CHECK(rep.validation.ok());
  CHECK(rep.envelope.ok());
  CHECK(rep.dissipative);
}
