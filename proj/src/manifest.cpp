#include "grn/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace grn {

using nlohmann::json;

json constants_to_json(const DerivedConstants& c) {
  return {{"r", c.r},
          {"lambda", c.lambda_cap},
          {"lambda_unweighted", c.lambda_cap_literal},
          {"d1_min", c.d1_min},
          {"rho", c.rho},
          {"rho_inverse", c.rho > 0.0 ? 1.0 / c.rho : 0.0},
          {"tau", c.tau},
          {"eps", c.eps}};
}

json RunManifest::to_json() const {
  json doc;
  doc["tool"] = "grnpdmp";
  doc["version"] = kToolVersion;
  doc["csv_schema_version"] = kCsvSchemaVersion;
  doc["command"] = command;
  doc["seed"] = seed;
  doc["arguments"] = arguments;
  doc["network"] = network;
  doc["constants"] = constants;
  doc["outputs"] = json::array();
  for (const auto& o : outputs) {
    doc["outputs"].push_back({{"file", o.file}, {"description", o.description}, {"rows", o.rows}});
  }
  doc["counters"] = counters;
  doc["summary"] = summary;
  return doc;
}

void write_manifest(const std::string& dir, const RunManifest& manifest) {
  namespace fs = std::filesystem;
  const fs::path final_path = fs::path(dir) / "manifest.json";
  const fs::path tmp_path = fs::path(dir) / "manifest.json.tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp_path.string());
    }
    out << manifest.to_json().dump(2) << '\n';
    if (!out) {
      throw std::runtime_error("error while writing " + tmp_path.string());
    }
  }
  fs::rename(tmp_path, final_path);
}

}  // namespace grn
