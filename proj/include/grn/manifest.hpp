#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "grn/model.hpp"

namespace grn {

inline constexpr const char* kToolVersion = "0.1.0";
/// Bumped whenever a CSV header changes.
inline constexpr int kCsvSchemaVersion = 1;

struct OutputEntry {
  std::string file;  ///< relative to the output directory
  std::string description;
  std::size_t rows = 0;
};

/// Record of one command invocation. Re-running the command recorded in
/// `arguments` on the snapshotted network reproduces every CSV body.
struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json arguments = nlohmann::json::object();
  nlohmann::json network = nullptr;
  nlohmann::json constants = nullptr;
  std::vector<OutputEntry> outputs;
  std::map<std::string, std::uint64_t> counters;
  nlohmann::json summary = nlohmann::json::object();

  nlohmann::json to_json() const;
};

nlohmann::json constants_to_json(const DerivedConstants& c);

/// Writes `dir`/manifest.json through a temporary file and a rename.
void write_manifest(const std::string& dir, const RunManifest& manifest);

}  // namespace grn
