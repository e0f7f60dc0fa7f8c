#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "grn/model.hpp"

namespace grn {

/// Malformed or invalid configuration; the message names the file and the
/// offending field (or the parse position).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Network JSON schema:
///   {"genes": [{"d0":..,"d1":..,"k0":..,"k1":..,"b":..,"s1":..}, ...],
///    "theta": [[..], ...], "beta": [..]}
/// b and s1 default to 1. ell is derived from theta.
NetworkSpec parse_network_config(const std::string& path);
NetworkSpec parse_network_json(const nlohmann::json& doc, const std::string& source);
nlohmann::json network_to_json(const NetworkSpec& net);

/// "t0:t1:steps" (linear) or "log:t0:t1:steps" (geometric); steps >= 2 points,
/// t1 > t0 >= 0 (t0 > 0 for log grids).
std::vector<double> parse_time_grid(const std::string& spec);

/// Comma-separated list of doubles, e.g. "1,2.5,0".
std::vector<double> parse_double_list(const std::string& text);

}  // namespace grn
