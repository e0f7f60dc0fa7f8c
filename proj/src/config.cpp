#include "grn/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace grn {

using nlohmann::json;

namespace {

double number_field(const json& obj, const std::string& key, const std::string& where,
                    const double* fallback = nullptr) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback != nullptr) {
      return *fallback;
    }
    throw ConfigError(where + "." + key + ": missing field");
  }
  if (!it->is_number()) {
    throw ConfigError(where + "." + key + ": expected a number");
  }
  return it->get<double>();
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) {
    throw ConfigError(where + ": expected an array");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(where + "[" + std::to_string(i) + "]: expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

NetworkSpec parse_network_json(const json& doc, const std::string& source) {
  const std::string pre = source + ": ";
  if (!doc.is_object()) {
    throw ConfigError(pre + "top level must be an object");
  }
  if (!doc.contains("genes")) {
    throw ConfigError(pre + "genes: missing field");
  }
  const json& genes = doc["genes"];
  if (!genes.is_array() || genes.empty()) {
    throw ConfigError(pre + "genes: expected a non-empty array");
  }
  const std::size_t n = genes.size();
  const double one = 1.0;
  std::vector<GeneParams> params;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = "genes[" + std::to_string(i) + "]";
    const json& g = genes[i];
    if (!g.is_object()) {
      throw ConfigError(pre + where + ": expected an object");
    }
    try {
      GeneParams p;
      p.d0 = number_field(g, "d0", where);
      p.d1 = number_field(g, "d1", where);
      p.k0 = number_field(g, "k0", where);
      p.k1 = number_field(g, "k1", where);
      p.b = number_field(g, "b", where, &one);
      p.s1 = number_field(g, "s1", where, &one);
      params.push_back(p);
    } catch (const ConfigError& e) {
      throw ConfigError(pre + e.what());
    }
  }

  if (!doc.contains("theta")) {
    throw ConfigError(pre + "theta: missing field");
  }
  if (!doc.contains("beta")) {
    throw ConfigError(pre + "beta: missing field");
  }
  RegulationSpec reg;
  reg.n = n;
  try {
    const json& theta = doc["theta"];
    if (!theta.is_array() || theta.size() != n) {
      throw ConfigError("theta: expected " + std::to_string(n) + " rows");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = number_array(theta[i], "theta[" + std::to_string(i) + "]");
      if (row.size() != n) {
        throw ConfigError("theta[" + std::to_string(i) + "]: expected " +
                          std::to_string(n) + " entries, got " +
                          std::to_string(row.size()));
      }
      reg.theta.insert(reg.theta.end(), row.begin(), row.end());
    }
    reg.beta = number_array(doc["beta"], "beta");
    if (reg.beta.size() != n) {
      throw ConfigError("beta: expected " + std::to_string(n) + " entries, got " +
                        std::to_string(reg.beta.size()));
    }
  } catch (const ConfigError& e) {
    throw ConfigError(pre + e.what());
  }

  NetworkSpec net = make_network(std::move(params), std::move(reg));
  const auto report = validate_network(net);
  if (!report.ok()) {
    std::ostringstream os;
    os << pre << "invalid network\n";
    for (const auto& v : report.violations) {
      os << "  genes[" << v.gene << "]: " << to_string(v.constraint) << ": " << v.message
         << '\n';
    }
    throw ConfigError(os.str());
  }
  return net;
}

NetworkSpec parse_network_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open file");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_network_json(doc, path);
}

json network_to_json(const NetworkSpec& net) {
  json doc;
  doc["genes"] = json::array();
  for (const auto& g : net.genes) {
    doc["genes"].push_back(
        {{"d0", g.d0}, {"d1", g.d1}, {"k0", g.k0}, {"k1", g.k1}, {"b", g.b}, {"s1", g.s1}});
  }
  const std::size_t n = net.size();
  doc["theta"] = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back(net.regulation.weight(i, j));
    }
    doc["theta"].push_back(row);
  }
  doc["beta"] = net.regulation.beta;
  return doc;
}

namespace {

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": cannot parse '" + s + "' as a number");
  }
  if (used != s.size()) {
    throw ConfigError(what + ": cannot parse '" + s + "' as a number");
  }
  return v;
}

}  // namespace

std::vector<double> parse_time_grid(const std::string& spec) {
  std::string body = spec;
  bool log_grid = false;
  if (body.rfind("log:", 0) == 0) {
    log_grid = true;
    body = body.substr(4);
  }
  std::vector<std::string> parts;
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ':');) {
    parts.push_back(item);
  }
  if (parts.size() != 3) {
    throw ConfigError("grid '" + spec + "': expected t0:t1:steps");
  }
  const double t0 = parse_number(parts[0], "grid t0");
  const double t1 = parse_number(parts[1], "grid t1");
  const double steps_d = parse_number(parts[2], "grid steps");
  if (steps_d < 2.0 || std::floor(steps_d) != steps_d) {
    throw ConfigError("grid '" + spec + "': steps must be an integer >= 2");
  }
  if (!(t0 >= 0.0) || !(t1 > t0) || !std::isfinite(t1)) {
    throw ConfigError("grid '" + spec + "': need 0 <= t0 < t1");
  }
  if (log_grid && !(t0 > 0.0)) {
    throw ConfigError("grid '" + spec + "': log grid needs t0 > 0");
  }
  const auto steps = static_cast<std::size_t>(steps_d);
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(steps - 1);
    out[k] = log_grid ? t0 * std::pow(t1 / t0, f) : t0 + (t1 - t0) * f;
  }
  out.back() = t1;
  for (std::size_t k = 1; k < steps; ++k) {
    if (!(out[k] > out[k - 1])) {
      throw ConfigError("grid '" + spec + "': times are not strictly increasing");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    out.push_back(parse_number(item, "list"));
  }
  if (out.empty()) {
    throw ConfigError("list: empty");
  }
  return out;
}

}  // namespace grn
