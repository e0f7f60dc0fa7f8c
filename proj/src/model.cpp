#include "grn/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace grn {

const char* to_string(Model m) {
  return m == Model::protein ? "protein" : "mrna_protein";
}

std::vector<double> flatten(const StateP& s) { return s.x; }

std::vector<double> flatten(const StateMP& s) {
  std::vector<double> v(s.y);
  v.insert(v.end(), s.z.begin(), s.z.end());
  return v;
}

StateP unflatten_p(std::span<const double> v) {
  return StateP{std::vector<double>(v.begin(), v.end())};
}

StateMP unflatten_mp(std::span<const double> v) {
  const std::size_t n = v.size() / 2;
  return StateMP{std::vector<double>(v.begin(), v.begin() + n),
                 std::vector<double>(v.begin() + n, v.end())};
}

double logistic_lipschitz(const RegulationSpec& regulation, std::size_t gene) {
  double s = 0.0;
  for (std::size_t j = 0; j < regulation.n; ++j) {
    s += std::abs(regulation.weight(gene, j));
  }
  return 0.25 * s;
}

NetworkSpec make_network(std::vector<GeneParams> genes, RegulationSpec regulation) {
  NetworkSpec net{std::move(genes), std::move(regulation)};
  if (net.regulation.n == net.genes.size() &&
      net.regulation.theta.size() == net.genes.size() * net.genes.size()) {
    for (std::size_t i = 0; i < net.genes.size(); ++i) {
      net.genes[i].ell = logistic_lipschitz(net.regulation, i);
    }
  }
  return net;
}

const char* to_string(Constraint c) {
  switch (c) {
    case Constraint::dimension: return "dimension";
    case Constraint::finite: return "finite";
    case Constraint::degradation_order: return "degradation order (d0 > d1 > 0)";
    case Constraint::rate_nonnegative: return "rate nonnegative (k0 >= 0)";
    case Constraint::rate_order: return "rate ordering (k0 <= k1)";
    case Constraint::burst_size: return "burst size (b > 0)";
    case Constraint::translation: return "translation rate (s1 > 0)";
    case Constraint::lipschitz: return "Lipschitz constant (ell >= 0)";
  }
  return "unknown";
}

bool ValidationReport::has(Constraint c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.constraint == c; });
}

std::string ValidationReport::describe() const {
  if (ok()) {
    return "network is valid";
  }
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "gene " << v.gene << ": " << to_string(v.constraint) << ": " << v.message
       << '\n';
  }
  return os.str();
}

ValidationReport validate_network(const NetworkSpec& net) {
  ValidationReport report;
  auto add = [&](std::size_t gene, Constraint c, std::string msg) {
    report.violations.push_back({gene, c, std::move(msg)});
  };
  const std::size_t n = net.size();
  if (n == 0) {
    add(0, Constraint::dimension, "network has no genes");
    return report;
  }
  const auto& reg = net.regulation;
  if (reg.n != n || reg.theta.size() != n * n || reg.beta.size() != n) {
    std::ostringstream os;
    os << "regulation has n=" << reg.n << ", theta of size " << reg.theta.size()
       << ", beta of size " << reg.beta.size() << " for " << n << " genes";
    add(0, Constraint::dimension, os.str());
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      bool finite = std::isfinite(reg.beta[i]);
      for (std::size_t j = 0; j < n; ++j) {
        finite = finite && std::isfinite(reg.weight(i, j));
      }
      if (!finite) {
        add(i, Constraint::finite, "non-finite regulation weight or offset");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = net.genes[i];
    if (!(std::isfinite(g.d0) && std::isfinite(g.d1) && std::isfinite(g.k0) &&
          std::isfinite(g.k1) && std::isfinite(g.b) && std::isfinite(g.s1) &&
          std::isfinite(g.ell))) {
      add(i, Constraint::finite, "non-finite parameter");
      continue;
    }
    if (!(g.d1 > 0.0) || !(g.d0 > g.d1)) {
      std::ostringstream os;
      os << "d0=" << g.d0 << ", d1=" << g.d1;
      add(i, Constraint::degradation_order, os.str());
    }
    if (g.k0 < 0.0) {
      add(i, Constraint::rate_nonnegative, "k0=" + std::to_string(g.k0));
    }
    if (g.k0 > g.k1) {
      std::ostringstream os;
      os << "k0=" << g.k0 << " exceeds k1=" << g.k1;
      add(i, Constraint::rate_order, os.str());
    }
    if (!(g.b > 0.0)) {
      add(i, Constraint::burst_size, "b=" + std::to_string(g.b));
    }
    if (!(g.s1 > 0.0)) {
      add(i, Constraint::translation, "s1=" + std::to_string(g.s1));
    }
    if (g.ell < 0.0) {
      add(i, Constraint::lipschitz, "ell=" + std::to_string(g.ell));
    }
  }
  return report;
}

void require_valid(const NetworkSpec& net) {
  const auto report = validate_network(net);
  if (!report.ok()) {
    throw std::invalid_argument("invalid network:\n" + report.describe());
  }
}

double epsilon(double d0, double d1) {
  if (!(d1 > 0.0) || !(d0 > d1)) {
    throw std::domain_error("epsilon requires d0 > d1 > 0");
  }
  return d1 / (d0 - d1);
}

DerivedConstants derived_constants(const NetworkSpec& net) {
  DerivedConstants c;
  double weighted = 0.0;
  double ell_sum = 0.0;
  c.d1_min = std::numeric_limits<double>::infinity();
  c.eps.reserve(net.size());
  for (const auto& g : net.genes) {
    const double span = g.k1 - g.k0;
    c.r += span;
    weighted += span * g.ell;
    ell_sum += g.ell;
    c.d1_min = std::min(c.d1_min, g.d1);
    c.eps.push_back(epsilon(g.d0, g.d1));
  }
  if (c.r > 0.0) {
    c.lambda_cap = weighted / c.r;
    c.lambda_cap_literal = ell_sum / c.r;
    c.rho = c.r / c.d1_min;
    c.tau = std::min(c.r, c.d1_min);
  }
  return c;
}

namespace {

inline double logistic(double a) {
  if (a >= 0.0) {
    return 1.0 / (1.0 + std::exp(-a));
  }
  const double e = std::exp(a);
  return e / (1.0 + e);
}

}  // namespace

void kon(const NetworkSpec& net, std::span<const double> x, std::span<double> out) {
  const auto& reg = net.regulation;
  const std::size_t n = net.size();
  for (std::size_t i = 0; i < n; ++i) {
    double a = reg.beta[i];
    const double* row = reg.theta.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      a += row[j] * x[j];
    }
    const auto& g = net.genes[i];
    out[i] = g.k0 + (g.k1 - g.k0) * logistic(a);
  }
}

std::vector<double> kon(const NetworkSpec& net, std::span<const double> x) {
  std::vector<double> out(net.size());
  kon(net, x, out);
  return out;
}

EnvelopeReport check_lipschitz_envelope(const NetworkSpec& net,
                                        const DerivedConstants& constants,
                                        std::size_t num_pairs, Rng& rng, double box) {
  const std::size_t n = net.size();
  if (box <= 0.0) {
    box = constants.rho > 0.0 ? 5.0 * constants.rho : 1.0;
  }
  EnvelopeReport report;
  std::vector<double> x(n), z(n), kx(n), kz(n);
  for (std::size_t p = 0; p < num_pairs; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = box * rng.uniform();
      z[i] = box * rng.uniform();
    }
    kon(net, x, kx);
    kon(net, z, kz);
    const double lhs = l1_distance(kx, kz);
    const double rhs =
        constants.r * std::min(1.0, constants.lambda_cap * l1_distance(x, z));
    double ratio = 0.0;
    if (rhs > 0.0) {
      ratio = lhs / rhs;
    } else if (lhs > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    // Relative slack for rounding in the two kon evaluations.
    if (lhs > rhs * (1.0 + 1e-12) + 1e-15) {
      ++report.violations;
    }
    if (ratio > report.max_ratio || report.pairs == 0) {
      report.max_ratio = std::max(report.max_ratio, ratio);
      report.worst_x = x;
      report.worst_z = z;
    }
    ++report.pairs;
  }
  return report;
}

double protein_scale(const GeneParams& gene) {
  return gene.d1 * gene.b / (gene.s1 * epsilon(gene.d0, gene.d1));
}

double mrna_scale(const GeneParams& gene) {
  return gene.b / epsilon(gene.d0, gene.d1);
}

StateMP to_dimensionless(const NetworkSpec& net, const BiologicalState& bio) {
  const std::size_t n = net.size();
  if (bio.mrna.size() != n || bio.protein.size() != n) {
    throw std::invalid_argument("to_dimensionless: state dimension mismatch");
  }
  StateMP s{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    s.y[i] = mrna_scale(net.genes[i]) * bio.mrna[i];
    s.z[i] = protein_scale(net.genes[i]) * bio.protein[i];
  }
  return s;
}

BiologicalState from_dimensionless(const NetworkSpec& net, const StateMP& s) {
  const std::size_t n = net.size();
  if (s.y.size() != n || s.z.size() != n) {
    throw std::invalid_argument("from_dimensionless: state dimension mismatch");
  }
  BiologicalState bio{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    bio.mrna[i] = s.y[i] / mrna_scale(net.genes[i]);
    bio.protein[i] = s.z[i] / protein_scale(net.genes[i]);
  }
  return bio;
}

StateP to_dimensionless(const NetworkSpec& net, std::span<const double> protein) {
  const std::size_t n = net.size();
  if (protein.size() != n) {
    throw std::invalid_argument("to_dimensionless: state dimension mismatch");
  }
  StateP s{std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    s.x[i] = protein_scale(net.genes[i]) * protein[i];
  }
  return s;
}

std::vector<double> from_dimensionless(const NetworkSpec& net, const StateP& s) {
  const std::size_t n = net.size();
  if (s.x.size() != n) {
    throw std::invalid_argument("from_dimensionless: state dimension mismatch");
  }
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = s.x[i] / protein_scale(net.genes[i]);
  }
  return p;
}

}  // namespace grn
