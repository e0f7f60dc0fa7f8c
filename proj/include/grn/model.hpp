#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "grn/rng.hpp"
#include "grn/state.hpp"

namespace grn {

/// Rates and scaling constants of one gene (all in the units of the
/// biological model; `ell` is in dimensionless protein units).
struct GeneParams {
  double d0 = 0.0;   ///< mRNA degradation rate
  double d1 = 0.0;   ///< protein degradation rate
  double k0 = 0.0;   ///< minimal burst frequency
  double k1 = 0.0;   ///< maximal burst frequency
  double b = 1.0;    ///< inverse mean mRNA burst size
  double s1 = 1.0;   ///< translation rate
  double ell = 0.0;  ///< Lipschitz constant of the normalized regulation
};

/// Logistic regulation: gene i is driven by sigma(beta_i + sum_j theta_ij x_j).
/// theta is stored row-major; theta(i, j) is the effect of protein j on gene i.
struct RegulationSpec {
  std::size_t n = 0;
  std::vector<double> theta;
  std::vector<double> beta;

  double weight(std::size_t i, std::size_t j) const { return theta[i * n + j]; }
};

struct NetworkSpec {
  std::vector<GeneParams> genes;
  RegulationSpec regulation;

  std::size_t size() const { return genes.size(); }
};

/// Lipschitz constant of x -> sigma(beta_i + sum_j theta_ij x_j) under the
/// l1 norm: the logistic slope is at most 1/4.
double logistic_lipschitz(const RegulationSpec& regulation, std::size_t gene);

/// Assembles a network and fills every GeneParams::ell from theta.
NetworkSpec make_network(std::vector<GeneParams> genes, RegulationSpec regulation);

enum class Constraint {
  dimension,
  finite,
  degradation_order,  // d0 > d1 > 0
  rate_nonnegative,   // k0 >= 0
  rate_order,         // k0 <= k1
  burst_size,         // b > 0
  translation,        // s1 > 0
  lipschitz,          // ell >= 0
};

const char* to_string(Constraint c);

struct Violation {
  std::size_t gene = 0;
  Constraint constraint = Constraint::finite;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Constraint c) const;
  std::string describe() const;
};

ValidationReport validate_network(const NetworkSpec& net);

/// Throws std::invalid_argument carrying the report text if validation fails.
void require_valid(const NetworkSpec& net);

/// d1 / (d0 - d1); throws std::domain_error unless d0 > d1 > 0.
double epsilon(double d0, double d1);

struct DerivedConstants {
  double r = 0.0;                   ///< sum_i (k1_i - k0_i)
  double lambda_cap = 0.0;          ///< (1/r) sum_i (k1_i - k0_i) ell_i
  double lambda_cap_literal = 0.0;  ///< (1/r) sum_i ell_i, reported only
  double d1_min = 0.0;
  double rho = 0.0;  ///< r / d1_min
  double tau = 0.0;  ///< min(r, d1_min)
  std::vector<double> eps;
};

/// Pure function of the network. When r == 0 the burst rates are constant and
/// lambda_cap, rho and tau are all 0.
DerivedConstants derived_constants(const NetworkSpec& net);

/// kon_i(x) = k0_i + (k1_i - k0_i) sigma(beta_i + sum_j theta_ij x_j).
void kon(const NetworkSpec& net, std::span<const double> x, std::span<double> out);
std::vector<double> kon(const NetworkSpec& net, std::span<const double> x);

struct EnvelopeReport {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  ///< max ||kon(x)-kon(z)||_1 / (r min(1, Lambda ||x-z||_1))
  std::vector<double> worst_x;
  std::vector<double> worst_z;

  bool ok() const { return violations == 0; }
};

/// Samples pairs uniformly in [0, box]^n and checks
/// ||kon(x) - kon(z)||_1 <= r min(1, Lambda ||x - z||_1) against the Lambda in
/// `constants`. box <= 0 selects the default 5 rho (or 1 when rho == 0).
EnvelopeReport check_lipschitz_envelope(const NetworkSpec& net,
                                        const DerivedConstants& constants,
                                        std::size_t num_pairs, Rng& rng,
                                        double box = 0.0);

/// Biological quantities: mRNA counts M and protein counts P per gene.
struct BiologicalState {
  std::vector<double> mrna;
  std::vector<double> protein;
};

/// d1 b / (s1 eps): protein -> dimensionless protein.
double protein_scale(const GeneParams& gene);
/// b / eps: mRNA -> dimensionless mRNA.
double mrna_scale(const GeneParams& gene);

StateMP to_dimensionless(const NetworkSpec& net, const BiologicalState& bio);
BiologicalState from_dimensionless(const NetworkSpec& net, const StateMP& s);

/// Protein-only model: P-hat -> X.
StateP to_dimensionless(const NetworkSpec& net, std::span<const double> protein);
std::vector<double> from_dimensionless(const NetworkSpec& net, const StateP& s);

}  // namespace grn
