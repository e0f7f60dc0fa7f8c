#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace grn {

/// Half-width of the DKW confidence band at level 1 - alpha:
/// sqrt(ln(2 / alpha) / (2 n)).
double dkw_band(std::size_t n, double alpha = 0.01);

enum class Support { continuous, integer };

struct DominanceResult {
  bool pass = false;
  double margin = 0.0;  ///< min of (empirical CDF - reference CDF); pass iff >= -band
  double band = 0.0;
  double worst_at = 0.0;
};

/// Tests that the samples are stochastically smaller than the reference law,
/// i.e. their empirical CDF stays above reference_cdf minus the DKW band.
/// Needs at least 100 samples.
DominanceResult dominance_test(std::span<const double> samples,
                               const std::function<double(double)>& reference_cdf,
                               double alpha = 0.01,
                               Support support = Support::continuous);

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;  ///< at the requested level
  double p_value = 1.0;   ///< asymptotic
  bool reject = false;
};

/// Asymptotic Kolmogorov critical constant c(alpha); c(0.01) = 1.628.
double ks_critical_constant(double alpha);

/// Complementary Kolmogorov distribution P(K > x).
double kolmogorov_survival(double x);

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                       double alpha = 0.01);

KsResult ks_one_sample(std::span<const double> samples,
                       const std::function<double(double)>& cdf, double alpha = 0.01);

/// Hartigan's dip statistic of a sample (sorted internally).
double dip_statistic(std::span<const double> samples);

struct DipResult {
  double dip = 0.0;
  double p_value = 1.0;
  bool reject = false;  ///< unimodality rejected at the requested level
};

/// Dip test with a Monte Carlo p-value against uniform samples of the same
/// size (the least favourable unimodal law).
DipResult dip_test(std::span<const double> samples, double alpha = 0.05,
                   std::size_t null_draws = 2000, std::uint64_t seed = 1);

}  // namespace grn
