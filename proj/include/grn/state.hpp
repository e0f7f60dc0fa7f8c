#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace grn {

/// Dimensionless protein levels of the protein-only model.
struct StateP {
  std::vector<double> x;

  std::size_t size() const { return x.size(); }
};

/// Dimensionless mRNA (y) and protein (z) levels of the mRNA-protein model.
struct StateMP {
  std::vector<double> y;
  std::vector<double> z;

  std::size_t size() const { return z.size(); }
};

enum class Model { protein, mrna_protein };

const char* to_string(Model m);

/// Flat layouts used by trajectories and sample clouds: x for the protein
/// model, y followed by z for the mRNA-protein model.
std::vector<double> flatten(const StateP& s);
std::vector<double> flatten(const StateMP& s);
StateP unflatten_p(std::span<const double> v);
StateMP unflatten_mp(std::span<const double> v);

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  }
  return s;
}

}  // namespace grn
