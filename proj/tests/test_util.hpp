#pragma once

#include <cmath>
#include <vector>

#include "grn/model.hpp"

namespace testutil {

inline grn::NetworkSpec single_gene(double k0 = 0.0, double k1 = 1.0, double d0 = 2.0,
                                    double d1 = 1.0) {
  grn::GeneParams g;
  g.d0 = d0;
  g.d1 = d1;
  g.k0 = k0;
  g.k1 = k1;
  return grn::make_network({g}, grn::RegulationSpec{1, {0.0}, {0.0}});
}

/// Mutual repression of strength a with offsets beta on both genes.
inline grn::NetworkSpec toggle(double a, double beta, double k0, double k1,
                               double d0 = 2.0, double d1 = 1.0) {
  grn::GeneParams g;
  g.d0 = d0;
  g.d1 = d1;
  g.k0 = k0;
  g.k1 = k1;
  return grn::make_network({g, g}, grn::RegulationSpec{2, {0.0, -a, -a, 0.0}, {beta, beta}});
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double standard_error(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace testutil
