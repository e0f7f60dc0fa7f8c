#include "grn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "grn/rng.hpp"

namespace grn {

double dkw_band(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("dkw_band: need n >= 1 and 0 < alpha < 1");
  }
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

DominanceResult dominance_test(std::span<const double> samples,
                               const std::function<double(double)>& reference_cdf,
                               double alpha, Support support) {
  if (samples.size() < 100) {
    throw std::invalid_argument("dominance_test: need at least 100 samples");
  }
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());

  DominanceResult res;
  res.band = dkw_band(x.size(), alpha);
  res.margin = std::numeric_limits<double>::infinity();
  auto consider = [&](double at, double empirical) {
    const double m = empirical - reference_cdf(at);
    if (m < res.margin) {
      res.margin = m;
      res.worst_at = at;
    }
  };

  if (support == Support::continuous) {
    // The empirical CDF is flat between order statistics while the reference
    // increases, so the worst point is just left of each sample.
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k > 0 && x[k] == x[k - 1]) {
        continue;
      }
      consider(x[k], static_cast<double>(k) / n);
    }
  } else {
    const double top = std::floor(x.back());
    std::size_t k = 0;
    for (double v = 0.0; v <= top; v += 1.0) {
      while (k < x.size() && x[k] <= v) {
        ++k;
      }
      consider(v, static_cast<double>(k) / n);
    }
  }
  res.pass = res.margin >= -res.band;
  return res;
}

double ks_critical_constant(double alpha) {
  if (alpha == 0.01) {
    return 1.628;
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("ks_critical_constant: 0 < alpha < 1");
  }
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) {
    return 1.0;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) {
      break;
    }
  }
  return std::clamp(s, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double n = static_cast<double>(sa.size());
  const double m = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  KsResult res;
  res.statistic = d;
  const double scale = std::sqrt((n + m) / (n * m));
  res.critical = ks_critical_constant(alpha) * scale;
  res.p_value = kolmogorov_survival(d / scale);
  res.reject = d > res.critical;
  return res;
}

KsResult ks_one_sample(std::span<const double> samples,
                       const std::function<double(double)>& cdf, double alpha) {
  if (samples.empty()) {
    throw std::invalid_argument("ks_one_sample: empty sample");
  }
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double f = cdf(x[k]);
    d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  KsResult res;
  res.statistic = d;
  const double scale = 1.0 / std::sqrt(n);
  res.critical = ks_critical_constant(alpha) * scale;
  res.p_value = kolmogorov_survival(d / scale);
  res.reject = d > res.critical;
  return res;
}

namespace {

// Greatest convex minorant / least concave majorant cycling of Hartigan &
// Hartigan (1985), on 1-based indices into the sorted sample.
double dip_sorted(const std::vector<double>& xs) {
  const int n = static_cast<int>(xs.size());
  if (n < 2 || xs.front() == xs.back()) {
    return 0.0;
  }
  std::vector<double> x(n + 1);
  std::copy(xs.begin(), xs.end(), x.begin() + 1);
  std::vector<int> mn(n + 1), mj(n + 1), gcm(n + 2), lcm(n + 2);

  mn[1] = 1;
  for (int j = 2; j <= n; ++j) {
    mn[j] = j - 1;
    while (true) {
      const int mnj = mn[j];
      const int mnmnj = mn[mnj];
      if (mnj == 1 ||
          (x[j] - x[mnj]) * (mnj - mnmnj) < (x[mnj] - x[mnmnj]) * (j - mnj)) {
        break;
      }
      mn[j] = mnmnj;
    }
  }
  mj[n] = n;
  for (int k = n - 1; k >= 1; --k) {
    mj[k] = k + 1;
    while (true) {
      const int mjk = mj[k];
      const int mjmjk = mj[mjk];
      if (mjk == n ||
          (x[k] - x[mjk]) * (mjk - mjmjk) < (x[mjk] - x[mjmjk]) * (k - mjk)) {
        break;
      }
      mj[k] = mjmjk;
    }
  }

  int low = 1;
  int high = n;
  double dip = 1.0;
  while (true) {
    gcm[1] = high;
    int i = 1;
    for (; gcm[i] > low; ++i) {
      gcm[i + 1] = mn[gcm[i]];
    }
    const int l_gcm = i;
    int ig = l_gcm;
    int ix = ig - 1;

    lcm[1] = low;
    for (i = 1; lcm[i] < high; ++i) {
      lcm[i + 1] = mj[lcm[i]];
    }
    const int l_lcm = i;
    int ih = l_lcm;
    int iv = 2;

    long double d = 0.0L;
    if (l_gcm != 2 || l_lcm != 2) {
      do {
        long double dx;
        const int gcmix = gcm[ix];
        const int lcmiv = lcm[iv];
        if (gcmix > lcmiv) {
          const int gcmi1 = gcm[ix + 1];
          dx = (lcmiv - gcmi1 + 1) - (static_cast<long double>(x[lcmiv]) - x[gcmi1]) *
                                         (gcmix - gcmi1) / (x[gcmix] - x[gcmi1]);
          ++iv;
          if (dx >= d) {
            d = dx;
            ig = ix + 1;
            ih = iv - 1;
          }
        } else {
          const int lcmiv1 = lcm[iv - 1];
          dx = (static_cast<long double>(x[gcmix]) - x[lcmiv1]) * (lcmiv - lcmiv1) /
                   (x[lcmiv] - x[lcmiv1]) -
               (gcmix - lcmiv1 - 1);
          --ix;
          if (dx >= d) {
            d = dx;
            ig = ix + 1;
            ih = iv;
          }
        }
        if (ix < 1) ix = 1;
        if (iv > l_lcm) iv = l_lcm;
      } while (gcm[ix] != lcm[iv]);
    } else {
      d = 1.0L;
    }
    if (d < dip) {
      break;
    }

    double dip_l = 0.0;
    for (int j = ig; j < l_gcm; ++j) {
      double max_t = 1.0;
      const int jb = gcm[j + 1];
      const int je = gcm[j];
      if (je - jb > 1 && x[je] != x[jb]) {
        const double c = (je - jb) / (x[je] - x[jb]);
        for (int jj = jb; jj <= je; ++jj) {
          max_t = std::max(max_t, (jj - jb + 1) - (x[jj] - x[jb]) * c);
        }
      }
      dip_l = std::max(dip_l, max_t);
    }
    double dip_u = 0.0;
    for (int j = ih; j < l_lcm; ++j) {
      double max_t = 1.0;
      const int jb = lcm[j];
      const int je = lcm[j + 1];
      if (je - jb > 1 && x[je] != x[jb]) {
        const double c = (je - jb) / (x[je] - x[jb]);
        for (int jj = jb; jj <= je; ++jj) {
          max_t = std::max(max_t, (x[jj] - x[jb]) * c - (jj - jb - 1));
        }
      }
      dip_u = std::max(dip_u, max_t);
    }
    dip = std::max(dip, std::max(dip_u, dip_l));

    if (low == gcm[ig] && high == lcm[ih]) {
      break;
    }
    low = gcm[ig];
    high = lcm[ih];
  }
  return dip / (2.0 * n);
}

}  // namespace

double dip_statistic(std::span<const double> samples) {
  std::vector<double> x(samples.begin(), samples.end());
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("dip_statistic: non-finite sample");
    }
  }
  std::sort(x.begin(), x.end());
  return dip_sorted(x);
}

DipResult dip_test(std::span<const double> samples, double alpha, std::size_t null_draws,
                   std::uint64_t seed) {
  if (samples.size() < 4) {
    throw std::invalid_argument("dip_test: need at least 4 samples");
  }
  if (null_draws == 0) {
    throw std::invalid_argument("dip_test: need at least one null draw");
  }
  DipResult res;
  res.dip = dip_statistic(samples);
  Rng rng(seed);
  std::vector<double> u(samples.size());
  std::size_t exceed = 0;
  for (std::size_t b = 0; b < null_draws; ++b) {
    for (double& v : u) {
      v = rng.uniform();
    }
    std::sort(u.begin(), u.end());
    if (dip_sorted(u) >= res.dip) {
      ++exceed;
    }
  }
  res.p_value = static_cast<double>(exceed + 1) / static_cast<double>(null_draws + 1);
  res.reject = res.p_value < alpha;
  return res;
}

}  // namespace grn
