// Independent oracles: deliberately naive re-derivations (sorted-atom
// scans, dense grids, membership bisection) that never touch the code
// paths they validate.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "stardev/measures.hpp"
#include "stardev/space.hpp"

namespace oracle {

using stardev::RandomVariable;

inline std::vector<std::pair<double, double>> sorted_atoms(
    const RandomVariable& x) {
  std::vector<std::pair<double, double>> a;
  a.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a.emplace_back(x.value(i), x.prob(i));
  std::sort(a.begin(), a.end());
  return a;
}

// left quantile straight off the sorted, unaggregated atom list
inline double left_quantile(const RandomVariable& x, double p) {
  double cum = 0.0;
  auto atoms = sorted_atoms(x);
  for (const auto& [v, pr] : atoms) {
    cum += pr;
    if (cum >= p - 1e-12) return v;
  }
  return atoms.back().first;
}

// ES by Riemann midpoint sampling of the quantile function
inline double es_riemann(const RandomVariable& x, double alpha,
                         int samples = 200000) {
  double sum = 0.0;
  for (int k = 0; k < samples; ++k) {
    double s = alpha * (static_cast<double>(k) + 0.5) / samples;
    sum += -oracle::left_quantile(x, s);
  }
  return sum / samples;
}

inline double stop_loss(const RandomVariable& x, double k) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += x.prob(i) * std::max(x.value(i) - k, 0.0);
  return s;
}

// convex order via a dense threshold sweep, not just support points
inline bool convex_order(const RandomVariable& x, const RandomVariable& y,
                         int grid = 4001) {
  double ex = 0.0, ey = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) ex += x.prob(i) * x.value(i);
  for (std::size_t i = 0; i < y.size(); ++i) ey += y.prob(i) * y.value(i);
  if (std::abs(ex - ey) > 1e-10) return false;
  double lo = std::min(stardev::ess_inf(x), stardev::ess_inf(y)) - 1.0;
  double hi = std::max(stardev::ess_sup(x), stardev::ess_sup(y)) + 1.0;
  for (int k = 0; k < grid; ++k) {
    double t = lo + (hi - lo) * k / (grid - 1);
    if (oracle::stop_loss(x, t) > oracle::stop_loss(y, t) + 1e-10) return false;
  }
  return true;
}

// dense search over the benchmark abscissa; validates the breakpoint
// restriction of the supremum
inline double lvar_d_grid(const RandomVariable& x,
                          const stardev::BenchmarkCurve& curve,
                          double step = 1e-4) {
  RandomVariable c = stardev::center(x);
  double u_max = curve.breakpoints().back().first + 1.0;
  double best = -stardev::kInf;
  for (double u = 0.0; u <= u_max; u += step) {
    double a = curve.alpha_at(u);
    best = std::max(best, -oracle::left_quantile(c, a) - u);
  }
  return best;
}

// the lrd envelope objective minimized on a dense lambda grid
inline double lrd_envelope_grid(const RandomVariable& anchor, double d_y,
                                const RandomVariable& x, int grid = 100001) {
  RandomVariable cy = stardev::center(anchor);
  double best = stardev::kInf;
  for (int k = 0; k < grid; ++k) {
    double lam = static_cast<double>(k) / (grid - 1);
    double worst = -stardev::kInf;
    for (std::size_t i = 0; i < x.size(); ++i)
      worst = std::max(worst, lam * (cy.value(i) + d_y) - x.value(i));
    best = std::min(best, worst);
  }
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) e += x.prob(i) * x.value(i);
  return best + e;
}

// ray-envelope value straight from the set definition: bisect on m over the
// membership predicate "exists a scale t on the grid with X + m - t*(cY + dY)
// a nonnegative-free constant vector"
inline double ray_value_from_set(const RandomVariable& anchor, double d_y,
                                 const RandomVariable& x, double t_lo,
                                 double t_hi, int t_grid = 20001) {
  RandomVariable cy = stardev::center(anchor);
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) e += x.prob(i) * x.value(i);
  auto member = [&](double m) {
    for (int k = 0; k < t_grid; ++k) {
      double t = t_lo + (t_hi - t_lo) * k / (t_grid - 1);
      double mn = stardev::kInf, mx = -stardev::kInf;
      for (std::size_t i = 0; i < x.size(); ++i) {
        double w = x.value(i) + m - t * (cy.value(i) + d_y);
        mn = std::min(mn, w);
        mx = std::max(mx, w);
      }
      if (mx - mn <= 2e-4 && mn >= -2e-4) return true;
    }
    return false;
  };
  double lo = -1e3, hi = 1e3;
  if (member(lo)) return -stardev::kInf;
  if (!member(hi)) return stardev::kInf;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (member(mid)) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi) + e;
}

}  // namespace oracle
