#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stardev/axioms.hpp"
#include "stardev/measures.hpp"
#include "stardev/space.hpp"

namespace stardev {

/// Non-increasing function on a shared alpha grid in (0,1) with the last
/// value >= 0 (the finite-grid reading of g(1-) >= 0).
class GCurve {
 public:
  GCurve(std::vector<double> alpha_grid, std::vector<double> values);

  const std::vector<double>& alpha_grid() const noexcept { return alpha_grid_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> alpha_grid_;
  std::vector<double> values_;
};

/// Finite family of curves on one grid. star_closed asserts the finite
/// surrogate of star-shapedness: for each member g and lambda in
/// {0.25, 0.5, 0.75}, lambda*g is dominated pointwise by some member.
class GFamily {
 public:
  GFamily(std::vector<double> alpha_grid,
          std::vector<std::vector<double>> curve_values, bool star_closed);

  const std::vector<double>& alpha_grid() const noexcept { return alpha_grid_; }
  const std::vector<GCurve>& curves() const noexcept { return curves_; }
  bool star_closed() const noexcept { return star_closed_; }

 private:
  std::vector<double> alpha_grid_;
  std::vector<GCurve> curves_;
  bool star_closed_;
};

/// D(X) = rho(X - E[X]). A negative evaluation (beyond -1e-12) means the
/// caller's precondition rho > -E on non-constants is broken.
DeviationFunctional deviation_from_risk(const RiskFunctional& rho);

/// rho(X) = -E[X] + D(X).
RiskFunctional risk_from_deviation(const DeviationFunctional& d);

/// mu(X) + D(X) <= -ess_inf X over generated variables.
CheckResult check_limitedness(const RiskFunctional& mu,
                              const DeviationFunctional& d,
                              const AuditConfig& cfg);

/// inf over curves of sup over grid alphas of VaR^a(X-E[X]) - g(a);
/// the grid must reach below the smallest atom probability of X's space.
double dual_var_eval(const GFamily& g, const RandomVariable& x);

/// Same with ES^a in place of VaR^a.
double dual_es_eval(const GFamily& g, const RandomVariable& x);

DeviationFunctional dual_var_functional(GFamily g, const std::string& name);
DeviationFunctional dual_es_functional(GFamily g, const std::string& name);

/// The curve alpha -> ES^alpha(Y) when E[-Y] + D(Y) <= 0, none otherwise.
/// Raises InvariantViolation when the curve breaks the GCurve contract
/// (which on finite spaces happens for every non-trivial admissible Y).
std::optional<GCurve> g_from_acceptance(const RandomVariable& y,
                                        const DeviationFunctional& d,
                                        const std::vector<double>& alpha_grid);

/// Grid {k/(2*n_max)} straddling every quantile breakpoint of pooled
/// variables with at most n_max equally-likely atoms.
std::vector<double> default_alpha_grid(int n_max);

/// Everything the convex-order counterexample certifies, on one bundle:
/// X midpoint-uniform on [-2,2], Y its distribution-preserving mirror,
/// Z their half-and-half mix (two-point), D = IQD + SD at the given level.
struct CounterexampleBundle {
  int n = 0;
  double alpha = 0.0;
  RandomVariable x;
  RandomVariable y;
  RandomVariable z;
  double d_x = 0.0;
  double d_y = 0.0;
  double d_z = 0.0;
  bool convex_order_ok = false;
  bool same_dist_ok = false;
  bool inequality_ok = false;
};

CounterexampleBundle build_counterexample(int n, double alpha = 0.4);

}  // namespace stardev
