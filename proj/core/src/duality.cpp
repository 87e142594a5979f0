#include "stardev/duality.hpp"

#include <algorithm>
#include <cmath>

namespace stardev {

GCurve::GCurve(std::vector<double> alpha_grid, std::vector<double> values)
    : alpha_grid_(std::move(alpha_grid)), values_(std::move(values)) {
  if (alpha_grid_.empty() || alpha_grid_.size() != values_.size())
    raise(errc::bad_argument, "curve needs one value per grid point");
  for (std::size_t i = 0; i < alpha_grid_.size(); ++i) {
    double a = alpha_grid_[i];
    if (!(a > 0.0) || !(a < 1.0))
      raise(errc::invalid_probability, "alpha grid must lie in (0,1)");
    if (i > 0 && !(a > alpha_grid_[i - 1]))
      raise(errc::bad_argument, "alpha grid must be strictly increasing");
    if (i > 0 && values_[i] > values_[i - 1] + tol::kAlgebra)
      raise(errc::invariant_violation, "curve values must be non-increasing");
  }
  if (values_.back() < -tol::kAlgebra)
    raise(errc::invariant_violation, "curve tail must satisfy g(1-) >= 0");
}

GFamily::GFamily(std::vector<double> alpha_grid,
                 std::vector<std::vector<double>> curve_values,
                 bool star_closed)
    : alpha_grid_(alpha_grid), star_closed_(star_closed) {
  if (curve_values.empty()) raise(errc::bad_argument, "family needs curves");
  curves_.reserve(curve_values.size());
  for (auto& v : curve_values) curves_.emplace_back(alpha_grid, std::move(v));
  if (star_closed_) {
    for (const auto& g : curves_) {
      for (double lam : {0.25, 0.5, 0.75}) {
        bool dominated = false;
        for (const auto& h : curves_) {
          bool all = true;
          for (std::size_t k = 0; k < alpha_grid_.size(); ++k)
            all &= h.values()[k] >= lam * g.values()[k] - tol::kAlgebra;
          if (all) {
            dominated = true;
            break;
          }
        }
        if (!dominated)
          raise(errc::invariant_violation,
                "family declared star-closed but a scaled curve escapes it");
      }
    }
  }
}

DeviationFunctional deviation_from_risk(const RiskFunctional& rho) {
  DeviationProfile p;
  p.non_negative = true;  // from the caller's rho > -E precondition
  p.translation_insensitive = true;
  p.convex = false;
  p.positively_homogeneous = rho.profile().positively_homogeneous;
  p.star_shaped = rho.profile().star_shaped;
  p.lower_range_dominated = false;
  p.law_invariant = true;
  return {"dev[" + rho.name() + "]", p, [rho](const RandomVariable& x) {
            double spread = ess_sup(x) - ess_inf(x);
            if (spread == 0.0) return 0.0;
            double v = rho(center(x));
            if (v < -tol::kAlgebra)
              raise(errc::contract_violation,
                    "rho(X - E[X]) went negative; rho > -E[.] fails");
            // a vanishing value on a genuinely non-constant input means the
            // precondition holds only with equality; rounding-level spreads
            // are treated as constants instead
            if (v <= tol::kAlgebra && spread > 1e-6)
              raise(errc::contract_violation,
                    "rho(X - E[X]) is not strictly positive; rho > -E[.] fails");
            return std::max(v, 0.0);
          }};
}

RiskFunctional risk_from_deviation(const DeviationFunctional& d) {
  RiskProfile p;
  p.monotone = d.profile().lower_range_dominated;
  p.translation_invariant = d.profile().translation_insensitive;
  p.normalized = d.profile().non_negative;
  p.star_shaped = d.profile().star_shaped;
  p.positively_homogeneous = d.profile().positively_homogeneous;
  return {"risk[" + d.name() + "]", p, [d](const RandomVariable& x) {
            return -expectation(x) + d(x);
          }};
}

CheckResult check_limitedness(const RiskFunctional& mu,
                              const DeviationFunctional& d,
                              const AuditConfig& cfg) {
  CheckResult r{"limitedness", CheckStatus::pass, 0, {}};
  auto vars = sample_variables(cfg, "limitedness", cfg.n_variables);
  SpacePtr fair = ProbSpace::uniform(2);
  vars.emplace_back(fair, std::vector<double>{0.0, 2.0});
  for (const auto& x : vars) {
    double lhs = mu(x) + d(x);
    double rhs = -ess_inf(x);
    ++r.cases;
    if (!ext_leq(lhs, rhs, cfg.tolerance)) {
      Witness w;
      w.description = "mu(X)+D(X) exceeds -ess_inf X";
      w.probs = x.space()->probs();
      w.values = x.values();
      w.lhs = lhs;
      w.rhs = rhs;
      r.status = CheckStatus::fail;
      if (r.witnesses.size() < 3) r.witnesses.push_back(std::move(w));
    }
  }
  return r;
}

namespace {

double dual_eval(const GFamily& g, const RandomVariable& x, bool use_es) {
  double p_min = x.space()->min_prob();
  double grid_min = g.alpha_grid().front();
  if (grid_min > p_min + 1e-15)
    raise(errc::grid_too_coarse,
          "alpha grid starts at " + std::to_string(grid_min) +
              " above the smallest atom probability " + std::to_string(p_min));
  RandomVariable cx = center(x);
  Distribution dist(cx);
  double best = kInf;
  for (const auto& curve : g.curves()) {
    double sup = -kInf;
    for (std::size_t k = 0; k < g.alpha_grid().size(); ++k) {
      double a = g.alpha_grid()[k];
      double base;
      if (use_es) {
        base = a <= dist.points().front().cum
                   ? -dist.points().front().value
                   : -dist.lower_quantile_integral(a) / a;
      } else {
        base = -dist.left_quantile(a);
      }
      sup = std::max(sup, base - curve.values()[k]);
    }
    best = std::min(best, sup);
  }
  return best;
}

}  // namespace

double dual_var_eval(const GFamily& g, const RandomVariable& x) {
  return dual_eval(g, x, false);
}

double dual_es_eval(const GFamily& g, const RandomVariable& x) {
  return dual_eval(g, x, true);
}

DeviationFunctional dual_var_functional(GFamily g, const std::string& name) {
  DeviationProfile p;
  p.non_negative = false;
  p.translation_insensitive = true;
  p.convex = false;
  p.positively_homogeneous = false;
  p.star_shaped = g.star_closed();
  p.lower_range_dominated = true;  // VaR is capped by the range of the law
  p.law_invariant = true;
  return {"dual_var[" + name + "]", p, [g = std::move(g)](const RandomVariable& x) {
            return dual_var_eval(g, x);
          }};
}

DeviationFunctional dual_es_functional(GFamily g, const std::string& name) {
  DeviationProfile p;
  p.non_negative = false;
  p.translation_insensitive = true;
  p.convex = false;
  p.positively_homogeneous = false;
  p.star_shaped = g.star_closed();
  p.lower_range_dominated = true;
  p.law_invariant = true;
  return {"dual_es[" + name + "]", p, [g = std::move(g)](const RandomVariable& x) {
            return dual_es_eval(g, x);
          }};
}

std::optional<GCurve> g_from_acceptance(const RandomVariable& y,
                                        const DeviationFunctional& d,
                                        const std::vector<double>& alpha_grid) {
  if (-expectation(y) + d(y) > tol::kAlgebra) return std::nullopt;
  std::vector<double> values(alpha_grid.size());
  for (std::size_t k = 0; k < alpha_grid.size(); ++k)
    values[k] = es_alpha(y, alpha_grid[k]);
  return GCurve(alpha_grid, std::move(values));  // validates the contract
}

std::vector<double> default_alpha_grid(int n_max) {
  if (n_max < 1) raise(errc::bad_argument, "grid needs n_max >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(2 * n_max - 1));
  for (int k = 1; k <= 2 * n_max - 1; ++k)
    grid.push_back(static_cast<double>(k) / (2.0 * n_max));
  return grid;
}

CounterexampleBundle build_counterexample(int n, double alpha) {
  if (n < 10 || n % 2 != 0)
    raise(errc::bad_argument, "counterexample needs an even atom count >= 10");
  MirrorTriple mt = mirror_triple(n);
  DeviationFunctional d = add(iqd_functional(alpha), sd_functional());
  CounterexampleBundle b{n,
                         alpha,
                         mt.x,
                         mt.y,
                         mt.z,
                         d(mt.x),
                         d(mt.y),
                         d(mt.z),
                         false,
                         false,
                         false};
  b.convex_order_ok = convex_order_leq(b.z, b.x);
  b.same_dist_ok = same_distribution(b.x, b.y);
  b.inequality_ok = b.d_z > b.d_x;
  return b;
}

}  // namespace stardev
