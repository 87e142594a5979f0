#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "stardev/space.hpp"

namespace stardev {

class AcceptanceSet;  // envelopes.hpp

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Declared axiom flags of a deviation functional. Declarations are
/// caller claims; the axioms module is the single source of verification.
struct DeviationProfile {
  bool non_negative = false;
  bool translation_insensitive = false;
  bool convex = false;
  bool positively_homogeneous = false;
  bool star_shaped = false;
  bool lower_range_dominated = false;
  bool law_invariant = false;
};

struct RiskProfile {
  bool monotone = false;
  bool translation_invariant = false;
  bool normalized = false;
  bool star_shaped = false;
  bool positively_homogeneous = false;
};

/// Named evaluable map RandomVariable -> [0, +inf], with a declared profile.
class DeviationFunctional {
 public:
  using Eval = std::function<double(const RandomVariable&)>;

  DeviationFunctional() = default;
  DeviationFunctional(std::string name, DeviationProfile profile, Eval eval)
      : name_(std::move(name)), profile_(profile), eval_(std::move(eval)) {}

  double operator()(const RandomVariable& x) const { return eval_(x); }
  const std::string& name() const noexcept { return name_; }
  const DeviationProfile& profile() const noexcept { return profile_; }

 private:
  std::string name_;
  DeviationProfile profile_;
  Eval eval_;
};

/// Named evaluable map RandomVariable -> R with a declared risk profile.
class RiskFunctional {
 public:
  using Eval = std::function<double(const RandomVariable&)>;

  RiskFunctional() = default;
  RiskFunctional(std::string name, RiskProfile profile, Eval eval)
      : name_(std::move(name)), profile_(profile), eval_(std::move(eval)) {}

  double operator()(const RandomVariable& x) const { return eval_(x); }
  const std::string& name() const noexcept { return name_; }
  const RiskProfile& profile() const noexcept { return profile_; }

 private:
  std::string name_;
  RiskProfile profile_;
  Eval eval_;
};

/// Right-continuous non-decreasing step benchmark u -> alpha(u) in (0,1],
/// given by breakpoints (u_j, alpha_j) with u_0 = 0; the last value holds
/// for all u beyond the last breakpoint.
class BenchmarkCurve {
 public:
  explicit BenchmarkCurve(std::vector<std::pair<double, double>> breakpoints);

  double alpha_at(double u) const;
  const std::vector<std::pair<double, double>>& breakpoints() const noexcept {
    return breakpoints_;
  }

 private:
  std::vector<std::pair<double, double>> breakpoints_;
};

// -- Scalar measures ---------------------------------------------------------

double sd(const RandomVariable& x);
double sd_minus(const RandomVariable& x);
double sd_plus(const RandomVariable& x);

double full_range(const RandomVariable& x);
double lower_range(const RandomVariable& x);
double upper_range(const RandomVariable& x);

/// VaR^a(X) = -F_X^{-1}(a), a in (0,1).
double var_alpha(const RandomVariable& x, double alpha);

/// ES^a(X) = (1/a) * integral of VaR^s(X) over (0, a]; exact closed form
/// over the cumulative breakpoints of the law.
double es_alpha(const RandomVariable& x, double alpha);

/// IQD^a(X) = VaR^a(X) - VaR^{1-a}(X), a in (0, 0.5).
double iqd(const RandomVariable& x, double alpha);

/// Inter-ES deviation: two-sided tail average ES^a(X) + ES^a(-X),
/// a in (0, 0.5). Dominates IQD^a and is convex and law-invariant.
double ied(const RandomVariable& x, double alpha);

/// sup_{u>=0} { -F^{-1}_{X-E[X]}(alpha(u)) - u }; the supremum is attained
/// on the curve's breakpoints because both pieces are steps between them.
double lvar_d(const RandomVariable& x, const BenchmarkCurve& curve);

double regular_based(const RiskFunctional& f, const RandomVariable& x);
double ld_f(const RiskFunctional& f, const RandomVariable& x);
double ud_f(const RiskFunctional& f, const RandomVariable& x);

/// ||(X - f(X))^-||_p under the probability measure, p in [1, inf].
double loss_deviation(const RiskFunctional& f, double p,
                      const RandomVariable& x);

/// Minkowski gauge inf{ m > 0 : X/m in A } by bisection over the monotone
/// membership predicate; +inf when X/m_max stays outside A.
double minkowski(const AcceptanceSet& a, const RandomVariable& x,
                 double m_max = 1e6);

// -- Functional catalog -------------------------------------------------------

DeviationFunctional sd_functional();
DeviationFunctional sd_minus_functional();
DeviationFunctional sd_plus_functional();
DeviationFunctional full_range_functional();
DeviationFunctional lower_range_functional();
DeviationFunctional upper_range_functional();
DeviationFunctional iqd_functional(double alpha);
DeviationFunctional ied_functional(double alpha);
DeviationFunctional lvar_d_functional(BenchmarkCurve curve,
                                      const std::string& curve_id);
DeviationFunctional chi_constants();
DeviationFunctional composite_iqd_sq_plus_sd(double alpha);

RiskFunctional var_risk(double alpha);
RiskFunctional es_risk(double alpha);
RiskFunctional neg_expectation_risk();

// -- Combinators ---------------------------------------------------------------

DeviationFunctional add(const DeviationFunctional& a,
                        const DeviationFunctional& b);
DeviationFunctional scale_functional(const DeviationFunctional& d, double t);
DeviationFunctional square_functional(const DeviationFunctional& d);
DeviationFunctional min_functional(std::vector<DeviationFunctional> family,
                                   const std::string& name = "");

std::string format_level(double alpha);

}  // namespace stardev
