#include "stardev/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "stardev/envelopes.hpp"

namespace stardev {

namespace {

double check_alpha_open(double alpha, const char* what) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    raise(errc::invalid_probability, std::string(what) + " level must lie in (0,1)");
  return alpha;
}

double check_alpha_half(double alpha, const char* what) {
  if (!(alpha > 0.0) || !(alpha < 0.5))
    raise(errc::invalid_probability, std::string(what) + " level must lie in (0,0.5)");
  return alpha;
}

double weighted_moment(const RandomVariable& x, double mu,
                       double (*transform)(double)) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double t = transform(x.value(i) - mu);
    double y = x.prob(i) * t * t - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return std::sqrt(std::max(sum, 0.0));
}

double ident(double v) { return v; }
double neg_part(double v) { return v < 0.0 ? -v : 0.0; }
double pos_part(double v) { return v > 0.0 ? v : 0.0; }

}  // namespace

std::string format_level(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

double sd(const RandomVariable& x) {
  return weighted_moment(x, expectation(x), ident);
}

double sd_minus(const RandomVariable& x) {
  return weighted_moment(x, expectation(x), neg_part);
}

double sd_plus(const RandomVariable& x) {
  return weighted_moment(x, expectation(x), pos_part);
}

double full_range(const RandomVariable& x) { return ess_sup(x) - ess_inf(x); }

double lower_range(const RandomVariable& x) {
  return expectation(x) - ess_inf(x);
}

double upper_range(const RandomVariable& x) {
  return ess_sup(x) - expectation(x);
}

double var_alpha(const RandomVariable& x, double alpha) {
  check_alpha_open(alpha, "VaR");
  return -left_quantile(x, alpha);
}

double es_alpha(const RandomVariable& x, double alpha) {
  check_alpha_open(alpha, "ES");
  Distribution d(x);
  // Deep-tail plateau: the average of a single quantile segment is the
  // segment value itself; returning it directly keeps the identity with
  // -ess_inf exact.
  if (alpha <= d.points().front().cum) return -d.points().front().value;
  return -d.lower_quantile_integral(alpha) / alpha;
}

double iqd(const RandomVariable& x, double alpha) {
  check_alpha_half(alpha, "IQD");
  return var_alpha(x, alpha) - var_alpha(x, 1.0 - alpha);
}

double ied(const RandomVariable& x, double alpha) {
  check_alpha_half(alpha, "IED");
  return es_alpha(x, alpha) + es_alpha(scale(x, -1.0), alpha);
}

BenchmarkCurve::BenchmarkCurve(
    std::vector<std::pair<double, double>> breakpoints) {
  if (breakpoints.empty())
    raise(errc::bad_argument, "benchmark curve needs at least one breakpoint");
  for (auto& [u, a] : breakpoints) {
    if (!(u >= 0.0) || !std::isfinite(u))
      raise(errc::bad_argument, "benchmark abscissae must be finite and >= 0");
    if (!(a > 0.0) || a > 1.0)
      raise(errc::bad_argument, "benchmark levels must lie in (0,1]");
  }
  if (breakpoints.front().first != 0.0)
    raise(errc::bad_argument, "benchmark curve must start at u = 0");
  // Right-continuity: on duplicate abscissae the later value wins.
  for (const auto& bp : breakpoints) {
    if (!breakpoints_.empty() && breakpoints_.back().first == bp.first) {
      breakpoints_.back().second = bp.second;
      continue;
    }
    if (!breakpoints_.empty() && bp.first < breakpoints_.back().first)
      raise(errc::bad_argument, "benchmark abscissae must be non-decreasing");
    breakpoints_.push_back(bp);
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i].second < breakpoints_[i - 1].second)
      raise(errc::bad_argument, "benchmark levels must be non-decreasing in u");
  }
}

double BenchmarkCurve::alpha_at(double u) const {
  double a = breakpoints_.front().second;
  for (const auto& [bu, ba] : breakpoints_) {
    if (bu <= u) a = ba;
    else break;
  }
  return a;
}

double lvar_d(const RandomVariable& x, const BenchmarkCurve& curve) {
  Distribution d(center(x));
  // alpha(.) is a step and the quantile map is a step, so u -> -F^{-1}(alpha(u))
  // is constant between breakpoints while -u falls; the sup sits on the
  // breakpoints themselves.
  double best = -kInf;
  for (const auto& [u, a] : curve.breakpoints()) {
    best = std::max(best, -d.left_quantile(a) - u);
  }
  return best;
}

double regular_based(const RiskFunctional& f, const RandomVariable& x) {
  return f(center(x));
}

double ld_f(const RiskFunctional& f, const RandomVariable& x) {
  RandomVariable c = center(x);
  std::vector<double> v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = neg_part(c.value(i));
  return f(RandomVariable(c.space(), std::move(v)));
}

double ud_f(const RiskFunctional& f, const RandomVariable& x) {
  RandomVariable c = center(x);
  std::vector<double> v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = pos_part(c.value(i));
  return f(RandomVariable(c.space(), std::move(v)));
}

double loss_deviation(const RiskFunctional& f, double p,
                      const RandomVariable& x) {
  if (!(p >= 1.0)) raise(errc::bad_argument, "loss-deviation norm needs p >= 1");
  // benchmark forecast: the negated risk evaluation, which is increasing
  // and additive in cash when the risk functional is monotone and cash-additive
  double forecast = -f(x);
  if (std::isinf(p)) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      worst = std::max(worst, neg_part(x.value(i) - forecast));
    return worst;
  }
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double y = x.prob(i) * std::pow(neg_part(x.value(i) - forecast), p) - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return std::pow(sum, 1.0 / p);
}

double minkowski(const AcceptanceSet& a, const RandomVariable& x,
                 double m_max) {
  if (!(m_max > 0.0)) raise(errc::bad_argument, "minkowski needs m_max > 0");
  auto member = [&](double m) { return a.contains(scale(x, 1.0 / m)); };
  if (!member(m_max)) return kInf;

  // Coarse monotonicity scan: membership must be false..false,true..true
  // as m grows, or the star-shapedness contract of A is broken.
  double lo = 0.0, hi = m_max;
  bool seen_member = false;
  for (int k = 8; k >= 0; --k) {
    double m = m_max * std::ldexp(1.0, -k);
    bool in = member(m);
    if (seen_member && !in)
      raise(errc::not_star_shaped_set,
            "membership is not monotone in the gauge parameter");
    if (in && !seen_member) {
      hi = m;
      seen_member = true;
    } else if (!in) {
      lo = m;
    }
  }
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (member(mid)) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

// -- Catalog -------------------------------------------------------------------

DeviationFunctional sd_functional() {
  return {"sd",
          {.non_negative = true, .translation_insensitive = true, .convex = true,
           .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = false, .law_invariant = true},
          [](const RandomVariable& x) { return sd(x); }};
}

DeviationFunctional sd_minus_functional() {
  return {"sd_minus",
          {.non_negative = true, .translation_insensitive = true, .convex = true,
           .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = true, .law_invariant = true},
          [](const RandomVariable& x) { return sd_minus(x); }};
}

DeviationFunctional sd_plus_functional() {
  return {"sd_plus",
          {.non_negative = true, .translation_insensitive = true, .convex = true,
           .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = false, .law_invariant = true},
          [](const RandomVariable& x) { return sd_plus(x); }};
}

DeviationFunctional full_range_functional() {
  return {"fr",
          {.non_negative = true, .translation_insensitive = true, .convex = true,
           .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = false, .law_invariant = true},
          [](const RandomVariable& x) { return full_range(x); }};
}

DeviationFunctional lower_range_functional() {
  return {"lr",
          {.non_negative = true, .translation_insensitive = true, .convex = true,
           .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = true, .law_invariant = true},
          [](const RandomVariable& x) { return lower_range(x); }};
}

DeviationFunctional upper_range_functional() {
  return {"ur",
          {.non_negative = true, .translation_insensitive = true, .convex = true,
           .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = false, .law_invariant = true},
          [](const RandomVariable& x) { return upper_range(x); }};
}

DeviationFunctional iqd_functional(double alpha) {
  check_alpha_half(alpha, "IQD");
  return {"iqd@" + format_level(alpha),
          {.non_negative = false, .translation_insensitive = true,
           .convex = false, .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = false, .law_invariant = true},
          [alpha](const RandomVariable& x) { return iqd(x, alpha); }};
}

DeviationFunctional ied_functional(double alpha) {
  check_alpha_half(alpha, "IED");
  return {"ied@" + format_level(alpha),
          {.non_negative = false, .translation_insensitive = true, .convex = true,
           .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = false, .law_invariant = true},
          [alpha](const RandomVariable& x) { return ied(x, alpha); }};
}

DeviationFunctional lvar_d_functional(BenchmarkCurve curve,
                                      const std::string& curve_id) {
  // The raw supremum can dip below zero for benchmarks whose base level
  // overshoots the centered law; the functional clamps at zero to stay a
  // map into [0, inf].
  return {"lvard@" + curve_id,
          {.non_negative = false, .translation_insensitive = true,
           .convex = false, .positively_homogeneous = false, .star_shaped = true,
           .lower_range_dominated = false, .law_invariant = true},
          [curve = std::move(curve)](const RandomVariable& x) {
            return std::max(lvar_d(x, curve), 0.0);
          }};
}

DeviationFunctional chi_constants() {
  return {"chi_const",
          {.non_negative = true, .translation_insensitive = true, .convex = true,
           .positively_homogeneous = true, .star_shaped = true,
           .lower_range_dominated = false, .law_invariant = true},
          [](const RandomVariable& x) {
            return ess_sup(x) - ess_inf(x) == 0.0 ? 0.0 : kInf;
          }};
}

DeviationFunctional composite_iqd_sq_plus_sd(double alpha) {
  DeviationFunctional d =
      add(square_functional(iqd_functional(alpha)), sd_functional());
  return {"iqd2+sd@" + format_level(alpha), d.profile(),
          [d](const RandomVariable& x) { return d(x); }};
}

RiskFunctional var_risk(double alpha) {
  check_alpha_open(alpha, "VaR");
  return {"var@" + format_level(alpha),
          {.monotone = true, .translation_invariant = true, .normalized = true,
           .star_shaped = true, .positively_homogeneous = true},
          [alpha](const RandomVariable& x) { return var_alpha(x, alpha); }};
}

RiskFunctional es_risk(double alpha) {
  check_alpha_open(alpha, "ES");
  return {"es@" + format_level(alpha),
          {.monotone = true, .translation_invariant = true, .normalized = true,
           .star_shaped = true, .positively_homogeneous = true},
          [alpha](const RandomVariable& x) { return es_alpha(x, alpha); }};
}

RiskFunctional neg_expectation_risk() {
  return {"neg_e",
          {.monotone = true, .translation_invariant = true, .normalized = true,
           .star_shaped = true, .positively_homogeneous = true},
          [](const RandomVariable& x) { return -expectation(x); }};
}

// -- Combinators -----------------------------------------------------------------

DeviationFunctional add(const DeviationFunctional& a,
                        const DeviationFunctional& b) {
  DeviationProfile p;
  const auto& pa = a.profile();
  const auto& pb = b.profile();
  p.non_negative = pa.non_negative || pb.non_negative;
  p.translation_insensitive =
      pa.translation_insensitive && pb.translation_insensitive;
  p.convex = pa.convex && pb.convex;
  p.positively_homogeneous =
      pa.positively_homogeneous && pb.positively_homogeneous;
  p.star_shaped = pa.star_shaped && pb.star_shaped;
  p.lower_range_dominated = false;
  p.law_invariant = pa.law_invariant && pb.law_invariant;
  return {a.name() + "+" + b.name(), p,
          [a, b](const RandomVariable& x) { return a(x) + b(x); }};
}

DeviationFunctional scale_functional(const DeviationFunctional& d, double t) {
  if (!(t > 0.0)) raise(errc::bad_argument, "scale factor must be > 0");
  DeviationProfile p = d.profile();
  p.lower_range_dominated = p.lower_range_dominated && t <= 1.0;
  return {format_level(t) + "*" + d.name(), p,
          [d, t](const RandomVariable& x) { return t * d(x); }};
}

DeviationFunctional square_functional(const DeviationFunctional& d) {
  DeviationProfile p = d.profile();
  p.positively_homogeneous = false;
  p.lower_range_dominated = false;
  // convexity and star-shapedness carry over; homogeneity degree doubles
  return {"(" + d.name() + ")^2", p, [d](const RandomVariable& x) {
            double v = d(x);
            return std::isinf(v) ? kInf : v * v;
          }};
}

DeviationFunctional min_functional(std::vector<DeviationFunctional> family,
                                   const std::string& name) {
  if (family.empty()) raise(errc::bad_argument, "min needs a non-empty family");
  if (family.size() == 1) return family.front();
  DeviationProfile p;
  p.non_negative = true;
  p.translation_insensitive = true;
  p.convex = false;
  p.positively_homogeneous = true;
  p.star_shaped = true;
  p.lower_range_dominated = false;
  p.law_invariant = true;
  bool all_convex_proper = true;
  for (const auto& m : family) {
    const auto& mp = m.profile();
    p.non_negative &= mp.non_negative;
    p.translation_insensitive &= mp.translation_insensitive;
    p.positively_homogeneous &= mp.positively_homogeneous;
    p.star_shaped &= mp.star_shaped;
    p.law_invariant &= mp.law_invariant;
    p.lower_range_dominated |= mp.lower_range_dominated;
    all_convex_proper &= mp.convex && mp.non_negative;
  }
  p.star_shaped |= all_convex_proper;
  std::string label = name;
  if (label.empty()) {
    label = "min(";
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (i) label += ",";
      label += family[i].name();
    }
    label += ")";
  }
  return {label, p,
          [family = std::move(family)](const RandomVariable& x) {
            double best = kInf;
            for (const auto& m : family) best = std::min(best, m(x));
            return best;
          }};
}

}  // namespace stardev
