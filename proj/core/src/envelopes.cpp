#include "stardev/envelopes.hpp"

#include <algorithm>
#include <cmath>

namespace stardev {

namespace {

constexpr double kRayTol = 1e-10;  // relative residual for ray membership

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

AcceptanceSet acceptance_of(const DeviationFunctional& d) {
  SetFlags flags;
  flags.star_shaped = d.profile().star_shaped;
  flags.convex = d.profile().convex;
  flags.cone = d.profile().positively_homogeneous;
  return AcceptanceSet(
      "accept(" + d.name() + ")", flags,
      [d](const RandomVariable& x) { return d(x) <= expectation(x) + tol::kAlgebra; });
}

double deviation_of(const AcceptanceSet& a, const RandomVariable& x,
                    double m_lo, double m_hi) {
  if (!(m_lo < m_hi)) raise(errc::bad_argument, "deviation_of needs m_lo < m_hi");
  auto member = [&](double m) { return a.contains(shift(x, m)); };
  if (member(m_lo))
    raise(errc::bracket_too_small,
          "X + m_lo is already accepted; widen the bracket downward");

  // Membership must flip false -> true at most once along the bracket.
  bool seen = false;
  bool top = false;
  for (int k = 0; k <= 8; ++k) {
    double m = m_lo + (m_hi - m_lo) * static_cast<double>(k) / 8.0;
    bool in = member(m);
    if (seen && !in)
      raise(errc::not_upward_closed,
            "membership along m -> X+m is not upward closed");
    seen = seen || in;
    if (k == 8) top = in;
  }
  if (!top) return kInf;

  double lo = m_lo, hi = m_hi;
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (member(mid)) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi) + expectation(x);
}

CheckResult is_star_shaped_set(const AcceptanceSet& a, const AuditConfig& cfg,
                               std::span<const RandomVariable> members) {
  CheckResult r{"star_shaped_set", CheckStatus::pass, 0, {}};
  std::vector<RandomVariable> pool;
  if (members.empty()) {
    for (const auto& x : sample_variables(cfg, "star_shaped_set", cfg.n_variables))
      if (a.contains(x)) pool.push_back(x);
  } else {
    for (const auto& x : members)
      if (a.contains(x)) pool.push_back(x);
  }
  if (pool.empty()) {
    r.status = CheckStatus::not_applicable;
    return r;
  }
  for (const auto& x : pool) {
    for (double lam : cfg.lambda_grid) {
      if (lam < 0.0 || lam > 1.0) continue;
      ++r.cases;
      if (!a.contains(scale(x, lam))) {
        Witness w;
        w.description = "member leaves the set under scaling";
        w.probs = x.space()->probs();
        w.values = x.values();
        w.param = lam;
        w.lhs = 1.0;  // membership expected
        w.rhs = 0.0;  // membership observed
        r.status = CheckStatus::fail;
        if (r.witnesses.size() < 3) r.witnesses.push_back(std::move(w));
      }
    }
  }
  return r;
}

RayEnvelope::RayEnvelope(RandomVariable anchor, double anchor_value,
                         RayVariant variant)
    : anchor_(std::move(anchor)),
      centered_anchor_(center(anchor_)),
      anchor_value_(anchor_value),
      variant_(variant),
      anchor_constant_(max_abs(centered_anchor_.values()) == 0.0) {
  if (!(anchor_value_ >= 0.0) || std::isinf(anchor_value_) ||
      std::isnan(anchor_value_))
    raise(errc::contract_violation,
          "ray envelopes need a finite nonnegative anchor value");
}

const char* ray_variant_name(RayVariant v) {
  switch (v) {
    case RayVariant::star: return "star";
    case RayVariant::cone: return "cone";
    case RayVariant::halfline: return "halfline";
    case RayVariant::lrd: return "lrd";
  }
  return "unknown";
}

double RayEnvelope::eval(const RandomVariable& x) const {
  if (!x.same_space_as(anchor_))
    raise(errc::space_mismatch, "envelope and argument live on different spaces");

  RandomVariable cx = center(x);
  double cx_norm = max_abs(cx.values());

  if (variant_ == RayVariant::lrd) {
    // min over lambda in [0,1] of max_i(lambda*z_i - x_i), a maximum of
    // affine functions of lambda; the exact minimum sits on an endpoint or
    // a pairwise crossing of atom lines.
    const auto& zv = centered_anchor_.values();
    std::vector<double> z(zv.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = zv[i] + anchor_value_;
    auto objective = [&](double lam) {
      double worst = -kInf;
      for (std::size_t i = 0; i < z.size(); ++i)
        worst = std::max(worst, lam * z[i] - x.value(i));
      return worst;
    };
    double best = std::min(objective(0.0), objective(1.0));
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (std::size_t j = i + 1; j < z.size(); ++j) {
        double dz = z[i] - z[j];
        if (dz == 0.0) continue;
        double lam = (x.value(i) - x.value(j)) / dz;
        if (lam > 0.0 && lam < 1.0) best = std::min(best, objective(lam));
      }
    }
    return best + expectation(x);
  }

  if (anchor_constant_) {
    // trivial envelope: zero on constants, +inf otherwise
    return cx_norm == 0.0 ? 0.0 : kInf;
  }
  if (variant_ == RayVariant::halfline) {
    double residual = 0.0;
    for (std::size_t i = 0; i < cx.size(); ++i)
      residual = std::max(residual,
                          std::abs(cx.value(i) - centered_anchor_.value(i)));
    double scale_ref = std::max({cx_norm, max_abs(centered_anchor_.values()), 1e-30});
    return residual <= kRayTol * scale_ref ? anchor_value_ : kInf;
  }

  if (cx_norm == 0.0) return 0.0;  // lambda = 0 end of the ray

  // least-squares ray coefficient under the probability inner product
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    double p = x.prob(i);
    num += p * cx.value(i) * centered_anchor_.value(i);
    den += p * centered_anchor_.value(i) * centered_anchor_.value(i);
  }
  double lambda = num / den;
  if (variant_ == RayVariant::star) lambda = std::clamp(lambda, 0.0, 1.0);
  else lambda = std::max(lambda, 0.0);

  double residual = 0.0;
  for (std::size_t i = 0; i < cx.size(); ++i)
    residual = std::max(residual, std::abs(cx.value(i) -
                                           lambda * centered_anchor_.value(i)));
  double scale_ref =
      std::max({cx_norm, lambda * max_abs(centered_anchor_.values()), 1e-30});
  if (residual > kRayTol * scale_ref) return kInf;
  return lambda * anchor_value_;
}

DeviationFunctional RayEnvelope::as_functional() const {
  DeviationProfile p;
  p.non_negative = false;
  p.translation_insensitive = true;
  p.convex = true;  // every variant's spanning set is convex
  p.positively_homogeneous = variant_ == RayVariant::cone;
  p.star_shaped = variant_ != RayVariant::halfline;
  p.lower_range_dominated = variant_ == RayVariant::lrd;
  p.law_invariant = false;
  RayEnvelope copy = *this;
  return {std::string("ray_") + ray_variant_name(variant_), p,
          [copy](const RandomVariable& x) { return copy.eval(x); }};
}

RayEnvelope ray_envelope(const RandomVariable& y, double d_y, RayVariant v) {
  if (v == RayVariant::lrd) return ray_envelope_lrd(y, d_y);
  return RayEnvelope(y, d_y, v);
}

RayEnvelope ray_envelope_lrd(const RandomVariable& y, double d_y) {
  return RayEnvelope(y, d_y, RayVariant::lrd);
}

std::pair<double, std::size_t> min_family(
    std::span<const DeviationFunctional> family, const RandomVariable& x) {
  if (family.empty()) raise(errc::bad_argument, "min over an empty family");
  double best = family[0](x);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < family.size(); ++i) {
    double v = family[i](x);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  return {best, arg};
}

std::pair<double, std::size_t> min_family(std::span<const RayEnvelope> family,
                                          const RandomVariable& x) {
  if (family.empty()) raise(errc::bad_argument, "min over an empty family");
  double best = family[0].eval(x);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < family.size(); ++i) {
    double v = family[i].eval(x);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  return {best, arg};
}

CheckResult verify_domination(const DeviationFunctional& d,
                              const RayEnvelope& env, const AuditConfig& cfg) {
  CheckResult r{"envelope_domination", CheckStatus::pass, 0, {}};
  RandomVariable cy = center(env.anchor());
  for (double lam : cfg.lambda_grid) {
    if (env.variant() == RayVariant::star && lam > 1.0) continue;
    std::vector<double> shifts = cfg.shift_grid;
    shifts.push_back(0.0);
    for (double c : shifts) {
      RandomVariable x = shift(scale(cy, lam), c);
      double lhs = env.eval(x);
      double rhs = d(x);
      ++r.cases;
      if (!ext_leq(rhs, lhs, cfg.tolerance)) {
        Witness w;
        w.description = "envelope value below D on its own ray";
        w.probs = x.space()->probs();
        w.values = x.values();
        w.param = lam;
        w.lhs = rhs;
        w.rhs = lhs;
        r.status = CheckStatus::fail;
        if (r.witnesses.size() < 3) r.witnesses.push_back(std::move(w));
      }
    }
  }
  return r;
}

CheckResult acceptance_union_identity(const DeviationFunctional& d,
                                      std::span<const DeviationFunctional> family,
                                      const AuditConfig& cfg) {
  CheckResult r{"acceptance_union_identity", CheckStatus::pass, 0, {}};
  auto pool = sample_variables(cfg, "acceptance_union", cfg.n_variables);
  SpacePtr sp = ProbSpace::uniform(2);
  pool.push_back(constant_on(sp, 0.0));
  pool.push_back(constant_on(sp, 1.0));
  pool.push_back(constant_on(sp, 2.0));
  AcceptanceSet a_d = acceptance_of(d);
  std::vector<AcceptanceSet> parts;
  parts.reserve(family.size());
  for (const auto& m : family) parts.push_back(acceptance_of(m));
  for (const auto& x : pool) {
    double dv = d(x);
    if (std::isinf(dv)) continue;  // finite-value pool only
    bool in_a = a_d.contains(x);
    bool in_union = false;
    for (const auto& p : parts)
      if (p.contains(x)) {
        in_union = true;
        break;
      }
    bool risk_accepts = -expectation(x) + dv <= tol::kAlgebra;
    ++r.cases;
    if (in_a != in_union || in_a != risk_accepts) {
      Witness w;
      w.description = "membership mismatch across A_D, the union, and A_rho";
      w.probs = x.space()->probs();
      w.values = x.values();
      w.lhs = in_a ? 1.0 : 0.0;
      w.rhs = in_union ? 1.0 : 0.0;
      w.param = risk_accepts ? 1.0 : 0.0;
      r.status = CheckStatus::fail;
      if (r.witnesses.size() < 3) r.witnesses.push_back(std::move(w));
    }
  }
  return r;
}

}  // namespace stardev
