#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stardev/axioms.hpp"
#include "stardev/measures.hpp"
#include "stardev/space.hpp"

namespace stardev {

struct SetFlags {
  bool star_shaped = false;
  bool convex = false;
  bool cone = false;
  bool monotone = false;
};

/// Membership predicate over random variables plus declared structure.
class AcceptanceSet {
 public:
  using Predicate = std::function<bool(const RandomVariable&)>;

  AcceptanceSet(std::string description, SetFlags flags, Predicate contains)
      : description_(std::move(description)), flags_(normalize(flags)),
        contains_(std::move(contains)) {}

  bool contains(const RandomVariable& x) const { return contains_(x); }
  const std::string& description() const noexcept { return description_; }
  const SetFlags& flags() const noexcept { return flags_; }

 private:
  static SetFlags normalize(SetFlags f) {
    if (f.cone) f.star_shaped = true;  // cones through 0 are star-shaped
    return f;
  }
  std::string description_;
  SetFlags flags_;
  Predicate contains_;
};

/// A_D = { X : D(X) <= E[X] }.
AcceptanceSet acceptance_of(const DeviationFunctional& d);

/// D_A(X) = inf{ m : X + m in A } + E[X], by bisection over the
/// upward-closed membership predicate m -> (X + m in A).
double deviation_of(const AcceptanceSet& a, const RandomVariable& x,
                    double m_lo = -1e6, double m_hi = 1e6);

/// Checks lambda-scaling stability on sampled members. Uses the supplied
/// member pool when non-empty, otherwise filters generated variables.
CheckResult is_star_shaped_set(const AcceptanceSet& a, const AuditConfig& cfg,
                               std::span<const RandomVariable> members = {});

enum class RayVariant { star, cone, halfline, lrd };

const char* ray_variant_name(RayVariant v);

/// Single-anchor envelope: the deviation induced by the acceptance set
/// spanned by one position Y with value dY = D(Y), evaluated in closed form.
///   star:     lambda*dY on the segment ray center(X) = lambda*center(Y),
///             lambda in [0,1]; +inf off the ray
///   cone:     t*dY on the full ray, t >= 0
///   halfline: dY exactly when center(X) = center(Y)
///   lrd:      min over lambda in [0,1] of ess_sup(lambda*Z - X) + E[X]
///             with Z = center(Y) + dY; finite everywhere
class RayEnvelope {
 public:
  RayEnvelope(RandomVariable anchor, double anchor_value, RayVariant variant);

  double eval(const RandomVariable& x) const;
  const RandomVariable& anchor() const noexcept { return anchor_; }
  double anchor_value() const noexcept { return anchor_value_; }
  RayVariant variant() const noexcept { return variant_; }

  DeviationFunctional as_functional() const;

 private:
  RandomVariable anchor_;
  RandomVariable centered_anchor_;
  double anchor_value_;
  RayVariant variant_;
  bool anchor_constant_;
};

RayEnvelope ray_envelope(const RandomVariable& y, double d_y, RayVariant v);
RayEnvelope ray_envelope_lrd(const RandomVariable& y, double d_y);

/// Pointwise minimum over a family with the attaining index
/// (lowest index wins ties).
std::pair<double, std::size_t> min_family(
    std::span<const DeviationFunctional> family, const RandomVariable& x);
std::pair<double, std::size_t> min_family(std::span<const RayEnvelope> family,
                                          const RandomVariable& x);

/// env >= D on the envelope's finite-value locus (ray points over the
/// config's lambda and shift grids); off-locus the envelope is +inf.
CheckResult verify_domination(const DeviationFunctional& d,
                              const RayEnvelope& env, const AuditConfig& cfg);

/// On pooled X: X in A_D  iff  X in A_{D_i} for some i  iff  -E[X]+D(X) <= 0.
CheckResult acceptance_union_identity(const DeviationFunctional& d,
                                      std::span<const DeviationFunctional> family,
                                      const AuditConfig& cfg);

}  // namespace stardev
