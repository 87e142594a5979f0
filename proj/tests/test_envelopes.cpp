#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "stardev/axioms.hpp"
#include "stardev/envelopes.hpp"
#include "stardev/measures.hpp"

using namespace stardev;

namespace {

AuditConfig small_config(std::uint64_t seed = 42) {
  AuditConfig cfg;
  cfg.seed = seed;
  cfg.n_variables = 60;
  cfg.n_pairs = 40;
  return cfg;
}

RandomVariable fair(std::vector<double> values) {
  auto sp = ProbSpace::uniform(values.size());
  return RandomVariable(sp, std::move(values));
}

}  // namespace

TEST_CASE("acceptance sets membership") {
  AcceptanceSet a = acceptance_of(sd_functional());
  CHECK(a.contains(fair({0.0, 4.0})));        // sd = 2 = E
  CHECK_FALSE(a.contains(fair({-1.0, 1.0}))); // sd = 1 > E = 0
  CHECK(a.contains(fair({1.0, 1.0})));        // 0 <= 1
  CHECK(a.flags().star_shaped);
  CHECK(a.flags().cone);  // sd is positively homogeneous
}

TEST_CASE("cones are flagged star-shaped") {
  AcceptanceSet a{"cone", {.cone = true}, [](const RandomVariable&) { return true; }};
  CHECK(a.flags().star_shaped);
}

TEST_CASE("deviation_of inverts acceptance_of") {
  AuditConfig cfg = small_config();
  std::vector<DeviationFunctional> ds = {
      sd_functional(), add(composite_iqd_sq_plus_sd(0.4), sd_functional())};
  for (const auto& d : ds) {
    AcceptanceSet a = acceptance_of(d);
    auto vars = sample_variables(cfg, "env_roundtrip", 25);
    for (const auto& x : vars)
      CHECK(deviation_of(a, x) == doctest::Approx(d(x)).epsilon(1e-8));
    CHECK(deviation_of(a, fair({3.0, 3.0})) == doctest::Approx(0.0).epsilon(1e-8));
  }
}

TEST_CASE("round trip at the mirror point of the squared composite") {
  DeviationFunctional d = composite_iqd_sq_plus_sd(0.4);
  AcceptanceSet a = acceptance_of(d);
  MirrorTriple mt = mirror_triple(200);
  CHECK(deviation_of(a, mt.x) == doctest::Approx(d(mt.x)).epsilon(1e-8));
  CHECK(deviation_of(a, mt.z) == doctest::Approx(d(mt.z)).epsilon(1e-8));
}

TEST_CASE("deviation_of error paths") {
  AcceptanceSet a = acceptance_of(sd_functional());
  RandomVariable member = fair({0.0, 4.0});
  CHECK_THROWS_WITH_AS(deviation_of(a, member, 0.0, 10.0),
                       doctest::Contains("BracketTooSmall"), error);
  CHECK_THROWS_AS(deviation_of(a, member, 5.0, 1.0), error);

  AcceptanceSet band{"mean band", {},
                     [](const RandomVariable& x) {
                       double e = expectation(x);
                       return e >= 0.0 && e <= 1.0;
                     }};
  RandomVariable x = fair({-6.0, -4.0});
  CHECK_THROWS_WITH_AS(deviation_of(band, x, -10.0, 20.0),
                       doctest::Contains("NotUpwardClosed"), error);

  // nothing accepted within the bracket: the infimum is +inf
  AcceptanceSet never{"empty", {}, [](const RandomVariable&) { return false; }};
  CHECK(std::isinf(deviation_of(never, x, -1.0, 1.0)));
}

TEST_CASE("is_star_shaped_set") {
  AuditConfig cfg = small_config();
  DeviationFunctional d = sd_functional();
  AcceptanceSet a = acceptance_of(d);
  // members built by shifting generated variables into acceptance
  std::vector<RandomVariable> members;
  for (const auto& x : sample_variables(cfg, "env_members", 25))
    members.push_back(shift(x, d(x) - expectation(x) + 0.5));
  CheckResult r = is_star_shaped_set(a, cfg, members);
  CHECK(r.status == CheckStatus::pass);
  CHECK(r.cases > 0);

  AcceptanceSet band{"fr band", {},
                     [](const RandomVariable& x) {
                       double f = full_range(x);
                       return f >= 1.0 && f <= 2.0;
                     }};
  std::vector<RandomVariable> band_members = {fair({0.0, 1.5})};
  CheckResult rb = is_star_shaped_set(band, cfg, band_members);
  CHECK(rb.status == CheckStatus::fail);

  AcceptanceSet everything{"all", {.star_shaped = true},
                           [](const RandomVariable&) { return true; }};
  CHECK(is_star_shaped_set(everything, cfg, members).status == CheckStatus::pass);

  // empty member pool: nothing to decide
  AcceptanceSet nothing{"none", {}, [](const RandomVariable&) { return false; }};
  CHECK(is_star_shaped_set(nothing, cfg, members).status ==
        CheckStatus::not_applicable);
}

TEST_CASE("star ray envelope") {
  DeviationFunctional d = add(composite_iqd_sq_plus_sd(0.3), sd_functional());
  RandomVariable y = fair({-2.0, 1.0, 4.0, 1.0});
  double dy = d(y);
  RayEnvelope env = ray_envelope(y, dy, RayVariant::star);
  CHECK(env.eval(y) == dy);  // attainment, exactly
  CHECK(env.eval(fair({5.0, 5.0, 5.0, 5.0})) == 0.0);
  CHECK(env.eval(shift(scale(y, 0.5), 3.0)) == doctest::Approx(0.5 * dy));
  CHECK(std::isinf(env.eval(fair({1.0, -1.0, 2.0, 7.0}))));
  CHECK(std::isinf(env.eval(scale(y, 2.0))));  // beyond the segment

  // set-definition oracle at a mid-ray point
  RandomVariable probe = shift(scale(y, 0.5), 3.0);
  double via_set = oracle::ray_value_from_set(y, dy, probe, 0.0, 1.0);
  CHECK(env.eval(probe) == doctest::Approx(via_set).epsilon(1e-3));
}

TEST_CASE("cone ray envelope") {
  DeviationFunctional d = iqd_functional(0.4);
  RandomVariable y = fair({0.0, 0.0, 3.0, 6.0});
  double dy = d(y);
  RayEnvelope env = ray_envelope(y, dy, RayVariant::cone);
  CHECK(env.eval(shift(scale(y, 3.0), 5.0)) == doctest::Approx(3.0 * dy));
  CHECK(env.eval(y) == dy);
  CHECK(env.eval(fair({1.0, 1.0, 1.0, 1.0})) == 0.0);
  RandomVariable probe = shift(scale(y, 3.0), 5.0);
  double via_set = oracle::ray_value_from_set(y, dy, probe, 0.0, 4.0);
  CHECK(env.eval(probe) == doctest::Approx(via_set).epsilon(1e-3));
}

TEST_CASE("cone envelopes scale positively homogeneously on their ray") {
  DeviationFunctional d = iqd_functional(0.4);
  RandomVariable y = fair({-1.0, 0.0, 2.0, 5.0});
  RayEnvelope env = ray_envelope(y, d(y), RayVariant::cone);
  for (double t : {0.0, 0.3, 1.0, 2.5, 7.0}) {
    double scaled = env.eval(scale(y, t));
    CHECK(scaled == doctest::Approx(t * env.eval(y)));
  }
}

TEST_CASE("halfline envelope") {
  DeviationFunctional d = add(iqd_functional(0.4), sd_functional());
  RandomVariable y = fair({0.0, 2.0, 5.0});
  double dy = d(y);
  RayEnvelope env = ray_envelope(y, dy, RayVariant::halfline);
  CHECK(env.eval(y) == dy);
  CHECK(env.eval(shift(y, -7.0)) == dy);
  CHECK(std::isinf(env.eval(scale(y, 0.5))));
  CHECK(std::isinf(env.eval(fair({1.0, 1.0, 1.0}))));  // constants excluded
}

TEST_CASE("constant anchors give the trivial envelope") {
  for (RayVariant v : {RayVariant::star, RayVariant::cone, RayVariant::halfline}) {
    RayEnvelope env = ray_envelope(fair({2.0, 2.0}), 0.0, v);
    CHECK(env.eval(fair({5.0, 5.0})) == 0.0);
    CHECK(std::isinf(env.eval(fair({0.0, 1.0}))));
  }
}

TEST_CASE("envelope argument must share the anchor's space") {
  RayEnvelope env = ray_envelope(fair({0.0, 1.0}), 1.0, RayVariant::star);
  CHECK_THROWS_WITH_AS(env.eval(fair({0.0, 1.0, 2.0})),
                       doctest::Contains("SpaceMismatch"), error);
}

TEST_CASE("envelope anchors need finite nonnegative values") {
  CHECK_THROWS_AS(ray_envelope(fair({0.0, 1.0}), -0.5, RayVariant::star), error);
  CHECK_THROWS_AS(ray_envelope(fair({0.0, 1.0}), kInf, RayVariant::star), error);
}

TEST_CASE("lrd envelope") {
  DeviationFunctional d = lower_range_functional();
  RandomVariable y = fair({-3.0, 0.0, 2.0, 5.0});
  double dy = d(y);
  RayEnvelope env = ray_envelope_lrd(y, dy);
  CHECK(env.eval(y) == doctest::Approx(dy));  // attainment for LRD anchors
  CHECK(env.eval(fair({4.0, 4.0, 4.0, 4.0})) == doctest::Approx(0.0));

  // Z = center(Y) + dY is accepted at lambda = 1
  RandomVariable z = shift(center(y), dy);
  CHECK(env.eval(z) <= dy + 1e-10);

  AuditConfig cfg = small_config();
  SpacePtr sp = y.space();
  for (const auto& x : sample_variables_on(sp, cfg, "env_lrd", 25)) {
    double v = env.eval(x);
    CHECK(v <= lower_range(x) + 1e-10);
    CHECK(v == doctest::Approx(oracle::lrd_envelope_grid(y, dy, x)).epsilon(1e-4));
    CHECK(v <= oracle::lrd_envelope_grid(y, dy, x) + 1e-12);  // exact minimum
  }

  RayEnvelope env2 = ray_envelope_lrd(y, sd_minus(y));
  CHECK(env2.eval(y) == doctest::Approx(sd_minus(y)));
}

TEST_CASE("min_family picks the lowest value, lowest index on ties") {
  std::vector<DeviationFunctional> family = {
      full_range_functional(), scale_functional(sd_functional(), 2.0)};
  RandomVariable x = fair({-2.0, 2.0});
  auto [value, index] = min_family(std::span<const DeviationFunctional>(family), x);
  CHECK(value == doctest::Approx(4.0));
  CHECK(index == 0);  // FR(x) = 4 = 2*sd(x); first wins

  std::vector<DeviationFunctional> single = {sd_functional()};
  auto [v1, i1] = min_family(std::span<const DeviationFunctional>(single), x);
  CHECK(v1 == doctest::Approx(2.0));
  CHECK(i1 == 0);
}

TEST_CASE("ray attainment through min_family is exact") {
  DeviationFunctional d = add(iqd_functional(0.3), sd_functional());
  AuditConfig cfg = small_config();
  SpacePtr sp = ProbSpace::uniform(6);
  auto pool = sample_variables_on(sp, cfg, "env_attain", 20);
  for (const auto& x : pool) {
    std::vector<RayEnvelope> family;
    for (const auto& y : pool) {
      RayEnvelope env = ray_envelope(y, d(y), RayVariant::star);
      if (std::isinf(env.eval(x))) family.push_back(env);
    }
    family.push_back(ray_envelope(x, d(x), RayVariant::star));
    auto [value, index] = min_family(std::span<const RayEnvelope>(family), x);
    CHECK(value == d(x));  // bitwise
    CHECK(index == family.size() - 1);
  }
}

TEST_CASE("verify_domination") {
  AuditConfig cfg = small_config();
  DeviationFunctional d = composite_iqd_sq_plus_sd(0.4);
  auto anchors = sample_variables(cfg, "env_dom", 12);
  for (const auto& y : anchors) {
    CheckResult r = verify_domination(d, ray_envelope(y, d(y), RayVariant::star), cfg);
    CHECK(r.status == CheckStatus::pass);
  }
  DeviationFunctional ph = iqd_functional(0.4);
  for (const auto& y : anchors) {
    CheckResult r = verify_domination(ph, ray_envelope(y, ph(y), RayVariant::cone), cfg);
    CHECK(r.status == CheckStatus::pass);  // holds beyond lambda = 1 under PH
  }
  DeviationFunctional fr = full_range_functional();
  RandomVariable y = fair({0.0, 1.0});
  CHECK(verify_domination(fr, ray_envelope(y, fr(y), RayVariant::star), cfg).status ==
        CheckStatus::pass);
}

TEST_CASE("acceptance union identity") {
  AuditConfig cfg = small_config();
  std::vector<DeviationFunctional> singleton = {sd_functional()};
  CHECK(acceptance_union_identity(sd_functional(),
                                  std::span<const DeviationFunctional>(singleton),
                                  cfg).status == CheckStatus::pass);

  std::vector<DeviationFunctional> family = {
      scale_functional(sd_functional(), 2.0), full_range_functional()};
  DeviationFunctional mn = min_functional(family);
  CHECK(acceptance_union_identity(mn,
                                  std::span<const DeviationFunctional>(family),
                                  cfg).status == CheckStatus::pass);
}

TEST_CASE("halfline family plus chi reproduces a proper deviation on its pool") {
  DeviationFunctional d = add(iqd_functional(0.4), sd_functional());
  AuditConfig cfg = small_config();
  SpacePtr sp = ProbSpace::uniform(5);
  auto raw_pool = sample_variables_on(sp, cfg, "env_halfline", 20);
  // one representative per translation class keeps attainment bit-exact
  std::vector<RandomVariable> pool;
  for (const auto& x : raw_pool) {
    bool duplicate = false;
    for (const auto& kept : pool) {
      RandomVariable cx = center(x), ck = center(kept);
      double gap = 0.0;
      for (std::size_t i = 0; i < cx.size(); ++i)
        gap = std::max(gap, std::abs(cx.value(i) - ck.value(i)));
      duplicate |= gap <= 1e-9;
    }
    if (!duplicate) pool.push_back(x);
  }
  std::vector<DeviationFunctional> family;
  for (const auto& y : pool)
    family.push_back(ray_envelope(y, d(y), RayVariant::halfline).as_functional());
  family.push_back(chi_constants());
  for (const auto& x : pool) {
    auto [value, index] = min_family(std::span<const DeviationFunctional>(family), x);
    (void)index;
    CHECK(value == d(x));
  }
  // chi carries the constants
  auto [cv, ci] = min_family(std::span<const DeviationFunctional>(family),
                             constant_on(sp, 3.0));
  CHECK(cv == 0.0);
  CHECK(ci == family.size() - 1);
}

TEST_CASE("members of a star-shaped set land in the induced acceptance set") {
  AuditConfig cfg = small_config();
  DeviationFunctional d = sd_functional();
  AcceptanceSet a = acceptance_of(d);
  DeviationFunctional induced{"induced", d.profile(),
                              [a](const RandomVariable& x) {
                                return deviation_of(a, x);
                              }};
  AcceptanceSet a2 = acceptance_of(induced);
  for (const auto& x : sample_variables(cfg, "env_containment", 20)) {
    RandomVariable member = shift(x, d(x) - expectation(x) + 0.25);
    REQUIRE(a.contains(member));
    CHECK(a2.contains(member));
  }
}
