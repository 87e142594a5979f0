#include "stardev/axioms.hpp"

#include <algorithm>
#include <cmath>

namespace stardev {

namespace {

constexpr std::size_t kWitnessCap = 3;

Witness make_witness(std::string description, const RandomVariable& x,
                     double param, double lhs, double rhs) {
  Witness w;
  w.description = std::move(description);
  w.probs = x.space()->probs();
  w.values = x.values();
  w.param = param;
  w.lhs = lhs;
  w.rhs = rhs;
  return w;
}

void attach_second(Witness& w, const RandomVariable& y) {
  w.values2 = y.values();
  if (!(y.space()->probs() == w.probs)) w.probs2 = y.space()->probs();
}

void record_fail(CheckResult& r, Witness w) {
  r.status = CheckStatus::fail;
  if (r.witnesses.size() < kWitnessCap) r.witnesses.push_back(std::move(w));
}

RandomVariable add_vars(const RandomVariable& x, const RandomVariable& y) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x.value(i) + y.value(i);
  return RandomVariable(x.space(), std::move(v));
}

void validate_config(const AuditConfig& cfg) {
  bool below = false, at_one = false, above = false;
  for (double l : cfg.lambda_grid) {
    if (l > 0.0 && l < 1.0) below = true;
    if (l == 1.0) at_one = true;
    if (l > 1.0) above = true;
  }
  if (!below || !at_one || !above)
    raise(errc::bad_argument,
          "lambda grid must cover (0,1), the point 1, and (1,inf)");
  if (cfg.n_variables <= 0 || cfg.n_pairs <= 0)
    raise(errc::bad_argument, "audit corpus sizes must be positive");
  if (!(cfg.tolerance > 0.0))
    raise(errc::bad_argument, "audit tolerance must be positive");
}

}  // namespace

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "not-applicable";
  }
  return "unknown";
}

const CheckResult* AuditReport::find(std::string_view axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return &c;
  return nullptr;
}

bool AuditReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) return false;
  return true;
}

bool ext_leq(double a, double b, double tolerance) {
  if (a == -kInf || b == kInf) return true;
  if (a == kInf || b == -kInf) return false;
  return a <= b + tolerance;
}

bool ext_eq(double a, double b, double tolerance) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tolerance;
}

double ext_scale(double lambda, double v) {
  if (lambda == 0.0) return 0.0;
  return lambda * v;
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Rng::pick(const std::vector<double>& v) {
  return v[next() % v.size()];
}

std::uint64_t sub_seed(std::uint64_t seed, std::string_view stream) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return seed ^ h;
}

namespace {

SpacePtr sample_space(Rng& rng, int n, bool equal_weights_only) {
  if (equal_weights_only || rng.uniform() < 0.5)
    return ProbSpace::uniform(static_cast<std::size_t>(n));
  // Integer weights m_i >= 1 with sum 2n, so every atom keeps mass >= 1/(2n);
  // that floor is what lets the default dual alpha-grids stay admissible.
  std::vector<int> m(static_cast<std::size_t>(n), 1);
  for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(rng.uniform_int(0, n - 1))] += 1;
  std::vector<double> probs(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    probs[i] = static_cast<double>(m[i]) / (2.0 * n);
  return ProbSpace::make(std::move(probs));
}

std::vector<double> sample_lattice_values(Rng& rng, std::size_t n,
                                          const AuditConfig& cfg) {
  static const std::vector<double> notch_choices = {4.0, 8.0, 16.0};
  double notches = rng.pick(notch_choices);
  auto [lo, hi] = cfg.value_range;
  std::vector<double> v(n);
  for (double& x : v) {
    int j = rng.uniform_int(0, static_cast<int>(notches));
    x = lo + (hi - lo) * static_cast<double>(j) / notches;
  }
  return v;
}

bool is_constant(const std::vector<double>& v) {
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}

}  // namespace

std::vector<RandomVariable> sample_variables(const AuditConfig& cfg,
                                             std::string_view stream,
                                             int count, bool exclude_constant,
                                             bool equal_weights_only) {
  Rng rng(sub_seed(cfg.seed, stream));
  std::vector<RandomVariable> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    int n = cfg.atom_counts[rng.next() % cfg.atom_counts.size()];
    SpacePtr sp = sample_space(rng, n, equal_weights_only);
    std::vector<double> v = sample_lattice_values(rng, sp->size(), cfg);
    if (exclude_constant && is_constant(v)) continue;
    out.emplace_back(sp, std::move(v));
  }
  return out;
}

std::vector<std::pair<RandomVariable, RandomVariable>> sample_pairs(
    const AuditConfig& cfg, std::string_view stream, int count) {
  Rng rng(sub_seed(cfg.seed, stream));
  std::vector<std::pair<RandomVariable, RandomVariable>> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    int n = cfg.atom_counts[rng.next() % cfg.atom_counts.size()];
    SpacePtr sp = sample_space(rng, n, false);
    std::vector<double> a = sample_lattice_values(rng, sp->size(), cfg);
    std::vector<double> b = sample_lattice_values(rng, sp->size(), cfg);
    if (is_constant(a) || is_constant(b)) continue;
    out.emplace_back(RandomVariable(sp, std::move(a)),
                     RandomVariable(sp, std::move(b)));
  }
  return out;
}

std::vector<std::pair<RandomVariable, RandomVariable>> sample_contraction_pairs(
    const AuditConfig& cfg, std::string_view stream, int count) {
  Rng rng(sub_seed(cfg.seed, stream));
  std::vector<std::pair<RandomVariable, RandomVariable>> out;
  out.reserve(static_cast<std::size_t>(count));
  static const std::vector<double> rates = {0.25, 0.5, 0.75, 1.0};
  while (static_cast<int>(out.size()) < count) {
    int n = cfg.atom_counts[rng.next() % cfg.atom_counts.size()];
    if (n < 2) continue;
    SpacePtr sp = sample_space(rng, n, false);
    std::vector<double> y = sample_lattice_values(rng, sp->size(), cfg);
    if (is_constant(y)) continue;
    RandomVariable ry(sp, y);
    std::vector<double> x = y;
    double t = rng.pick(rates);
    if (rng.uniform() < 0.25) {
      // full contraction to the mean
      double mu = expectation(ry);
      for (double& v : x) v = v + t * (mu - v);
    } else {
      std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
      std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
      if (i == j) continue;
      double pi = sp->prob(i), pj = sp->prob(j);
      double m = (pi * x[i] + pj * x[j]) / (pi + pj);
      x[i] += t * (m - x[i]);
      x[j] += t * (m - x[j]);
    }
    out.emplace_back(RandomVariable(sp, std::move(x)), std::move(ry));
  }
  return out;
}

std::vector<RandomVariable> sample_variables_on(const SpacePtr& space,
                                                const AuditConfig& cfg,
                                                std::string_view stream,
                                                int count,
                                                bool exclude_constant) {
  Rng rng(sub_seed(cfg.seed, stream));
  std::vector<RandomVariable> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> v = sample_lattice_values(rng, space->size(), cfg);
    if (exclude_constant && is_constant(v)) continue;
    out.emplace_back(space, std::move(v));
  }
  return out;
}

MirrorTriple mirror_triple(int n) {
  if (n < 2 || n % 2 != 0)
    raise(errc::bad_argument, "mirror triple needs an even atom count >= 2");
  SpacePtr sp = ProbSpace::uniform(static_cast<std::size_t>(n));
  double step = 2.0 / static_cast<double>(n);
  std::vector<double> xv(static_cast<std::size_t>(n));
  std::vector<double> yv(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    int k = 2 * i - 1 - n;  // odd lattice index, never zero
    xv[static_cast<std::size_t>(i - 1)] = static_cast<double>(k) * step;
    int m = k > 0 ? n - k : -n - k;  // mirror stays on the same lattice
    yv[static_cast<std::size_t>(i - 1)] = static_cast<double>(m) * step;
  }
  RandomVariable x(sp, std::move(xv));
  RandomVariable y(sp, std::move(yv));
  RandomVariable z = mix(x, y, 0.5);
  return {std::move(x), std::move(y), std::move(z)};
}

// -- Checks ---------------------------------------------------------------------

CheckResult check_non_negativity(const DeviationFunctional& d,
                                 const AuditConfig& cfg) {
  CheckResult r{"non_negativity", CheckStatus::pass, 0, {}};
  static const std::vector<double> constants = {-5.0, -1.0, 0.0, 0.5, 1.0, 7.0};
  for (int n : cfg.atom_counts) {
    SpacePtr sp = ProbSpace::uniform(static_cast<std::size_t>(n));
    for (double c : constants) {
      double v = d(constant_on(sp, c));
      ++r.cases;
      if (!(v <= cfg.tolerance))
        record_fail(r, make_witness("D(constant) above zero",
                                    constant_on(sp, c), c, v, 0.0));
    }
  }
  auto vars = sample_variables(cfg, "non_negativity", cfg.n_variables);
  SpacePtr tri = ProbSpace::uniform(3);
  vars.emplace_back(tri, std::vector<double>{0.0, 0.0, 1.0});  // quantile blind spot
  for (const auto& x : vars) {
    double v = d(x);
    ++r.cases;
    if (v < -tol::kAlgebra)
      record_fail(r, make_witness("negative evaluation", x, 0.0, v, 0.0));
    else if (!(v > cfg.tolerance))
      record_fail(r, make_witness("D(non-constant) not positive", x, 0.0, v,
                                  cfg.tolerance));
  }
  return r;
}

CheckResult check_translation_insensitivity(const DeviationFunctional& d,
                                            const AuditConfig& cfg) {
  CheckResult r{"translation_insensitivity", CheckStatus::pass, 0, {}};
  auto vars = sample_variables(cfg, "translation_insensitivity", cfg.n_variables);
  for (const auto& x : vars) {
    double base = d(x);
    for (double c : cfg.shift_grid) {
      double shifted = d(shift(x, c));
      ++r.cases;
      if (!ext_eq(shifted, base, cfg.tolerance))
        record_fail(r, make_witness("D(X+c) differs from D(X)", x, c, shifted,
                                    base));
    }
  }
  return r;
}

CheckResult check_convexity(const DeviationFunctional& d,
                            const AuditConfig& cfg) {
  CheckResult r{"convexity", CheckStatus::pass, 0, {}};
  auto pairs = sample_pairs(cfg, "convexity", cfg.n_pairs);
  MirrorTriple mt = mirror_triple(kCuratedTripleAtoms);
  pairs.emplace_back(mt.x, mt.y);
  for (const auto& [x, y] : pairs) {
    double dx = d(x), dy = d(y);
    for (double lam : cfg.lambda_grid) {
      if (lam < 0.0 || lam > 1.0) continue;
      double lhs = d(mix(x, y, lam));
      double rhs = ext_scale(lam, dx) + ext_scale(1.0 - lam, dy);
      ++r.cases;
      if (!ext_leq(lhs, rhs, cfg.tolerance)) {
        Witness w = make_witness("D(mix) above the chord", x, lam, lhs, rhs);
        attach_second(w, y);
        record_fail(r, std::move(w));
      }
    }
  }
  return r;
}

CheckResult check_positive_homogeneity(const DeviationFunctional& d,
                                       const AuditConfig& cfg) {
  CheckResult r{"positive_homogeneity", CheckStatus::pass, 0, {}};
  auto vars = sample_variables(cfg, "positive_homogeneity", cfg.n_variables);
  for (const auto& x : vars) {
    double base = d(x);
    for (double lam : cfg.lambda_grid) {
      double lhs = d(scale(x, lam));
      double rhs = ext_scale(lam, base);
      ++r.cases;
      if (!ext_eq(lhs, rhs, cfg.tolerance * std::max(1.0, lam)))
        record_fail(r,
                    make_witness("D(lambda X) != lambda D(X)", x, lam, lhs, rhs));
    }
  }
  return r;
}

std::array<CheckResult, 3> star_shapedness_forms(const DeviationFunctional& d,
                                                 const AuditConfig& cfg) {
  std::array<CheckResult, 3> forms = {
      CheckResult{"star_scale_up", CheckStatus::pass, 0, {}},
      CheckResult{"star_scale_down", CheckStatus::pass, 0, {}},
      CheckResult{"star_ratio_monotone", CheckStatus::pass, 0, {}}};
  auto vars = sample_variables(cfg, "star_shapedness", cfg.n_variables);
  std::vector<double> positive;
  for (double l : cfg.lambda_grid)
    if (l > 0.0) positive.push_back(l);
  std::sort(positive.begin(), positive.end());
  for (const auto& x : vars) {
    double base = d(x);
    for (double lam : cfg.lambda_grid) {
      if (lam >= 1.0) {
        double lhs = ext_scale(lam, base);
        double rhs = d(scale(x, lam));
        ++forms[0].cases;
        if (!ext_leq(lhs, rhs, cfg.tolerance))
          record_fail(forms[0], make_witness("lambda D(X) above D(lambda X)", x,
                                             lam, lhs, rhs));
      }
      if (lam <= 1.0) {
        double lhs = d(scale(x, lam));
        double rhs = ext_scale(lam, base);
        ++forms[1].cases;
        if (!ext_leq(lhs, rhs, cfg.tolerance))
          record_fail(forms[1], make_witness("D(lambda X) above lambda D(X)", x,
                                             lam, lhs, rhs));
      }
    }
    double prev = -kInf;
    for (double lam : positive) {
      double ratio = d(scale(x, lam));
      ratio = std::isinf(ratio) ? kInf : ratio / lam;
      ++forms[2].cases;
      if (!ext_leq(prev, ratio, cfg.tolerance))
        record_fail(forms[2], make_witness("D(lambda X)/lambda not non-decreasing",
                                           x, lam, prev, ratio));
      prev = ratio;
    }
  }
  return forms;
}

CheckResult check_star_shapedness(const DeviationFunctional& d,
                                  const AuditConfig& cfg) {
  auto forms = star_shapedness_forms(d, cfg);
  CheckResult r{"star_shapedness", CheckStatus::pass, 0, {}};
  for (const auto& f : forms) {
    r.cases += f.cases;
    if (f.status == CheckStatus::fail) {
      r.status = CheckStatus::fail;
      for (const auto& w : f.witnesses)
        if (r.witnesses.size() < kWitnessCap) r.witnesses.push_back(w);
    }
  }
  return r;
}

CheckResult check_lower_range_dominance(const DeviationFunctional& d,
                                        const AuditConfig& cfg) {
  CheckResult r{"lower_range_dominance", CheckStatus::pass, 0, {}};
  auto vars = sample_variables(cfg, "lower_range_dominance", cfg.n_variables);
  SpacePtr fair = ProbSpace::uniform(2);
  vars.emplace_back(fair, std::vector<double>{0.0, 2.0});  // classic FR witness
  SpacePtr tri = ProbSpace::uniform(3);
  vars.emplace_back(tri, std::vector<double>{0.0, 0.0, 3.0});  // skew witness
  for (const auto& x : vars) {
    double lhs = d(x);
    double rhs = lower_range(x);
    ++r.cases;
    if (!ext_leq(lhs, rhs, cfg.tolerance))
      record_fail(r, make_witness("D(X) above E[X]-ess_inf X", x, 0.0, lhs, rhs));
  }
  return r;
}

namespace {

RandomVariable permute(Rng& rng, const RandomVariable& x) {
  std::vector<double> v = x.values();
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
  return RandomVariable(x.space(), std::move(v));
}

RandomVariable refine(const RandomVariable& x) {
  std::vector<double> probs, values;
  probs.reserve(2 * x.size());
  values.reserve(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probs.push_back(x.prob(i) / 2.0);
    probs.push_back(x.prob(i) / 2.0);
    values.push_back(x.value(i));
    values.push_back(x.value(i));
  }
  return RandomVariable(ProbSpace::make(std::move(probs)), std::move(values));
}

}  // namespace

CheckResult check_law_invariance(const DeviationFunctional& d,
                                 const AuditConfig& cfg) {
  CheckResult r{"law_invariance", CheckStatus::pass, 0, {}};
  auto vars =
      sample_variables(cfg, "law_invariance", cfg.n_variables, true, true);
  Rng rng(sub_seed(cfg.seed, "law_invariance_perm"));
  for (const auto& x : vars) {
    double base = d(x);
    RandomVariable sigma = permute(rng, x);
    double vp = d(sigma);
    ++r.cases;
    if (!ext_eq(vp, base, cfg.tolerance)) {
      Witness w = make_witness("D differs across a rearrangement", x, 0.0, vp,
                               base);
      attach_second(w, sigma);
      record_fail(r, std::move(w));
    }
    RandomVariable fine = refine(x);
    double vr = d(fine);
    ++r.cases;
    if (!ext_eq(vr, base, cfg.tolerance)) {
      Witness w = make_witness("D differs on a refined identical law", x, 0.0,
                               vr, base);
      attach_second(w, fine);
      record_fail(r, std::move(w));
    }
  }
  return r;
}

CheckResult check_convex_order_consistency(const DeviationFunctional& d,
                                           const AuditConfig& cfg) {
  CheckResult r{"convex_order_consistency", CheckStatus::pass, 0, {}};
  auto pairs =
      sample_contraction_pairs(cfg, "convex_order_consistency", cfg.n_pairs);
  MirrorTriple mt = mirror_triple(kCuratedTripleAtoms);
  pairs.emplace_back(mt.z, mt.x);
  for (const auto& [x, y] : pairs) {
    if (!convex_order_leq(x, y)) continue;
    double lhs = d(x), rhs = d(y);
    ++r.cases;
    if (!ext_leq(lhs, rhs, cfg.tolerance)) {
      Witness w = make_witness("D not monotone along convex order", x, 0.0, lhs,
                               rhs);
      attach_second(w, y);
      record_fail(r, std::move(w));
    }
  }
  return r;
}

CheckResult check_subadditivity(const DeviationFunctional& d,
                                const AuditConfig& cfg) {
  CheckResult r{"subadditivity", CheckStatus::pass, 0, {}};
  auto pairs = sample_pairs(cfg, "subadditivity", cfg.n_pairs);
  MirrorTriple mt = mirror_triple(kCuratedTripleAtoms);
  pairs.emplace_back(scale(mt.x, 0.5), scale(mt.y, 0.5));  // halves sum to z
  for (const auto& [x, y] : pairs) {
    double lhs = d(add_vars(x, y));
    double rhs = d(x) + d(y);
    ++r.cases;
    if (!ext_leq(lhs, rhs, cfg.tolerance)) {
      Witness w = make_witness("D(X+Y) above D(X)+D(Y)", x, 0.0, lhs, rhs);
      attach_second(w, y);
      record_fail(r, std::move(w));
    }
  }
  return r;
}

AuditReport audit_deviation(const DeviationFunctional& d,
                            const AuditConfig& cfg) {
  validate_config(cfg);
  AuditReport report;
  report.functional = d.name();
  report.seed = cfg.seed;
  report.checks.push_back(check_non_negativity(d, cfg));
  report.checks.push_back(check_translation_insensitivity(d, cfg));
  report.checks.push_back(check_convexity(d, cfg));
  report.checks.push_back(check_positive_homogeneity(d, cfg));
  auto forms = star_shapedness_forms(d, cfg);
  bool star_ok = true;
  for (auto& f : forms) {
    star_ok &= f.status != CheckStatus::fail;
    report.checks.push_back(std::move(f));
  }
  report.checks.push_back(check_lower_range_dominance(d, cfg));
  report.checks.push_back(check_law_invariance(d, cfg));
  report.checks.push_back(check_convex_order_consistency(d, cfg));
  report.checks.push_back(check_subadditivity(d, cfg));

  auto ok = [&](std::string_view axiom) {
    const CheckResult* c = report.find(axiom);
    return c != nullptr && c->status != CheckStatus::fail;
  };
  bool proper = ok("non_negativity") && ok("translation_insensitivity");
  bool convex = proper && ok("convexity");
  bool generalized = convex && ok("positive_homogeneity");
  bool star = proper && star_ok;
  if (proper) report.classification.emplace_back("proper");
  if (convex) report.classification.emplace_back("Convex");
  if (generalized) report.classification.emplace_back("generalized");
  if (star) report.classification.emplace_back("Star-Shaped");
  if (ok("lower_range_dominance"))
    report.classification.emplace_back("Lower Range Dominated");
  if (ok("law_invariance")) report.classification.emplace_back("Law Invariant");

  const auto& p = d.profile();
  auto compare = [&](bool declared, bool observed, const char* flag) {
    if (declared && !observed)
      report.profile_mismatches.push_back(std::string("declared ") + flag +
                                          " but a violation was found");
    if (!declared && observed)
      report.profile_mismatches.push_back(std::string("passes ") + flag +
                                          " but it is not declared");
  };
  compare(p.non_negative, ok("non_negativity"), "non_negative");
  compare(p.translation_insensitive, ok("translation_insensitivity"),
          "translation_insensitive");
  compare(p.convex, ok("convexity"), "convex");
  compare(p.positively_homogeneous, ok("positive_homogeneity"),
          "positively_homogeneous");
  compare(p.star_shaped, star_ok, "star_shaped");
  compare(p.lower_range_dominated, ok("lower_range_dominance"),
          "lower_range_dominated");
  compare(p.law_invariant, ok("law_invariance"), "law_invariant");
  return report;
}

AuditReport check_risk_axioms(const RiskFunctional& rho,
                              const AuditConfig& cfg) {
  validate_config(cfg);
  AuditReport report;
  report.functional = rho.name();
  report.seed = cfg.seed;

  CheckResult mono{"monotonicity", CheckStatus::pass, 0, {}};
  {
    Rng rng(sub_seed(cfg.seed, "risk_monotonicity"));
    auto vars = sample_variables(cfg, "risk_monotonicity", cfg.n_pairs);
    for (const auto& x : vars) {
      std::vector<double> bump(x.size());
      for (double& b : bump)
        b = static_cast<double>(rng.uniform_int(0, 4)) *
            (cfg.value_range.second - cfg.value_range.first) / 16.0;
      RandomVariable y = add_vars(x, RandomVariable(x.space(), std::move(bump)));
      double rx = rho(x), ry = rho(y);
      ++mono.cases;
      if (!(ry <= rx + cfg.tolerance)) {
        Witness w = make_witness("rho not decreasing along pointwise order", x,
                                 0.0, ry, rx);
        attach_second(w, y);
        record_fail(mono, std::move(w));
      }
    }
  }
  report.checks.push_back(std::move(mono));

  CheckResult ti{"translation_invariance", CheckStatus::pass, 0, {}};
  {
    auto vars = sample_variables(cfg, "risk_translation", cfg.n_variables);
    for (const auto& x : vars) {
      double base = rho(x);
      for (double c : cfg.shift_grid) {
        double shifted = rho(shift(x, c));
        ++ti.cases;
        if (!(std::abs(shifted - (base - c)) <= cfg.tolerance))
          record_fail(ti, make_witness("rho(X+c) != rho(X)-c", x, c, shifted,
                                       base - c));
      }
    }
  }
  report.checks.push_back(std::move(ti));

  CheckResult norm{"normalization", CheckStatus::pass, 0, {}};
  for (int n : cfg.atom_counts) {
    SpacePtr sp = ProbSpace::uniform(static_cast<std::size_t>(n));
    double v = rho(constant_on(sp, 0.0));
    ++norm.cases;
    if (!(std::abs(v) <= cfg.tolerance))
      record_fail(norm,
                  make_witness("rho(0) != 0", constant_on(sp, 0.0), 0.0, v, 0.0));
  }
  report.checks.push_back(std::move(norm));

  // the tri-form star checks reuse the deviation machinery verbatim
  DeviationFunctional wrapped{rho.name(), DeviationProfile{},
                              [rho](const RandomVariable& x) { return rho(x); }};
  auto forms = star_shapedness_forms(wrapped, cfg);
  bool star_ok = true;
  for (auto& f : forms) {
    star_ok &= f.status != CheckStatus::fail;
    report.checks.push_back(std::move(f));
  }

  bool all = star_ok;
  for (const auto& c : report.checks) all &= c.status != CheckStatus::fail;
  if (all) report.classification.emplace_back("Star-Shaped risk measure");

  const auto& p = rho.profile();
  auto ok = [&](std::string_view axiom) {
    const CheckResult* c = report.find(axiom);
    return c != nullptr && c->status != CheckStatus::fail;
  };
  auto compare = [&](bool declared, bool observed, const char* flag) {
    if (declared && !observed)
      report.profile_mismatches.push_back(std::string("declared ") + flag +
                                          " but a violation was found");
    if (!declared && observed)
      report.profile_mismatches.push_back(std::string("passes ") + flag +
                                          " but it is not declared");
  };
  compare(p.monotone, ok("monotonicity"), "monotone");
  compare(p.translation_invariant, ok("translation_invariance"),
          "translation_invariant");
  compare(p.normalized, ok("normalization"), "normalized");
  compare(p.star_shaped, star_ok, "star_shaped");
  return report;
}

double replay_margin(const DeviationFunctional& d, std::string_view axiom,
                     const Witness& w) {
  SpacePtr sp = ProbSpace::make(w.probs);
  RandomVariable x(sp, w.values);
  auto second = [&]() {
    SpacePtr sp2 = w.probs2.empty() ? sp : ProbSpace::make(w.probs2);
    return RandomVariable(sp2, w.values2);
  };
  if (axiom == "non_negativity") {
    double v = d(x);
    // two violation shapes: a value that should be <= rhs but overshoots,
    // or a value that should exceed rhs (the tolerance) but does not
    if (w.description == "D(non-constant) not positive") return w.rhs - v;
    return v - w.rhs;
  }
  if (axiom == "translation_insensitivity")
    return std::abs(d(shift(x, w.param)) - d(x));
  if (axiom == "convexity") {
    RandomVariable y = second();
    double lhs = d(mix(x, y, w.param));
    double rhs = ext_scale(w.param, d(x)) + ext_scale(1.0 - w.param, d(y));
    return lhs - rhs;
  }
  if (axiom == "positive_homogeneity")
    return std::abs(d(scale(x, w.param)) - ext_scale(w.param, d(x)));
  if (axiom == "star_scale_up")
    return ext_scale(w.param, d(x)) - d(scale(x, w.param));
  if (axiom == "star_scale_down")
    return d(scale(x, w.param)) - ext_scale(w.param, d(x));
  if (axiom == "lower_range_dominance") return d(x) - lower_range(x);
  if (axiom == "law_invariance") return std::abs(d(second()) - d(x));
  if (axiom == "convex_order_consistency") return d(x) - d(second());
  if (axiom == "subadditivity") {
    RandomVariable y = second();
    return d(add_vars(x, y)) - (d(x) + d(y));
  }
  raise(errc::bad_argument, "no replay rule for axiom " + std::string(axiom));
}

}  // namespace stardev
