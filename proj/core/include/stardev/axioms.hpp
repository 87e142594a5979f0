#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stardev/measures.hpp"
#include "stardev/space.hpp"

namespace stardev {

/// Knobs of the seeded audit engine. Identical configs reproduce identical
/// reports byte for byte.
struct AuditConfig {
  std::uint64_t seed = 42;
  int n_variables = 200;
  int n_pairs = 100;
  std::vector<double> lambda_grid = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9,
                                     1.0, 1.5, 2.0,  5.0, 10.0};
  std::vector<double> shift_grid = {-10.0, -1.0, -0.1, 0.1, 1.0, 10.0};
  std::vector<int> atom_counts = {2, 3, 5, 8, 16};
  std::pair<double, double> value_range = {-10.0, 10.0};
  double tolerance = 1e-9;
};

/// Inputs plus both sides of a violated inequality; enough to replay the
/// violation through the corresponding single check.
struct Witness {
  std::string description;
  std::vector<double> probs;
  std::vector<double> values;
  std::vector<double> probs2;   // second space, when it differs
  std::vector<double> values2;  // second variable, when one is involved
  double param = 0.0;           // lambda, shift, or threshold as applicable
  double lhs = 0.0;
  double rhs = 0.0;
};

enum class CheckStatus { pass, fail, not_applicable };

const char* status_name(CheckStatus s);

struct CheckResult {
  std::string axiom;
  CheckStatus status = CheckStatus::pass;
  long cases = 0;
  std::vector<Witness> witnesses;  // capped; non-empty iff status == fail

  bool ok() const { return status != CheckStatus::fail; }
};

struct AuditReport {
  std::string functional;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> classification;
  std::vector<std::string> profile_mismatches;

  const CheckResult* find(std::string_view axiom) const;
  bool all_pass() const;
};

// -- Extended-real comparison conventions -------------------------------------
// inf <= inf holds, finite < inf holds, lambda*inf = inf for lambda > 0 and
// 0*inf = 0 (matching D(0*X) = D(0) = 0).

bool ext_leq(double a, double b, double tolerance);
bool ext_eq(double a, double b, double tolerance);
double ext_scale(double lambda, double v);

// -- Deterministic corpus generation -------------------------------------------

/// splitmix64; fully specified, identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();                    // [0,1)
  int uniform_int(int lo, int hi);     // inclusive bounds
  double pick(const std::vector<double>& v);

 private:
  std::uint64_t state_;
};

std::uint64_t sub_seed(std::uint64_t seed, std::string_view stream);

/// Lattice-valued variables over the config's spaces; ties are common by
/// construction so quantile edge cases are exercised.
std::vector<RandomVariable> sample_variables(const AuditConfig& cfg,
                                             std::string_view stream,
                                             int count,
                                             bool exclude_constant = true,
                                             bool equal_weights_only = false);

/// Same-space pairs for convexity/subadditivity style checks.
std::vector<std::pair<RandomVariable, RandomVariable>> sample_pairs(
    const AuditConfig& cfg, std::string_view stream, int count);

/// Pairs (X, Y) with X a mean-preserving contraction of Y.
std::vector<std::pair<RandomVariable, RandomVariable>> sample_contraction_pairs(
    const AuditConfig& cfg, std::string_view stream, int count);

/// Lattice variables sharing one space (envelope pools and the like).
std::vector<RandomVariable> sample_variables_on(const SpacePtr& space,
                                                const AuditConfig& cfg,
                                                std::string_view stream,
                                                int count,
                                                bool exclude_constant = true);

/// Atom count of the curated mirror triple baked into the convexity,
/// subadditivity, and convex-order pair generators.
inline constexpr int kCuratedTripleAtoms = 100;

/// The law-invariance counterexample triple: X midpoint-uniform on [-2,2],
/// Y its measure-preserving mirror, Z their half mix (two-valued).
struct MirrorTriple {
  RandomVariable x;
  RandomVariable y;
  RandomVariable z;
};
MirrorTriple mirror_triple(int n);

// -- Deviation checks -----------------------------------------------------------

CheckResult check_non_negativity(const DeviationFunctional& d,
                                 const AuditConfig& cfg);
CheckResult check_translation_insensitivity(const DeviationFunctional& d,
                                            const AuditConfig& cfg);
CheckResult check_convexity(const DeviationFunctional& d,
                            const AuditConfig& cfg);
CheckResult check_positive_homogeneity(const DeviationFunctional& d,
                                       const AuditConfig& cfg);

/// The three equivalent formulations, reported separately:
/// scale-up (lambda >= 1), scale-down (lambda in [0,1]), ratio-monotone.
std::array<CheckResult, 3> star_shapedness_forms(const DeviationFunctional& d,
                                                 const AuditConfig& cfg);
CheckResult check_star_shapedness(const DeviationFunctional& d,
                                  const AuditConfig& cfg);

CheckResult check_lower_range_dominance(const DeviationFunctional& d,
                                        const AuditConfig& cfg);
CheckResult check_law_invariance(const DeviationFunctional& d,
                                 const AuditConfig& cfg);
CheckResult check_convex_order_consistency(const DeviationFunctional& d,
                                           const AuditConfig& cfg);
CheckResult check_subadditivity(const DeviationFunctional& d,
                                const AuditConfig& cfg);

/// Runs every deviation check, derives the classification labels, and
/// compares them to the declared profile flags.
AuditReport audit_deviation(const DeviationFunctional& d,
                            const AuditConfig& cfg);

/// Monotonicity, translation invariance, normalization, and the three
/// star-shapedness forms for a risk functional.
AuditReport check_risk_axioms(const RiskFunctional& rho, const AuditConfig& cfg);

/// Recomputes a reported witness through the named check's inequality and
/// returns lhs - rhs (positive means the violation reproduces).
double replay_margin(const DeviationFunctional& d, std::string_view axiom,
                     const Witness& w);

}  // namespace stardev
