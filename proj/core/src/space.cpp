#include "stardev/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace stardev {

namespace {

// Kahan-compensated sum; keeps weight and expectation sums well inside
// the 1e-12 contract even for 1e5 atoms.
double kahan_sum(const std::vector<double>& v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double kahan_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double y = a[i] * b[i] - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_positive_weight: return "NonPositiveWeight";
    case errc::weight_sum_mismatch: return "WeightSumMismatch";
    case errc::invalid_probability: return "InvalidProbability";
    case errc::space_mismatch: return "SpaceMismatch";
    case errc::empty_sample: return "EmptySample";
    case errc::not_star_shaped_set: return "NotStarShapedSet";
    case errc::not_upward_closed: return "NotUpwardClosed";
    case errc::bracket_too_small: return "BracketTooSmall";
    case errc::contract_violation: return "ContractViolation";
    case errc::invariant_violation: return "InvariantViolation";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::name_resolution: return "NameResolution";
    case errc::bad_input: return "BadInput";
    case errc::bad_argument: return "BadArgument";
  }
  return "UnknownError";
}

ProbSpace::ProbSpace(std::vector<double> probs) : probs_(std::move(probs)) {
  min_prob_ = *std::min_element(probs_.begin(), probs_.end());
}

SpacePtr ProbSpace::make(std::vector<double> probs) {
  if (probs.empty()) raise(errc::empty_sample, "probability space needs at least one atom");
  for (double p : probs) {
    if (!(p > 0.0) || !std::isfinite(p))
      raise(errc::non_positive_weight, "every weight must be strictly positive");
  }
  double sum = kahan_sum(probs);
  if (std::abs(sum - 1.0) > tol::kAlgebra)
    raise(errc::weight_sum_mismatch, "weights sum to " + std::to_string(sum));
  return SpacePtr(new ProbSpace(std::move(probs)));
}

SpacePtr ProbSpace::uniform(std::size_t n) {
  if (n == 0) raise(errc::empty_sample, "probability space needs at least one atom");
  return SpacePtr(new ProbSpace(std::vector<double>(n, 1.0 / static_cast<double>(n))));
}

bool ProbSpace::same_as(const ProbSpace& other) const noexcept {
  if (this == &other) return true;
  return probs_ == other.probs_;
}

RandomVariable::RandomVariable(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) raise(errc::bad_argument, "random variable needs a space");
  if (values_.size() != space_->size())
    raise(errc::space_mismatch, "value count does not match atom count");
  for (double v : values_) {
    if (!std::isfinite(v)) raise(errc::bad_argument, "atom values must be finite");
  }
}

Distribution::Distribution(const RandomVariable& x) {
  // Exact-equality aggregation keeps F canonical; sorting handles the rest.
  std::map<double, double> agg;
  for (std::size_t i = 0; i < x.size(); ++i) agg[x.value(i)] += x.prob(i);
  points_.reserve(agg.size());
  double cum = 0.0;
  for (const auto& [v, p] : agg) {
    cum += p;
    points_.push_back({v, p, cum});
  }
  points_.back().cum = 1.0;  // pin the top of the ladder
}

double Distribution::left_quantile(double p) const {
  if (!(p > 0.0) || p > 1.0)
    raise(errc::invalid_probability, "quantile level must lie in (0,1]");
  for (const Point& pt : points_) {
    if (pt.cum >= p - tol::kAlgebra) return pt.value;
  }
  return points_.back().value;
}

double Distribution::lower_quantile_integral(double a) const {
  if (!(a > 0.0) || a > 1.0)
    raise(errc::invalid_probability, "integration bound must lie in (0,1]");
  if (a <= points_.front().cum) return points_.front().value * a;
  double integral = 0.0;
  double lo = 0.0;
  for (const Point& pt : points_) {
    double hi = std::min(pt.cum, a);
    if (hi > lo) integral += pt.value * (hi - lo);
    lo = pt.cum;
    if (lo >= a) break;
  }
  return integral;
}

double expectation(const RandomVariable& x) {
  return kahan_dot(x.space()->probs(), x.values());
}

Distribution distribution_of(const RandomVariable& x) { return Distribution(x); }

double left_quantile(const RandomVariable& x, double p) {
  return Distribution(x).left_quantile(p);
}

double ess_inf(const RandomVariable& x) {
  return *std::min_element(x.values().begin(), x.values().end());
}

double ess_sup(const RandomVariable& x) {
  return *std::max_element(x.values().begin(), x.values().end());
}

double stop_loss(const RandomVariable& x, double k) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double excess = x.value(i) - k;
    if (excess <= 0.0) continue;
    double y = x.prob(i) * excess - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

bool same_distribution(const RandomVariable& x, const RandomVariable& y) {
  Distribution dx(x), dy(y);
  if (dx.points().size() != dy.points().size()) return false;
  for (std::size_t i = 0; i < dx.points().size(); ++i) {
    const auto& a = dx.points()[i];
    const auto& b = dy.points()[i];
    if (std::abs(a.value - b.value) > tol::kAlgebra) return false;
    if (std::abs(a.prob - b.prob) > tol::kAlgebra) return false;
  }
  return true;
}

namespace {

// Stop-loss dominance at every support point of either law. Both stop-loss
// transforms are convex piecewise-linear with kinks only at support points,
// so agreement on this finite set decides the order.
bool stop_loss_dominated(const RandomVariable& x, const RandomVariable& y) {
  std::vector<double> thresholds = x.values();
  thresholds.insert(thresholds.end(), y.values().begin(), y.values().end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  for (double k : thresholds) {
    if (stop_loss(x, k) > stop_loss(y, k) + tol::kOrder) return false;
  }
  return true;
}

}  // namespace

bool convex_order_leq(const RandomVariable& x, const RandomVariable& y) {
  if (std::abs(expectation(x) - expectation(y)) > tol::kOrder) return false;
  return stop_loss_dominated(x, y);
}

bool increasing_convex_order_leq(const RandomVariable& x,
                                 const RandomVariable& y) {
  return stop_loss_dominated(x, y);
}

RandomVariable scale(const RandomVariable& x, double lambda) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = lambda * x.value(i);
  return RandomVariable(x.space(), std::move(v));
}

RandomVariable shift(const RandomVariable& x, double c) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x.value(i) + c;
  return RandomVariable(x.space(), std::move(v));
}

RandomVariable mix(const RandomVariable& x, const RandomVariable& y,
                   double lambda) {
  if (!x.same_space_as(y))
    raise(errc::space_mismatch, "mix requires both variables on one space");
  if (!(lambda >= 0.0) || lambda > 1.0)
    raise(errc::bad_argument, "mix weight must lie in [0,1]");
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    v[i] = lambda * x.value(i) + (1.0 - lambda) * y.value(i);
  return RandomVariable(x.space(), std::move(v));
}

RandomVariable center(const RandomVariable& x) {
  return shift(x, -expectation(x));
}

RandomVariable constant_on(const SpacePtr& space, double c) {
  return RandomVariable(space, std::vector<double>(space->size(), c));
}

std::pair<SpacePtr, RandomVariable> empirical_from_samples(
    const std::vector<double>& samples) {
  if (samples.empty()) raise(errc::empty_sample, "no samples to ingest");
  SpacePtr sp = ProbSpace::uniform(samples.size());
  return {sp, RandomVariable(sp, samples)};
}

}  // namespace stardev
