#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "stardev/errors.hpp"

namespace stardev {

class ProbSpace;
using SpacePtr = std::shared_ptr<const ProbSpace>;

/// Finite probability space: n atoms with strictly positive weights
/// summing to 1 (within 1e-12). Immutable after construction.
class ProbSpace {
 public:
  static SpacePtr make(std::vector<double> probs);
  static SpacePtr uniform(std::size_t n);

  std::size_t size() const noexcept { return probs_.size(); }
  double prob(std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  double min_prob() const noexcept { return min_prob_; }

  /// Structural identity: equal weight vectors describe the same space.
  bool same_as(const ProbSpace& other) const noexcept;

 private:
  explicit ProbSpace(std::vector<double> probs);
  std::vector<double> probs_;
  double min_prob_ = 0.0;
};

/// Real value on each atom of a ProbSpace. Values are finite by invariant,
/// so essential boundedness is automatic.
class RandomVariable {
 public:
  RandomVariable(SpacePtr space, std::vector<double> values);

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double value(std::size_t i) const { return values_[i]; }
  double prob(std::size_t i) const { return space_->prob(i); }

  bool same_space_as(const RandomVariable& other) const {
    return space_ == other.space_ || space_->same_as(*other.space_);
  }

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

/// Canonical law of a RandomVariable: strictly increasing values with
/// their (aggregated) probabilities and running cumulative sums.
class Distribution {
 public:
  struct Point {
    double value;
    double prob;
    double cum;  // cumulative probability up to and including this value
  };

  explicit Distribution(const RandomVariable& x);

  const std::vector<Point>& points() const noexcept { return points_; }
  double min() const { return points_.front().value; }
  double max() const { return points_.back().value; }

  /// Left quantile F^{-1}(p) = inf{ x : F(x) >= p }, p in (0,1].
  double left_quantile(double p) const;

  /// Exact value of the quantile integral over (0, a]. Exact
  /// piecewise-constant accumulation, no quadrature.
  double lower_quantile_integral(double a) const;

 private:
  std::vector<Point> points_;
};

// -- Random-variable algebra ------------------------------------------------

double expectation(const RandomVariable& x);
Distribution distribution_of(const RandomVariable& x);
double left_quantile(const RandomVariable& x, double p);
double ess_inf(const RandomVariable& x);
double ess_sup(const RandomVariable& x);

/// E[(X - k)^+], the stop-loss transform.
double stop_loss(const RandomVariable& x, double k);

bool same_distribution(const RandomVariable& x, const RandomVariable& y);

/// X precedes Y in convex order: equal means and the stop-loss transform of
/// X is dominated by Y's at every support point of either variable.
bool convex_order_leq(const RandomVariable& x, const RandomVariable& y);

/// Increasing convex order: stop-loss dominance without the mean condition.
bool increasing_convex_order_leq(const RandomVariable& x,
                                 const RandomVariable& y);

RandomVariable scale(const RandomVariable& x, double lambda);
RandomVariable shift(const RandomVariable& x, double c);
RandomVariable mix(const RandomVariable& x, const RandomVariable& y,
                   double lambda);
RandomVariable center(const RandomVariable& x);
RandomVariable constant_on(const SpacePtr& space, double c);

/// Equal-weight space carrying the samples as atom values.
std::pair<SpacePtr, RandomVariable> empirical_from_samples(
    const std::vector<double>& samples);

namespace tol {
inline constexpr double kAlgebra = 1e-12;   // value/weight comparisons
inline constexpr double kOrder = 1e-10;     // stochastic-order slack
}  // namespace tol

}  // namespace stardev
