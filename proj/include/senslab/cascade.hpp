#pragma once

#include "senslab/layout.hpp"

namespace senslab {

inline constexpr long kDefaultStepBudget = 1'000'000;

/// A sub-interval of the layout interval I_j, stored as the normalized
/// relative range [alpha, beta] within I_j. Because every transition is the
/// canonical increasing affine bijection I_j -> I_{j+1}, the relative range
/// is invariant under iteration.
struct TrackedSet {
  Integer j;
  Rational alpha;
  Rational beta;

  static TrackedSet make(Integer j, Rational alpha, Rational beta);
  static TrackedSet full(Integer j = 0) { return TrackedSet{std::move(j), 0, 1}; }
  Rational width() const { return beta - alpha; }
};

/// The cascade generated by the canonical map of a layout. The step
/// multiplier m models the restriction to the submonoid m*N0 (one action step
/// = m applications of the map); m = 1 is the plain cascade.
class LayoutCascade {
public:
  explicit LayoutCascade(std::shared_ptr<const SpaceLayout> layout, Integer step = 1);

  const SpaceLayout& layout() const { return *layout_; }
  const std::shared_ptr<const SpaceLayout>& layout_ptr() const { return layout_; }
  const Integer& step() const { return step_; }

  /// n-th image of the tracked set: {j + step*n, alpha, beta}. O(1) in n.
  TrackedSet iterate(const TrackedSet& s, const Integer& n) const;

  /// diam of the n-th image: (beta - alpha) * length(I_{j + step*n}). Exact,
  /// works even where endpoints cannot be materialized.
  Rational image_diameter(const TrackedSet& s, const Integer& n) const;

  LayoutCascade restrict_to_submonoid(const Integer& k) const;

  /// The point of I_j at relative position alpha + rel*(beta-alpha); needs
  /// materializable endpoints.
  Rational point_at(const TrackedSet& s, const Rational& rel) const;

  /// Independent oracle: runs n single map applications, each one locating
  /// x's interval from raw endpoint data and applying the canonical affine
  /// bijection onto the successor interval. Never consults the index
  /// arithmetic that iterate() uses.
  Rational stepwise_point(const Rational& x, const Integer& n,
                          long step_budget = kDefaultStepBudget) const;

private:
  std::shared_ptr<const SpaceLayout> layout_;
  Integer step_;
};

/// Resumable form of the stepwise oracle: holds the current coordinate split
/// into its integer part and a small fractional remainder, so that a
/// translation step never rebuilds a full-size rational. Each advance()
/// locates the containing interval from the raw coordinate and applies one
/// canonical branch, exactly like stepwise_point.
class StepwiseWalker {
public:
  StepwiseWalker(std::shared_ptr<const SpaceLayout> layout, const Rational& start);

  void advance();           // one map application
  Rational value() const;   // current coordinate
  /// Exact signed distance other - this.
  Rational distance_to(const StepwiseWalker& other) const;

private:
  std::shared_ptr<const SpaceLayout> layout_;
  Integer whole_;
  Rational frac_;  // in [0, 1)
};

/// Product of two cascades under the max metric, where the diameter of a
/// rectangle is the larger coordinate diameter.
struct ProductCascade {
  LayoutCascade left;
  LayoutCascade right;

  Rational product_diameter(const TrackedSet& s1, const TrackedSet& s2, const Integer& n) const {
    Rational a = left.image_diameter(s1, n);
    Rational b = right.image_diameter(s2, n);
    return a >= b ? a : b;
  }
};

}  // namespace senslab
