#include "senslab/cascade.hpp"

namespace senslab {

TrackedSet TrackedSet::make(Integer j, Rational alpha, Rational beta) {
  if (j < 0) throw InvalidParams("TrackedSet: negative interval index");
  if (!(Rational(0) <= alpha && alpha < beta && beta <= Rational(1)))
    throw InvalidParams("TrackedSet: need 0 <= alpha < beta <= 1");
  return TrackedSet{std::move(j), std::move(alpha), std::move(beta)};
}

LayoutCascade::LayoutCascade(std::shared_ptr<const SpaceLayout> layout, Integer step)
    : layout_(std::move(layout)), step_(std::move(step)) {
  if (!layout_) throw InvalidParams("LayoutCascade: null layout");
  if (step_ < 1) throw InvalidParams("LayoutCascade: step multiplier must be >= 1");
}

TrackedSet LayoutCascade::iterate(const TrackedSet& s, const Integer& n) const {
  if (n < 0) throw InvalidParams("iterate: n must be >= 0");
  return TrackedSet{s.j + step_ * n, s.alpha, s.beta};
}

Rational LayoutCascade::image_diameter(const TrackedSet& s, const Integer& n) const {
  if (n < 0) throw InvalidParams("image_diameter: n must be >= 0");
  return s.width() * layout_->length_at(s.j + step_ * n);
}

LayoutCascade LayoutCascade::restrict_to_submonoid(const Integer& k) const {
  if (k < 1) throw InvalidParams("restrict_to_submonoid: k must be >= 1");
  return LayoutCascade(layout_, step_ * k);
}

Rational LayoutCascade::point_at(const TrackedSet& s, const Rational& rel) const {
  IntervalAt ia = layout_->interval_at(s.j);
  if (!ia.interval)
    throw BudgetExceeded("point_at: interval endpoints exceed the bit budget");
  Rational pos = s.alpha + rel * s.width();
  return ia.interval->lo + pos * ia.length;
}

namespace {

struct PointLocation {
  long level;
  Integer position;       // interval index within the level
  Rational offset;        // coordinate minus the interval's left endpoint
};

// Point location on a decomposed coordinate whole + frac: every level base
// and stride is an integer, so only integer comparisons and one big
// subtraction are needed, regardless of how large the coordinate got.
PointLocation locate_point(const SpaceLayout& lay, const Integer& whole, const Rational& frac) {
  if (whole < 0) throw PointOutsideSpace("negative coordinate");
  for (long lv = 0;; ++lv) {
    const SpaceLayout::Level& L = lay.level(lv);
    if (!L.base.is_exact())
      throw BudgetExceeded("stepwise oracle: reached a level past the bit budget");
    const Integer& base = *L.base.exact;
    if (whole < base) throw PointOutsideSpace("point falls in a gap between levels");
    if (L.count.is_exact() && L.span_last_floor.is_exact()) {
      const Integer& edge = *L.span_last_floor.exact;
      if (whole > edge || (whole == edge && frac > L.span_last_frac)) continue;
    }
    Integer rel = whole - base;
    Integer pos = rel / L.stride_i;
    Rational offset = Rational(Integer(rel - pos * L.stride_i)) + frac;
    if (offset > L.length) throw PointOutsideSpace("point falls between intervals");
    if (L.count.is_exact() && pos >= *L.count.exact)
      throw PointOutsideSpace("point past the last interval of its level");
    return PointLocation{lv, std::move(pos), std::move(offset)};
  }
}

}  // namespace

StepwiseWalker::StepwiseWalker(std::shared_ptr<const SpaceLayout> layout, const Rational& start)
    : layout_(std::move(layout)) {
  if (!layout_) throw InvalidParams("StepwiseWalker: null layout");
  whole_ = floor_rational(start);
  frac_ = start - Rational(whole_);
  locate_point(*layout_, whole_, frac_);  // validates the start coordinate
}

Rational StepwiseWalker::value() const { return Rational(whole_) + frac_; }

Rational StepwiseWalker::distance_to(const StepwiseWalker& other) const {
  return Rational(Integer(other.whole_ - whole_)) + (other.frac_ - frac_);
}

void StepwiseWalker::advance() {
  PointLocation at = locate_point(*layout_, whole_, frac_);
  const SpaceLayout::Level& L = layout_->level(at.level);
  bool last_of_level = false;
  if (L.count.is_exact()) last_of_level = at.position + 1 == *L.count.exact;
  if (!last_of_level) {
    // translation onto the next interval of the same level
    whole_ += L.stride_i;
    return;
  }
  // junction: increasing affine bijection onto the first interval of the
  // next level, slope = next length / this length
  const SpaceLayout::Level& N = layout_->level(at.level + 1);
  if (!N.base.is_exact())
    throw BudgetExceeded("stepwise oracle: next level exceeds the bit budget");
  Rational image_offset = at.offset * (N.length / L.length);
  Integer off_floor = floor_rational(image_offset);
  whole_ = *N.base.exact + off_floor;
  frac_ = image_offset - Rational(off_floor);
}

Rational LayoutCascade::stepwise_point(const Rational& x, const Integer& n,
                                       long step_budget) const {
  if (n < 0) throw InvalidParams("stepwise_point: n must be >= 0");
  Integer applications = n * step_;
  if (applications > step_budget)
    throw StepBudgetExceeded("stepwise oracle limited to " + std::to_string(step_budget) +
                             " map applications");
  StepwiseWalker w(layout_, x);
  for (Integer i = 0; i < applications; ++i) w.advance();
  return w.value();
}

}  // namespace senslab
