#pragma once

#include <vector>

#include "senslab/numeric.hpp"

#include "json.hpp"

namespace senslab {

/// A closed interval [lo, hi] on the rational line. Degenerate (lo == hi)
/// intervals are allowed and flagged.
struct ClosedInterval {
  Rational lo;
  Rational hi;

  static ClosedInterval make(Rational lo, Rational hi);

  Rational length() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }

  friend bool operator==(const ClosedInterval& a, const ClosedInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }

  nlohmann::ordered_json to_json() const;  // endpoint pair, exact round-trip
  static ClosedInterval from_json(const nlohmann::ordered_json& j);
};

/// {slope*x + offset : x in i}. Endpoints swap when slope < 0, so the result
/// is a valid closed interval with length |slope| * length(i).
ClosedInterval affine_image(const ClosedInterval& i, const Rational& slope,
                            const Rational& offset);

/// A finite union of closed intervals, kept normalized: components sorted,
/// pairwise disjoint, separated by positive gaps (touching ones are merged).
class IntervalUnion {
public:
  static IntervalUnion of(std::vector<ClosedInterval> components);

  const std::vector<ClosedInterval>& components() const { return components_; }
  bool empty() const { return components_.empty(); }

  /// max(hi) - min(lo): the metric diameter of the union as a subset of R.
  /// Throws EmptySet on an empty union.
  Rational diameter() const;

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    return a.components_ == b.components_;
  }

  nlohmann::ordered_json to_json() const;
  static IntervalUnion from_json(const nlohmann::ordered_json& j);

private:
  std::vector<ClosedInterval> components_;
};

}  // namespace senslab
