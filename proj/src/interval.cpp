#include "senslab/interval.hpp"

#include <algorithm>

namespace senslab {

ClosedInterval ClosedInterval::make(Rational lo, Rational hi) {
  if (lo > hi) throw InvalidParams("ClosedInterval: lo > hi");
  return ClosedInterval{std::move(lo), std::move(hi)};
}

ClosedInterval affine_image(const ClosedInterval& i, const Rational& slope,
                            const Rational& offset) {
  Rational a = slope * i.lo + offset;
  Rational b = slope * i.hi + offset;
  if (a <= b) return ClosedInterval{std::move(a), std::move(b)};
  return ClosedInterval{std::move(b), std::move(a)};
}

IntervalUnion IntervalUnion::of(std::vector<ClosedInterval> components) {
  std::sort(components.begin(), components.end(),
            [](const ClosedInterval& a, const ClosedInterval& b) {
              if (a.lo != b.lo) return a.lo < b.lo;
              return a.hi < b.hi;
            });
  IntervalUnion u;
  for (auto& c : components) {
    if (!u.components_.empty() && c.lo <= u.components_.back().hi) {
      // overlapping or touching: merge
      if (c.hi > u.components_.back().hi) u.components_.back().hi = c.hi;
    } else {
      u.components_.push_back(std::move(c));
    }
  }
  return u;
}

Rational IntervalUnion::diameter() const {
  if (components_.empty()) throw EmptySet();
  return components_.back().hi - components_.front().lo;
}

nlohmann::ordered_json ClosedInterval::to_json() const {
  return nlohmann::ordered_json::array({to_decimal(lo), to_decimal(hi)});
}

ClosedInterval ClosedInterval::from_json(const nlohmann::ordered_json& j) {
  return make(rational_from_decimal(j.at(0).get<std::string>()),
              rational_from_decimal(j.at(1).get<std::string>()));
}

nlohmann::ordered_json IntervalUnion::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& c : components_) j.push_back(c.to_json());
  return j;
}

IntervalUnion IntervalUnion::from_json(const nlohmann::ordered_json& j) {
  std::vector<ClosedInterval> cs;
  for (const auto& c : j) cs.push_back(ClosedInterval::from_json(c));
  return of(std::move(cs));
}

}  // namespace senslab
