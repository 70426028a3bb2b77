#include "senslab/layout.hpp"

#include <ostream>

namespace senslab {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::ex1_x: return "ex1_x";
    case SpaceKind::ex1_y: return "ex1_y";
    case SpaceKind::ex2_x: return "ex2_x";
  }
  return "?";
}

std::string to_string(PresetKind p) {
  return p == PresetKind::paper ? "paper" : "scaled";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "ex1_x") return SpaceKind::ex1_x;
  if (s == "ex1_y") return SpaceKind::ex1_y;
  if (s == "ex2_x") return SpaceKind::ex2_x;
  throw InvalidParams("unknown space: " + s);
}

PresetKind preset_kind_from_string(const std::string& s) {
  if (s == "paper") return PresetKind::paper;
  if (s == "scaled") return PresetKind::scaled;
  throw InvalidParams("unknown preset: " + s);
}

namespace {

// positive-quantity EvalInt helpers
EvalInt ev_plus_int(const EvalInt& a, const Integer& d) {
  if (a.is_exact()) return EvalInt::of(*a.exact + d);
  if (d >= 0) return a;
  std::optional<Integer> bits = a.huge_bits;
  if (!bits) bits = Integer(kDefaultBitBudget);
  return EvalInt::huge(a.huge_sign, *bits - 1);
}

EvalInt ev_add(const EvalInt& a, const EvalInt& b) {
  if (a.is_exact() && b.is_exact()) return EvalInt::of(*a.exact + *b.exact);
  std::optional<Integer> bits;
  if (!a.is_exact() && a.huge_bits) bits = a.huge_bits;
  if (!b.is_exact() && b.huge_bits && (!bits || *b.huge_bits > *bits)) bits = b.huge_bits;
  return EvalInt::huge(1, bits);
}

EvalInt pow_of_offset(const TowerSchedule& sched, long m) {
  EvalInt off = sched.offset(m);
  if (off.is_exact() && *off.exact <= sched.budget_bits())
    return EvalInt::of(pow2(*off.exact, sched.budget_bits()));
  if (off.is_exact()) return EvalInt::huge(1, *off.exact);
  return EvalInt::huge(1, off.huge_bits);
}

}  // namespace

SpaceLayout::SpaceLayout(SpaceKind kind, GrowthParams params)
    : kind_(kind), params_(params) {
  if (params_.preset == PresetKind::paper) {
    sched_ = kind_ == SpaceKind::ex2_x ? example2_schedule(params_.bit_budget)
                                       : example1_schedule(params_.bit_budget);
  }
  first_grows_ = kind_ != SpaceKind::ex1_x;

  auto S0 = [&](long slope, long off) { return BlockExpr::prefix_sum0(sched_, slope, off); };
  auto P = [](std::vector<long> cs) {
    std::vector<Integer> v(cs.begin(), cs.end());
    return BlockExpr::polynomial(std::move(v));
  };
  switch (kind_) {
    case SpaceKind::ex1_x:
      if (params_.preset == PresetKind::paper) {
        exprs_.first_lo = S0(2, -1) + P({1, 2});
        exprs_.first_hi = S0(2, 0) + P({1, 2});
        exprs_.second_lo = S0(2, 0) + P({2, 2});
        exprs_.second_hi = S0(2, 1) + P({2, 2});
      } else {
        exprs_.first_lo = P({1, 7, 5});
        exprs_.first_hi = P({5, 11, 5});
        exprs_.second_lo = P({6, 11, 5});
        exprs_.second_hi = P({12, 17, 5});
      }
      break;
    case SpaceKind::ex1_y:
      if (params_.preset == PresetKind::paper) {
        exprs_.first_lo = S0(2, -1) + P({1});
        exprs_.first_hi = S0(2, 0) + P({1, 4});
        exprs_.second_lo = S0(2, 0) + P({2, 4});
        exprs_.second_hi = S0(2, 1);
      } else {
        exprs_.first_lo = P({1, 5, 5});
        exprs_.first_hi = P({5, 13, 5});
        exprs_.second_lo = P({6, 13, 5});
        exprs_.second_hi = P({10, 15, 5});
      }
      break;
    case SpaceKind::ex2_x:
      exprs_.first_lo = P({1, 2});
      exprs_.first_hi = P({1, 2});
      exprs_.second_lo = P({2, 2});
      exprs_.second_hi = P({2, 2});
      break;
  }
}

std::shared_ptr<const SpaceLayout> SpaceLayout::build(SpaceKind which,
                                                      const GrowthParams& params) {
  if (params.bit_budget < 128) throw InvalidParams("bit budget unreasonably small");
  if (params.max_level < 8) throw InvalidParams("max_level too small");
  return std::shared_ptr<const SpaceLayout>(new SpaceLayout(which, params));
}

long SpaceLayout::shrink_level_of(long k) const { return first_grows_ ? 2 * k + 2 : 2 * k + 1; }
long SpaceLayout::grow_level_of(long k) const { return first_grows_ ? 2 * k + 1 : 2 * k + 2; }

Rational SpaceLayout::shrink_length(long k) const { return Rational(1, 2 * k + 2); }

Rational SpaceLayout::grow_length(long k) const {
  // X grows through even levels; Y and the single-interval space through odd ones
  return kind_ == SpaceKind::ex1_x ? Rational(2 * k + 2) : Rational(2 * k + 1);
}

Rational SpaceLayout::level_length(long level) const {
  if (level == 0) return Rational(1);
  const long k = (level - 1) / 2;
  const bool first = (level % 2) == 1;
  const bool grows = first == first_grows_;
  return grows ? grow_length(k) : shrink_length(k);
}

EvalInt SpaceLayout::level_count(long idx) const {
  if (idx == 0) return EvalInt::of(1);
  const long k = (idx - 1) / 2;
  const bool first = (idx % 2) == 1;
  switch (kind_) {
    case SpaceKind::ex1_x:
      if (params_.preset == PresetKind::paper)
        return ev_plus_int(pow_of_offset(*sched_, first ? 2 * k : 2 * k + 1), 1);
      return EvalInt::of(first ? 4 * k + 5 : 6 * k + 7);
    case SpaceKind::ex1_y:
      if (params_.preset == PresetKind::paper)
        return ev_plus_int(pow_of_offset(*sched_, first ? 2 * k : 2 * k + 1),
                           first ? Integer(4 * k + 1) : Integer(-4 * k - 1));
      return EvalInt::of(first ? 8 * k + 5 : 2 * k + 5);
    case SpaceKind::ex2_x:
      return EvalInt::of(1);
  }
  return EvalInt::of(1);
}

SpaceLayout::Level SpaceLayout::make_level(long idx, const Level& prev) const {
  Level lv;
  lv.level = idx;
  if (idx == 0) {
    lv.grow = false;
    lv.length = 1;
    lv.stride = 2;
    lv.stride_i = 2;
    lv.count = EvalInt::of(1);
    lv.first_j = EvalInt::of(0);
    lv.last_j = EvalInt::of(0);
    lv.base = EvalInt::of(0);
    lv.span_last_floor = EvalInt::of(1);
    lv.span_last_frac = 0;
    return lv;
  }
  const bool first = (idx % 2) == 1;
  lv.grow = first == first_grows_;
  lv.length = level_length(idx);
  lv.stride = lv.grow ? lv.length + 1 : Rational(1);
  lv.stride_i = numerator(lv.stride);
  lv.count = level_count(idx);
  lv.first_j = ev_plus_int(prev.last_j, 1);
  lv.last_j = ev_add(lv.first_j, ev_plus_int(lv.count, -1));
  if (params_.preset == PresetKind::paper) {
    lv.base = sched_->offset(idx);
  } else {
    // packed placement: one unit past the previous level's span
    if (!prev.base.is_exact() || !prev.count.is_exact())
      throw BudgetExceeded("scaled layout base overflow");
    Rational span_end = Rational(*prev.base.exact) +
                        Rational(*prev.count.exact - 1) * prev.stride + prev.length;
    lv.base = EvalInt::of(ceil_rational(span_end) + 1);
  }
  // right edge of the level: base + (count-1)*stride + length, split into
  // integer and fractional parts so point location never builds big rationals
  Integer len_floor = floor_rational(lv.length);
  lv.span_last_frac = lv.length - Rational(len_floor);
  if (lv.base.is_exact() && lv.count.is_exact()) {
    lv.span_last_floor =
        EvalInt::of(*lv.base.exact + (*lv.count.exact - 1) * lv.stride_i + len_floor);
  } else {
    lv.span_last_floor = ev_add(lv.base, ev_plus_int(lv.count, -1));
  }
  return lv;
}

void SpaceLayout::ensure_levels(long idx) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (idx >= params_.max_level) throw InvalidParams("level index exceeds max_level");
  if (levels_.empty()) levels_.push_back(make_level(0, Level{}));
  while (static_cast<long>(levels_.size()) <= idx)
    levels_.push_back(make_level(static_cast<long>(levels_.size()), levels_.back()));
}

const SpaceLayout::Level& SpaceLayout::level(long idx) const {
  if (idx < 0) throw InvalidParams("negative level");
  ensure_levels(idx);
  std::lock_guard<std::mutex> lock(mu_);
  return levels_[idx];
}

std::string SpaceLayout::junction_tag(long lv) const {
  if (lv == 0) return "seed";
  const long k = (lv - 1) / 2;
  const bool first = (lv % 2) == 1;
  const long n = k + 1;
  // X-pattern levels end in A (shrinking) / B (growing); Y-pattern in C / D
  const char* tag = kind_ == SpaceKind::ex1_y ? (first ? "C" : "D") : (first ? "A" : "B");
  return std::string(tag) + "_" + std::to_string(n);
}

LevelIndex SpaceLayout::locate(const Integer& j) const {
  if (j < 0) throw InvalidParams("negative interval index");
  EvalInt jj = EvalInt::of(j);
  for (long lv = 0; lv < params_.max_level; ++lv) {
    const Level& L = level(lv);
    auto cmp = try_compare(jj, L.last_j, params_.bit_budget);
    if (!cmp) throw Inconclusive("locate: index order undecidable");
    if (*cmp <= 0) {
      if (!L.first_j.is_exact()) throw Inconclusive("locate: level start not materializable");
      LevelIndex idx;
      idx.level = lv;
      idx.global = j;
      idx.position = j - *L.first_j.exact;
      return idx;
    }
  }
  throw InvalidParams("locate: index beyond max_level");
}

IntervalAt SpaceLayout::interval_at(const Integer& j) const {
  IntervalAt out;
  out.index = locate(j);
  const Level& L = level(out.index.level);
  out.length = L.length;
  auto at_last = try_compare(EvalInt::of(j), L.last_j, params_.bit_budget);
  out.junction = at_last && *at_last == 0;
  if (out.junction) out.junction_tag = junction_tag(out.index.level);
  if (L.base.is_exact()) {
    Rational lo = Rational(*L.base.exact) + Rational(out.index.position) * L.stride;
    out.interval = ClosedInterval{lo, lo + L.length};
  }
  return out;
}

Rational SpaceLayout::length_at(const Integer& j) const {
  return level(locate(j).level).length;
}

std::pair<EvalInt, EvalInt> SpaceLayout::level_ranges(long lv) const {
  const Level& L = level(lv);
  return {L.first_j, L.last_j};
}

long SpaceLayout::last_shrink_block_above(const Rational& tau) const {
  if (!(shrink_length(0) > tau)) return -1;
  long lo = 0, hi = 1;
  while (shrink_length(hi) > tau) {
    lo = hi;
    hi *= 2;
    if (hi > (1L << 40)) throw InvalidParams("shrink threshold out of range");
  }
  while (lo + 1 < hi) {
    long mid = lo + (hi - lo) / 2;
    if (shrink_length(mid) > tau) lo = mid;
    else hi = mid;
  }
  return lo;
}

long SpaceLayout::first_grow_block_above(const Rational& tau) const {
  if (grow_length(0) > tau) return 0;
  long lo = 0, hi = 1;
  while (!(grow_length(hi) > tau)) {
    lo = hi;
    hi *= 2;
    if (hi > (1L << 40)) throw InvalidParams("grow threshold out of range");
  }
  while (lo + 1 < hi) {
    long mid = lo + (hi - lo) / 2;
    if (grow_length(mid) > tau) hi = mid;
    else lo = mid;
  }
  return hi;
}

nlohmann::ordered_json SpaceLayout::describe(long levels) const {
  nlohmann::ordered_json j;
  j["space"] = to_string(kind_);
  j["preset"] = to_string(params_.preset);
  j["bit_budget"] = params_.bit_budget;
  j["levels"] = nlohmann::ordered_json::array();
  for (long lv = 0; lv < levels; ++lv) {
    const Level& L = level(lv);
    j["levels"].push_back(nlohmann::ordered_json{{"level", L.level},
                                                 {"family", L.grow ? "grow" : "shrink"},
                                                 {"length", to_decimal(L.length)},
                                                 {"stride", to_decimal(L.stride)},
                                                 {"count", L.count.to_string()},
                                                 {"first_j", L.first_j.to_string()},
                                                 {"last_j", L.last_j.to_string()},
                                                 {"base", L.base.to_string()}});
  }
  j["block_exprs"] = nlohmann::ordered_json{{"first_lo", exprs_.first_lo.to_string()},
                                            {"first_hi", exprs_.first_hi.to_string()},
                                            {"second_lo", exprs_.second_lo.to_string()},
                                            {"second_hi", exprs_.second_hi.to_string()}};
  return j;
}

void SpaceLayout::dump_intervals_csv(const Integer& first_n, std::ostream& out) const {
  out << "j,level,position,lo,hi,length\n";
  for (Integer j = 0; j < first_n; ++j) {
    IntervalAt ia = interval_at(j);
    out << to_decimal(j) << "," << ia.index.level << "," << to_decimal(ia.index.position) << ",";
    if (ia.interval) out << to_decimal(ia.interval->lo) << "," << to_decimal(ia.interval->hi);
    else out << ",";
    out << "," << to_decimal(ia.length) << "\n";
  }
}

}  // namespace senslab
