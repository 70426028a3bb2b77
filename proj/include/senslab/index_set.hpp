#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "senslab/block_expr.hpp"
#include "senslab/numeric.hpp"

#include "json.hpp"

namespace senslab {

struct IntRange {
  Integer lo;
  Integer hi;  // inclusive
};

/// A subset of N0 as sorted disjoint integer ranges (gap >= 2 between
/// consecutive ranges) plus an optional cofinite tail [tail, oo).
class RangeSet {
public:
  static RangeSet empty() { return RangeSet(); }
  static RangeSet of(std::vector<IntRange> ranges, std::optional<Integer> tail = std::nullopt);
  static RangeSet single(Integer lo, Integer hi);
  static RangeSet full() { return of({}, Integer(0)); }

  const std::vector<IntRange>& ranges() const { return ranges_; }
  const std::optional<Integer>& tail() const { return tail_; }
  bool is_empty() const { return ranges_.empty() && !tail_; }
  bool has_tail() const { return tail_.has_value(); }
  bool contains(const Integer& n) const;

  RangeSet unite(const RangeSet& o) const;
  RangeSet intersect(const RangeSet& o) const;
  RangeSet complement_in_n0() const;
  bool includes(const RangeSet& o) const;

  friend bool operator==(const RangeSet& a, const RangeSet& b) {
    if (a.tail_.has_value() != b.tail_.has_value()) return false;
    if (a.tail_ && *a.tail_ != *b.tail_) return false;
    if (a.ranges_.size() != b.ranges_.size()) return false;
    for (size_t i = 0; i < a.ranges_.size(); ++i)
      if (a.ranges_[i].lo != b.ranges_[i].lo || a.ranges_[i].hi != b.ranges_[i].hi) return false;
    return true;
  }

  /// Gap/run statistics confined to the window [0, horizon].
  struct WindowStats {
    Integer max_gap = 0;        // longest missing run within the window
    Integer max_gap_start = -1;
    Integer max_run = 0;        // longest present run within the window
    Integer max_run_start = -1;
    Integer last_missing = -1;  // largest missing element in the window
    bool any_present = false;
  };
  WindowStats window_stats(const Integer& horizon) const;

  nlohmann::ordered_json to_json() const;
  static RangeSet from_json(const nlohmann::ordered_json& j);

private:
  std::vector<IntRange> ranges_;
  std::optional<Integer> tail_;
};

/// One per-block range family: the union over k in [k_lo, k_hi] (k_hi empty
/// means unbounded) of [lo(k), hi(k)].
struct BlockFamily {
  BlockExpr lo;
  BlockExpr hi;
  long k_lo = 0;
  std::optional<long> k_hi;

  bool infinite() const { return !k_hi.has_value(); }

  nlohmann::ordered_json to_json() const;
  static BlockFamily from_json(const nlohmann::ordered_json& j, long budget_bits = kDefaultBitBudget);
};

/// A subset of N0 given in symbolic block form: a materialized prefix plus
/// finitely many block families whose closed forms extend past the bit budget.
class SymbolicSet {
public:
  SymbolicSet() = default;
  SymbolicSet(std::vector<BlockFamily> families, RangeSet prefix = RangeSet::empty())
      : families_(std::move(families)), prefix_(std::move(prefix)) {}

  const std::vector<BlockFamily>& families() const { return families_; }
  const RangeSet& prefix() const { return prefix_; }

  bool contains(const Integer& n) const;
  /// Exact materialization of the part of the set lying in [0, horizon].
  RangeSet materialize(const Integer& horizon) const;

  nlohmann::ordered_json to_json() const;
  static SymbolicSet from_json(const nlohmann::ordered_json& j, long budget_bits = kDefaultBitBudget);

private:
  std::vector<BlockFamily> families_;
  RangeSet prefix_;
};

using IndexSet = std::variant<RangeSet, SymbolicSet>;

enum class SetScope { horizon, asymptotic };

struct SetClassification {
  SetScope scope = SetScope::horizon;
  Integer horizon = 0;  // meaningful for horizon scope
  bool inconclusive = false;
  bool cofinite = false;
  bool syndetic = false;
  bool thick = false;
  std::optional<Integer> syndetic_bound;
  std::optional<Integer> cofinite_tail;
  nlohmann::ordered_json certificate;

  /// The strongest applicable single label.
  std::string strongest() const;
  nlohmann::ordered_json to_json() const;
};

/// Horizon-relative classification of a finite-presentation set. Sets with a
/// tail get genuine asymptotic verdicts; sets without one are classified over
/// [0, horizon] (required), with the window thresholds derived from the
/// horizon so that syndetic/thick stay exact duals.
SetClassification classify(const RangeSet& s, const std::optional<Integer>& horizon);

/// Asymptotic classification of a symbolic set via its block families; the
/// eventual facts are certified by leading-window checks plus the dominance
/// rule, and the verification mode is recorded in the certificate.
SetClassification classify(const SymbolicSet& s, long window = 12);

SetClassification classify_index_set(const IndexSet& s, const std::optional<Integer>& horizon,
                                     long window = 12);

/// Self-test of the syndetic/thick duality over a window: classify(s) is
/// syndetic iff classify(complement) is not thick, and symmetrically. Must
/// always hold.
bool duality_check(const RangeSet& s, const Integer& horizon);

/// Window threshold used by horizon-relative verdicts: floor(sqrt(horizon)).
Integer horizon_threshold(const Integer& horizon);

}  // namespace senslab
