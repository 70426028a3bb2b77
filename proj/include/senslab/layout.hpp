#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "senslab/block_expr.hpp"
#include "senslab/interval.hpp"

#include "json.hpp"

namespace senslab {

enum class SpaceKind { ex1_x, ex1_y, ex2_x };
enum class PresetKind { paper, scaled };

std::string to_string(SpaceKind k);
std::string to_string(PresetKind p);
SpaceKind space_kind_from_string(const std::string& s);
PresetKind preset_kind_from_string(const std::string& s);

struct GrowthParams {
  PresetKind preset = PresetKind::paper;
  long bit_budget = kDefaultBitBudget;
  long max_level = 4096;

  static GrowthParams paper_preset() { return GrowthParams{}; }
  static GrowthParams scaled_preset() {
    GrowthParams p;
    p.preset = PresetKind::scaled;
    return p;
  }
};

struct LevelIndex {
  long level = 0;
  Integer position = 0;  // index within the level
  Integer global = 0;    // j
};

struct IntervalAt {
  LevelIndex index;
  std::optional<ClosedInterval> interval;  // empty when endpoints exceed the budget
  Rational length = 0;
  bool junction = false;       // last interval of its level
  std::string junction_tag;    // set when junction
};

/// Closed-form catalog of a phase space as the ordered interval sequence
/// I_0, I_1, ...: level 0 is the seed [0, 1]; block k >= 0 contributes the
/// levels 2k+1 and 2k+2, one from the shrinking-length family and one from
/// the growing-length family. Every query is answered from per-level closed
/// forms, never by walking preceding intervals.
class SpaceLayout {
public:
  static std::shared_ptr<const SpaceLayout> build(SpaceKind which, const GrowthParams& params);

  SpaceKind kind() const { return kind_; }
  PresetKind preset() const { return params_.preset; }
  long budget_bits() const { return params_.bit_budget; }
  std::shared_ptr<const TowerSchedule> schedule() const { return sched_; }

  struct Level {
    long level = 0;
    bool grow = false;  // lengths belong to the growing family
    Rational length = 1;
    Rational stride = 2;             // integer-valued for every level
    Integer stride_i = 2;
    EvalInt count = EvalInt::of(1);
    EvalInt first_j = EvalInt::of(0);
    EvalInt last_j = EvalInt::of(0);
    EvalInt base = EvalInt::of(0);   // left endpoint of the first interval
    // integer and fractional parts of the level's right edge
    EvalInt span_last_floor = EvalInt::of(1);
    Rational span_last_frac = 0;
  };
  const Level& level(long idx) const;

  // block structure
  long shrink_level_of(long k) const;  // level index of block k's shrinking level
  long grow_level_of(long k) const;
  bool first_of_block_grows() const { return first_grows_; }
  bool unit_counts() const { return kind_ == SpaceKind::ex2_x; }  // one interval per level
  Rational shrink_length(long k) const;  // 1/(2k+2)
  Rational grow_length(long k) const;
  Rational level_length(long level) const;

  /// Largest k >= 0 with shrink_length(k) > tau, or -1 when none.
  long last_shrink_block_above(const Rational& tau) const;
  /// Smallest k >= 0 with grow_length(k) > tau.
  long first_grow_block_above(const Rational& tau) const;

  /// j-index ranges of block k's two levels, as closed forms in k (valid for
  /// every k >= 0).
  struct BlockExprs {
    BlockExpr first_lo, first_hi;    // level 2k+1
    BlockExpr second_lo, second_hi;  // level 2k+2
  };
  const BlockExprs& block_exprs() const { return exprs_; }

  LevelIndex locate(const Integer& j) const;
  IntervalAt interval_at(const Integer& j) const;
  Rational length_at(const Integer& j) const;
  std::pair<EvalInt, EvalInt> level_ranges(long level) const;

  nlohmann::ordered_json describe(long levels) const;
  void dump_intervals_csv(const Integer& first_n, std::ostream& out) const;

private:
  SpaceLayout(SpaceKind kind, GrowthParams params);
  void ensure_levels(long idx) const;
  Level make_level(long idx, const Level& prev) const;
  EvalInt level_count(long idx) const;
  std::string junction_tag(long level) const;

  SpaceKind kind_;
  GrowthParams params_;
  std::shared_ptr<const TowerSchedule> sched_;  // null for scaled presets
  bool first_grows_ = false;
  BlockExprs exprs_;

  mutable std::vector<Level> levels_;
  mutable std::mutex mu_;
};

}  // namespace senslab
