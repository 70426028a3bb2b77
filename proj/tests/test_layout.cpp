#include "doctest.h"

#include "senslab/layout.hpp"

#include <sstream>
#include <thread>

using namespace senslab;

namespace {
std::shared_ptr<const SpaceLayout> paper(SpaceKind k) {
  return SpaceLayout::build(k, GrowthParams::paper_preset());
}
std::shared_ptr<const SpaceLayout> scaled(SpaceKind k) {
  return SpaceLayout::build(k, GrowthParams::scaled_preset());
}

ClosedInterval iv(long lo_num, long lo_den, long hi_num, long hi_den) {
  return ClosedInterval::make(Rational(lo_num, lo_den), Rational(hi_num, hi_den));
}
}  // namespace

TEST_CASE("first space: seed and level 1") {
  auto lay = paper(SpaceKind::ex1_x);
  CHECK(*lay->interval_at(0).interval == iv(0, 1, 1, 1));
  // level 1 has 2 intervals [2, 5/2] and [3, 7/2]
  auto r1 = lay->level_ranges(1);
  CHECK(*r1.first.exact == 1);
  CHECK(*r1.second.exact == 2);
  CHECK(*lay->interval_at(1).interval == iv(2, 1, 5, 2));
  CHECK(*lay->interval_at(2).interval == iv(3, 1, 7, 2));
}

TEST_CASE("first space: level 2 holds five length-2 intervals") {
  auto lay = paper(SpaceKind::ex1_x);
  auto r2 = lay->level_ranges(2);
  CHECK(*r2.first.exact == 3);
  CHECK(*r2.second.exact == 7);
  long expected_lo[] = {18, 21, 24, 27, 30};
  for (long i = 0; i < 5; ++i) {
    ClosedInterval got = *lay->interval_at(3 + i).interval;
    CHECK(got.lo == expected_lo[i]);
    CHECK(got.hi == expected_lo[i] + 2);
  }
  CHECK(lay->interval_at(7).junction);
  CHECK(lay->interval_at(7).junction_tag == "B_1");
  CHECK_FALSE(lay->interval_at(6).junction);
}

TEST_CASE("first space: level 3 bookkeeping") {
  auto lay = paper(SpaceKind::ex1_x);
  // level 3 spans [8, 2^2 + 2^18 + 4] = [8, 262152]
  auto r3 = lay->level_ranges(3);
  CHECK(*r3.first.exact == 8);
  CHECK(*r3.second.exact == 262152);
  IntervalAt i8 = lay->interval_at(8);
  REQUIRE(i8.interval.has_value());
  CHECK(i8.interval->lo == 1572882);  // cumulative offset after three levels
  CHECK(i8.interval->hi == Rational(1572882) + Rational(1, 4));
  CHECK(lay->length_at(8) == Rational(1, 4));
  // level 4 starts right after, with length 4
  CHECK(lay->length_at(262153) == 4);
  CHECK(lay->length_at(262152) == Rational(1, 4));
}

TEST_CASE("first space: lengths by level and the level-4 boundary block") {
  auto lay = paper(SpaceKind::ex1_x);
  CHECK(lay->length_at(0) == 1);
  CHECK(lay->length_at(1) == Rational(1, 2));
  CHECK(lay->length_at(2) == Rational(1, 2));
  for (long j = 3; j <= 7; ++j) CHECK(lay->length_at(j) == 2);
  auto r4 = lay->level_ranges(4);
  CHECK(*r4.first.exact == 262153);
  // endpoints of level 4 intervals still materialize (about 1.5 Mbit)
  IntervalAt b = lay->interval_at(262153);
  REQUIRE(b.interval.has_value());
  CHECK(b.interval->length() == 4);
  CHECK(bit_length(numerator(b.interval->lo)) == 1572886);
}

TEST_CASE("first space: level 5 exceeds the budget but metadata survives") {
  auto lay = paper(SpaceKind::ex1_x);
  auto r5 = lay->level_ranges(5);
  REQUIRE(r5.first.is_exact());
  Integer j5 = *r5.first.exact;
  IntervalAt deep = lay->interval_at(j5);
  CHECK_FALSE(deep.interval.has_value());  // endpoints past the budget
  CHECK(deep.index.level == 5);
  CHECK(deep.index.position == 0);
  CHECK(deep.length == Rational(1, 6));
  CHECK(lay->length_at(j5) == Rational(1, 6));
}

TEST_CASE("second space: levels mirror the dual pattern") {
  auto lay = paper(SpaceKind::ex1_y);
  CHECK(*lay->interval_at(0).interval == iv(0, 1, 1, 1));
  // level 1: two growing intervals [2,3], [4,5]
  CHECK(*lay->interval_at(1).interval == iv(2, 1, 3, 1));
  CHECK(*lay->interval_at(2).interval == iv(4, 1, 5, 1));
  // level 2: three shrinking intervals [18, 37/2], [19, 39/2], [20, 41/2]
  CHECK(*lay->interval_at(3).interval == iv(18, 1, 37, 2));
  CHECK(*lay->interval_at(5).interval == iv(20, 1, 41, 2));
  // level 3 starts at j = 6 with diameter 3
  auto r3 = lay->level_ranges(3);
  CHECK(*r3.first.exact == 6);
  CHECK(lay->length_at(6) == 3);
  CHECK(*r3.second.exact == 262154);
  CHECK(lay->interval_at(2).junction_tag == "C_1");
  CHECK(lay->interval_at(5).junction_tag == "D_1");
}

TEST_CASE("third space: one interval per level") {
  auto lay = paper(SpaceKind::ex2_x);
  CHECK(*lay->interval_at(1).interval == iv(2, 1, 3, 1));
  CHECK(*lay->interval_at(2).interval == iv(6, 1, 13, 2));
  // offsets 6 and 70 put level 3 at [70, 73]
  CHECK(*lay->interval_at(3).interval == iv(70, 1, 73, 1));
  auto r = lay->level_ranges(5);
  CHECK(*r.first.exact == 5);
  CHECK(*r.second.exact == 5);
  // level 4 materializes (offset 70 + 2^70); level 5 does not
  CHECK(lay->interval_at(4).interval.has_value());
  CHECK(lay->interval_at(4).interval->lo == Integer(70) + pow2(70));
  CHECK_FALSE(lay->interval_at(5).interval.has_value());
  CHECK(lay->length_at(5) == 5);
  for (long n = 1; n <= 12; ++n) CHECK(lay->level_length(2 * n) == Rational(1, 2 * n));
}

TEST_CASE("block expressions reproduce the level ranges") {
  for (auto kind : {SpaceKind::ex1_x, SpaceKind::ex1_y, SpaceKind::ex2_x}) {
    for (auto mk : {&paper, &scaled}) {
      auto lay = (*mk)(kind);
      const auto& ex = lay->block_exprs();
      for (long k = 0; k <= 12; ++k) {
        auto r_first = lay->level_ranges(2 * k + 1);
        auto r_second = lay->level_ranges(2 * k + 2);
        auto eq = [&](const BlockExpr& e, const EvalInt& v) {
          EvalInt got = e.eval_at(k);
          if (got.is_exact() != v.is_exact()) return false;
          if (got.is_exact()) return *got.exact == *v.exact;
          return true;  // both huge: positions past the budget
        };
        CHECK(eq(ex.first_lo, r_first.first));
        CHECK(eq(ex.first_hi, r_first.second));
        CHECK(eq(ex.second_lo, r_second.first));
        CHECK(eq(ex.second_hi, r_second.second));
      }
    }
  }
}

TEST_CASE("intervals are strictly ordered and disjoint") {
  for (auto kind : {SpaceKind::ex1_x, SpaceKind::ex1_y, SpaceKind::ex2_x}) {
    auto lay = paper(kind);
    // the single-interval-per-level space runs out of materializable
    // endpoints at level 5
    const long j_max = kind == SpaceKind::ex2_x ? 4 : 400;
    Rational prev_hi = -1;
    for (long j = 0; j <= j_max; ++j) {
      auto ia = lay->interval_at(j);
      REQUIRE(ia.interval.has_value());
      CHECK(ia.interval->lo > prev_hi);
      CHECK(ia.interval->length() == ia.length);
      prev_hi = ia.interval->hi;
    }
  }
}

TEST_CASE("scaled preset keeps the schedule shape with polynomial bookkeeping") {
  auto lay = scaled(SpaceKind::ex1_x);
  // block k: shrinking level with 4k+5 intervals, growing with 6k+7
  CHECK(*lay->level(1).count.exact == 5);
  CHECK(*lay->level(2).count.exact == 7);
  CHECK(*lay->level(3).count.exact == 9);
  CHECK(lay->level(1).length == Rational(1, 2));
  CHECK(lay->level(2).length == 2);
  CHECK(lay->level(4).length == 4);
  // everything materializes arbitrarily deep
  CHECK(lay->interval_at(50000).interval.has_value());
  auto lay_y = scaled(SpaceKind::ex1_y);
  CHECK(*lay_y->level(1).count.exact == 5);
  CHECK(*lay_y->level(2).count.exact == 5);
  CHECK(*lay_y->level(3).count.exact == 13);
  // coverage conditions for the product argument: the second space's growing
  // level straddles the first space's shrinking level, block by block
  for (long k = 0; k <= 16; ++k) {
    auto xs = lay->level_ranges(2 * k + 1);
    auto yg = lay_y->level_ranges(2 * k + 1);
    CHECK(*yg.first.exact <= *xs.first.exact);
    CHECK(*yg.second.exact >= *xs.second.exact);
  }
}

TEST_CASE("threshold searches match the length schedules") {
  auto lay = paper(SpaceKind::ex1_x);
  CHECK(lay->last_shrink_block_above(Rational(1, 4)) == 0);   // 1/2 > 1/4 only at k=0
  CHECK(lay->last_shrink_block_above(Rational(1, 1000)) == 498);
  CHECK(lay->last_shrink_block_above(Rational(1)) == -1);
  CHECK(lay->first_grow_block_above(Rational(1)) == 0);
  CHECK(lay->first_grow_block_above(Rational(1000))== 500);
  auto lay2 = paper(SpaceKind::ex2_x);
  CHECK(lay2->first_grow_block_above(Rational(1)) == 1);  // lengths 2k+1
  CHECK(lay2->first_grow_block_above(Rational(1, 2)) == 0);
}

TEST_CASE("layout queries are safe under concurrent access") {
  auto lay = paper(SpaceKind::ex1_x);
  std::vector<std::thread> threads;
  std::atomic<bool> ok{true};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (long j = t; j < 2000; j += 4) {
        if (!(lay->length_at(j) > 0)) ok = false;
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(ok.load());
}

TEST_CASE("csv dump and json description") {
  auto lay = paper(SpaceKind::ex1_x);
  std::ostringstream oss;
  lay->dump_intervals_csv(4, oss);
  CHECK(oss.str() ==
        "j,level,position,lo,hi,length\n"
        "0,0,0,0,1,1\n"
        "1,1,0,2,5/2,1/2\n"
        "2,1,1,3,7/2,1/2\n"
        "3,2,0,18,20,2\n");
  auto desc = lay->describe(3);
  CHECK(desc["space"] == "ex1_x");
  CHECK(desc["levels"].size() == 3);
  CHECK(desc["levels"][2]["count"] == "5");
}
