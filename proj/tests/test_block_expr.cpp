#include "doctest.h"

#include "senslab/block_expr.hpp"

using namespace senslab;

namespace {
// independent recurrence oracle for the cumulative offsets
Integer ex1_offset_oracle(long m) {
  // L_1 = 2, L_n = 2^{offset_{n-1}} * 2n; offsets are the partial sums
  Integer off = 0;
  Integer L = 2;
  for (long n = 1; n <= m; ++n) {
    if (n > 1) L = pow2(off) * (2 * n);
    off += L;
  }
  return off;
}
Integer ex2_offset_oracle(long m) {
  Integer off = 0;
  Integer L = 2;
  for (long n = 1; n <= m; ++n) {
    if (n > 1) L = pow2(off);
    off += L;
  }
  return off;
}
}  // namespace

TEST_CASE("example1 offset schedule reproduces the recurrence") {
  auto sched = example1_schedule();
  CHECK(sched->offset(0).exact == Integer(0));
  CHECK(sched->offset(1).exact == Integer(2));
  CHECK(sched->offset(2).exact == Integer(18));
  CHECK(sched->offset(3).exact == Integer(1572882));
  for (long m = 0; m <= 3; ++m) CHECK(*sched->offset(m).exact == ex1_offset_oracle(m));
  CHECK(sched->gap(2).exact == Integer(16));
  CHECK(sched->gap(3).exact == Integer(1572864));
  // offset_4 = 1572882 + 8*2^1572882 still materializes under the default budget
  EvalInt o4 = sched->offset(4);
  REQUIRE(o4.is_exact());
  CHECK(bit_length(*o4.exact) == 1572886);
  // offset_5 does not; the certified lower bound is offset_4
  EvalInt o5 = sched->offset(5);
  CHECK_FALSE(o5.is_exact());
  CHECK(o5.huge_sign == 1);
  REQUIRE(o5.huge_bits.has_value());
  CHECK(*o5.huge_bits == *o4.exact);
}

TEST_CASE("example1 prefix power sums") {
  auto sched = example1_schedule();
  CHECK(sched->prefix_pow_sum0(-1).exact == Integer(0));
  CHECK(sched->prefix_pow_sum0(0).exact == Integer(1));
  CHECK(sched->prefix_pow_sum0(1).exact == Integer(5));           // 1 + 2^2
  CHECK(sched->prefix_pow_sum0(2).exact == Integer(262149));      // + 2^18
  EvalInt s3 = sched->prefix_pow_sum0(3);                          // + 2^1572882
  REQUIRE(s3.is_exact());
  CHECK(bit_length(*s3.exact) == 1572883);
  CHECK(*s3.exact == Integer(262149) + pow2(1572882));
  CHECK_FALSE(sched->prefix_pow_sum0(4).is_exact());
}

TEST_CASE("example2 offset schedule") {
  auto sched = example2_schedule();
  CHECK(sched->offset(2).exact == Integer(6));
  CHECK(sched->offset(3).exact == Integer(70));
  CHECK(sched->offset(4).exact == Integer(70) + pow2(70));
  for (long m = 0; m <= 4; ++m) CHECK(*sched->offset(m).exact == ex2_offset_oracle(m));
  CHECK_FALSE(sched->offset(5).is_exact());
  CHECK(*sched->offset(5).huge_bits == Integer(70) + pow2(70));
}

TEST_CASE("try_compare is sound and never guesses") {
  const long B = kDefaultBitBudget;
  EvalInt small = EvalInt::of(Integer(12345));
  EvalInt neg = EvalInt::of(Integer(-5));
  EvalInt big = EvalInt::huge(1, Integer(100));
  EvalInt bigneg = EvalInt::huge(-1, Integer(100));
  CHECK(try_compare(small, big, B) == -1);
  CHECK(try_compare(big, small, B) == 1);
  CHECK(try_compare(neg, bigneg, B) == 1);
  CHECK(try_compare(bigneg, big, B) == -1);
  CHECK_FALSE(try_compare(big, EvalInt::huge(1, Integer(200)), B).has_value());
  // an exact value at or past the certified floor cannot be ordered
  CHECK_FALSE(try_compare(EvalInt::of(pow2(100)), big, B).has_value());
  CHECK(try_compare(EvalInt::of(Integer(3)), EvalInt::of(Integer(4)), B) == -1);
}

TEST_CASE("block expressions evaluate and shift correctly") {
  BlockExpr p = BlockExpr::polynomial({Integer(5), Integer(-3), Integer(1)});  // k^2-3k+5
  CHECK(*p.eval_at(0).exact == 5);
  CHECK(*p.eval_at(4).exact == 9);
  BlockExpr q = p.shifted_k(2);  // (k+2)^2-3(k+2)+5 = k^2+k+3
  CHECK(*q.eval_at(0).exact == 3);
  CHECK(*q.eval_at(3).exact == 15);
  auto sched = example2_schedule();
  BlockExpr s = BlockExpr::prefix_sum0(sched, 2, -1);  // S0(2k-1)
  CHECK(*s.eval_at(0).exact == 0);  // S0(-1)
  CHECK(*s.eval_at(1).exact == 5);  // 1 + 2^2
  CHECK(*s.eval_at(2).exact == Integer(69) + pow2(70));  // 1 + 4 + 64 + 2^70
  BlockExpr shifted = s.shifted_k(1);
  CHECK(*shifted.eval_at(0).exact == 5);
  BlockExpr sum = s + BlockExpr::affine(2, 3);
  CHECK(*sum.eval_at(2).exact == Integer(76) + pow2(70));
  BlockExpr diff = sum - sum;
  CHECK(diff.is_zero());
}

TEST_CASE("dominance decides signs past the budget") {
  auto sched = example1_schedule();
  // S0(2k) - S0(2k-1) = 2^{offset_{2k}} > 0, even where nothing materializes
  BlockExpr d = BlockExpr::prefix_sum0(sched, 2, 0) - BlockExpr::prefix_sum0(sched, 2, -1);
  CHECK(d.sign_at(1) == 1);
  CHECK(d.sign_at(5) == 1);   // depth 10: far past the budget
  CHECK(d.sign_at(12) == 1);
  auto ev = d.eventual_sign(1);
  CHECK(ev.certified);
  CHECK(ev.sign == 1);
  CHECK(ev.mode == "window+dominance");
  CHECK(d.unbounded_above(1));
  // the reverse is eventually negative
  auto evneg = (-d).eventual_sign(1);
  CHECK(evneg.certified);
  CHECK(evneg.sign == -1);
  // a polynomial loses to the tower once the first window block clears it
  BlockExpr mix = d - BlockExpr::polynomial({Integer(1000000), Integer(999), Integer(77)});
  CHECK(mix.sign_at(1) == -1);  // 2^18 < 1001076: exact arithmetic wins here
  CHECK(mix.sign_at(2) == 1);
  CHECK(mix.sign_at(9) == 1);
  auto ev_early = mix.eventual_sign(1);
  CHECK_FALSE(ev_early.certified);  // the window catches the k=1 sign flip
  auto evmix = mix.eventual_sign(2);
  CHECK(evmix.certified);
  CHECK(evmix.sign == 1);
}

TEST_CASE("polynomial eventual signs are exact") {
  BlockExpr p = BlockExpr::affine(2, -5);  // 2k - 5
  auto from0 = p.eventual_sign(0);
  CHECK_FALSE(from0.certified);  // sign flips inside [0, ...]
  auto from3 = p.eventual_sign(3);
  CHECK(from3.certified);
  CHECK(from3.sign == 1);
  CHECK(from3.mode == "poly-exact");
  CHECK(p.unbounded_above(3));
  BlockExpr c = BlockExpr::constant(-4);
  auto evc = c.eventual_sign(0);
  CHECK(evc.certified);
  CHECK(evc.sign == -1);
  CHECK_FALSE(c.unbounded_above(0));
  CHECK(c.is_bounded());
  CHECK(*c.constant_value() == -4);
}

TEST_CASE("block expression json round-trip") {
  auto sched = example1_schedule();
  BlockExpr e = BlockExpr::prefix_sum0(sched, 2, 1) + BlockExpr::affine(2, 3) -
                BlockExpr::prefix_sum0(sched, 2, 0);
  BlockExpr back = BlockExpr::from_json(e.to_json());
  for (long k = 0; k <= 3; ++k) {
    EvalInt a = e.eval_at(k), b = back.eval_at(k);
    CHECK(a.is_exact() == b.is_exact());
    if (a.is_exact()) CHECK(*a.exact == *b.exact);
  }
  CHECK(e.to_string() == back.to_string());
}
