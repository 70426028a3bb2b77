#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "senslab/numeric.hpp"

#include "json.hpp"

namespace senslab {

/// An integer that is either materialized exactly or certified huge: when
/// `exact` is empty the value satisfies sign*|value| with |value| >= 2^huge_bits
/// (huge_bits empty means even the bit count exceeded the budget).
struct EvalInt {
  std::optional<Integer> exact;
  int huge_sign = 0;
  std::optional<Integer> huge_bits;

  bool is_exact() const { return exact.has_value(); }

  static EvalInt of(Integer v) { return EvalInt{std::move(v), 0, std::nullopt}; }
  static EvalInt huge(int sign, std::optional<Integer> bits) {
    return EvalInt{std::nullopt, sign, std::move(bits)};
  }

  std::string to_string() const;
};

/// Sound three-way comparison from the certified bounds; empty when the
/// bounds cannot decide the order (never guesses).
std::optional<int> try_compare(const EvalInt& a, const EvalInt& b, long budget_bits);

/// Offset schedule of a tower-growth layout: the cumulative level offsets
/// Lscript_m, their gaps L_m (Lscript_m = Lscript_{m-1} + L_m), and the prefix
/// sums S0(m) = sum_{i=0..m} 2^{Lscript_i}. Values past the bit budget are
/// reported as certified-huge, never wrong. L_m is strictly increasing, so
/// depth order alone decides which 2^{Lscript} term dominates.
class TowerSchedule {
public:
  virtual ~TowerSchedule() = default;
  virtual std::string name() const = 0;

  long budget_bits() const { return budget_; }

  EvalInt offset(long m) const;           // Lscript_m; 0 for m <= 0
  EvalInt gap(long m) const;              // L_m for m >= 1
  EvalInt prefix_pow_sum0(long m) const;  // S0(m); 0 for m < 0

protected:
  explicit TowerSchedule(long budget_bits) : budget_(budget_bits) {}
  /// L_m = 2^{Lscript_{m-1}} * gap_multiplier(m) for m >= 2; L_1 = 2.
  virtual Integer gap_multiplier(long m) const = 0;

private:
  void ensure(long m) const;

  long budget_;
  mutable std::vector<EvalInt> offsets_;  // index m
  mutable std::vector<EvalInt> gaps_;     // index m (gaps_[0] unused)
  mutable std::vector<EvalInt> sums_;     // S0(m)
  mutable std::mutex mu_;
};

std::shared_ptr<const TowerSchedule> example1_schedule(long budget_bits = kDefaultBitBudget);
std::shared_ptr<const TowerSchedule> example2_schedule(long budget_bits = kDefaultBitBudget);
std::shared_ptr<const TowerSchedule> schedule_by_name(const std::string& name,
                                                      long budget_bits = kDefaultBitBudget);

/// Closed-form integer expression over a block index k >= 0:
///
///   E(k) = sum_j coeff_j * S0(slope_j*k + offset_j)  +  P(k)
///
/// with P an integer polynomial. This family covers every block-boundary and
/// width expression the layouts produce, and supports exact evaluation,
/// pointwise sign decisions, and eventual-sign certification by the
/// leading-window + dominance rule (the deepest 2^{Lscript} term wins).
class BlockExpr {
public:
  struct TowerTerm {
    Integer coeff;
    long slope = 0;   // depth(k) = slope*k + offset, slope >= 0
    long offset = 0;
  };

  BlockExpr() = default;

  static BlockExpr constant(Integer c);
  static BlockExpr affine(Integer a, Integer b);        // a*k + b
  static BlockExpr polynomial(std::vector<Integer> coeffs);  // coeffs[i]*k^i
  static BlockExpr prefix_sum0(std::shared_ptr<const TowerSchedule> sched,
                               long slope, long offset, Integer coeff = 1);

  BlockExpr operator+(const BlockExpr& o) const;
  BlockExpr operator-(const BlockExpr& o) const;
  BlockExpr operator-() const;
  BlockExpr scaled(const Integer& c) const;
  BlockExpr plus_const(const Integer& c) const;
  BlockExpr shifted_k(long delta) const;  // substitute k -> k + delta
  BlockExpr composed_affine(long a, long b) const;  // substitute k -> a*k + b, a >= 1

  bool has_towers() const;               // any term with slope >= 1, or huge constant term
  bool is_zero() const;
  /// True when the expression takes finitely many... i.e. is eventually constant:
  /// no growing towers and polynomial degree 0.
  bool is_bounded() const;
  std::optional<Integer> constant_value() const;  // when bounded and exactly representable

  EvalInt eval_at(long k) const;
  /// Sign of E(k): -1, 0, +1. Uses exact evaluation when possible, otherwise
  /// the dominant-term margin rule. Throws Inconclusive when undecidable.
  int sign_at(long k) const;

  struct EventualSign {
    int sign = 0;             // sign for every k >= k0 (when certified)
    bool certified = false;   // whole-tail certification succeeded
    long checked_from = 0;
    long checked_to = 0;
    std::string mode;         // "exact-window", "poly-exact", "window+dominance"
    std::string detail;
  };
  /// Certify the sign of E(k) for all k >= k0: explicit checks on the leading
  /// window, then the dominance rule (growing towers) or an exact polynomial
  /// root bound for the tail.
  EventualSign eventual_sign(long k0, long window = 12) const;

  /// True when E(k) -> +infinity is certified (dominant growing tower with a
  /// positive coefficient, or positive-leading polynomial of degree >= 1).
  bool unbounded_above(long k0, long window = 12) const;

  const std::vector<TowerTerm>& towers() const { return towers_; }
  const std::vector<Integer>& poly() const { return poly_; }
  std::shared_ptr<const TowerSchedule> schedule() const { return sched_; }

  std::string to_string() const;
  nlohmann::ordered_json to_json() const;
  static BlockExpr from_json(const nlohmann::ordered_json& j, long budget_bits = kDefaultBitBudget);

private:
  void normalize();
  long poly_degree() const;
  Integer poly_eval(const Integer& k) const;

  std::vector<TowerTerm> towers_;
  std::vector<Integer> poly_;
  std::shared_ptr<const TowerSchedule> sched_;
};

}  // namespace senslab
