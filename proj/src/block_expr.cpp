#include "senslab/block_expr.hpp"

#include <algorithm>
#include <map>

namespace senslab {

std::string EvalInt::to_string() const {
  if (exact) {
    if (bit_length(*exact) <= 256) return to_decimal(*exact);
    return "exact(" + std::to_string(bit_length(*exact)) + " bits)";
  }
  std::string s = huge_sign < 0 ? "-huge" : "huge";
  if (huge_bits) {
    if (bit_length(*huge_bits) <= 64) s += "(>=2^" + to_decimal(*huge_bits) + ")";
    else s += "(>=2^(" + std::to_string(bit_length(*huge_bits)) + "-bit exponent))";
  } else {
    s += "(exponent past the budget)";
  }
  return s;
}

std::optional<int> try_compare(const EvalInt& a, const EvalInt& b, long budget_bits) {
  if (a.is_exact() && b.is_exact()) {
    if (*a.exact < *b.exact) return -1;
    if (*a.exact > *b.exact) return 1;
    return 0;
  }
  auto exact_vs_huge = [&](const Integer& e, const EvalInt& h) -> std::optional<int> {
    // h's magnitude is at least 2^floor_bits
    const Integer floor_bits = h.huge_bits ? *h.huge_bits : Integer(budget_bits);
    if (Integer(bit_length(e)) <= floor_bits) return h.huge_sign > 0 ? -1 : 1;
    return std::nullopt;
  };
  if (a.is_exact()) return exact_vs_huge(*a.exact, b);
  if (b.is_exact()) {
    auto r = exact_vs_huge(*b.exact, a);
    if (r) return -*r;
    return std::nullopt;
  }
  if (a.huge_sign != b.huge_sign) return a.huge_sign < b.huge_sign ? -1 : 1;
  return std::nullopt;  // two same-signed huges: lower bounds cannot order them
}

// ---------------------------------------------------------------------------
// TowerSchedule

void TowerSchedule::ensure(long m) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (offsets_.empty()) {
    offsets_.push_back(EvalInt::of(0));            // Lscript_0 = 0
    gaps_.push_back(EvalInt::of(0));               // unused slot
    sums_.push_back(EvalInt::of(1));               // S0(0) = 2^0
    offsets_.push_back(EvalInt::of(2));            // Lscript_1 = 2
    gaps_.push_back(EvalInt::of(2));               // L_1 = 2
    sums_.push_back(EvalInt::of(5));               // S0(1) = 1 + 4
  }
  while (static_cast<long>(offsets_.size()) <= m) {
    const long n = static_cast<long>(offsets_.size());
    const EvalInt& prev = offsets_[n - 1];
    EvalInt gap_n, off_n, sum_n;
    if (prev.is_exact() && *prev.exact <= budget_) {
      Integer g = pow2(*prev.exact, budget_) * gap_multiplier(n);
      if (bit_length(g) <= budget_) {
        gap_n = EvalInt::of(g);
        off_n = EvalInt::of(*prev.exact + g);
      } else {
        gap_n = EvalInt::huge(1, *prev.exact);
        off_n = EvalInt::huge(1, *prev.exact);
      }
    } else {
      // 2^{Lscript_{n-1}} with Lscript_{n-1} past the budget: keep the best
      // known lower bound on the bit count.
      std::optional<Integer> bits;
      if (prev.is_exact()) bits = *prev.exact;
      else bits = prev.huge_bits;
      gap_n = EvalInt::huge(1, bits);
      off_n = EvalInt::huge(1, bits);
    }
    // S0(n) = S0(n-1) + 2^{Lscript_n}
    const EvalInt& psum = sums_[n - 1];
    if (off_n.is_exact() && *off_n.exact <= budget_ && psum.is_exact()) {
      sum_n = EvalInt::of(*psum.exact + pow2(*off_n.exact, budget_));
    } else {
      std::optional<Integer> bits;
      if (off_n.is_exact()) bits = *off_n.exact;
      else bits = off_n.huge_bits;
      if (!bits && !psum.is_exact()) bits = psum.huge_bits;
      sum_n = EvalInt::huge(1, bits);
    }
    offsets_.push_back(off_n);
    gaps_.push_back(gap_n);
    sums_.push_back(sum_n);
  }
}

EvalInt TowerSchedule::offset(long m) const {
  if (m <= 0) return EvalInt::of(0);
  ensure(m);
  std::lock_guard<std::mutex> lock(mu_);
  return offsets_[m];
}

EvalInt TowerSchedule::gap(long m) const {
  if (m < 1) throw InvalidParams("TowerSchedule::gap: m must be >= 1");
  ensure(m);
  std::lock_guard<std::mutex> lock(mu_);
  return gaps_[m];
}

EvalInt TowerSchedule::prefix_pow_sum0(long m) const {
  if (m < 0) return EvalInt::of(0);
  ensure(m);
  std::lock_guard<std::mutex> lock(mu_);
  return sums_[m];
}

namespace {

class Example1Schedule : public TowerSchedule {
public:
  explicit Example1Schedule(long budget) : TowerSchedule(budget) {}
  std::string name() const override { return "example1"; }

protected:
  Integer gap_multiplier(long m) const override { return Integer(2 * m); }
};

class Example2Schedule : public TowerSchedule {
public:
  explicit Example2Schedule(long budget) : TowerSchedule(budget) {}
  std::string name() const override { return "example2"; }

protected:
  Integer gap_multiplier(long) const override { return Integer(1); }
};

}  // namespace

std::shared_ptr<const TowerSchedule> example1_schedule(long budget_bits) {
  static std::shared_ptr<const TowerSchedule> def =
      std::make_shared<Example1Schedule>(kDefaultBitBudget);
  if (budget_bits == kDefaultBitBudget) return def;
  return std::make_shared<Example1Schedule>(budget_bits);
}

std::shared_ptr<const TowerSchedule> example2_schedule(long budget_bits) {
  static std::shared_ptr<const TowerSchedule> def =
      std::make_shared<Example2Schedule>(kDefaultBitBudget);
  if (budget_bits == kDefaultBitBudget) return def;
  return std::make_shared<Example2Schedule>(budget_bits);
}

std::shared_ptr<const TowerSchedule> schedule_by_name(const std::string& name, long budget_bits) {
  if (name == "example1") return example1_schedule(budget_bits);
  if (name == "example2") return example2_schedule(budget_bits);
  throw InvalidParams("unknown schedule: " + name);
}

// ---------------------------------------------------------------------------
// BlockExpr

BlockExpr BlockExpr::constant(Integer c) {
  BlockExpr e;
  e.poly_.push_back(std::move(c));
  e.normalize();
  return e;
}

BlockExpr BlockExpr::affine(Integer a, Integer b) {
  BlockExpr e;
  e.poly_ = {std::move(b), std::move(a)};
  e.normalize();
  return e;
}

BlockExpr BlockExpr::polynomial(std::vector<Integer> coeffs) {
  BlockExpr e;
  e.poly_ = std::move(coeffs);
  e.normalize();
  return e;
}

BlockExpr BlockExpr::prefix_sum0(std::shared_ptr<const TowerSchedule> sched, long slope,
                                 long offset, Integer coeff) {
  if (!sched) throw InvalidParams("prefix_sum0 requires a schedule");
  if (slope < 0) throw InvalidParams("prefix_sum0: negative depth slope");
  BlockExpr e;
  e.sched_ = std::move(sched);
  e.towers_.push_back(TowerTerm{std::move(coeff), slope, offset});
  e.normalize();
  return e;
}

void BlockExpr::normalize() {
  std::map<std::pair<long, long>, Integer> merged;
  for (auto& t : towers_) {
    if (t.coeff == 0) continue;
    if (t.slope == 0 && t.offset <= 0) {
      // constant tower: S0(<=-1) = 0, S0(0) = 1
      if (t.offset == 0) {
        if (poly_.empty()) poly_.push_back(0);
        poly_[0] += t.coeff;
      }
      continue;
    }
    merged[{t.slope, t.offset}] += t.coeff;
  }
  towers_.clear();
  for (auto& [key, coeff] : merged) {
    if (coeff != 0) towers_.push_back(TowerTerm{coeff, key.first, key.second});
  }
  // deepest-first order
  std::sort(towers_.begin(), towers_.end(), [](const TowerTerm& a, const TowerTerm& b) {
    if (a.slope != b.slope) return a.slope > b.slope;
    return a.offset > b.offset;
  });
  while (!poly_.empty() && poly_.back() == 0) poly_.pop_back();
  if (towers_.empty()) sched_.reset();
}

long BlockExpr::poly_degree() const {
  return static_cast<long>(poly_.size()) - 1;  // -1 for the zero polynomial
}

Integer BlockExpr::poly_eval(const Integer& k) const {
  Integer acc = 0;
  for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) acc = acc * k + *it;
  return acc;
}

BlockExpr BlockExpr::operator+(const BlockExpr& o) const {
  if (sched_ && o.sched_ && sched_ != o.sched_ && sched_->name() != o.sched_->name())
    throw InvalidParams("BlockExpr: mixing incompatible schedules");
  BlockExpr r;
  r.sched_ = sched_ ? sched_ : o.sched_;
  r.towers_ = towers_;
  r.towers_.insert(r.towers_.end(), o.towers_.begin(), o.towers_.end());
  r.poly_.resize(std::max(poly_.size(), o.poly_.size()), Integer(0));
  for (size_t i = 0; i < poly_.size(); ++i) r.poly_[i] += poly_[i];
  for (size_t i = 0; i < o.poly_.size(); ++i) r.poly_[i] += o.poly_[i];
  r.normalize();
  return r;
}

BlockExpr BlockExpr::operator-() const {
  BlockExpr r = *this;
  for (auto& t : r.towers_) t.coeff = -t.coeff;
  for (auto& c : r.poly_) c = -c;
  return r;
}

BlockExpr BlockExpr::operator-(const BlockExpr& o) const { return *this + (-o); }

BlockExpr BlockExpr::scaled(const Integer& c) const {
  BlockExpr r = *this;
  for (auto& t : r.towers_) t.coeff *= c;
  for (auto& p : r.poly_) p *= c;
  r.normalize();
  return r;
}

BlockExpr BlockExpr::plus_const(const Integer& c) const { return *this + constant(c); }

BlockExpr BlockExpr::shifted_k(long delta) const { return composed_affine(1, delta); }

BlockExpr BlockExpr::composed_affine(long a, long b) const {
  if (a < 1) throw InvalidParams("composed_affine: slope must be >= 1");
  BlockExpr r;
  r.sched_ = sched_;
  r.towers_ = towers_;
  for (auto& t : r.towers_) {
    t.offset += t.slope * b;
    t.slope *= a;
  }
  // polynomial substitution by Horner in (a*k + b)
  if (!poly_.empty()) {
    std::vector<Integer> acc;  // coefficients of the running result
    for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) {
      // acc = acc*(a*k+b) + c
      std::vector<Integer> next(acc.size() + 1, Integer(0));
      for (size_t i = 0; i < acc.size(); ++i) {
        next[i + 1] += acc[i] * a;
        next[i] += acc[i] * b;
      }
      if (next.empty()) next.push_back(Integer(0));
      next[0] += *it;
      acc = std::move(next);
    }
    r.poly_ = std::move(acc);
  }
  r.normalize();
  return r;
}

bool BlockExpr::has_towers() const { return !towers_.empty(); }

bool BlockExpr::is_zero() const { return towers_.empty() && poly_.empty(); }

bool BlockExpr::is_bounded() const {
  for (const auto& t : towers_)
    if (t.slope >= 1) return false;
  return poly_degree() <= 0;
}

std::optional<Integer> BlockExpr::constant_value() const {
  if (!is_bounded()) return std::nullopt;
  Integer acc = poly_.empty() ? Integer(0) : poly_[0];
  for (const auto& t : towers_) {
    EvalInt s = sched_->prefix_pow_sum0(t.offset);
    if (!s.is_exact()) return std::nullopt;
    acc += t.coeff * *s.exact;
  }
  return acc;
}

namespace {
int int_sign(const Integer& v) { return v == 0 ? 0 : (v < 0 ? -1 : 1); }
}  // namespace

EvalInt BlockExpr::eval_at(long k) const {
  // instantiate towers
  std::vector<std::pair<long, Integer>> inst;  // (depth m, coeff), deepest first
  for (const auto& t : towers_) {
    long m = t.slope * k + t.offset;
    if (m < 0) continue;
    inst.emplace_back(m, t.coeff);
  }
  Integer p = poly_eval(Integer(k));
  bool all_exact = true;
  Integer exact_sum = p;
  for (const auto& [m, c] : inst) {
    EvalInt s = sched_->prefix_pow_sum0(m);
    if (!s.is_exact()) {
      all_exact = false;
      break;
    }
    exact_sum += c * *s.exact;
  }
  if (all_exact) return EvalInt::of(exact_sum);

  // Dominant-term analysis. inst is deepest-first (towers_ kept sorted).
  const long m_star = inst.front().first;
  const Integer& c_star = inst.front().second;
  long m_second = -1;
  Integer other_abs = 0;
  for (size_t i = 1; i < inst.size(); ++i) {
    m_second = std::max(m_second, inst[i].first);
    other_abs += boost::multiprecision::abs(inst[i].second);
  }
  // margin: L_{m*} >= bits(other_abs) + 2 covers the lower towers;
  //         Lscript_{m*} >= bits(|P|) + 2 covers the polynomial part.
  const long budget = sched_->budget_bits();
  Integer needed_towers = Integer(bit_length(other_abs)) + 2;
  Integer needed_poly = Integer(bit_length(p)) + 2;
  auto ge = [&](const EvalInt& big, const Integer& small) {
    auto c = try_compare(big, EvalInt::of(small), budget);
    return c && *c >= 0;
  };
  if ((m_second < 0 || ge(sched_->gap(m_star), needed_towers)) &&
      ge(sched_->offset(m_star), needed_poly)) {
    // |E| >= 2^{Lscript_{m*} - 2}
    EvalInt off = sched_->offset(m_star);
    std::optional<Integer> bits;
    if (off.is_exact()) bits = *off.exact - 2;
    else bits = off.huge_bits;  // still a valid (weaker) lower bound
    return EvalInt::huge(int_sign(c_star), bits);
  }
  throw Inconclusive("BlockExpr::eval_at: dominance margin not established at k=" +
                     std::to_string(k));
}

int BlockExpr::sign_at(long k) const {
  EvalInt v = eval_at(k);
  if (v.is_exact()) return int_sign(*v.exact);
  return v.huge_sign;
}

BlockExpr::EventualSign BlockExpr::eventual_sign(long k0, long window) const {
  EventualSign out;
  out.checked_from = k0;

  if (towers_.empty()) {
    if (poly_.empty()) {
      out.sign = 0;
      out.certified = true;
      out.mode = "poly-exact";
      out.checked_to = k0;
      return out;
    }
    const int lead = int_sign(poly_.back());
    if (poly_degree() == 0) {
      out.sign = lead;
      out.certified = true;
      out.mode = "poly-exact";
      out.checked_to = k0;
      return out;
    }
    // all real roots lie below 1 + max |c_i| / |c_d|
    Integer max_abs = 0;
    for (size_t i = 0; i + 1 < poly_.size(); ++i)
      max_abs = std::max(max_abs, Integer(boost::multiprecision::abs(poly_[i])));
    Integer cauchy = 1 + max_abs / boost::multiprecision::abs(poly_.back()) + 1;
    long bound = cauchy > 1000000 ? 1000000 : static_cast<long>(cauchy);
    long kmax = std::max(k0 + window, bound);
    if (cauchy > 1000000) {
      out.detail = "polynomial root bound too large to scan";
      return out;
    }
    for (long k = k0; k <= kmax; ++k) {
      if (int_sign(poly_eval(Integer(k))) != lead) {
        out.detail = "sign differs at k=" + std::to_string(k);
        out.checked_to = k;
        return out;
      }
    }
    out.sign = lead;
    out.certified = true;
    out.mode = "poly-exact";
    out.checked_to = kmax;
    return out;
  }

  // Dominant tower term (towers_ sorted deepest-first by (slope, offset)).
  const TowerTerm& dom = towers_.front();
  const int s = int_sign(dom.coeff);
  // crossover index from which dom's depth strictly exceeds every other depth
  long cross = k0;
  for (size_t i = 1; i < towers_.size(); ++i) {
    const TowerTerm& t = towers_[i];
    if (dom.slope > t.slope) {
      long num = t.offset - dom.offset;
      long den = dom.slope - t.slope;
      long c = num >= 0 ? num / den + 1 : 0;
      cross = std::max(cross, c);
    }
  }
  if (dom.slope >= 1) {
    long c = dom.offset >= 1 ? 0 : (1 - dom.offset + dom.slope - 1) / dom.slope;
    cross = std::max(cross, c);
  } else if (dom.offset < 1) {
    out.detail = "dominant tower is degenerate";
    return out;
  }

  const long kmax = std::max(k0 + window, cross + 2);
  for (long k = k0; k <= kmax; ++k) {
    int sk;
    try {
      sk = sign_at(k);
    } catch (const Inconclusive&) {
      out.detail = "undecidable at k=" + std::to_string(k);
      out.checked_to = k;
      return out;
    }
    if (sk != s) {
      out.detail = "sign differs at k=" + std::to_string(k);
      out.checked_to = k;
      return out;
    }
  }
  // Tail: margins only improve because the gaps L_m increase with m and the
  // dominant depth increases with k. Certify the first block past the window
  // against a polynomial bound valid for every representable k.
  Integer other_abs = 0;
  for (size_t i = 1; i < towers_.size(); ++i)
    other_abs += boost::multiprecision::abs(towers_[i].coeff);
  Integer poly_abs = 0;
  for (const auto& c : poly_) poly_abs += boost::multiprecision::abs(c);
  Integer needed = Integer(bit_length(other_abs)) + Integer(bit_length(poly_abs)) +
                   Integer(64 * std::max<long>(poly_degree(), 0)) + 8;
  const long edge = kmax + 1;
  const long m_edge = dom.slope * edge + dom.offset;
  auto cmp = try_compare(sched_->gap(std::max<long>(m_edge, 1)), EvalInt::of(needed),
                         sched_->budget_bits());
  if (dom.slope == 0) {
    // constant huge tower: the margin at any single k certifies every k up to
    // the polynomial bound, already covered by `needed`.
    cmp = try_compare(sched_->gap(std::max<long>(dom.offset, 1)), EvalInt::of(needed),
                      sched_->budget_bits());
  }
  if (cmp && *cmp >= 0) {
    out.sign = s;
    out.certified = true;
    out.mode = "window+dominance";
    out.checked_to = kmax;
    return out;
  }
  out.detail = "tail margin not established";
  out.checked_to = kmax;
  return out;
}

bool BlockExpr::unbounded_above(long k0, long window) const {
  if (!towers_.empty()) {
    const TowerTerm& dom = towers_.front();
    if (dom.slope >= 1 && dom.coeff > 0) {
      auto ev = eventual_sign(k0, window);
      return ev.certified && ev.sign > 0;
    }
    return false;
  }
  return poly_degree() >= 1 && poly_.back() > 0;
}

std::string BlockExpr::to_string() const {
  std::string s;
  auto append_term = [&](const std::string& term, bool neg) {
    if (s.empty()) {
      s = neg ? "-" + term : term;
    } else {
      s += neg ? " - " + term : " + " + term;
    }
  };
  for (const auto& t : towers_) {
    Integer a = boost::multiprecision::abs(t.coeff);
    std::string depth;
    if (t.slope == 0) depth = std::to_string(t.offset);
    else {
      depth = (t.slope == 1 ? "k" : std::to_string(t.slope) + "k");
      if (t.offset > 0) depth += "+" + std::to_string(t.offset);
      else if (t.offset < 0) depth += std::to_string(t.offset);
    }
    std::string term = (a == 1 ? "" : to_decimal(a) + "*") + "S0(" + depth + ")";
    append_term(term, t.coeff < 0);
  }
  for (size_t i = poly_.size(); i-- > 0;) {
    if (poly_[i] == 0) continue;
    Integer a = boost::multiprecision::abs(poly_[i]);
    std::string term;
    if (i == 0) term = to_decimal(a);
    else {
      term = (a == 1 ? "" : to_decimal(a) + "*");
      term += i == 1 ? "k" : "k^" + std::to_string(i);
    }
    append_term(term, poly_[i] < 0);
  }
  if (s.empty()) s = "0";
  return s;
}

nlohmann::ordered_json BlockExpr::to_json() const {
  nlohmann::ordered_json j;
  j["text"] = to_string();
  j["towers"] = nlohmann::ordered_json::array();
  for (const auto& t : towers_) {
    j["towers"].push_back({{"coeff", to_decimal(t.coeff)},
                           {"depth_slope", t.slope},
                           {"depth_offset", t.offset}});
  }
  j["poly"] = nlohmann::ordered_json::array();
  for (const auto& c : poly_) j["poly"].push_back(to_decimal(c));
  j["schedule"] = sched_ ? nlohmann::ordered_json(sched_->name()) : nlohmann::ordered_json(nullptr);
  return j;
}

BlockExpr BlockExpr::from_json(const nlohmann::ordered_json& j, long budget_bits) {
  BlockExpr e;
  if (!j["schedule"].is_null()) e.sched_ = schedule_by_name(j["schedule"].get<std::string>(), budget_bits);
  for (const auto& t : j["towers"]) {
    e.towers_.push_back(TowerTerm{integer_from_decimal(t["coeff"].get<std::string>()),
                                  t["depth_slope"].get<long>(), t["depth_offset"].get<long>()});
  }
  for (const auto& c : j["poly"]) e.poly_.push_back(integer_from_decimal(c.get<std::string>()));
  e.normalize();
  return e;
}

}  // namespace senslab
