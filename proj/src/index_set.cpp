#include "senslab/index_set.hpp"

#include <algorithm>

namespace senslab {

namespace {
constexpr long kMaterializeBlockGuard = 2'000'000;
}

// ---------------------------------------------------------------------------
// RangeSet

RangeSet RangeSet::of(std::vector<IntRange> ranges, std::optional<Integer> tail) {
  for (const auto& r : ranges) {
    if (r.lo > r.hi) throw InvalidParams("IntRange: lo > hi");
    if (r.lo < 0) throw InvalidParams("IntRange: subsets of N0 only");
  }
  if (tail && *tail < 0) tail = Integer(0);
  std::sort(ranges.begin(), ranges.end(),
            [](const IntRange& a, const IntRange& b) { return a.lo < b.lo; });
  std::vector<IntRange> merged;
  for (auto& r : ranges) {
    if (!merged.empty() && r.lo <= merged.back().hi + 1) {
      if (r.hi > merged.back().hi) merged.back().hi = r.hi;
    } else {
      merged.push_back(std::move(r));
    }
  }
  RangeSet s;
  s.tail_ = std::move(tail);
  if (s.tail_) {
    while (!merged.empty() && merged.back().hi >= *s.tail_ - 1) {
      if (merged.back().lo < *s.tail_) s.tail_ = merged.back().lo;
      merged.pop_back();
    }
  }
  s.ranges_ = std::move(merged);
  return s;
}

RangeSet RangeSet::single(Integer lo, Integer hi) {
  return of({IntRange{std::move(lo), std::move(hi)}});
}

bool RangeSet::contains(const Integer& n) const {
  if (n < 0) return false;
  if (tail_ && n >= *tail_) return true;
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), n,
                             [](const Integer& v, const IntRange& r) { return v < r.lo; });
  if (it == ranges_.begin()) return false;
  --it;
  return n <= it->hi;
}

RangeSet RangeSet::unite(const RangeSet& o) const {
  std::vector<IntRange> all = ranges_;
  all.insert(all.end(), o.ranges_.begin(), o.ranges_.end());
  std::optional<Integer> tail;
  if (tail_ && o.tail_) tail = std::min(*tail_, *o.tail_);
  else if (tail_) tail = tail_;
  else if (o.tail_) tail = o.tail_;
  return of(std::move(all), std::move(tail));
}

namespace {
std::vector<IntRange> intersect_ranges(const std::vector<IntRange>& a,
                                       const std::vector<IntRange>& b) {
  std::vector<IntRange> out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    Integer lo = std::max(a[i].lo, b[j].lo);
    Integer hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back(IntRange{lo, hi});
    if (a[i].hi < b[j].hi) ++i;
    else ++j;
  }
  return out;
}

std::vector<IntRange> clip_ranges_from(const std::vector<IntRange>& a, const Integer& t) {
  std::vector<IntRange> out;
  for (const auto& r : a) {
    if (r.hi < t) continue;
    out.push_back(IntRange{std::max(r.lo, t), r.hi});
  }
  return out;
}
}  // namespace

RangeSet RangeSet::intersect(const RangeSet& o) const {
  std::vector<IntRange> parts = intersect_ranges(ranges_, o.ranges_);
  if (o.tail_) {
    auto extra = clip_ranges_from(ranges_, *o.tail_);
    parts.insert(parts.end(), extra.begin(), extra.end());
  }
  if (tail_) {
    auto extra = clip_ranges_from(o.ranges_, *tail_);
    parts.insert(parts.end(), extra.begin(), extra.end());
  }
  std::optional<Integer> tail;
  if (tail_ && o.tail_) tail = std::max(*tail_, *o.tail_);
  return of(std::move(parts), std::move(tail));
}

RangeSet RangeSet::complement_in_n0() const {
  std::vector<IntRange> out;
  Integer pos = 0;
  for (const auto& r : ranges_) {
    if (r.lo > pos) out.push_back(IntRange{pos, r.lo - 1});
    pos = r.hi + 1;
  }
  if (tail_) {
    if (*tail_ > pos) out.push_back(IntRange{pos, *tail_ - 1});
    return of(std::move(out));
  }
  return of(std::move(out), pos);
}

bool RangeSet::includes(const RangeSet& o) const {
  for (const auto& r : o.ranges_) {
    if (tail_ && r.lo >= *tail_) continue;
    auto it = std::upper_bound(ranges_.begin(), ranges_.end(), r.lo,
                               [](const Integer& v, const IntRange& q) { return v < q.lo; });
    bool covered = false;
    if (it != ranges_.begin()) {
      --it;
      covered = r.lo >= it->lo && r.hi <= it->hi;
    }
    if (!covered) {
      if (tail_ && r.lo >= *tail_) covered = true;
      // split case: range partially below tail
      if (tail_ && !covered && r.hi >= *tail_) {
        // the sub-range below the tail must be covered by a plain range
        Integer below_hi = *tail_ - 1;
        auto jt = std::upper_bound(ranges_.begin(), ranges_.end(), r.lo,
                                   [](const Integer& v, const IntRange& q) { return v < q.lo; });
        if (jt != ranges_.begin()) {
          --jt;
          covered = r.lo >= jt->lo && below_hi <= jt->hi;
        }
      }
      if (!covered) return false;
    }
  }
  if (o.tail_) {
    if (!tail_) return false;
    if (*tail_ > *o.tail_) {
      // the stretch [o.tail, tail) must be covered by plain ranges
      Integer need_lo = *o.tail_;
      auto it = std::upper_bound(ranges_.begin(), ranges_.end(), need_lo,
                                 [](const Integer& v, const IntRange& q) { return v < q.lo; });
      if (it == ranges_.begin()) return false;
      --it;
      if (!(need_lo >= it->lo && it->hi >= *tail_ - 1)) return false;
    }
  }
  return true;
}

RangeSet::WindowStats RangeSet::window_stats(const Integer& horizon) const {
  WindowStats st;
  // present intervals clipped to [0, horizon]
  std::vector<IntRange> present;
  for (const auto& r : ranges_) {
    if (r.lo > horizon) break;
    present.push_back(IntRange{r.lo, std::min(r.hi, horizon)});
  }
  if (tail_ && *tail_ <= horizon) present.push_back(IntRange{*tail_, horizon});
  Integer pos = 0;
  for (const auto& r : present) {
    if (r.lo > pos) {
      Integer gap = r.lo - pos;
      if (gap > st.max_gap) {
        st.max_gap = gap;
        st.max_gap_start = pos;
      }
      st.last_missing = r.lo - 1;
    }
    Integer run = r.hi - r.lo + 1;
    if (run > st.max_run) {
      st.max_run = run;
      st.max_run_start = r.lo;
    }
    st.any_present = true;
    pos = r.hi + 1;
  }
  if (pos <= horizon) {
    Integer gap = horizon - pos + 1;
    if (gap > st.max_gap) {
      st.max_gap = gap;
      st.max_gap_start = pos;
    }
    st.last_missing = horizon;
  }
  return st;
}

nlohmann::ordered_json RangeSet::to_json() const {
  nlohmann::ordered_json j;
  j["ranges"] = nlohmann::ordered_json::array();
  for (const auto& r : ranges_)
    j["ranges"].push_back({to_decimal(r.lo), to_decimal(r.hi)});
  j["tail"] = tail_ ? nlohmann::ordered_json(to_decimal(*tail_)) : nlohmann::ordered_json(nullptr);
  return j;
}

RangeSet RangeSet::from_json(const nlohmann::ordered_json& j) {
  std::vector<IntRange> ranges;
  for (const auto& r : j.at("ranges")) {
    ranges.push_back(IntRange{integer_from_decimal(r.at(0).get<std::string>()),
                              integer_from_decimal(r.at(1).get<std::string>())});
  }
  std::optional<Integer> tail;
  if (j.contains("tail") && !j["tail"].is_null())
    tail = integer_from_decimal(j["tail"].get<std::string>());
  return of(std::move(ranges), std::move(tail));
}

// ---------------------------------------------------------------------------
// BlockFamily / SymbolicSet

nlohmann::ordered_json BlockFamily::to_json() const {
  nlohmann::ordered_json j;
  j["lo"] = lo.to_json();
  j["hi"] = hi.to_json();
  j["k_lo"] = k_lo;
  j["k_hi"] = k_hi ? nlohmann::ordered_json(*k_hi) : nlohmann::ordered_json(nullptr);
  return j;
}

BlockFamily BlockFamily::from_json(const nlohmann::ordered_json& j, long budget_bits) {
  BlockFamily f;
  f.lo = BlockExpr::from_json(j.at("lo"), budget_bits);
  f.hi = BlockExpr::from_json(j.at("hi"), budget_bits);
  f.k_lo = j.at("k_lo").get<long>();
  if (!j.at("k_hi").is_null()) f.k_hi = j.at("k_hi").get<long>();
  return f;
}

bool SymbolicSet::contains(const Integer& n) const {
  if (prefix_.contains(n)) return true;
  const long budget = kDefaultBitBudget;
  for (const auto& f : families_) {
    for (long k = f.k_lo;; ++k) {
      if (f.k_hi && k > *f.k_hi) break;
      if (k - f.k_lo > kMaterializeBlockGuard) break;
      EvalInt lo = f.lo.eval_at(k);
      auto lo_cmp = try_compare(lo, EvalInt::of(n), budget);
      if (lo_cmp && *lo_cmp > 0) break;  // blocks ordered: past n
      EvalInt hi = f.hi.eval_at(k);
      auto hi_cmp = try_compare(hi, EvalInt::of(n), budget);
      if (lo_cmp && hi_cmp && *lo_cmp <= 0 && *hi_cmp >= 0) return true;
      if (!lo_cmp || !hi_cmp) break;
    }
  }
  return false;
}

RangeSet SymbolicSet::materialize(const Integer& horizon) const {
  RangeSet window = RangeSet::single(0, horizon);
  RangeSet out = prefix_.intersect(window);
  const long budget = kDefaultBitBudget;
  for (const auto& f : families_) {
    std::vector<IntRange> parts;
    for (long k = f.k_lo;; ++k) {
      if (f.k_hi && k > *f.k_hi) break;
      if (k - f.k_lo > kMaterializeBlockGuard)
        throw Inconclusive("SymbolicSet::materialize: block guard exceeded");
      EvalInt lo = f.lo.eval_at(k);
      auto past = try_compare(lo, EvalInt::of(horizon), budget);
      if (!past) throw Inconclusive("SymbolicSet::materialize: undecidable block position");
      if (*past > 0) break;  // lo(k) > horizon; blocks are ordered, so done
      EvalInt hi = f.hi.eval_at(k);
      Integer lo_v = *lo.exact;  // lo <= horizon implies materializable
      Integer hi_v;
      if (hi.is_exact()) hi_v = std::min(*hi.exact, horizon);
      else hi_v = horizon;  // hi certified huge: clips to the window edge
      if (hi_v < 0) continue;
      if (lo_v < 0) lo_v = 0;
      if (lo_v <= hi_v) parts.push_back(IntRange{lo_v, hi_v});
    }
    out = out.unite(RangeSet::of(std::move(parts)));
  }
  return out;
}

nlohmann::ordered_json SymbolicSet::to_json() const {
  nlohmann::ordered_json j;
  j["prefix"] = prefix_.to_json();
  j["families"] = nlohmann::ordered_json::array();
  for (const auto& f : families_) j["families"].push_back(f.to_json());
  return j;
}

SymbolicSet SymbolicSet::from_json(const nlohmann::ordered_json& j, long budget_bits) {
  std::vector<BlockFamily> fams;
  for (const auto& f : j.at("families")) fams.push_back(BlockFamily::from_json(f, budget_bits));
  return SymbolicSet(std::move(fams), RangeSet::from_json(j.at("prefix")));
}

// ---------------------------------------------------------------------------
// Classification

Integer horizon_threshold(const Integer& horizon) {
  return boost::multiprecision::sqrt(horizon);
}

std::string SetClassification::strongest() const {
  if (inconclusive) return "inconclusive";
  if (cofinite) return "cofinite";
  if (syndetic) return "syndetic";
  if (thick) return "thick";
  return "none_of_these";
}

nlohmann::ordered_json SetClassification::to_json() const {
  nlohmann::ordered_json j;
  j["scope"] = scope == SetScope::asymptotic ? "asymptotic"
                                             : "horizon(" + to_decimal(horizon) + ")";
  j["strongest"] = strongest();
  j["inconclusive"] = inconclusive;
  j["cofinite"] = cofinite;
  j["syndetic"] = syndetic;
  j["thick"] = thick;
  j["syndetic_bound"] =
      syndetic_bound ? nlohmann::ordered_json(to_decimal(*syndetic_bound)) : nlohmann::ordered_json(nullptr);
  j["cofinite_tail"] =
      cofinite_tail ? nlohmann::ordered_json(to_decimal(*cofinite_tail)) : nlohmann::ordered_json(nullptr);
  j["certificate"] = certificate;
  return j;
}

SetClassification classify(const RangeSet& s, const std::optional<Integer>& horizon) {
  SetClassification c;
  if (s.has_tail()) {
    c.scope = SetScope::asymptotic;
    c.cofinite = true;
    c.cofinite_tail = *s.tail();
    auto st = s.window_stats(*s.tail());
    c.syndetic = true;
    c.syndetic_bound = st.max_gap + 1;
    c.thick = true;
    c.certificate = nlohmann::ordered_json{
        {"cofinite", {{"tail_start", to_decimal(*s.tail())}}},
        {"syndetic",
         {{"bound", to_decimal(Integer(st.max_gap + 1))},
          {"max_gap", to_decimal(st.max_gap)},
          {"max_gap_start", to_decimal(st.max_gap_start)}}},
        {"thick", {{"reason", "tail contains runs of every length"}}}};
    return c;
  }
  if (!horizon) throw InvalidParams("classify: a tail-less RangeSet needs a horizon");
  c.scope = SetScope::horizon;
  c.horizon = *horizon;
  if (*horizon < 16) {
    c.inconclusive = true;
    c.certificate = nlohmann::ordered_json{{"reason", "horizon too small to classify"}};
    return c;
  }
  const Integer tau = horizon_threshold(*horizon);
  auto st = s.window_stats(*horizon);
  c.syndetic = st.max_gap < tau;
  if (c.syndetic) c.syndetic_bound = st.max_gap + 1;
  c.thick = st.max_run >= tau;
  c.cofinite = c.syndetic && st.last_missing <= *horizon - tau;
  if (c.cofinite) c.cofinite_tail = st.last_missing + 1;
  c.certificate = nlohmann::ordered_json{{"threshold", to_decimal(tau)},
                   {"max_gap", to_decimal(st.max_gap)},
                   {"max_gap_start", to_decimal(st.max_gap_start)},
                   {"max_run", to_decimal(st.max_run)},
                   {"max_run_start", to_decimal(st.max_run_start)},
                   {"last_missing", to_decimal(st.last_missing)}};
  return c;
}

namespace {

struct EventualFact {
  bool certified = false;
  int sign = 0;
  std::string mode;
  std::string detail;
};

EventualFact eventual_sign_fact(const BlockExpr& e, long k0, long window) {
  EventualFact f;
  if (e.is_zero()) {
    f.certified = true;
    f.sign = 0;
    f.mode = "identically-zero";
    return f;
  }
  auto ev = e.eventual_sign(k0, window);
  f.certified = ev.certified;
  f.sign = ev.sign;
  f.mode = ev.mode;
  f.detail = ev.detail;
  return f;
}

nlohmann::ordered_json fact_json(const EventualFact& f, const BlockExpr& e) {
  return nlohmann::ordered_json{{"expr", e.to_string()},
          {"sign", f.sign},
          {"certified", f.certified},
          {"mode", f.mode},
          {"detail", f.detail}};
}

// family self-checks: blocks nonempty and strictly ordered
nlohmann::ordered_json validate_family(const BlockFamily& f, long window, bool& ok) {
  BlockExpr nonempty = f.hi - f.lo;                          // >= 0 required
  BlockExpr ordered = f.lo.shifted_k(1) - f.hi;              // > 0 required
  auto ne = eventual_sign_fact(nonempty, f.k_lo, window);
  auto od = eventual_sign_fact(ordered, f.k_lo, window);
  bool ne_ok = ne.certified && ne.sign >= 0;
  bool od_ok = f.k_hi && *f.k_hi <= f.k_lo;  // single-block families are trivially ordered
  if (!od_ok) od_ok = od.certified && od.sign > 0;
  ok = ne_ok && od_ok;
  return nlohmann::ordered_json{{"nonempty", fact_json(ne, nonempty)}, {"ordered", fact_json(od, ordered)}};
}

}  // namespace

SetClassification classify(const SymbolicSet& s, long window) {
  SetClassification c;
  c.scope = SetScope::asymptotic;
  nlohmann::ordered_json cert;
  cert["families"] = nlohmann::ordered_json::array();

  std::vector<const BlockFamily*> infinite;
  bool valid = true;
  for (const auto& f : s.families()) {
    bool ok = true;
    auto v = validate_family(f, window, ok);
    v["k_lo"] = f.k_lo;
    v["infinite"] = f.infinite();
    cert["families"].push_back(v);
    valid = valid && ok;
    if (f.infinite()) infinite.push_back(&f);
  }
  if (!valid) {
    c.inconclusive = true;
    cert["reason"] = "family invariants not certified";
    c.certificate = cert;
    return c;
  }

  if (infinite.empty()) {
    // a finite set: none of the asymptotic properties hold
    cert["reason"] = "finite set (no infinite family)";
    c.certificate = cert;
    return c;
  }

  auto thick_from = [&](const BlockFamily& f) -> bool {
    BlockExpr width = (f.hi - f.lo).plus_const(1);
    if (width.unbounded_above(f.k_lo, window)) {
      cert["thick"] = nlohmann::ordered_json{{"run_family", f.to_json()},
                       {"width", width.to_string()},
                       {"mode", "window+dominance"},
                       {"reason", "run widths grow without bound"}};
      return true;
    }
    return false;
  };

  if (infinite.size() == 1) {
    const BlockFamily& f = *infinite.front();
    c.thick = thick_from(f);
    if (!c.thick) {
      BlockExpr width = (f.hi - f.lo).plus_const(1);
      if (width.is_bounded()) {
        cert["thick"] = nlohmann::ordered_json{{"reason", "run widths bounded"}, {"width", width.to_string()}};
      } else {
        c.inconclusive = true;
        cert["thick"] = nlohmann::ordered_json{{"reason", "width growth not certified"}};
      }
    }
    BlockExpr gap = f.lo.shifted_k(1) - f.hi - BlockExpr::constant(1);  // missing run length
    if (gap.is_zero()) {
      c.cofinite = true;
    } else if (gap.is_bounded()) {
      auto g = gap.constant_value();
      if (g && *g == 0) c.cofinite = true;
      if (g) {
        c.syndetic = true;
        c.syndetic_bound = *g + 1;
        cert["syndetic"] = nlohmann::ordered_json{{"eventual_gap", to_decimal(*g)},
                            {"bound", to_decimal(Integer(*g + 1))},
                            {"mode", "constant-gap"},
                            {"note", "bound is eventual; the finite prefix region is bounded"}};
      } else {
        c.inconclusive = true;
        cert["syndetic"] = nlohmann::ordered_json{{"reason", "bounded gap not materializable"}};
      }
    } else if (gap.unbounded_above(f.k_lo, window)) {
      c.syndetic = false;
      cert["syndetic"] = nlohmann::ordered_json{{"gap_growth_witness", gap.to_string()},
                          {"mode", "window+dominance"},
                          {"reason", "gaps between consecutive blocks grow without bound"}};
    } else {
      c.inconclusive = true;
      cert["syndetic"] = nlohmann::ordered_json{{"reason", "gap behavior not certified"}};
    }
    if (c.cofinite) {
      c.syndetic = true;
      c.thick = true;
      EvalInt t = f.lo.eval_at(f.k_lo);
      if (t.is_exact()) c.cofinite_tail = std::max(Integer(0), *t.exact);
      cert["cofinite"] = nlohmann::ordered_json{{"reason", "adjacent blocks (zero gap)"},
                          {"tail_start", t.to_string()}};
    }
    c.certificate = cert;
    return c;
  }

  if (infinite.size() == 2) {
    // Interleaving analysis: does the union of the two families cover a tail?
    const BlockFamily* a = infinite[0];
    const BlockFamily* b = infinite[1];
    // order so that a's blocks start first (eventually)
    {
      BlockExpr d = b->lo - a->lo;
      auto ds = eventual_sign_fact(d, std::max(a->k_lo, b->k_lo), window);
      if (ds.certified && ds.sign < 0) std::swap(a, b);
    }
    const long k0 = std::max(a->k_lo, b->k_lo);
    // chain coverage: b_k starts inside/adjacent to a_k, a_{k+1} starts
    // inside/adjacent to b_k
    BlockExpr c1 = (a->hi + BlockExpr::constant(1)) - b->lo;        // >= 0
    BlockExpr c2 = (b->hi + BlockExpr::constant(1)) - a->lo.shifted_k(1);  // >= 0
    auto f1 = eventual_sign_fact(c1, k0, window);
    auto f2 = eventual_sign_fact(c2, k0, window);
    cert["interleave"] = nlohmann::ordered_json{{"chain1", fact_json(f1, c1)}, {"chain2", fact_json(f2, c2)}};
    bool covered = f1.certified && f1.sign >= 0 && f2.certified && f2.sign >= 0;
    c.thick = thick_from(*a) || thick_from(*b);
    if (covered) {
      c.cofinite = true;
      c.syndetic = true;
      c.thick = true;
      EvalInt t = a->lo.eval_at(k0);
      cert["cofinite"] = nlohmann::ordered_json{{"reason", "two families interleave into a cofinite union"},
                          {"tail_start", t.to_string()},
                          {"from_block", k0}};
      if (t.is_exact()) {
        Integer tail_start = std::max(Integer(0), *t.exact);
        // pull the tail start down through materialized earlier blocks
        if (tail_start > 0) {
          RangeSet below = s.materialize(tail_start - 1);
          RangeSet merged = below.unite(RangeSet::of({}, tail_start));
          c.cofinite_tail = merged.tail();
        } else {
          c.cofinite_tail = tail_start;
        }
        if (c.cofinite_tail) {
          auto st = s.materialize(*c.cofinite_tail).window_stats(*c.cofinite_tail);
          c.syndetic_bound = st.max_gap + 1;
        }
      }
    } else {
      c.inconclusive = !(f1.certified && f2.certified);
      cert["cofinite"] = nlohmann::ordered_json{{"reason", "interleave coverage not established"}};
    }
    c.certificate = cert;
    return c;
  }

  c.inconclusive = true;
  cert["reason"] = "more than two infinite families; no interleave rule applied";
  c.certificate = cert;
  return c;
}

SetClassification classify_index_set(const IndexSet& s, const std::optional<Integer>& horizon,
                                     long window) {
  if (std::holds_alternative<RangeSet>(s)) return classify(std::get<RangeSet>(s), horizon);
  return classify(std::get<SymbolicSet>(s), window);
}

bool duality_check(const RangeSet& s, const Integer& horizon) {
  RangeSet comp = s.complement_in_n0();
  auto cs = classify(s, horizon);
  auto cc = classify(comp, horizon);
  // windowed semantics: both sides classified over [0, horizon]
  if (s.has_tail() || comp.has_tail()) {
    // re-classify through window stats to keep both sides horizon-scoped
    const Integer tau = horizon_threshold(horizon);
    auto st_s = s.window_stats(horizon);
    auto st_c = comp.window_stats(horizon);
    bool synd_s = st_s.max_gap < tau;
    bool thick_s = st_s.max_run >= tau;
    bool synd_c = st_c.max_gap < tau;
    bool thick_c = st_c.max_run >= tau;
    return (synd_s == !thick_c) && (thick_s == !synd_c);
  }
  return (cs.syndetic == !cc.thick) && (cs.thick == !cc.syndetic);
}

}  // namespace senslab
