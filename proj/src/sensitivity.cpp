#include "senslab/sensitivity.hpp"

#include <algorithm>

namespace senslab {

using nlohmann::ordered_json;

std::string to_string(Notion n) {
  switch (n) {
    case Notion::sensitive: return "sensitive";
    case Notion::syndetic: return "syndetic";
    case Notion::thick: return "thick";
    case Notion::cofinite: return "cofinite";
    case Notion::multi: return "multi";
    case Notion::not_sensitive: return "not_sensitive";
  }
  return "?";
}

namespace {

Integer idiv_floor(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}
Integer idiv_ceil(const Integer& a, const Integer& b) { return -idiv_floor(-a, b); }

ordered_json mode_json(const Mode& m) {
  return ordered_json{{"symbolic", m.symbolic}, {"horizon", to_decimal(m.horizon)}};
}
Mode mode_from_json(const ordered_json& j) {
  Mode m;
  m.symbolic = j.at("symbolic").get<bool>();
  m.horizon = integer_from_decimal(j.at("horizon").get<std::string>());
  return m;
}

ordered_json track_json(const TrackedSet& s) {
  return ordered_json{
      {"j", to_decimal(s.j)}, {"alpha", to_decimal(s.alpha)}, {"beta", to_decimal(s.beta)}};
}
TrackedSet track_from_json(const ordered_json& j) {
  return TrackedSet::make(integer_from_decimal(j.at("j").get<std::string>()),
                          rational_from_decimal(j.at("alpha").get<std::string>()),
                          rational_from_decimal(j.at("beta").get<std::string>()));
}

// ---------------------------------------------------------------------------
// N(U, eps) computation

RangeSet n_set_horizon(const LayoutCascade& c, const TrackedSet& s, const Rational& eps,
                       const Integer& H) {
  const SpaceLayout& lay = c.layout();
  const Integer j_end = s.j + c.step() * H;
  const Rational width = s.width();
  std::vector<IntRange> parts;
  for (long lv = 0;; ++lv) {
    const SpaceLayout::Level& L = lay.level(lv);
    auto past = try_compare(L.first_j, EvalInt::of(j_end), lay.budget_bits());
    if (!past) throw Inconclusive("n_set: level position undecidable");
    if (*past > 0) break;
    if (!(width * L.length > eps)) continue;
    // n-range with j0 + step*n inside this level
    Integer lo_j = *L.first_j.exact;  // exact: it is <= j_end
    if (lo_j < s.j) lo_j = s.j;
    Integer n_lo = idiv_ceil(lo_j - s.j, c.step());
    Integer n_hi;
    if (L.last_j.is_exact()) {
      n_hi = idiv_floor(*L.last_j.exact - s.j, c.step());
      if (n_hi > H) n_hi = H;
    } else {
      n_hi = H;  // the level provably extends past the horizon
    }
    if (n_lo < 0) n_lo = 0;
    if (n_lo <= n_hi) parts.push_back(IntRange{n_lo, n_hi});
  }
  return RangeSet::of(std::move(parts));
}

SymbolicSet n_set_symbolic_step1(const LayoutCascade& c, const TrackedSet& s,
                                 const Rational& eps) {
  const SpaceLayout& lay = c.layout();
  const Rational tau = eps / s.width();
  const auto& ex = lay.block_exprs();
  const bool fg = lay.first_of_block_grows();
  const BlockExpr& shrink_lo = fg ? ex.second_lo : ex.first_lo;
  const BlockExpr& shrink_hi = fg ? ex.second_hi : ex.first_hi;
  const BlockExpr& grow_lo = fg ? ex.first_lo : ex.second_lo;
  const BlockExpr& grow_hi = fg ? ex.first_hi : ex.second_hi;
  const Integer shift = -s.j;

  std::vector<BlockFamily> fams;
  long kS = lay.last_shrink_block_above(tau);
  if (kS >= 0)
    fams.push_back(BlockFamily{shrink_lo.plus_const(shift), shrink_hi.plus_const(shift), 0, kS});
  long kG = lay.first_grow_block_above(tau);
  fams.push_back(
      BlockFamily{grow_lo.plus_const(shift), grow_hi.plus_const(shift), kG, std::nullopt});
  RangeSet prefix = RangeSet::empty();
  if (s.j == 0 && s.width() * lay.level_length(0) > eps) prefix = RangeSet::single(0, 0);
  return SymbolicSet(std::move(fams), std::move(prefix));
}

// single-interval-per-level layouts, arbitrary step multiplier
SymbolicSet n_set_symbolic_unit(const LayoutCascade& c, const TrackedSet& s,
                                const Rational& eps) {
  const SpaceLayout& lay = c.layout();
  const Rational tau = eps / s.width();
  const Integer& m = c.step();
  const Integer& j0 = s.j;
  const bool m_even = (m % 2) == 0;
  const bool j0_even = (j0 % 2) == 0;

  std::vector<BlockFamily> fams;
  RangeSet prefix = RangeSet::empty();
  if (j0 == 0 && s.width() * lay.level_length(0) > eps) prefix = RangeSet::single(0, 0);

  // visited levels are j0 + m*n; odd ones grow (length = level index), even
  // ones >= 2 shrink (length = 1/level)
  auto add_family = [&](bool want_odd) {
    Integer n_first;
    Integer n_step;
    if (m_even) {
      if (j0_even == want_odd) return;  // parity never matches
      n_first = (j0 == 0 && want_odd) ? 0 : 0;
      n_first = 0;
      n_step = 1;
    } else {
      // parity alternates with n
      bool at0 = (j0 % 2 == 1) == want_odd;
      n_first = at0 ? 0 : 1;
      n_step = 2;
    }
    // ensure level >= 1 (skip the seed)
    Integer lvl0 = j0 + m * n_first;
    while (lvl0 < 1) {
      n_first += n_step;
      lvl0 = j0 + m * n_first;
    }
    const Integer lstep = m * n_step;  // level increment per t
    if (want_odd) {
      // qualifying: level > tau, i.e. t >= t0
      Rational t0r = (tau - Rational(lvl0)) / Rational(lstep);
      Integer t0 = floor_rational(t0r) + 1;
      if (t0 < 0) t0 = 0;
      if (t0 > (Integer(1) << 40)) throw Inconclusive("n_set: threshold out of range");
      fams.push_back(BlockFamily{
          BlockExpr::polynomial({n_first + n_step * t0, n_step}),
          BlockExpr::polynomial({n_first + n_step * t0, n_step}),
          0, std::nullopt});
      // reindexed so the family starts at k=0 with its first qualifying block
      return;
    }
    // shrinking levels: qualifying 1/level > tau  <=>  level < 1/tau
    if (Rational(lvl0) * tau >= 1) return;
    Rational t1r = (Rational(1) / tau - Rational(lvl0)) / Rational(lstep);
    Integer t1 = ceil_rational(t1r) - 1;  // last t with level(t)*tau < 1
    if (Rational(lvl0 + t1 * lstep) * tau >= 1) --t1;
    if (t1 < 0) return;
    if (t1 > (Integer(1) << 40)) throw Inconclusive("n_set: threshold out of range");
    fams.push_back(BlockFamily{BlockExpr::polynomial({n_first, n_step}),
                               BlockExpr::polynomial({n_first, n_step}), 0,
                               static_cast<long>(t1)});
  };
  add_family(true);
  add_family(false);
  return SymbolicSet(std::move(fams), std::move(prefix));
}

}  // namespace

IndexSet n_set(const LayoutCascade& c, const TrackedSet& s, const Rational& eps,
               const Mode& mode) {
  if (!(eps > 0)) throw InvalidParams("n_set: eps must be positive");
  if (!mode.symbolic) return n_set_horizon(c, s, eps, mode.horizon);
  if (c.step() == 1) return n_set_symbolic_step1(c, s, eps);
  if (c.layout().unit_counts()) return n_set_symbolic_unit(c, s, eps);
  throw Inconclusive(
      "symbolic n-sets of restricted multi-interval layouts are not closed-form; use horizon mode");
}

IndexSet product_n_set(const ProductCascade& pc, const TrackedSet& s1, const TrackedSet& s2,
                       const Rational& eps, const Mode& mode) {
  IndexSet a = n_set(pc.left, s1, eps, mode);
  IndexSet b = n_set(pc.right, s2, eps, mode);
  if (!mode.symbolic) {
    return std::get<RangeSet>(a).unite(std::get<RangeSet>(b));
  }
  const SymbolicSet& sa = std::get<SymbolicSet>(a);
  const SymbolicSet& sb = std::get<SymbolicSet>(b);
  std::vector<BlockFamily> fams = sa.families();
  fams.insert(fams.end(), sb.families().begin(), sb.families().end());
  return SymbolicSet(std::move(fams), sa.prefix().unite(sb.prefix()));
}

// ---------------------------------------------------------------------------
// reachability of the growing family from a start index

namespace {

struct Reach {
  bool grow_reachable = false;
  Rational sup_len = 0;  // meaningful when !grow_reachable
  ordered_json facts;
};

Reach analyze_reach(const LayoutCascade& c, const Integer& j0) {
  Reach r;
  const SpaceLayout& lay = c.layout();
  if (c.step() == 1) {
    r.grow_reachable = true;
    r.facts = ordered_json{{"reason", "step 1 visits every level"},
                           {"grow_length", to_decimal(lay.grow_length(1)) + " at k=1, unbounded"}};
    return r;
  }
  if (lay.unit_counts()) {
    const bool m_even = (c.step() % 2) == 0;
    const bool j0_even = (j0 % 2) == 0;
    if (!m_even || !j0_even) {
      r.grow_reachable = true;
      r.facts = ordered_json{
          {"reason", m_even ? "odd start under an even step stays on growing levels"
                            : "odd step multiplier alternates level parity"}};
      return r;
    }
    r.grow_reachable = false;
    r.sup_len = lay.length_at(j0);
    r.facts = ordered_json{
        {"reason", "even start under an even step visits only shrinking levels"},
        {"sup_reachable_length", to_decimal(r.sup_len)},
        {"visited_lengths", "1/(level) along levels " + to_decimal(j0) + ", " +
                                to_decimal(Integer(j0 + c.step())) + ", ... (decreasing)"}};
    return r;
  }
  r.grow_reachable = true;
  r.facts = ordered_json{
      {"reason", "interval counts per level grow without bound, so every residue class "
                 "eventually lands inside every block"}};
  return r;
}

ordered_json fact_of(const BlockExpr::EventualSign& ev) {
  return ordered_json{{"sign", ev.sign},
                      {"certified", ev.certified},
                      {"mode", ev.mode},
                      {"checked_from", ev.checked_from},
                      {"checked_to", ev.checked_to}};
}

// exact shift-law spot check, recorded in certificates: the N-set of the
// shifted generator is the left shift of the base N-set
bool shift_law_spot_check(const LayoutCascade& c, const Rational& eps, ordered_json& out) {
  const Integer H = 96;
  const Integer p = 3;
  TrackedSet base = TrackedSet::make(0, Rational(1, 8), Rational(7, 8));
  TrackedSet shifted = TrackedSet::make(p, Rational(1, 8), Rational(7, 8));
  RangeSet nb = std::get<RangeSet>(n_set(c, base, eps, Mode::at_horizon(H + p)));
  RangeSet ns = std::get<RangeSet>(n_set(c, shifted, eps, Mode::at_horizon(H)));
  bool ok = true;
  for (Integer n = 0; n <= H; ++n)
    if (ns.contains(n) != nb.contains(n + p)) ok = false;
  out = ordered_json{{"p", to_decimal(p)}, {"horizon", to_decimal(H)}, {"holds", ok}};
  return ok;
}

SetClassification classify_generator_set(const LayoutCascade& c, const Integer& j0,
                                         const Rational& eps, long window) {
  TrackedSet t = TrackedSet::full(j0);
  IndexSet s = n_set(c, t, eps, Mode::sym());
  return classify(std::get<SymbolicSet>(s), window);
}

}  // namespace

ordered_json cascade_replay_params(const LayoutCascade& c) {
  return ordered_json{{"space", to_string(c.layout().kind())},
                      {"preset", to_string(c.layout().preset())},
                      {"step", to_decimal(c.step())}};
}

LayoutCascade cascade_from_replay_params(const ordered_json& j) {
  GrowthParams gp;
  gp.preset = preset_kind_from_string(j.at("preset").get<std::string>());
  auto lay = SpaceLayout::build(space_kind_from_string(j.at("space").get<std::string>()), gp);
  return LayoutCascade(lay, integer_from_decimal(j.at("step").get<std::string>()));
}

nlohmann::ordered_json index_set_to_json(const IndexSet& s) {
  if (std::holds_alternative<RangeSet>(s))
    return ordered_json{{"kind", "ranges"}, {"set", std::get<RangeSet>(s).to_json()}};
  return ordered_json{{"kind", "symbolic"}, {"set", std::get<SymbolicSet>(s).to_json()}};
}

nlohmann::ordered_json SensitivityVerdict::to_json() const {
  return ordered_json{{"notion", to_string(notion)},
                      {"holds", holds},
                      {"eps", to_decimal(eps)},
                      {"scope", scope},
                      {"certificate", certificate}};
}

SensitivityVerdict classify_notion(const LayoutCascade& c, const Rational& eps, Notion notion,
                                   const Mode& mode) {
  if (notion != Notion::sensitive && notion != Notion::syndetic && notion != Notion::thick &&
      notion != Notion::cofinite)
    throw InvalidParams("classify_notion: notion must be one of the four N-set notions");
  if (!(eps > 0)) throw InvalidParams("classify_notion: eps must be positive");

  SensitivityVerdict v;
  v.notion = notion;
  v.eps = eps;
  ordered_json cert;
  cert["op"] = "classify_notion";
  cert["notion"] = to_string(notion);
  cert["replay"] = ordered_json{{"cascade", cascade_replay_params(c)},
                                {"eps", to_decimal(eps)},
                                {"mode", mode_json(mode)}};
  ordered_json facts;

  if (!mode.symbolic) {
    v.scope = "horizon(" + to_decimal(mode.horizon) + ")";
    // sampled canonical generators, classified over the window
    std::vector<TrackedSet> samples = {TrackedSet::full(0),
                                       TrackedSet::make(1, 0, 1),
                                       TrackedSet::make(0, 0, Rational(1, 2))};
    bool all = true;
    facts["samples"] = ordered_json::array();
    for (const auto& t : samples) {
      RangeSet ns = std::get<RangeSet>(n_set(c, t, eps, mode));
      auto cls = classify(ns, mode.horizon);
      bool flag = false;
      if (notion == Notion::sensitive) flag = !ns.is_empty();
      if (notion == Notion::syndetic) flag = cls.syndetic;
      if (notion == Notion::thick) flag = cls.thick;
      if (notion == Notion::cofinite) flag = cls.cofinite;
      all = all && flag;
      facts["samples"].push_back(ordered_json{{"track", track_json(t)},
                                              {"flag", flag},
                                              {"classification", cls.to_json()}});
    }
    v.holds = all;
    cert["facts"] = facts;
    v.certificate = cert;
    return v;
  }

  v.scope = "asymptotic";
  const long window = 12;

  // representative start residues: with step 1 every generator sees the same
  // schedule up to a shift; single-interval layouts under larger steps split
  // by parity
  std::vector<Integer> reps = {Integer(0)};
  if (c.step() > 1 && c.layout().unit_counts()) reps.push_back(Integer(1));

  bool sensitive_all = true;
  facts["reachability"] = ordered_json::array();
  for (const auto& p : reps) {
    Reach r = analyze_reach(c, p);
    facts["reachability"].push_back(
        ordered_json{{"start", to_decimal(p)}, {"grow_reachable", r.grow_reachable}, {"facts", r.facts}});
    sensitive_all = sensitive_all && r.grow_reachable;
  }

  ordered_json shift_fact;
  shift_law_spot_check(c, eps, shift_fact);
  facts["shift_law_spot_check"] = shift_fact;
  facts["threshold_shift"] = ordered_json{
      {"statement",
       "a generator (p, alpha, beta) only shifts the N-set by p and rescales the "
       "threshold to eps/(beta-alpha); block gap and width expressions do not "
       "depend on the threshold, which only moves the family start"},
      {"shrink_length", "1/(2k+2) -> 0"},
      {"grow_length", to_decimal(c.layout().grow_length(1)) + " at k=1, unbounded"}};

  if (!sensitive_all) {
    v.holds = false;
    WitnessResult w = non_sensitivity_witness(c, eps, Mode::sym());
    facts["failing_generator"] = w.certificate;
    cert["facts"] = facts;
    v.certificate = cert;
    return v;
  }
  if (notion == Notion::sensitive) {
    v.holds = true;
    cert["facts"] = facts;
    v.certificate = cert;
    return v;
  }

  bool all = true;
  facts["generator_classifications"] = ordered_json::array();
  for (const auto& p : reps) {
    auto cls = classify_generator_set(c, p, eps, window);
    bool flag = false;
    if (notion == Notion::syndetic) flag = cls.syndetic;
    if (notion == Notion::thick) flag = cls.thick;
    if (notion == Notion::cofinite) flag = cls.cofinite;
    if (cls.inconclusive) throw Inconclusive("classify_notion: block-family analysis inconclusive");
    all = all && flag;
    facts["generator_classifications"].push_back(
        ordered_json{{"start", to_decimal(p)}, {"flag", flag}, {"classification", cls.to_json()}});
  }
  v.holds = all;
  cert["facts"] = facts;
  v.certificate = cert;
  return v;
}

SensitivityVerdict multi_sensitive_check(const LayoutCascade& c,
                                         const std::vector<TrackedSet>& sets,
                                         const Rational& eps, const Mode& mode) {
  if (sets.empty()) throw InvalidParams("multi_sensitive_check: need at least one set");
  if (!(eps > 0)) throw InvalidParams("multi_sensitive_check: eps must be positive");
  SensitivityVerdict v;
  v.notion = Notion::multi;
  v.eps = eps;
  ordered_json cert;
  cert["op"] = "multi_sensitive_check";
  cert["replay"] = ordered_json{{"cascade", cascade_replay_params(c)},
                                {"eps", to_decimal(eps)},
                                {"mode", mode_json(mode)},
                                {"tracks", ordered_json::array()}};
  for (const auto& t : sets) cert["replay"]["tracks"].push_back(track_json(t));
  ordered_json facts;

  auto witness_facts = [&](const Integer& n) {
    ordered_json w = ordered_json::array();
    for (const auto& t : sets)
      w.push_back(ordered_json{{"track", track_json(t)},
                               {"diam", to_decimal(c.image_diameter(t, n))}});
    return w;
  };

  if (!mode.symbolic) {
    v.scope = "horizon(" + to_decimal(mode.horizon) + ")";
    RangeSet inter = RangeSet::full();
    for (const auto& t : sets)
      inter = inter.intersect(std::get<RangeSet>(n_set(c, t, eps, mode)));
    if (!inter.is_empty()) {
      Integer n = inter.ranges().empty() ? *inter.tail() : inter.ranges().front().lo;
      v.holds = true;
      facts["witness"] = to_decimal(n);
      facts["diameters"] = witness_facts(n);
    } else {
      v.holds = false;
      facts["reason"] = "empty intersection over the horizon";
    }
    cert["facts"] = facts;
    v.certificate = cert;
    return v;
  }

  v.scope = "asymptotic";
  // provable emptiness: a track that never reaches growing levels has a
  // bounded diameter schedule
  for (const auto& t : sets) {
    Reach r = analyze_reach(c, t.j);
    if (!r.grow_reachable && !(t.width() * r.sup_len > eps)) {
      v.holds = false;
      facts["empty_n_set"] =
          ordered_json{{"track", track_json(t)},
                       {"sup_diam", to_decimal(Rational(t.width() * r.sup_len))},
                       {"reach", r.facts},
                       {"reason", "sup of the diameter schedule is <= eps, so N(U, eps) is empty"}};
      cert["facts"] = facts;
      v.certificate = cert;
      return v;
    }
  }
  // find a concrete common witness along growing blocks
  long k_lo = 0;
  for (const auto& t : sets)
    k_lo = std::max(k_lo, c.layout().first_grow_block_above(eps / t.width()));
  for (long k = k_lo; k < k_lo + 64; ++k) {
    const long lv = c.layout().grow_level_of(k);
    auto range = c.layout().level_ranges(lv);
    if (!range.first.is_exact()) break;
    // candidate times: the block's left edge relative to each track
    for (const auto& t : sets) {
      Integer delta = *range.first.exact - t.j;
      if (delta < 0) continue;
      if (delta % c.step() != 0) {
        // align on the next multiple of the step inside the block
        delta += c.step() - (delta % c.step());
      }
      Integer n = delta / c.step();
      bool all = true;
      for (const auto& u : sets)
        if (!(c.image_diameter(u, n) > eps)) all = false;
      if (all) {
        v.holds = true;
        facts["witness"] = to_decimal(n);
        facts["diameters"] = witness_facts(n);
        cert["facts"] = facts;
        v.certificate = cert;
        return v;
      }
    }
  }
  throw Inconclusive("multi_sensitive_check: no common witness found in the searched blocks");
}

WitnessResult non_sensitivity_witness(const LayoutCascade& c, const Rational& eps,
                                      const Mode& mode) {
  if (!(eps > 0)) throw InvalidParams("non_sensitivity_witness: eps must be positive");
  WitnessResult out;
  ordered_json cert;
  cert["op"] = "non_sensitivity_witness";
  cert["replay"] = ordered_json{{"cascade", cascade_replay_params(c)},
                                {"eps", to_decimal(eps)},
                                {"mode", mode_json(mode)}};
  ordered_json facts;

  if (!mode.symbolic) {
    // largest diameter reachable from the seed within the horizon
    Rational max_len = 0;
    Integer n = 0;
    for (Integer i = 0; i <= mode.horizon; ++i) {
      Rational len = c.layout().length_at(c.step() * i);
      if (len > max_len) max_len = len;
      if (Integer(i) > 64 && len < max_len / 1000) break;  // schedule long past its horizon peak
      n = i;
    }
    (void)n;
    Rational beta = rational_div(eps, max_len) / 2;
    if (beta > Rational(1, 2)) beta = Rational(1, 2);
    out.witness = TrackedSet::make(0, 0, beta);
    facts["scope_note"] = "witness valid over the horizon only";
    facts["max_length_within_horizon"] = to_decimal(max_len);
    facts["beta"] = to_decimal(beta);
    facts["sup_diam_within_horizon"] = to_decimal(Rational(beta * max_len));
    cert["facts"] = facts;
    cert["witness"] = track_json(*out.witness);
    out.certificate = cert;
    return out;
  }

  Reach r = analyze_reach(c, 0);
  if (r.grow_reachable) {
    // sensitive at this eps: produce a concrete growth counterexample
    long k = c.layout().first_grow_block_above(eps * 4);
    const long lv = c.layout().grow_level_of(k);
    auto range = c.layout().level_ranges(lv);
    ordered_json growth;
    if (range.first.is_exact()) {
      Integer delta = *range.first.exact;
      if (delta % c.step() != 0) delta += c.step() - (delta % c.step());
      Integer n = delta / c.step();
      TrackedSet probe = TrackedSet::make(0, 0, Rational(1, 4));
      growth = ordered_json{{"n", to_decimal(n)},
                            {"track", track_json(probe)},
                            {"diam", to_decimal(c.image_diameter(probe, n))}};
    }
    facts["reason"] = "growing levels are reachable: diameters exceed every bound";
    facts["reach"] = r.facts;
    facts["sample_growth"] = growth;
    cert["facts"] = facts;
    cert["witness"] = nullptr;
    out.certificate = cert;
    return out;
  }
  Rational beta = r.sup_len >= 1 ? Rational(eps / (2 * r.sup_len)) : Rational(eps / 2);
  if (beta > Rational(1, 2)) beta = Rational(1, 2);
  out.witness = TrackedSet::make(0, 0, beta);
  facts["reason"] = "every diameter in the forward schedule stays below eps";
  facts["reach"] = r.facts;
  facts["sup_reachable_length"] = to_decimal(r.sup_len);
  facts["beta"] = to_decimal(beta);
  facts["sup_diam"] = to_decimal(Rational(beta * r.sup_len));
  cert["facts"] = facts;
  cert["witness"] = track_json(*out.witness);
  out.certificate = cert;
  return out;
}

bool replay_certificate(const nlohmann::ordered_json& cert) {
  try {
    const std::string op = cert.at("op").get<std::string>();
    const ordered_json& rp = cert.at("replay");
    if (op == "classify_notion") {
      LayoutCascade c = cascade_from_replay_params(rp.at("cascade"));
      Rational eps = rational_from_decimal(rp.at("eps").get<std::string>());
      Mode m = mode_from_json(rp.at("mode"));
      Notion n = Notion::sensitive;
      const std::string ns = cert.at("notion").get<std::string>();
      if (ns == "syndetic") n = Notion::syndetic;
      else if (ns == "thick") n = Notion::thick;
      else if (ns == "cofinite") n = Notion::cofinite;
      SensitivityVerdict v = classify_notion(c, eps, n, m);
      return v.certificate.at("facts") == cert.at("facts");
    }
    if (op == "multi_sensitive_check") {
      LayoutCascade c = cascade_from_replay_params(rp.at("cascade"));
      Rational eps = rational_from_decimal(rp.at("eps").get<std::string>());
      Mode m = mode_from_json(rp.at("mode"));
      std::vector<TrackedSet> tracks;
      for (const auto& t : rp.at("tracks")) tracks.push_back(track_from_json(t));
      SensitivityVerdict v = multi_sensitive_check(c, tracks, eps, m);
      return v.certificate.at("facts") == cert.at("facts");
    }
    if (op == "non_sensitivity_witness") {
      LayoutCascade c = cascade_from_replay_params(rp.at("cascade"));
      Rational eps = rational_from_decimal(rp.at("eps").get<std::string>());
      Mode m = mode_from_json(rp.at("mode"));
      WitnessResult w = non_sensitivity_witness(c, eps, m);
      return w.certificate.at("facts") == cert.at("facts");
    }
    if (op == "set_classification") {
      // reclassify a stored symbolic set and compare flags
      SymbolicSet s = SymbolicSet::from_json(rp.at("set"));
      auto cls = classify(s, rp.at("window").get<long>());
      return cls.to_json() == cert.at("facts");
    }
    return false;
  } catch (const Error&) {
    return false;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

}  // namespace senslab
