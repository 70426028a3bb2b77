#pragma once

#include <optional>
#include <vector>

#include "senslab/cascade.hpp"
#include "senslab/index_set.hpp"

namespace senslab {

enum class Notion { sensitive, syndetic, thick, cofinite, multi, not_sensitive };
std::string to_string(Notion n);

/// Evaluation mode: symbolic (asymptotic, via block families and the
/// dominance rule) or horizon-bounded (exact over [0, H]).
struct Mode {
  bool symbolic = true;
  Integer horizon = 0;

  static Mode sym() { return Mode{true, 0}; }
  static Mode at_horizon(Integer h) { return Mode{false, std::move(h)}; }
};

/// N(track, eps) = {n in N0 : diam(n-th image of the track) > eps}, exact.
/// Horizon mode materializes the part in [0, H]; symbolic mode returns block
/// families (supported for step 1 on any layout and for any step on
/// single-interval-per-level layouts).
IndexSet n_set(const LayoutCascade& c, const TrackedSet& s, const Rational& eps,
               const Mode& mode);

/// Union of the coordinate N-sets; equals N of the product under the max
/// metric.
IndexSet product_n_set(const ProductCascade& pc, const TrackedSet& s1, const TrackedSet& s2,
                       const Rational& eps, const Mode& mode);

struct SensitivityVerdict {
  Notion notion = Notion::sensitive;
  bool holds = false;
  Rational eps = 0;
  std::string scope;  // "asymptotic" or "horizon(H)"
  nlohmann::ordered_json certificate;

  nlohmann::ordered_json to_json() const;
};

/// Does the cascade satisfy the notion at this eps, uniformly over every
/// nonempty open set? Open sets are quantified through the canonical
/// generator family (start index p, relative range [alpha, beta]); since the
/// generator enters only through the shifted threshold eps/(beta-alpha), the
/// classifier reduces to threshold-shift analysis of the single length
/// schedule underneath the cascade.
SensitivityVerdict classify_notion(const LayoutCascade& c, const Rational& eps, Notion notion,
                                   const Mode& mode);

/// Common time in all the tracks' N-sets (definition of multi-sensitivity),
/// with a witness or an emptiness certificate.
SensitivityVerdict multi_sensitive_check(const LayoutCascade& c,
                                         const std::vector<TrackedSet>& sets,
                                         const Rational& eps, const Mode& mode);

struct WitnessResult {
  std::optional<TrackedSet> witness;  // empty: NoWitnessFound, see certificate
  nlohmann::ordered_json certificate;
};

/// A generator whose whole forward diameter sequence stays <= eps (proving
/// non-sensitivity at eps), or a counter-certificate showing the cascade is
/// sensitive at eps. Horizon mode scopes the claim to [0, H].
WitnessResult non_sensitivity_witness(const LayoutCascade& c, const Rational& eps,
                                      const Mode& mode = Mode::sym());

/// Re-derives a stored certificate through the library and checks that every
/// recorded fact reproduces exactly. Returns false on any mismatch.
bool replay_certificate(const nlohmann::ordered_json& cert);

// report plumbing shared with the claims harness
nlohmann::ordered_json index_set_to_json(const IndexSet& s);
nlohmann::ordered_json cascade_replay_params(const LayoutCascade& c);
LayoutCascade cascade_from_replay_params(const nlohmann::ordered_json& j);

}  // namespace senslab
