#pragma once

#include <iosfwd>
#include <vector>

#include "senslab/sensitivity.hpp"

namespace senslab {

enum class ClaimId {
  ex1_claim1,
  ex1_claim2,
  ex1_claim3,
  ex1_claim4,
  ex2_syndetic,
  ex2_restricted_not_sensitive,
  remark_thick_not_syndetic,
  inclusion_chain,
};

std::string to_string(ClaimId id);
ClaimId claim_id_from_string(const std::string& s);
std::vector<std::string> claim_catalog();
std::vector<std::string> preset_catalog();

struct ClaimParams {
  PresetKind preset = PresetKind::paper;
  Integer horizon = 300000;
  long blocks = 12;
};

/// A named, replayable verification job. Every pass requires each embedded
/// certificate to replay successfully through the library.
struct ClaimReport {
  ClaimId id = ClaimId::ex1_claim1;
  ClaimParams params;
  bool pass = false;
  nlohmann::ordered_json body;

  /// Full report; the timestamp lives isolated under meta.generated_at so
  /// that reports are byte-identical modulo that one field.
  nlohmann::ordered_json to_json() const;
  /// Deterministic portion (meta stripped), used for golden comparisons.
  nlohmann::ordered_json deterministic_json() const;
};

ClaimReport verify_claim(ClaimId id, const ClaimParams& params);

/// Exact diameter trace: rows n,diameter_numerator,diameter_denominator,level,j.
void diameter_sweep(const LayoutCascade& c, const TrackedSet& track, const Integer& n_lo,
                    const Integer& n_hi, std::ostream& out);

/// Notes on the places where the literal branch constants of the source
/// construction disagree with the layout-derived canonical bijection. These
/// are first-class report fields.
nlohmann::ordered_json construction_notes(SpaceKind kind);

/// Walks the stepwise oracle alongside the closed-form diameters for
/// n = 0..n_max and reports exact agreement (one map application per step).
nlohmann::ordered_json oracle_agreement_report(const LayoutCascade& c, const TrackedSet& track,
                                               const Integer& n_max);

}  // namespace senslab
