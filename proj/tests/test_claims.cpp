#include "doctest.h"

#include "senslab/claims.hpp"

#include <fstream>
#include <sstream>

using namespace senslab;

namespace {
std::string read_file(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("catalog lists eight claims and three presets") {
  CHECK(claim_catalog().size() == 8);
  CHECK(preset_catalog().size() == 3);
  for (const auto& name : claim_catalog())
    CHECK(to_string(claim_id_from_string(name)) == name);
  CHECK_THROWS_AS(claim_id_from_string("bogus"), InvalidParams);
}

TEST_CASE("all claims pass on the default preset and match their goldens") {
  for (const auto& name : claim_catalog()) {
    CAPTURE(name);
    ClaimReport r = verify_claim(claim_id_from_string(name), ClaimParams{});
    CHECK(r.pass);
    // byte-identical regression against the committed golden (timestamp field
    // excluded by construction)
    std::string golden = read_file(std::string(SENSLAB_GOLDEN_DIR) + "/" + name + ".json");
    CHECK(r.deterministic_json().dump(2) + "\n" == golden);
    // the full report differs from the deterministic part only in meta
    auto full = r.to_json();
    full.erase("meta");
    CHECK(full == r.deterministic_json());
  }
}

TEST_CASE("reports are deterministic run to run") {
  ClaimReport a = verify_claim(ClaimId::ex2_syndetic, ClaimParams{});
  ClaimReport b = verify_claim(ClaimId::ex2_syndetic, ClaimParams{});
  CHECK(a.deterministic_json().dump(2) == b.deterministic_json().dump(2));
}

TEST_CASE("scaled-preset analogues of the short claims pass") {
  ClaimParams p;
  p.preset = PresetKind::scaled;
  for (ClaimId id : {ClaimId::ex2_syndetic, ClaimId::ex2_restricted_not_sensitive,
                     ClaimId::ex1_claim3}) {
    CAPTURE(to_string(id));
    CHECK(verify_claim(id, p).pass);
  }
}

TEST_CASE("diameter sweep emits the exact trace") {
  GrowthParams gp;
  auto x1 = LayoutCascade(SpaceLayout::build(SpaceKind::ex1_x, gp));
  std::ostringstream out;
  diameter_sweep(x1, TrackedSet::full(0), 0, 9, out);
  CHECK(out.str() ==
        "n,diameter_numerator,diameter_denominator,level,j\n"
        "0,1,1,0,0\n"
        "1,1,2,1,1\n"
        "2,1,2,1,2\n"
        "3,2,1,2,3\n"
        "4,2,1,2,4\n"
        "5,2,1,2,5\n"
        "6,2,1,2,6\n"
        "7,2,1,2,7\n"
        "8,1,4,3,8\n"
        "9,1,4,3,9\n");
  auto y = LayoutCascade(SpaceLayout::build(SpaceKind::ex1_y, gp));
  std::ostringstream ys;
  diameter_sweep(y, TrackedSet::full(0), 6, 6, ys);
  CHECK(ys.str() ==
        "n,diameter_numerator,diameter_denominator,level,j\n"
        "6,3,1,3,6\n");
  CHECK_THROWS_AS(diameter_sweep(y, TrackedSet::full(0), 5, 2, ys), InvalidParams);
}

TEST_CASE("construction notes document the junction discrepancies") {
  auto notes_x = construction_notes(SpaceKind::ex1_x);
  REQUIRE(notes_x.size() >= 2);
  bool slope_note = false;
  for (const auto& n : notes_x)
    if (n["id"] == "junction_slope_shrink_to_grow") {
      slope_note = true;
      CHECK(n["checked_at_n1"]["agree"] == false);
    }
  CHECK(slope_note);
  auto notes_2 = construction_notes(SpaceKind::ex2_x);
  bool consistent = false;
  for (const auto& n : notes_2)
    if (n["id"] == "branches_consistent") {
      consistent = true;
      CHECK(n["checked_at_n1"]["agree"] == true);
    }
  CHECK(consistent);
}

TEST_CASE("oracle agreement reports carry the exact verdict") {
  GrowthParams gp;
  auto c = LayoutCascade(SpaceLayout::build(SpaceKind::ex2_x, gp));
  auto rep = oracle_agreement_report(c, TrackedSet::full(0), 4);
  CHECK(rep["exact_agreement"] == true);
  CHECK(rep["first_disagreement"] == "-1");
}
