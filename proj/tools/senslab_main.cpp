#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "senslab/claims.hpp"

using namespace senslab;

int main(int argc, char** argv) {
  CLI::App app{"senslab: exact sensitivity analysis of piecewise-affine interval cascades"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a named verification job");
  std::string claim_id;
  std::string preset = "paper";
  std::string horizon = "300000";
  std::string out_file;
  long blocks = 12;
  verify->add_option("claim-id", claim_id, "claim identifier (see catalog)")->required();
  verify->add_option("--preset", preset, "paper|scaled")
      ->check(CLI::IsMember({"paper", "scaled"}));
  verify->add_option("--horizon", horizon, "stepwise cross-check horizon");
  verify->add_option("--blocks", blocks, "symbolic block depth");
  verify->add_option("--out", out_file, "write the JSON report here (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "exact diameter trace as CSV");
  std::string system;
  std::string sweep_preset = "paper";
  std::string from = "0";
  std::string to = "20";
  std::string csv_file;
  sweep->add_option("system", system, "ex1_x|ex1_y|ex2_x")->required();
  sweep->add_option("--preset", sweep_preset, "paper|scaled")
      ->check(CLI::IsMember({"paper", "scaled"}));
  sweep->add_option("--from", from, "first time index");
  sweep->add_option("--to", to, "last time index");
  sweep->add_option("--csv", csv_file, "output file (default: stdout)");

  auto* cls_cmd = app.add_subcommand("classify-set", "classify a set of indices from JSON");
  std::string json_file;
  std::string cls_horizon;
  cls_cmd->add_option("--json", json_file, "input file")->required();
  cls_cmd->add_option("--horizon", cls_horizon, "window for tail-less sets");

  auto* cat = app.add_subcommand("catalog", "list claim ids, presets, and systems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      ClaimParams p;
      p.preset = preset_kind_from_string(preset);
      p.horizon = integer_from_decimal(horizon);
      p.blocks = blocks;
      ClaimReport r = verify_claim(claim_id_from_string(claim_id), p);
      std::string text = r.to_json().dump(2) + "\n";
      if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) {
          std::cerr << "error: cannot write " << out_file << "\n";
          return 2;
        }
        f << text;
      } else {
        std::cout << text;
      }
      std::cerr << to_string(r.id) << " (" << preset << "): " << (r.pass ? "PASS" : "FAIL")
                << "\n";
      return r.pass ? 0 : 1;
    }
    if (*sweep) {
      GrowthParams gp;
      gp.preset = preset_kind_from_string(sweep_preset);
      LayoutCascade c(SpaceLayout::build(space_kind_from_string(system), gp));
      Integer a = integer_from_decimal(from);
      Integer b = integer_from_decimal(to);
      if (!csv_file.empty()) {
        std::ofstream f(csv_file);
        if (!f) {
          std::cerr << "error: cannot write " << csv_file << "\n";
          return 2;
        }
        diameter_sweep(c, TrackedSet::full(0), a, b, f);
      } else {
        diameter_sweep(c, TrackedSet::full(0), a, b, std::cout);
      }
      return 0;
    }
    if (*cls_cmd) {
      std::ifstream f(json_file);
      if (!f) {
        std::cerr << "error: cannot open " << json_file << "\n";
        return 2;
      }
      auto j = nlohmann::ordered_json::parse(f);
      std::optional<Integer> H;
      if (!cls_horizon.empty()) H = integer_from_decimal(cls_horizon);
      SetClassification result;
      if (j.contains("kind") && j["kind"] == "symbolic") {
        result = classify(SymbolicSet::from_json(j.at("set")));
      } else if (j.contains("kind")) {
        result = classify(RangeSet::from_json(j.at("set")), H);
      } else {
        result = classify(RangeSet::from_json(j), H);
      }
      std::cout << result.to_json().dump(2) << "\n";
      return 0;
    }
    if (*cat) {
      nlohmann::ordered_json j;
      j["claims"] = claim_catalog();
      j["presets"] = preset_catalog();
      j["systems"] = {"ex1_x", "ex1_y", "ex2_x"};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const CertificateReplayFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad input JSON: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
