#pragma once

#include <memory>
#include <string>
#include <vector>

#include "heckemod/endosolve.hpp"
#include "heckemod/localized.hpp"
#include "heckemod/presets.hpp"
#include "json.hpp"

namespace heckemod {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Owning bundle for one configured case; members reference each other, so
// addresses are pinned behind unique_ptr.
struct CaseContext {
  std::unique_ptr<RootSystem> rs;
  std::unique_ptr<CharacterLattice> lat;
  std::unique_ptr<CosetSystem> cs;
};

CaseContext build_case(const CaseConfig& config);

nlohmann::json coset_summary_json(const CosetSystem& cs);
nlohmann::json first_column_json(const FirstColumnSpace& fc);
nlohmann::json congruence_json(const CongruenceReport& rep, const CosetSystem& cs);
nlohmann::json oracle_json(const OracleResult& res, const CosetSystem& cs,
                           const CharacterLattice& lat);
nlohmann::json localized_json(const CosetSystem& cs, const CharacterLattice& lat);

// Full analysis report for one case (the `analyze` subcommand).
nlohmann::json run_case(const CaseConfig& config);

std::string render_text_report(const nlohmann::json& report);

// Golden reference runner shared by the CLI and the acceptance suite.
struct GoldenRow {
  std::string name;
  bool pass;
  std::string detail;
};
std::vector<GoldenRow> reproduce_paper_rows();
nlohmann::json reproduce_paper_report(const std::vector<GoldenRow>& rows);

bool is_prime(long long p);

}  // namespace heckemod
