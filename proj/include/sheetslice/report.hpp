// Report assembly for the command-line front door: catalog listings, slice certification,
// adapted positive systems and oracle suites, rendered as a text table or as JSON
// (schema "sheetslice-report/1").
#pragma once

#include "sheetslice/toruslat.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sheetslice {

inline constexpr const char* kReportSchema = "sheetslice-report/1";

struct RunConfig {
  std::string command = "all";  // catalog | verify-slice | oracle | sev-check | all
  char type = 0;                // 0: the default sweep (command all only)
  int rank = 0;
  Isogeny isogeny = Isogeny::SimplyConnected;
  std::string sheet;                // empty: every sheet of the type
  std::optional<std::uint32_t> q;   // verify-slice: SHEETSLICE_P; oracle: 3
  int samples = 0;                  // 0: SHEETSLICE_SAMPLES
  std::uint64_t seed = 1;
  long long budget = 0;             // 0: SHEETSLICE_BUDGET
  int threads = 0;
  bool oracle_slices = true;
  bool oracle_containment = true;
  std::string format = "text";      // text | json
  std::string output;               // empty: stdout
};

/// Fills defaults from the environment and rejects selectors outside the catalog.
RunConfig resolve(RunConfig cfg);

struct ClaimRow {
  std::string id;
  std::string citation;
  std::string status;  // pass | fail | info
  std::string witness;
  std::string detail;
};

struct Report {
  RunConfig config;
  std::vector<ClaimRow> claims;
  nlohmann::ordered_json sections = nlohmann::ordered_json::object();
  std::vector<std::string> text;  // preformatted tables
  bool ok() const;
};

/// Throws std::invalid_argument for bad selectors and BudgetExceeded for oversized groups.
Report run(const RunConfig& cfg);

std::string to_json(const Report& r);
std::string to_text(const Report& r);

}  // namespace sheetslice
