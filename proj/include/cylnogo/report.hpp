#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cylnogo/checks.hpp"

namespace cylnogo {

inline constexpr const char* kReportVersion = "1.0.0";

inline nlohmann::json results_json(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : results)
    checks.push_back({{"name", r.name},
                      {"status", r.status},
                      {"witness", r.witness},
                      {"paper_anchor", r.paper_anchor},
                      {"elapsed_ms", r.elapsed_ms}});
  return {{"version", kReportVersion}, {"checks", checks}};
}

inline std::string results_text(const std::vector<CheckResult>& results) {
  std::string out;
  int ok = 0;
  for (const auto& r : results) {
    const bool good = r.as_expected();
    if (good) ++ok;
    out += good ? "[ok]   " : "[BAD]  ";
    out += r.name + ": " + r.status;
    if (!good) out += " (expected " + r.expected + ")";
    out += " [" + std::to_string(r.elapsed_ms) + " ms]\n";
    if (!r.witness.empty()) out += "       " + r.witness + "\n";
  }
  out += std::to_string(ok) + "/" + std::to_string(results.size()) +
         " checks reached their expected status\n";
  return out;
}

}  // namespace cylnogo
