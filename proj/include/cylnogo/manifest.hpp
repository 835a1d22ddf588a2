#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace cylnogo {

// Built-in copy of the default run configuration; kept in sync with the
// share/manifest.json file installed next to the executable.
inline const char* embedded_manifest_json() {
  return R"json({
  "version": "1.0.0",
  "checks": {
    "aside-discrepancy": {},
    "b-zero": {},
    "bootstrap": {"alphas": ["1/3", "1", "-2"], "maxdeg": 3, "maxharm": 5},
    "bprime-cprime": {},
    "iden": {},
    "irred": {"maxdeg": 3, "maxharm": 6},
    "newiden": {},
    "nogo-main": {},
    "nogo-valpha": {},
    "p1-maximal": {"maxdeg": 3, "maxharm": 5},
    "posrep-hom": {"harmonic_range": 8},
    "recursion": {"ket_range": 5},
    "trivial-p": {},
    "trivial-valpha": {"family_range": 4},
    "uniqueness-constraints": {"range": 6},
    "vn-l2-underdetermined": {},
    "walpha-structure": {"alphas": ["1/3", "1", "-2"], "maxdeg": 3, "maxharm": 5}
  }
}
)json";
}

// Pinned run configuration: the version stamp plus one binding object per
// registered check (cutoffs, ranges, instantiated shifts).
struct Manifest {
  std::string version;
  nlohmann::json checks;  // object: check name -> bindings
  std::string source;     // where the configuration came from

  static Manifest from_json(const nlohmann::json& j, std::string origin) {
    if (!j.is_object() || !j.contains("version") || !j.contains("checks") ||
        !j.at("checks").is_object())
      throw std::runtime_error("malformed manifest from " + origin);
    Manifest m;
    m.version = j.at("version").get<std::string>();
    m.checks = j.at("checks");
    m.source = std::move(origin);
    return m;
  }

  static Manifest from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buf.str());
    } catch (const std::exception& e) {
      throw std::runtime_error("invalid manifest " + path + ": " + e.what());
    }
    return from_json(j, path);
  }

  // Resolution order: CYLNOGO_MANIFEST environment variable, then
  // manifest.json beside the executable, then the embedded default.
  static Manifest load(const std::string& argv0 = "") {
    if (const char* env = std::getenv("CYLNOGO_MANIFEST")) return from_file(env);
    if (!argv0.empty()) {
      std::error_code ec;
      const auto beside =
          std::filesystem::path(argv0).parent_path() / "manifest.json";
      if (std::filesystem::exists(beside, ec) && !ec)
        return from_file(beside.string());
    }
    return from_json(nlohmann::json::parse(embedded_manifest_json()), "embedded");
  }

  bool has(const std::string& check) const { return checks.contains(check); }

  nlohmann::json bindings(const std::string& check) const {
    if (!checks.contains(check))
      throw std::out_of_range("manifest has no bindings for check " + check);
    return checks.at(check);
  }
};

}  // namespace cylnogo
