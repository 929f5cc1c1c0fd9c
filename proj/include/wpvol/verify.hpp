#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wpvol {

struct VerifyOptions {
  int genus = 1;
  int punctures = 1;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> cache_dir;
};

/// One asserted property. `property` is a stable machine-readable name of
/// the statement being checked, used in failure records.
struct CheckResult {
  std::string name;
  std::string property;
  bool pass = false;
  nlohmann::json detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
  nlohmann::json to_json() const;
};

/// triangle, lemmas, forms, stokes, decomposition, counting.
const std::vector<std::string>& suite_names();

/// Runs one suite ("all" is handled by the caller iterating suite_names()).
/// Throws PreconditionError for an unknown suite or unsupported (g, n).
SuiteReport run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace wpvol
