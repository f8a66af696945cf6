#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "potlab_cli/config.hpp"
#include "potlab_cli/output.hpp"

namespace potlab::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Resolved settings shared by every suite of one invocation.
struct RunContext {
  RunConfig cfg;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out = "potlab-out";
  std::size_t workers = 1;

  /// Validates cfg (ConfigError on failure) and fills the defaults.
  static RunContext from(const RunConfig& cfg, std::size_t workers = 1);
};

/// Suites in report order.
const std::vector<std::string>& suite_names();

/// Runs one suite, writes <out>/<name>.csv and <out>/<name>.json and returns
/// the verdict. Throws ConfigError for unknown names.
SuiteResult run_suite(const std::string& name, const RunContext& ctx);

SuiteResult run_constants(const RunContext& ctx);
SuiteResult run_exit_dist(const RunContext& ctx);
SuiteResult run_reflection(const RunContext& ctx);
SuiteResult run_tightness(const RunContext& ctx);
SuiteResult run_scaling(const RunContext& ctx);
SuiteResult run_continuity(const RunContext& ctx);
SuiteResult run_martingale(const RunContext& ctx);
SuiteResult run_hardy_limit(const RunContext& ctx);

struct ReportSummary {
  Json summary;
  int failed = 0;  // failed or missing suites
};

/// Collects the verdicts found in ctx.out into <out>/summary.json. A suite
/// without a verdict file counts as failed. With run_missing, absent suites
/// are run first.
ReportSummary run_report(const RunContext& ctx, bool run_missing);

}  // namespace potlab::cli
