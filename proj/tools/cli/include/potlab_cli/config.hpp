#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace potlab::cli {

/// Bad configuration; the tool exits with code 64.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings from a key=value file and command-line overrides. Unset fields
/// fall back to each suite's own defaults.
struct RunConfig {
  std::optional<int> m;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<std::size_t> n_paths;
  std::optional<std::uint64_t> seed;
  std::optional<int> q_max;
  std::optional<double> r_trunc;
  std::optional<std::string> variant;
  std::optional<std::string> out_dir;
};

/// Lines are `key = value`; `#` starts a comment; blank lines are skipped.
/// Unknown keys, repeated keys and malformed values are errors.
RunConfig parse_config(std::string_view text, const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Fields set in `overrides` replace those in `base`.
RunConfig merge(RunConfig base, const RunConfig& overrides);

/// Range checks that mirror the library preconditions, so that a bad value
/// is reported before any simulation starts.
void validate(const RunConfig& cfg);

}  // namespace potlab::cli
