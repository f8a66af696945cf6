#include "potlab_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "potlab/geom.hpp"
#include "potlab/hardy_limit.hpp"

namespace potlab::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view value, const std::string& where) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(where + ": cannot parse '" + std::string(value) + "' as a number");
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& origin) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = origin + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + ": '" + key + "' given twice");

    if (key == "m") {
      cfg.m = parse_number<int>(value, where);
    } else if (key == "dt") {
      cfg.dt = parse_number<double>(value, where);
    } else if (key == "horizon") {
      cfg.horizon = parse_number<double>(value, where);
    } else if (key == "n_paths") {
      cfg.n_paths = parse_number<std::size_t>(value, where);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, where);
    } else if (key == "q_max") {
      cfg.q_max = parse_number<int>(value, where);
    } else if (key == "r_trunc") {
      cfg.r_trunc = parse_number<double>(value, where);
    } else if (key == "variant") {
      cfg.variant = std::string(value);
    } else if (key == "out_dir") {
      cfg.out_dir = std::string(value);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

RunConfig merge(RunConfig base, const RunConfig& overrides) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.m, overrides.m);
  take(base.dt, overrides.dt);
  take(base.horizon, overrides.horizon);
  take(base.n_paths, overrides.n_paths);
  take(base.seed, overrides.seed);
  take(base.q_max, overrides.q_max);
  take(base.r_trunc, overrides.r_trunc);
  take(base.variant, overrides.variant);
  take(base.out_dir, overrides.out_dir);
  return base;
}

void validate(const RunConfig& cfg) {
  if (cfg.m && (*cfg.m < 2 || static_cast<std::size_t>(*cfg.m) > Point::kMaxDim)) {
    throw ConfigError("m must lie in [2, " + std::to_string(Point::kMaxDim) + "]");
  }
  if (cfg.dt && !(*cfg.dt > 0.0 && *cfg.dt < 1.0)) throw ConfigError("dt must lie in (0, 1)");
  if (cfg.horizon && !(*cfg.horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (cfg.dt && cfg.horizon && !(*cfg.horizon >= *cfg.dt)) throw ConfigError("horizon must be at least dt");
  if (cfg.n_paths && *cfg.n_paths < 50) throw ConfigError("n_paths must be at least 50 (KS asymptotics)");
  if (cfg.q_max && (*cfg.q_max < 1 || *cfg.q_max > 30)) throw ConfigError("q_max must lie in [1, 30]");
  if (cfg.r_trunc && !(*cfg.r_trunc > 0.0 && *cfg.r_trunc < 1.0)) throw ConfigError("r_trunc must lie in (0, 1)");
  if (cfg.variant) {
    try {
      (void)parse_variant(*cfg.variant);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.out_dir && cfg.out_dir->empty()) throw ConfigError("out_dir must not be empty");
}

}  // namespace potlab::cli
