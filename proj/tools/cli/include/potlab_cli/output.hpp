#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace potlab::cli {

using Json = nlohmann::ordered_json;

/// 17 significant digits, enough to round-trip any double.
std::string num(double x);
std::string num(std::size_t x);
std::string num(int x);
std::string flag(bool b);

/// Fixed-column CSV. The first line is a comment carrying the suite and seed.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }

  void write(const std::filesystem::path& path, const std::string& suite, std::uint64_t seed) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// One verified statement with its numbers.
struct Check {
  std::string name;
  std::string claim;
  double target = 0.0;
  double estimate = 0.0;
  double tolerance = 0.0;
  std::string relation;  // how estimate, target and tolerance were compared
  bool pass = false;
};

/// |estimate - target| <= tolerance
Check close_check(std::string name, std::string claim, double target, double estimate, double tolerance);
/// estimate <= target + tolerance
Check bound_check(std::string name, std::string claim, double target, double estimate, double tolerance);
/// estimate < target + tolerance
Check strict_bound_check(std::string name, std::string claim, double target, double estimate, double tolerance);
/// A yes/no statement; estimate is 1 when it holds.
Check truth_check(std::string name, std::string claim, bool holds);

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  Json details = Json::object();

  bool pass() const;
};

Json to_json(const SuiteResult& r);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace potlab::cli
