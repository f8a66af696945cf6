#include "potlab_cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace potlab::cli {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(std::size_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "true" : "false"; }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("CsvTable: row width differs from header");
  rows_.push_back(std::move(cells));
}

void CsvTable::write(const std::filesystem::path& path, const std::string& suite, std::uint64_t seed) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# potlab " << suite << " seed=" << seed << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(columns_);
  for (const auto& row : rows_) line(row);
}

Check close_check(std::string name, std::string claim, double target, double estimate, double tolerance) {
  return {std::move(name), std::move(claim), target, estimate, tolerance, "|estimate - target| <= tolerance",
          std::abs(estimate - target) <= tolerance};
}

Check bound_check(std::string name, std::string claim, double target, double estimate, double tolerance) {
  return {std::move(name), std::move(claim), target, estimate, tolerance, "estimate <= target + tolerance",
          estimate <= target + tolerance};
}

Check strict_bound_check(std::string name, std::string claim, double target, double estimate, double tolerance) {
  return {std::move(name), std::move(claim), target, estimate, tolerance, "estimate < target + tolerance",
          estimate < target + tolerance};
}

Check truth_check(std::string name, std::string claim, bool holds) {
  return {std::move(name), std::move(claim), 1.0, holds ? 1.0 : 0.0, 0.0, "estimate == target", holds};
}

bool SuiteResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

namespace {

Json number(double x) {
  // JSON has no inf/nan; keep them readable as strings.
  if (std::isfinite(x)) return x;
  return num(x);
}

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["claim"] = c.claim;
  j["target"] = number(c.target);
  j["estimate"] = number(c.estimate);
  j["tolerance"] = number(c.tolerance);
  j["relation"] = c.relation;
  j["pass"] = c.pass;
  return j;
}

}  // namespace

Json to_json(const SuiteResult& r) {
  Json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  // Headline numbers come from the first check; every check is listed below.
  if (!r.checks.empty()) {
    const Check& head = r.checks.front();
    j["claim"] = head.claim;
    j["target"] = number(head.target);
    j["estimate"] = number(head.estimate);
    j["tolerance"] = number(head.tolerance);
  }
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["details"] = r.details;
  return j;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace potlab::cli
