#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <unistd.h>

#include "potlab_cli/app.hpp"
#include "potlab_cli/config.hpp"
#include "potlab_cli/output.hpp"
#include "potlab_cli/suites.hpp"

namespace fs = std::filesystem;
using namespace potlab::cli;

namespace {

int run(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"potlab"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : store) argv.push_back(s.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("potlab-cli-test-" + std::to_string(::getpid()) + "-" +
                                                 std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Config, ParsesKeysAndComments) {
  const RunConfig c = parse_config("# settings\nm = 3\n dt=1e-3  # inline\n\nn_paths = 500\nvariant = cubic\n");
  EXPECT_EQ(c.m, 3);
  EXPECT_EQ(c.dt, 1e-3);
  EXPECT_EQ(c.n_paths, 500u);
  EXPECT_EQ(c.variant, "cubic");
  EXPECT_FALSE(c.seed.has_value());
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config("colour = blue\n"), ConfigError);
  EXPECT_THROW(parse_config("m = 2\nm = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("m 2\n"), ConfigError);
  EXPECT_THROW(parse_config("m =\n"), ConfigError);
  EXPECT_THROW(parse_config("dt = fast\n"), ConfigError);
  EXPECT_THROW(parse_config("m = 2.5\n"), ConfigError);
}

TEST(Config, ValidationRanges) {
  RunConfig c;
  c.n_paths = 10;
  EXPECT_THROW(validate(c), ConfigError);
  c = RunConfig{};
  c.dt = 2.0;
  EXPECT_THROW(validate(c), ConfigError);
  c = RunConfig{};
  c.variant = "fastest";
  EXPECT_THROW(validate(c), ConfigError);
  c = RunConfig{};
  c.r_trunc = 1.0;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Config, OverridesWin) {
  RunConfig base, over;
  base.m = 2;
  base.dt = 1e-3;
  over.dt = 1e-4;
  const RunConfig c = merge(base, over);
  EXPECT_EQ(c.m, 2);
  EXPECT_EQ(c.dt, 1e-4);
}

TEST(Output, NumbersRoundTrip) {
  EXPECT_EQ(std::stod(num(0.1)), 0.1);
  EXPECT_EQ(num(std::size_t{42}), "42");
  EXPECT_EQ(flag(true), "true");
  CsvTable t({"a", "b"});
  EXPECT_THROW(t.add({"1"}), std::exception);
}

TEST(Cli, ConfigErrorsExitWith64) {
  EXPECT_EQ(run({"--paths", "10", "constants"}), kExitConfigError);
  EXPECT_EQ(run({"--config", "/nonexistent/potlab.cfg", "constants"}), kExitConfigError);
  EXPECT_EQ(run({"no-such-suite"}), kExitConfigError);
  EXPECT_EQ(run({}), kExitConfigError);

  TempDir dir;
  write_file(dir.path() / "bad.cfg", "horizon = -1\n");
  EXPECT_EQ(run({"--config", (dir.path() / "bad.cfg").string(), "constants"}), kExitConfigError);
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(run({"--help"}), 0); }

TEST(Cli, SuiteWritesCsvAndVerdict) {
  TempDir dir;
  ASSERT_EQ(run({"--out", dir.path().string(), "--paths", "20000", "constants"}), 0);
  std::ifstream csv(dir.path() / "constants.csv");
  std::string first;
  std::getline(csv, first);
  EXPECT_EQ(first, "# potlab constants seed=20240611");
  std::ifstream verdict(dir.path() / "constants.json");
  const Json j = Json::parse(verdict);
  EXPECT_EQ(j["suite"], "constants");
  EXPECT_EQ(j["seed"], 20240611u);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_TRUE(j.contains("claim"));
}

TEST(Cli, ReportCountsFailedAndMissingSuites) {
  TempDir dir;
  EXPECT_EQ(run({"--out", dir.path().string(), "report"}), static_cast<int>(suite_names().size()));

  for (const std::string& name : suite_names()) {
    Json v;
    v["suite"] = name;
    v["seed"] = kDefaultSeed;
    v["pass"] = name != "scaling";
    write_json(dir.path() / (name + ".json"), v);
  }
  EXPECT_EQ(run({"--out", dir.path().string(), "report"}), 1);

  std::ifstream in(dir.path() / "summary.json");
  const Json summary = Json::parse(in);
  ASSERT_EQ(summary["suites"].size(), suite_names().size());
  for (std::size_t i = 0; i < suite_names().size(); ++i) EXPECT_EQ(summary["suites"][i]["suite"], suite_names()[i]);
  EXPECT_EQ(summary["failed"], 1);
}

TEST(Cli, ExecutableReportsConfigErrors) {
  const std::string cmd = std::string(POTLAB_CLI_PATH) + " --paths 10 reflection > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_NE(status, -1);
  EXPECT_EQ(WEXITSTATUS(status), kExitConfigError);
}
