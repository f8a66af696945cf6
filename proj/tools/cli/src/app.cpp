#include "potlab_cli/app.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "potlab/errors.hpp"
#include "potlab_cli/suites.hpp"

namespace potlab::cli {

namespace {

void print_result(const SuiteResult& r) {
  std::cout << r.suite << " (seed " << r.seed << ")\n";
  for (const Check& c : r.checks) {
    std::cout << "  [" << (c.pass ? "ok  " : "FAIL") << "] " << c.name << ": estimate " << num(c.estimate)
              << ", target " << num(c.target) << ", tolerance " << num(c.tolerance) << '\n';
  }
  std::cout << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << '\n';
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Monte Carlo checks of exit-time limit theorems for harmonic functions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  RunConfig flags;
  std::size_t workers = 1;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--seed", flags.seed, "base seed");
  app.add_option("--out", flags.out_dir, "output directory");
  app.add_option("--paths", flags.n_paths, "Monte Carlo sample count (overrides every count of the suite)");
  app.add_option("--dt", flags.dt, "time step of the discretized engine");
  app.add_option("--variant", flags.variant, "radius schedule: linear, cubic or conservative-min");
  app.add_option("--q-max", flags.q_max, "number of schedule stages");
  app.add_option("--workers", workers, "worker threads (results do not depend on this)");

  std::string chosen;
  for (const std::string& name : suite_names()) {
    app.add_subcommand(name, "run the " + name + " suite")->callback([&chosen, name] { chosen = name; });
  }
  bool run_missing = false;
  auto* report = app.add_subcommand("report", "collect verdicts into summary.json; exit code = failed suites");
  report->add_flag("--run", run_missing, "run suites whose verdict is missing");
  report->callback([&chosen] { chosen = "report"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  RunContext ctx;
  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    ctx = RunContext::from(merge(cfg, flags), workers);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (chosen == "report") {
      const ReportSummary s = run_report(ctx, run_missing);
      for (const auto& entry : s.summary["suites"]) {
        std::cout << entry["suite"].get<std::string>() << ": "
                  << (!entry["present"].get<bool>() ? "MISSING" : entry["pass"].get<bool>() ? "PASS" : "FAIL")
                  << '\n';
      }
      std::cout << "failed suites: " << s.failed << '\n';
      return s.failed;
    }
    const SuiteResult r = run_suite(chosen, ctx);
    print_result(r);
    return r.pass() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternalError;
  }
}

}  // namespace potlab::cli
