#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "msbem/config.hpp"
#include "msbem/errors.hpp"
#include "msbem/scenario.hpp"
#include "msbem/validate.hpp"

using namespace msbem;

namespace {

enum Exit { Ok = 0, ValidationFailed = 1, BadConfig = 2, NumericalFailure = 3 };

int do_solve(const std::string& path, const RunOptions& opt) {
  RunConfig c = load_config(path);
  RunResult r = run(c, opt);
  const auto& m = r.manifest;
  std::fprintf(stderr, "%s: %d elements, residual %.2e, rcond %.2e, %.1f s\n", c.name.c_str(),
               r.mesh.num_elements(), r.solution.residual, r.solution.rcond,
               m["timings"]["total_s"].get<double>());
  for (const auto& w : m["warnings"]) std::fprintf(stderr, "warning: %s\n", w.get<std::string>().c_str());
  return Ok;
}

int do_validate(const std::string& suite, int threads) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = suite_names();
  } else {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) throw ConfigError("unknown validation suite '" + suite + "'");
    suites = {suite};
  }
  std::vector<Check> all;
  auto log = [](const std::string& s) { std::fprintf(stderr, "%s\n", s.c_str()); };
  for (const auto& s : suites) {
    std::fprintf(stderr, "suite %s\n", s.c_str());
    auto checks = run_suite(s, threads, log);
    for (const Check& c : checks) {
      if (c.relation == "in")
        std::fprintf(stderr, "  [%s] %s: %.4g (in [%.4g, %.4g])\n", c.pass ? "pass" : "FAIL",
                     c.name.c_str(), c.measured, c.tolerance, c.upper);
      else
        std::fprintf(stderr, "  [%s] %s: %.4g (%s %.4g)\n", c.pass ? "pass" : "FAIL", c.name.c_str(),
                     c.measured, c.relation.c_str(), c.tolerance);
    }
    all.insert(all.end(), checks.begin(), checks.end());
  }
  auto rep = report_json(all);
  std::cout << rep.dump(2) << "\n";
  return rep["pass"].get<bool>() ? Ok : ValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary element solver for the mild-slope equation over depth varying in x"};
  app.require_subcommand(1);
  RunOptions opt;
  app.add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);

  std::string config;
  auto* solve = app.add_subcommand("solve", "run a scenario from a JSON config");
  solve->add_option("config", config, "config file")->required();
  solve->add_option("--out", opt.out_dir, "directory for relative output paths");
  solve->add_option("--dump-kernel", opt.dump_kernel, "write evaluated kernel values to this file");
  solve->add_option("--load-kernel", opt.load_kernel, "take kernel values from this file only");
  solve->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);

  std::string suite;
  auto* validate = app.add_subcommand("validate", "run a validation suite (or 'all')");
  validate->add_option("suite", suite, "suite name")->required();
  validate->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : BadConfig;
  }

  try {
    if (*solve) return do_solve(config, opt);
    return do_validate(suite, opt.threads);
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return NumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return BadConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return NumericalFailure;
  }
}
