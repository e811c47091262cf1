// Runs every validation suite and prints one line per acceptance criterion.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <thread>

#include "msbem/validate.hpp"

using namespace msbem;

namespace {

const char* titles[] = {
    "",
    "dispersion relation and wavelength at T=5 s, h=14 m",
    "constant-wavenumber 1D problem: accuracy at 20 epw and O(h^2) slope",
    "constant-depth kernel vs Helmholtz fundamental solution",
    "kernel robustness: M doubling, tau halving, reciprocity",
    "rigid cylinder at constant depth vs MacCamy-Fuchs, equipotential identity",
    "channel shoaling vs analytic WAF",
    "variable-depth cylinder properties",
    "self-element quadrature vs adaptive oracle",
    "special functions: Wronskian, Jacobi-Anger, E1 seam",
};

void print_check(const Check& c) {
  if (c.relation == "in")
    std::printf("    %s %-62s %.4g in [%.4g, %.4g]\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.measured,
                c.tolerance, c.upper);
  else
    std::printf("    %s %-62s %.4g %s %.4g\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.measured,
                c.relation.c_str(), c.tolerance);
}

}  // namespace

int main() {
  int threads = std::max(1u, std::thread::hardware_concurrency());
  std::map<int, std::vector<Check>> by_criterion;
  std::map<int, double> seconds;
  for (const std::string& suite : suite_names()) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    try {
      checks = run_suite(suite, threads);
    } catch (const std::exception& e) {
      std::printf("suite %s aborted: %s\n", suite.c_str(), e.what());
      checks.push_back(check_below(suite, std::string("suite aborted: ") + e.what(), 0, 1.0, 0.0));
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const Check& c : checks) {
      by_criterion[c.criterion].push_back(c);
      seconds[c.criterion] += dt / checks.size();
    }
  }
  bool all = true;
  for (int k = 1; k <= 9; ++k) {
    const auto& cs = by_criterion[k];
    bool pass = !cs.empty();
    for (const Check& c : cs) pass = pass && c.pass;
    all = all && pass;
    std::printf("criterion %d: %s  %s (%.1f s)\n", k, pass ? "PASS" : "FAIL", titles[k], seconds[k]);
    for (const Check& c : cs) print_check(c);
  }
  for (const Check& c : by_criterion[0]) {
    all = all && c.pass;
    print_check(c);
  }
  std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
  std::fflush(stdout);
  return all ? 0 : 1;
}
