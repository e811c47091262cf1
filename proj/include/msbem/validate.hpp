#pragma once

#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

namespace msbem {

struct Check {
  std::string suite;
  std::string name;
  int criterion = 0;       // acceptance criterion this check belongs to, 0 if none
  std::string relation;    // "<", ">" or "in"
  double tolerance = 0.0;  // bound (lower bound for "in")
  double upper = 0.0;      // upper bound for "in"
  double measured = 0.0;
  bool pass = false;
  std::string note;
};

Check check_below(std::string suite, std::string name, int criterion, double measured, double tol,
                  std::string note = {});
Check check_above(std::string suite, std::string name, int criterion, double measured, double tol,
                  std::string note = {});
Check check_within(std::string suite, std::string name, int criterion, double measured, double lo,
                   double hi, std::string note = {});

using Logger = std::function<void(const std::string&)>;

std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown suite.
std::vector<Check> run_suite(const std::string& name, int threads = 1, const Logger& log = {});

nlohmann::json report_json(const std::vector<Check>& checks);

}  // namespace msbem
