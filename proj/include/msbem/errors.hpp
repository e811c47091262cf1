#pragma once

#include <stdexcept>
#include <string>

namespace msbem {

// Invalid or inconsistent user input (bad config, empty geometry, ...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed: no convergence, singular system, domain violation.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& module, const std::string& what)
      : std::runtime_error("[" + module + "] " + what), module_(module) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

}  // namespace msbem
