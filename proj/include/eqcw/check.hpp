#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqcw {

/// Outcome of one verification. Exact checks leave `residual` empty.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::optional<double> residual;
  std::string detail;

  static CheckResult exact(std::string name, bool pass, std::string detail = {}) {
    return {std::move(name), pass, std::nullopt, std::move(detail)};
  }
  static CheckResult numeric(std::string name, double residual, double tolerance, std::string detail = {}) {
    return {std::move(name), residual <= tolerance, residual, std::move(detail)};
  }
};

inline bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace eqcw
