#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace surfmmp::cli {

struct CheckResult {
  std::size_t claims = 0;  // individual facts re-derived
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Re-verifies a machine report from its certificates and the embedded input
/// document, using nothing but rational arithmetic on the intersection
/// matrix. Independent of the library's solvers.
CheckResult check_report(const nlohmann::ordered_json& report);

}  // namespace surfmmp::cli
