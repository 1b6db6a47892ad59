#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "document.hpp"

namespace surfmmp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 2;
inline constexpr int kExitInvariant = 3;

struct Request {
  std::string command;
  std::string mode = "qf";
  std::vector<std::string> ray_policy;  // overrides the document's options
  std::optional<std::string> curve;
  std::optional<std::string> point;
};

const std::vector<std::string>& command_names();

struct Report {
  int exit_code = kExitOk;
  std::string human;
  /// Machine report: the command, the input document, the status and either
  /// the result with its certificates or the error.
  nlohmann::ordered_json machine;
};

Report dispatch(const Request& request, const InputDocument& doc);

/// Report for a document that failed to parse.
Report input_error(const Request& request, const DocumentError& error);

/// Reads, parses and dispatches one file.
Report run_file(const Request& request, const std::string& path);

}  // namespace surfmmp::cli
