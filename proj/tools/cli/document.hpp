#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfmmp/surfmmp.hpp"

namespace surfmmp::cli {

inline constexpr int kSchemaVersion = 1;

/// Parse failure located by JSON pointer into the document and, for syntax
/// errors, by line and column.
class DocumentError : public Error {
 public:
  DocumentError(std::string path, std::string message, std::size_t line = 0,
                std::size_t column = 0, std::vector<std::string> details = {});

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> details_;
};

struct Options {
  std::vector<std::string> ray_policy;
  std::string output_format = "human";  // or "json"

  bool operator==(const Options&) const = default;
};

struct InputDocument {
  int schema_version = kSchemaVersion;
  Configuration configuration;
  std::vector<std::size_t> contracted;  // ascending curve indices
  bool q_factorial = true;
  Divisor boundary;
  std::optional<Fibration> fibration;
  Options options;

  Model model() const { return Model(configuration, contracted, q_factorial); }
  Pair pair() const { return Pair(model(), boundary); }
  /// ArgumentError when the document has no fibration block.
  const Fibration& require_fibration() const;
  std::vector<std::size_t> ray_policy_indices() const;

  bool operator==(const InputDocument&) const = default;
};

/// Parses and checks a document: JSON syntax, schema, configuration
/// invariants, negative definiteness of the contracted locus, boundary and
/// fibration consistency.
InputDocument parse_input(std::string_view text);

/// Canonical JSON value of the document.
nlohmann::ordered_json to_json(const InputDocument& doc);

/// Canonical JSON text (fixed key order, two-space indent, trailing newline).
std::string serialize(const InputDocument& doc);

}  // namespace surfmmp::cli
