#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfmmp/lattice.hpp"

namespace surfmmp::testing {

// Assembles a configuration from curves and nodes; the off-diagonal entries
// are the residue-degree sums of the nodes.
class ConfigBuilder {
 public:
  std::size_t curve(std::string id, std::int64_t self_int, std::int64_t canon_int,
                    std::optional<std::string> over = std::nullopt);
  // κ from adjunction for a curve of genus g: C² + K·C = 2g - 2.
  std::size_t curve_of_genus(std::string id, std::int64_t self_int, std::int64_t genus,
                             std::optional<std::string> over = std::nullopt);
  void node(std::size_t a, std::size_t b, std::int64_t degree = 1, std::string id = {});
  ConfigBuilder& chi(std::int64_t value);
  ConfigBuilder& canon_self_int(std::int64_t value);

  std::size_t size() const { return curves_.size(); }
  std::vector<Curve>& curves() { return curves_; }

  Configuration build() const;

 private:
  std::vector<Curve> curves_;
  struct Node {
    std::string id;
    std::size_t a, b;
    std::int64_t degree;
  };
  std::vector<Node> nodes_;
  std::optional<std::int64_t> chi_;
  std::optional<std::int64_t> k2_;
};

}  // namespace surfmmp::testing
