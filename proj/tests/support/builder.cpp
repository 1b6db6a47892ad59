#include "builder.hpp"

namespace surfmmp::testing {

std::size_t ConfigBuilder::curve(std::string id, std::int64_t self_int, std::int64_t canon_int,
                                 std::optional<std::string> over) {
  curves_.push_back(Curve{std::move(id), self_int, canon_int, std::move(over)});
  return curves_.size() - 1;
}

std::size_t ConfigBuilder::curve_of_genus(std::string id, std::int64_t self_int,
                                          std::int64_t genus, std::optional<std::string> over) {
  return curve(std::move(id), self_int, 2 * genus - 2 - self_int, std::move(over));
}

void ConfigBuilder::node(std::size_t a, std::size_t b, std::int64_t degree, std::string id) {
  if (id.empty()) {
    id = "p" + std::to_string(nodes_.size());
  }
  nodes_.push_back(Node{std::move(id), a, b, degree});
}

ConfigBuilder& ConfigBuilder::chi(std::int64_t value) {
  chi_ = value;
  return *this;
}

ConfigBuilder& ConfigBuilder::canon_self_int(std::int64_t value) {
  k2_ = value;
  return *this;
}

Configuration ConfigBuilder::build() const {
  const std::size_t n = curves_.size();
  linalg::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = curves_[i].self_int;
  }
  std::vector<IncidencePoint> points;
  for (const auto& nd : nodes_) {
    m(nd.a, nd.b) += nd.degree;
    m(nd.b, nd.a) += nd.degree;
    points.push_back(IncidencePoint{nd.id, {nd.a, nd.b}, nd.degree});
  }
  return Configuration(curves_, std::move(m), std::move(points), chi_, k2_);
}

}  // namespace surfmmp::testing
