#include "surfmmp/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "surfmmp/errors.hpp"

namespace surfmmp {

Configuration::Configuration(std::vector<Curve> curves, linalg::IntMatrix matrix,
                             std::vector<IncidencePoint> points,
                             std::optional<std::int64_t> chi_structure,
                             std::optional<std::int64_t> canon_self_int)
    : curves_(std::move(curves)),
      matrix_(std::move(matrix)),
      points_(std::move(points)),
      chi_structure_(chi_structure),
      canon_self_int_(canon_self_int) {
  if (matrix_.rows() != curves_.size() || matrix_.cols() != curves_.size()) {
    throw StructuralError("intersection matrix is " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + " but there are " +
                          std::to_string(curves_.size()) + " curves");
  }
  for (const auto& p : points_) {
    for (auto c : p.curves) {
      if (c >= curves_.size()) {
        throw StructuralError("incidence point '" + p.id + "' refers to a curve out of range");
      }
    }
  }
}

std::optional<std::size_t> Configuration::find_curve(std::string_view id) const {
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    if (curves_[i].id == id) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t Configuration::curve_index(std::string_view id) const {
  if (auto i = find_curve(id)) {
    return *i;
  }
  throw StructuralError("unknown curve '" + std::string(id) + "'");
}

std::optional<std::size_t> Configuration::find_point(std::string_view id) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].id == id) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> Configuration::points_on(std::size_t curve) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].lies_on(curve)) {
      out.push_back(i);
    }
  }
  return out;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kDuplicateId: return "duplicate-id";
    case Violation::Kind::kAsymmetric: return "asymmetric-matrix";
    case Violation::Kind::kDiagonalMismatch: return "diagonal-mismatch";
    case Violation::Kind::kParity: return "adjunction-parity";
    case Violation::Kind::kNegativeOffDiagonal: return "negative-off-diagonal";
    case Violation::Kind::kDegeneratePoint: return "degenerate-point";
    case Violation::Kind::kResidueDegree: return "residue-degree";
    case Violation::Kind::kIncidenceMismatch: return "incidence-mismatch";
  }
  return "unknown";
}

ValidationReport validate_configuration(const Configuration& config) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, std::string message) {
    report.violations.push_back({kind, std::move(message)});
  };
  const auto& curves = config.curves();
  const auto& m = config.matrix();
  const std::size_t n = config.size();

  std::set<std::string> ids;
  for (const auto& c : curves) {
    if (!ids.insert(c.id).second) {
      add(Violation::Kind::kDuplicateId, "curve id '" + c.id + "' is used twice");
    }
  }
  for (const auto& p : config.points()) {
    if (!ids.insert(p.id).second) {
      add(Violation::Kind::kDuplicateId, "point id '" + p.id + "' clashes with another id");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = curves[i];
    if (m(i, i) != c.self_int) {
      add(Violation::Kind::kDiagonalMismatch,
          "matrix[" + c.id + "][" + c.id + "] = " + std::to_string(m(i, i)) +
              " but self_int = " + std::to_string(c.self_int));
    }
    if ((c.self_int + c.canon_int) % 2 != 0) {
      add(Violation::Kind::kParity, "curve '" + c.id + "': self_int + canon_int = " +
                                        std::to_string(c.self_int + c.canon_int) + " is odd");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) {
        add(Violation::Kind::kAsymmetric, "matrix[" + c.id + "][" + curves[j].id + "] = " +
                                              std::to_string(m(i, j)) + " but matrix[" +
                                              curves[j].id + "][" + c.id + "] = " +
                                              std::to_string(m(j, i)));
      }
      if (m(i, j) < 0 || m(j, i) < 0) {
        add(Violation::Kind::kNegativeOffDiagonal,
            "matrix[" + c.id + "][" + curves[j].id + "] is negative");
      }
    }
  }

  linalg::IntMatrix incidence(n, n);
  for (const auto& p : config.points()) {
    if (p.curves[0] == p.curves[1]) {
      add(Violation::Kind::kDegeneratePoint,
          "point '" + p.id + "' must lie on two distinct curves");
      continue;
    }
    if (p.residue_degree <= 0) {
      add(Violation::Kind::kResidueDegree,
          "point '" + p.id + "' has non-positive residue degree");
    }
    incidence(p.curves[0], p.curves[1]) += p.residue_degree;
    incidence(p.curves[1], p.curves[0]) += p.residue_degree;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (incidence(i, j) != m(i, j)) {
        add(Violation::Kind::kIncidenceMismatch,
            "curves '" + curves[i].id + "' and '" + curves[j].id + "': incidence degrees sum to " +
                std::to_string(incidence(i, j)) + " but matrix entry is " +
                std::to_string(m(i, j)));
      }
    }
  }
  return report;
}

Divisor Divisor::of_curve(std::size_t curve, const Rational& coefficient) {
  Divisor d;
  d.set(curve, coefficient);
  return d;
}

Rational Divisor::coefficient(std::size_t curve) const {
  auto it = terms_.find(curve);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Divisor::set(std::size_t curve, const Rational& coefficient) {
  if (coefficient == 0) {
    terms_.erase(curve);
  } else {
    terms_[curve] = coefficient;
  }
}

void Divisor::add(std::size_t curve, const Rational& coefficient) {
  set(curve, this->coefficient(curve) + coefficient);
}

bool Divisor::is_effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

bool Divisor::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_integer(t.second); });
}

std::optional<std::size_t> Divisor::max_index() const {
  if (terms_.empty()) {
    return std::nullopt;
  }
  return terms_.rbegin()->first;
}

Divisor& Divisor::operator+=(const Divisor& other) {
  for (const auto& [c, v] : other.terms_) {
    add(c, v);
  }
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& other) {
  for (const auto& [c, v] : other.terms_) {
    add(c, -v);
  }
  return *this;
}

Divisor& Divisor::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [c, v] : terms_) {
    v *= scalar;
  }
  return *this;
}

Divisor Divisor::operator-() const {
  Divisor d = *this;
  d *= Rational(-1);
  return d;
}

Divisor coefficient_filter(const Divisor& d, Threshold threshold, const Rational& a) {
  Divisor out;
  for (const auto& [c, v] : d.terms()) {
    bool keep = false;
    switch (threshold) {
      case Threshold::kAtMost: keep = v <= a; break;
      case Threshold::kBelow: keep = v < a; break;
      case Threshold::kAtLeast: keep = v >= a; break;
      case Threshold::kAbove: keep = v > a; break;
    }
    if (keep) {
      out.set(c, v);
    }
  }
  return out;
}

Divisor round_down(const Divisor& d) {
  Divisor out;
  for (const auto& [c, v] : d.terms()) {
    out.set(c, Rational(floor(v)));
  }
  return out;
}

Divisor fractional_part(const Divisor& d) { return d - round_down(d); }

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  canonical += other.canonical;
  divisor += other.divisor;
  return *this;
}

void CurveDivisor::add(std::string point, const Rational& coefficient, std::int64_t residue_degree) {
  if (residue_degree <= 0) {
    throw ArgumentError("residue degree of '" + point + "' must be positive");
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), point,
                             [](const Term& t, const std::string& p) { return t.point < p; });
  if (it != terms_.end() && it->point == point) {
    if (it->residue_degree != residue_degree) {
      throw ArgumentError("conflicting residue degrees for point '" + point + "'");
    }
    it->coefficient += coefficient;
    if (it->coefficient == 0) {
      terms_.erase(it);
    }
    return;
  }
  if (coefficient != 0) {
    terms_.insert(it, Term{std::move(point), coefficient, residue_degree});
  }
}

Rational degree_on_curve(const CurveDivisor& d) {
  Rational total = 0;
  for (const auto& t : d.terms()) {
    total += t.coefficient * t.residue_degree;
  }
  return total;
}

void check_support(const Configuration& config, const Divisor& d) {
  if (auto last = d.max_index(); last && *last >= config.size()) {
    throw StructuralError("divisor refers to curve index " + std::to_string(*last) +
                          " but the configuration has " + std::to_string(config.size()) +
                          " curves");
  }
}

Rational intersect(const Configuration& config, const Divisor& a, const Divisor& b) {
  check_support(config, a);
  check_support(config, b);
  Rational total = 0;
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) {
      total += x * y * config.intersection(i, j);
    }
  }
  return total;
}

Rational canonical_degree(const Configuration& config, const Divisor& d) {
  check_support(config, d);
  Rational total = 0;
  for (const auto& [i, x] : d.terms()) {
    total += x * config.curve(i).canon_int;
  }
  return total;
}

Rational intersect(const Configuration& config, const DivisorClass& a, const DivisorClass& b) {
  Rational total = intersect(config, a.divisor, b.divisor);
  total += a.canonical * canonical_degree(config, b.divisor);
  total += b.canonical * canonical_degree(config, a.divisor);
  if (a.canonical != 0 && b.canonical != 0) {
    if (!config.canon_self_int()) {
      throw ArgumentError("K·K is needed but the configuration does not declare canon_self_int");
    }
    total += a.canonical * b.canonical * *config.canon_self_int();
  }
  return total;
}

NegativeDefiniteResult is_negative_definite(const Configuration& config,
                                            std::span<const std::size_t> subset) {
  if (subset.empty()) {
    throw ArgumentError("is_negative_definite: empty curve subset");
  }
  for (auto i : subset) {
    if (i >= config.size()) {
      throw StructuralError("is_negative_definite: curve index out of range");
    }
  }
  NegativeDefiniteResult result;
  result.subset.assign(subset.begin(), subset.end());
  result.certificate =
      linalg::negative_definite_certificate(linalg::principal_submatrix(config.matrix(), subset));
  result.negative_definite = result.certificate.negative_definite;
  return result;
}

namespace {

std::string fresh_id(const Configuration& config, const std::vector<std::string>& extra,
                     std::string base) {
  auto taken = [&](const std::string& id) {
    return config.find_curve(id) || config.find_point(id) ||
           std::find(extra.begin(), extra.end(), id) != extra.end();
  };
  std::string id = base;
  int suffix = 1;
  while (taken(id)) {
    id = base + "_" + std::to_string(++suffix);
  }
  return id;
}

}  // namespace

Configuration blowup_at_node(const Configuration& config, std::string_view point) {
  const auto pi = config.find_point(point);
  if (!pi) {
    throw ArgumentError("blowup_at_node: unknown point '" + std::string(point) + "'");
  }
  const IncidencePoint node = config.point(*pi);
  const std::int64_t d = node.residue_degree;
  const std::size_t ci = node.curves[0];
  const std::size_t cj = node.curves[1];
  const std::size_t n = config.size();

  std::vector<Curve> curves = config.curves();
  curves[ci].self_int -= d;
  curves[cj].self_int -= d;
  curves[ci].canon_int += d;
  curves[cj].canon_int += d;
  Curve e;
  e.id = fresh_id(config, {}, "E_" + node.id);
  e.self_int = -d;
  e.canon_int = -d;
  // E lies over whatever base point either curve lies over.
  auto over = [](const Curve& c) { return c.vertical_over && *c.vertical_over != "horizontal"; };
  if (over(curves[ci])) {
    e.vertical_over = curves[ci].vertical_over;
  } else if (over(curves[cj])) {
    e.vertical_over = curves[cj].vertical_over;
  }
  curves.push_back(e);

  linalg::IntMatrix m(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = config.intersection(i, j);
    }
  }
  m(ci, ci) -= d;
  m(cj, cj) -= d;
  m(ci, cj) -= d;
  m(cj, ci) -= d;
  m(n, n) = -d;
  m(ci, n) = m(n, ci) = d;
  m(cj, n) = m(n, cj) = d;

  std::vector<IncidencePoint> points;
  for (std::size_t k = 0; k < config.points().size(); ++k) {
    if (k != *pi) {
      points.push_back(config.point(k));
    }
  }
  const std::string a = fresh_id(config, {e.id}, node.id + ".a");
  const std::string b = fresh_id(config, {e.id, a}, node.id + ".b");
  points.push_back(IncidencePoint{a, {ci, n}, d});
  points.push_back(IncidencePoint{b, {cj, n}, d});

  std::optional<std::int64_t> k2;
  if (config.canon_self_int()) {
    k2 = *config.canon_self_int() - d;
  }
  return Configuration(std::move(curves), std::move(m), std::move(points), config.chi_structure(), k2);
}

Divisor blowup_pullback(const Configuration& before, std::string_view point, const Divisor& d) {
  check_support(before, d);
  const auto pi = before.find_point(point);
  if (!pi) {
    throw ArgumentError("blowup_pullback: unknown point '" + std::string(point) + "'");
  }
  const auto& node = before.point(*pi);
  Divisor out = d;
  out.set(before.size(), d.coefficient(node.curves[0]) + d.coefficient(node.curves[1]));
  return out;
}

}  // namespace surfmmp
