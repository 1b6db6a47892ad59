#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surfmmp/exact_linalg.hpp"
#include "surfmmp/rational.hpp"

namespace surfmmp {

/// A curve on the regular ambient surface.
struct Curve {
  std::string id;
  std::int64_t self_int = 0;   // C·C
  std::int64_t canon_int = 0;  // K·C
  /// Base point this curve lies over, or nullopt for a horizontal curve.
  std::optional<std::string> vertical_over;

  bool operator==(const Curve&) const = default;
};

/// A transverse intersection point of exactly two distinct curves. A node of
/// residue degree d contributes d to the intersection number of its curves.
struct IncidencePoint {
  std::string id;
  std::array<std::size_t, 2> curves{};
  std::int64_t residue_degree = 1;

  bool operator==(const IncidencePoint&) const = default;

  bool lies_on(std::size_t curve) const { return curves[0] == curve || curves[1] == curve; }
  std::size_t other(std::size_t curve) const { return curves[0] == curve ? curves[1] : curves[0]; }
};

/// Regular ambient surface model: curves, their integer intersection matrix,
/// the canonical degrees and the snc incidence points.
///
/// The constructor only checks shape (matrix size, point indices in range).
/// Semantic invariants are reported by validate_configuration().
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::vector<Curve> curves, linalg::IntMatrix matrix,
                std::vector<IncidencePoint> points,
                std::optional<std::int64_t> chi_structure = std::nullopt,
                std::optional<std::int64_t> canon_self_int = std::nullopt);

  std::size_t size() const { return curves_.size(); }
  const std::vector<Curve>& curves() const { return curves_; }
  const Curve& curve(std::size_t i) const { return curves_.at(i); }
  const linalg::IntMatrix& matrix() const { return matrix_; }
  std::int64_t intersection(std::size_t i, std::size_t j) const { return matrix_(i, j); }
  const std::vector<IncidencePoint>& points() const { return points_; }
  const IncidencePoint& point(std::size_t i) const { return points_.at(i); }

  /// χ(O_X) of the ambient surface, when the user declared it.
  std::optional<std::int64_t> chi_structure() const { return chi_structure_; }
  /// K_W·K_W, when declared. Only needed for positivity tests over a point.
  std::optional<std::int64_t> canon_self_int() const { return canon_self_int_; }

  std::optional<std::size_t> find_curve(std::string_view id) const;
  /// Throws StructuralError for an unknown id.
  std::size_t curve_index(std::string_view id) const;
  std::optional<std::size_t> find_point(std::string_view id) const;
  std::vector<std::size_t> points_on(std::size_t curve) const;

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<Curve> curves_;
  linalg::IntMatrix matrix_;
  std::vector<IncidencePoint> points_;
  std::optional<std::int64_t> chi_structure_;
  std::optional<std::int64_t> canon_self_int_;
};

struct Violation {
  enum class Kind {
    kDuplicateId,
    kAsymmetric,
    kDiagonalMismatch,
    kParity,
    kNegativeOffDiagonal,
    kDegeneratePoint,
    kResidueDegree,
    kIncidenceMismatch,
  };
  Kind kind;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_configuration(const Configuration& config);

/// Finite-support rational combination of curves, keyed by curve index.
/// Zero coefficients are never stored.
class Divisor {
 public:
  Divisor() = default;
  static Divisor of_curve(std::size_t curve, const Rational& coefficient = 1);

  Rational coefficient(std::size_t curve) const;
  void set(std::size_t curve, const Rational& coefficient);
  void add(std::size_t curve, const Rational& coefficient);

  const std::map<std::size_t, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool is_effective() const;
  bool is_integral() const;
  /// Largest curve index in the support, if any.
  std::optional<std::size_t> max_index() const;

  Divisor& operator+=(const Divisor& other);
  Divisor& operator-=(const Divisor& other);
  Divisor& operator*=(const Rational& scalar);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(const Rational& s, Divisor a) { return a *= s; }
  Divisor operator-() const;

  bool operator==(const Divisor&) const = default;

 private:
  std::map<std::size_t, Rational> terms_;
};

enum class Threshold { kAtMost, kBelow, kAtLeast, kAbove };

/// Δ^{≤a}, Δ^{<a}, Δ^{≥a}, Δ^{>a}: the part of D whose coefficients satisfy
/// the comparison against `a`.
Divisor coefficient_filter(const Divisor& d, Threshold threshold, const Rational& a);
Divisor round_down(const Divisor& d);     // ⌊D⌋
Divisor fractional_part(const Divisor& d);  // {D} = D - ⌊D⌋

/// a·K + D. The canonical class has no curve support on the model, so
/// anything involving K goes through this type.
struct DivisorClass {
  Rational canonical = 0;
  Divisor divisor;

  static DivisorClass canonical_class() { return DivisorClass{1, {}}; }
  static DivisorClass of(Divisor d) { return DivisorClass{0, std::move(d)}; }

  DivisorClass& operator+=(const DivisorClass& other);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  DivisorClass operator-() const { return DivisorClass{-canonical, -divisor}; }
  bool operator==(const DivisorClass&) const = default;
};

/// Point-supported divisor on a regular curve; each point carries its
/// residue degree.
class CurveDivisor {
 public:
  struct Term {
    std::string point;
    Rational coefficient;
    std::int64_t residue_degree = 1;
    bool operator==(const Term&) const = default;
  };

  CurveDivisor() = default;
  explicit CurveDivisor(std::string host) : host_(std::move(host)) {}

  const std::string& host() const { return host_; }
  /// Adds to the coefficient at `point`. Residue degrees of repeated points
  /// must agree.
  void add(std::string point, const Rational& coefficient, std::int64_t residue_degree);
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  bool operator==(const CurveDivisor&) const = default;

 private:
  std::string host_;
  std::vector<Term> terms_;  // sorted by point id, nonzero coefficients only
};

/// Σ aᵢ·deg k(Pᵢ).
Rational degree_on_curve(const CurveDivisor& d);

/// Throws StructuralError if `d` mentions a curve outside `config`.
void check_support(const Configuration& config, const Divisor& d);

Rational intersect(const Configuration& config, const Divisor& a, const Divisor& b);
/// K_W·D.
Rational canonical_degree(const Configuration& config, const Divisor& d);
/// Bilinear extension to a·K + D. Needs canon_self_int when both classes
/// involve K; throws ArgumentError otherwise.
Rational intersect(const Configuration& config, const DivisorClass& a, const DivisorClass& b);

struct NegativeDefiniteResult {
  bool negative_definite = false;
  std::vector<std::size_t> subset;
  linalg::DefinitenessCertificate certificate;
};

/// Negative definiteness of the principal submatrix on `subset`. Throws
/// ArgumentError when the subset is empty.
NegativeDefiniteResult is_negative_definite(const Configuration& config,
                                            std::span<const std::size_t> subset);

/// Blows up an incidence point of residue degree d on Cᵢ ∩ Cⱼ. The new curve
/// E (E² = -d, K·E = -d) is appended as the last curve; the node is replaced by
/// Cᵢ ∩ E and Cⱼ ∩ E. Throws ArgumentError for an unknown point.
Configuration blowup_at_node(const Configuration& config, std::string_view point);

/// Total transform of `d` under blowup_at_node(before, point): E receives the
/// sum of the coefficients of the two curves through the node.
Divisor blowup_pullback(const Configuration& before, std::string_view point, const Divisor& d);

}  // namespace surfmmp
