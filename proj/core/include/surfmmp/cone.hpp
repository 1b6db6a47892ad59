#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "surfmmp/discrepancy.hpp"

namespace surfmmp {

/// π: X → S with dim π(X) = target_dim. Vertical status is read from each
/// curve's vertical_over tag; target_dim 0 treats every curve as vertical.
struct Fibration {
  int target_dim = 2;
  std::vector<std::string> base_points;
  /// target_dim 1: the fiber π*(s) = Σ cᵢCᵢ over each base point, on W.
  std::map<std::string, Divisor> fiber_classes;

  bool operator==(const Fibration&) const = default;
};

inline constexpr std::string_view kHorizontal = "horizontal";

/// Base point a curve lies over, or empty when it is horizontal.
std::string vertical_tag(const Configuration& config, const Fibration& fib, std::size_t curve);
bool is_vertical(const Configuration& config, const Fibration& fib, std::size_t curve);

/// Ambient curves lying over `base_point` (all curves when target_dim = 0).
std::vector<std::size_t> fiber_curves(const Configuration& config, const Fibration& fib,
                                      std::string_view base_point);

/// Surviving vertical curves of the model, ascending.
std::vector<std::size_t> vertical_curves(const Model& model, const Fibration& fib);

/// Throws ArgumentError describing the first inconsistency between the
/// fibration and the model: unknown base points, contracted curves that are
/// not vertical, fiber classes that are not integral, positive, orthogonal to
/// their fiber or negative semi-definite, and (target_dim 2) vertical loci
/// that could not be contracted.
void validate_fibration(const Model& model, const Fibration& fib);

struct CurveClasses {
  std::vector<std::size_t> curves;  // surviving vertical curves
  /// Row i: intersections of curves[i] with every surviving curve of the
  /// model, in configuration order.
  std::vector<std::vector<Rational>> classes;
  std::size_t rho = 0;
};

/// Throws BasisInsufficiency when a class vanishes or two classes are
/// negatively proportional.
CurveClasses curve_classes(const Model& model, const Fibration& fib);

struct ExtremalRay {
  std::size_t curve = 0;
  /// z with z·[C] < 0 and z·[C'] >= 0 for every generator off the ray of C.
  std::vector<Rational> separator;
  Rational log_canonical_degree;  // (K+Δ)·C on the model
  Rational self_int;              // C² on the model
};

/// (K+Δ)-negative extremal rays among the vertical classes, one
/// representative per ray (the lowest index). Throws InvalidInput when the
/// generated cone contains a line.
std::vector<ExtremalRay> negative_extremal_rays(const Pair& pair, const Fibration& fib);
std::vector<ExtremalRay> negative_extremal_rays(const Pair& pair, const CurveClasses& classes);

/// Lowest-index extremal generators of the vertical cone, with separators.
std::vector<ExtremalRay> extremal_generators(const CurveClasses& classes);

struct PositivityFlags {
  bool nef = false;
  bool ample = false;
  bool big = false;
};

PositivityFlags positivity(const Model& model, const DivisorClass& d, const Fibration& fib);

/// For D supported on the fiber over `base_point` with some positive
/// coefficient, the first curve Cⱼ (ascending index) with dⱼ > 0 and
/// Cⱼ·D <= 0 on W. ArgumentError when D <= 0 or leaves the fiber.
std::size_t fiber_seminegative_witness(const Configuration& config, const Fibration& fib,
                                       std::string_view base_point, const Divisor& d);

}  // namespace surfmmp
