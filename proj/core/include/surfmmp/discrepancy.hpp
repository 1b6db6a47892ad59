#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surfmmp/lattice.hpp"

namespace surfmmp {

/// A connected set of contracted curves together with the certificate that
/// its intersection matrix is negative definite.
struct ContractedComponent {
  std::vector<std::size_t> curves;  // ascending curve indices
  linalg::DefinitenessCertificate certificate;
};

/// A normal surface X presented as the contraction of some curves of a
/// regular ambient configuration W.
///
/// Construction validates the configuration and checks every connected
/// component of the contracted set for negative definiteness; ArgumentError
/// on failure. Q-factoriality cannot be decided numerically and is carried
/// as a declaration.
class Model {
 public:
  Model() = default;
  explicit Model(Configuration config, std::vector<std::size_t> contracted = {},
                 bool q_factorial = true);

  const Configuration& config() const { return config_; }
  const std::vector<std::size_t>& contracted() const { return contracted_; }
  const std::vector<ContractedComponent>& components() const { return components_; }
  bool q_factorial() const { return q_factorial_; }

  bool is_contracted(std::size_t curve) const;
  std::optional<std::size_t> component_of(std::size_t curve) const;
  /// Curves that survive on X, in ambient order.
  std::vector<std::size_t> surviving_curves() const;

  /// The contracted-curve combination F with (w + F)·E = 0 for every
  /// contracted E. `w` is an arbitrary W-level class.
  Divisor exceptional_correction(const DivisorClass& w) const;

  /// Mumford pullback of a divisor supported on surviving curves.
  Divisor pullback(const Divisor& d) const;
  DivisorClass pullback(const DivisorClass& d) const;

  /// Intersection on X of classes supported on surviving curves (and K_X).
  Rational intersect(const DivisorClass& a, const DivisorClass& b) const;
  Rational intersect(const Divisor& a, const Divisor& b) const;

  /// Intersection matrix of the surviving curves on X.
  linalg::RationalMatrix intersection_matrix() const;

  /// The same ambient model with one more curve contracted.
  Model with_contracted(std::size_t curve) const;

  bool operator==(const Model& other) const {
    return config_ == other.config_ && contracted_ == other.contracted_ &&
           q_factorial_ == other.q_factorial_;
  }

 private:
  std::vector<Rational> solve_component(const ContractedComponent& component,
                                        std::span<const Rational> rhs) const;

  Configuration config_;
  std::vector<std::size_t> contracted_;
  std::vector<ContractedComponent> components_;
  std::vector<std::optional<std::size_t>> component_index_;
  bool q_factorial_ = true;
};

/// Mumford numerical pullback. ArgumentError if `d` touches a contracted
/// curve.
Divisor numerical_pullback(const Model& model, const Divisor& d);

/// (X, Δ): a model together with an effective boundary on surviving curves.
class Pair {
 public:
  Pair() = default;
  Pair(Model model, Divisor boundary);

  const Model& model() const { return model_; }
  const Configuration& config() const { return model_.config(); }
  const Divisor& boundary() const { return boundary_; }
  /// K_X + Δ.
  DivisorClass log_canonical() const { return DivisorClass{1, boundary_}; }

  bool operator==(const Pair&) const = default;

 private:
  Model model_;
  Divisor boundary_;
};

/// Coefficients e with K_W + Δ̃ + Σ eⱼEⱼ ≡ 0 over X.
struct CrepantData {
  std::map<std::size_t, Rational> coefficients;

  Rational e(std::size_t curve) const;
  Rational discrepancy(std::size_t curve) const { return -e(curve); }
  Rational log_discrepancy(std::size_t curve) const { return 1 - e(curve); }
  Divisor exceptional() const;
};

CrepantData crepant_coefficients(const Pair& pair);

/// Strict transform of Δ plus Σ eⱼEⱼ: the boundary of the log pullback on W.
Divisor total_boundary(const Pair& pair, const CrepantData& crepant);

enum class SingularityClass { kTerminal, kCanonical, kKlt, kPlt, kDlt, kLc, kNone };

std::string_view to_string(SingularityClass c);

struct SingularityFlags {
  bool terminal = false;
  bool canonical = false;
  bool klt = false;
  bool plt = false;
  bool dlt = false;
  bool lc = false;
};

/// Strongest class in the order terminal, canonical, klt, plt, dlt, lc.
SingularityClass strongest(const SingularityFlags& flags);

struct Classification {
  SingularityClass primary = SingularityClass::kNone;
  SingularityFlags flags;
  bool numerically_lc = false;
  /// lc pair with contracted curves whose dlt status the fixed-model
  /// criterion cannot certify.
  bool dlt_conservative = false;
  CrepantData crepant;
};

Classification classify_pair(const Pair& pair);

/// Flags evaluated only over the curves and incidence points selected by
/// the masks (indexed like the configuration's curves and points). Terminal
/// and canonical are not meaningful locally and are left false.
SingularityFlags local_flags(const Pair& pair, const CrepantData& crepant,
                             const std::vector<bool>& curve_mask,
                             const std::vector<bool>& point_mask);

/// ⌈-(Δ̃ + Σ eⱼEⱼ)⌉ on W, the divisor whose pushforward cuts out the
/// multiplier ideal.
Divisor multiplier_divisor(const Pair& pair);

enum class NegativityVerdict { kEffectiveForced, kNotApplicable, kContradiction };

std::string_view to_string(NegativityVerdict v);

struct NegativityReport {
  NegativityVerdict verdict = NegativityVerdict::kNotApplicable;
  /// -B·E for each contracted curve, in Model::contracted() order.
  std::vector<Rational> minus_b_degrees;
  std::string detail;
};

/// Checks the negativity lemma on `b`: when -B is nef over X and the
/// pushforward of B is effective, B must be effective and each contracted
/// component lies inside Supp B or is disjoint from it.
NegativityReport negativity_check(const Model& model, const Divisor& b);

}  // namespace surfmmp
