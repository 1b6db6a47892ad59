#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "surfmmp/cone.hpp"

namespace surfmmp {

/// QF: boundary coefficients in [0, 1] on a model declared Q-factorial.
/// LC: the pair is log canonical, re-checked after every step.
enum class MmpMode { kQF, kLC };

std::string_view to_string(MmpMode mode);

struct MMPStep {
  std::size_t curve = 0;
  std::size_t rho_before = 0;
  std::size_t rho_after = 0;
  std::vector<Rational> separator;
  Rational log_canonical_degree;  // (K+Δ)·C before contracting
  Rational self_int;              // C² before contracting
};

enum class EndpointKind { kMinimalModel, kMoriFiberSpace };

std::string_view to_string(EndpointKind kind);

struct Endpoint {
  EndpointKind kind = EndpointKind::kMinimalModel;
  std::size_t rho = 0;
  /// Mori fiber space only: the curve spanning the contracted ray.
  std::optional<std::size_t> witness;
  Rational witness_self_int;
  Rational witness_log_canonical_degree;
  std::vector<Rational> witness_separator;
  /// ρ of the base of the Mori fiber space over S, i.e. rho - 1.
  std::size_t base_rho = 0;
};

struct MMPTrace {
  MmpMode mode = MmpMode::kQF;
  std::vector<MMPStep> steps;
  Endpoint endpoint;
  Pair final_pair;

  /// ρ of the starting model followed by ρ after every step.
  std::vector<std::size_t> rho_sequence() const;
};

struct Contraction {
  Pair pair;
  MMPStep step;
};

/// Contracts a (K+Δ)-negative extremal curve with C² < 0 and checks the
/// numerical consequences: ρ drops by one, exactly one curve disappears and
/// every class orthogonal to C descends. Throws ContractionRefused when the
/// curve is not such a curve.
Contraction contract_extremal(const Pair& pair, const Fibration& fib, std::size_t curve);

/// Runs the (K+Δ)-MMP over S. At every step the ray is the first curve of
/// `ray_policy` among the negative extremal rays, else the one of lowest
/// index.
MMPTrace run_mmp(const Pair& pair, const Fibration& fib, MmpMode mode,
                 std::span<const std::size_t> ray_policy = {});

struct DltBlowupResult {
  /// (Y, f⁻¹Δ₁ + E) as a pair on the ambient model; its configuration carries
  /// vertical tags for the exceptional locus over X.
  Pair resolution;
  Fibration fibration;
  Divisor truncated_boundary;  // Δ₁
  MMPTrace trace;
  /// E' with K_Y + f⁻¹Δ + E + E' ≡ 0 over X, supported on the surviving
  /// exceptional curves; computed on Y directly.
  Divisor e_prime;
  /// The same divisor read off the crepant coefficients of the input.
  Divisor e_prime_from_crepant;

  Classification classification;  // of the resolution
  bool relatively_nef = false;     // K_Y + f⁻¹Δ₁ + E over X
  bool e_prime_effective = false;
  NegativityReport negativity;     // μ_Y^*E' over the input model
  /// Δ = Δ₁ and E' = 0.
  bool numerically_lc = false;

  bool certified() const {
    return classification.flags.dlt && relatively_nef && e_prime_effective &&
           negativity.verdict == NegativityVerdict::kEffectiveForced &&
           e_prime == e_prime_from_crepant;
  }
};

DltBlowupResult dlt_blowup(const Pair& pair);

}  // namespace surfmmp
