#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "surfmmp/cone.hpp"

namespace surfmmp {

/// Diff on the strict transform of C: at each node with another curve of the
/// total boundary (coefficient b), the point with coefficient b. ArgumentError
/// unless C is a surviving curve with boundary coefficient exactly 1.
CurveDivisor diff_divisor(const Pair& pair, std::size_t curve);

struct IoaReport {
  std::size_t curve = 0;
  CurveDivisor diff;
  bool lc_near_curve = false;   // ambient side
  bool plt_near_curve = false;  // ambient side
  bool diff_lc = false;         // all Diff coefficients <= 1
  bool diff_klt = false;        // all Diff coefficients < 1

  bool lc_agrees() const { return lc_near_curve == diff_lc; }
  bool plt_agrees() const { return plt_near_curve == diff_klt; }
};

/// Both sides of inversion of adjunction along C, computed independently.
/// "Near C" on W covers C, the curves meeting it, the contracted components
/// touching it and the curves meeting those components.
IoaReport inversion_of_adjunction(const Pair& pair, std::size_t curve);

struct NkltLocus {
  std::vector<std::size_t> curves;  // total coefficient >= 1, ascending
  std::vector<std::size_t> points;  // nodes joining two curves of the locus
};

NkltLocus nklt_locus(const Pair& pair);

enum class ConnectednessVerdict { kConnected, kEmpty, kHypothesesNotMet, kViolation };

std::string_view to_string(ConnectednessVerdict v);

struct FiberConnectedness {
  std::string base_point;
  ConnectednessVerdict verdict = ConnectednessVerdict::kEmpty;
  /// Pieces of the preimage on W of Nklt ∩ X_s, grouped into connected
  /// components of the dual graph.
  std::size_t piece_count = 0;
  std::size_t component_count = 0;
};

struct ConnectednessReport {
  bool anti_log_canonical_nef = false;
  bool anti_log_canonical_big = false;
  std::vector<FiberConnectedness> fibers;

  bool hypotheses_met() const { return anti_log_canonical_nef && anti_log_canonical_big; }
  bool violated() const;
};

/// Dual-graph connectedness of Nklt(X, Δ) on every fiber, checked when
/// -(K+Δ) is nef and big over S. target_dim 0 has a single fiber.
ConnectednessReport connectedness_check(const Pair& pair, const Fibration& fib);

}  // namespace surfmmp
