#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "surfmmp/surfmmp.hpp"

namespace surfmmp::testing {

// Determinant by permutation expansion. Independent of any elimination.
Integer leibniz_determinant(const linalg::IntMatrix& m);

// Negative definite iff every principal minor of order k has sign (-1)^k.
bool nd_by_all_minors(const linalg::IntMatrix& m);

// Negative semi-definite iff every principal minor of order k is zero or has
// sign (-1)^k.
bool nsd_by_all_minors(const linalg::IntMatrix& m);

// Σ aᵢbⱼMᵢⱼ written out term by term.
Rational expand_intersection(const Configuration& config, const Divisor& a, const Divisor& b);

using DenseMatrix = std::vector<std::vector<Rational>>;

// Plain Gauss-Jordan with full rational arithmetic. Returns nullopt when the
// matrix is singular.
std::optional<std::vector<Rational>> gauss_jordan(DenseMatrix a, std::vector<Rational> rhs);

std::size_t dense_rank(DenseMatrix a);

// Cramer's rule with permutation-expansion determinants.
std::vector<Rational> cramer(const linalg::IntMatrix& m, const std::vector<Rational>& rhs);

// Total boundary T on W (strict transform plus crepant exceptional part),
// dense and indexed by curve, from one solve over the whole contracted set.
std::vector<Rational> oracle_total_boundary(const Model& model, const Divisor& boundary);

// Mumford pullback of a surviving curve, dense.
std::vector<Rational> oracle_pullback(const Model& model, std::size_t curve);

// (K_W + T)·C on W, which is (K_X + Δ)·C on X.
Rational oracle_log_canonical_degree(const Configuration& config,
                                     const std::vector<Rational>& total, std::size_t curve);

// Σ aᵢ Mᵢⱼ bⱼ for dense vectors.
Rational dense_form(const Configuration& config, const std::vector<Rational>& a,
                    const std::vector<Rational>& b);

// Rank of the vertical curve classes: rows p(C)·C' over surviving C'.
std::size_t oracle_rho(const Model& model, const std::vector<std::size_t>& vertical);

}  // namespace surfmmp::testing
