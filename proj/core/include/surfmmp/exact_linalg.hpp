#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "surfmmp/rational.hpp"

namespace surfmmp::linalg {

/// Dense row-major matrix. Only the handful of operations the intersection
/// theory needs; sizes here are tens of rows at most.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RationalMatrix = Matrix<Rational>;

IntMatrix principal_submatrix(const IntMatrix& m, std::span<const std::size_t> indices);
RationalMatrix to_rational(const IntMatrix& m);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Solves a·x = rhs for square nonsingular integer `a` by fraction-free
/// (Bareiss) elimination. Throws ArgumentError when `a` is singular.
std::vector<Rational> solve(const IntMatrix& a, std::span<const Rational> rhs);
/// Rational Gauss-Jordan counterpart for matrices that are already rational.
std::vector<Rational> solve(const RationalMatrix& a, std::span<const Rational> rhs);

/// Determinant by Bareiss elimination with row pivoting.
Integer determinant(const IntMatrix& a);

/// Negative definiteness of a symmetric integer matrix.
///
/// When the matrix is negative definite, `leading_minors` holds every leading
/// principal minor (signs alternate starting negative). Otherwise it holds the
/// minors up to and including the first one that breaks the pattern, and
/// `witness` is a primitive integer vector v with vᵀMv >= 0.
struct DefinitenessCertificate {
  bool negative_definite = false;
  std::vector<Rational> leading_minors;
  std::vector<Integer> witness;
};

DefinitenessCertificate negative_definite_certificate(const IntMatrix& m);

bool is_negative_semidefinite(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Exact conic feasibility: is `target` a nonnegative combination of
/// `generators`?
///
/// If yes, `coefficients` holds one such combination. If no, `separator` is a
/// Farkas certificate z with z·g >= 0 for every generator g and
/// z·target < 0.
struct ConeMembership {
  bool member = false;
  std::vector<Rational> coefficients;
  std::vector<Rational> separator;
};

ConeMembership cone_membership(std::span<const std::vector<Rational>> generators,
                               std::span<const Rational> target);

}  // namespace surfmmp::linalg
