#include "surfmmp/exact_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "surfmmp/errors.hpp"

namespace surfmmp::linalg {

IntMatrix principal_submatrix(const IntMatrix& m, std::span<const std::size_t> indices) {
  IntMatrix sub(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      sub(i, j) = m(indices[i], indices[j]);
    }
  }
  return sub;
}

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = Rational(m(i, j));
    }
  }
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

namespace {

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) {
    const Integer& d = boost::multiprecision::denominator(v);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  return l;
}

// Fraction-free forward elimination on an augmented integer matrix. Returns
// false if a column has no nonzero pivot.
bool bareiss_forward(Matrix<Integer>& a, std::size_t n, int& sign) {
  Integer previous = 1;
  sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k) == 0) {
      ++pivot;
    }
    if (pivot == n) {
      return false;
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        std::swap(a(pivot, j), a(k, j));
      }
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < a.cols(); ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  return true;
}

}  // namespace

std::vector<Rational> solve(const IntMatrix& a, std::span<const Rational> rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.size() != n) {
    throw ArgumentError("solve: dimension mismatch");
  }
  const Integer scale = lcm_of_denominators(rhs);
  Matrix<Integer> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      aug(i, j) = a(i, j);
    }
    aug(i, n) = boost::multiprecision::numerator(rhs[i]) * (scale / boost::multiprecision::denominator(rhs[i]));
  }
  int sign = 1;
  if (!bareiss_forward(aug, n, sign)) {
    throw ArgumentError("solve: singular matrix");
  }
  std::vector<Rational> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational acc(aug(ii, n));
    for (std::size_t j = ii + 1; j < n; ++j) {
      acc -= Rational(aug(ii, j)) * x[j];
    }
    x[ii] = acc / Rational(aug(ii, ii));
  }
  for (auto& v : x) {
    v /= Rational(scale);
  }
  return x;
}

std::vector<Rational> solve(const RationalMatrix& a, std::span<const Rational> rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.size() != n) {
    throw ArgumentError("solve: shape mismatch");
  }
  RationalMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
    }
    m(i, n) = rhs[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) {
      ++pivot;
    }
    if (pivot == n) {
      throw ArgumentError("solve: singular matrix");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j <= n; ++j) {
        std::swap(m(pivot, j), m(col, j));
      }
    }
    const Rational inv = 1 / m(col, col);
    for (std::size_t j = col; j <= n; ++j) {
      m(col, j) *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col) == 0) {
        continue;
      }
      const Rational f = m(i, col);
      for (std::size_t j = col; j <= n; ++j) {
        m(i, j) -= f * m(col, j);
      }
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = m(i, n);
  }
  return x;
}

Integer determinant(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) {
    return 1;
  }
  Matrix<Integer> work(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      work(i, j) = a(i, j);
    }
  }
  int sign = 1;
  if (!bareiss_forward(work, n, sign)) {
    return 0;
  }
  return sign > 0 ? work(n - 1, n - 1) : Integer(-work(n - 1, n - 1));
}

DefinitenessCertificate negative_definite_certificate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) {
    throw ArgumentError("negative definiteness of an empty matrix");
  }
  // LDLᵀ without pivoting; the leading principal minors are the running
  // products of the pivots.
  RationalMatrix lower(n, n);
  std::vector<Rational> pivots;
  DefinitenessCertificate cert;
  Rational minor = 1;
  for (std::size_t k = 0; k < n; ++k) {
    Rational d(m(k, k));
    for (std::size_t j = 0; j < k; ++j) {
      d -= lower(k, j) * lower(k, j) * pivots[j];
    }
    pivots.push_back(d);
    minor *= d;
    cert.leading_minors.push_back(minor);
    if (d >= 0) {
      // v solves Lᵀv = e_k on the leading (k+1)-block, so vᵀMv = d >= 0.
      std::vector<Rational> v(n);
      v[k] = 1;
      for (std::size_t i = k; i-- > 0;) {
        Rational acc = 0;
        for (std::size_t j = i + 1; j <= k; ++j) {
          acc -= lower(j, i) * v[j];
        }
        v[i] = acc;
      }
      Integer den = 1;
      for (const auto& x : v) {
        const Integer& dd = boost::multiprecision::denominator(x);
        den = den / boost::multiprecision::gcd(den, dd) * dd;
      }
      Integer g = 0;
      cert.witness.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        cert.witness[i] = boost::multiprecision::numerator(v[i]) * (den / boost::multiprecision::denominator(v[i]));
        g = boost::multiprecision::gcd(g, cert.witness[i]);
      }
      if (g > 1) {
        for (auto& w : cert.witness) {
          w /= g;
        }
      }
      cert.negative_definite = false;
      return cert;
    }
    lower(k, k) = 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational acc(m(i, k));
      for (std::size_t j = 0; j < k; ++j) {
        acc -= lower(i, j) * lower(k, j) * pivots[j];
      }
      lower(i, k) = acc / d;
    }
  }
  cert.negative_definite = true;
  return cert;
}

bool is_negative_semidefinite(const RationalMatrix& m) {
  // Work with B = -M and test positive semidefiniteness by symmetric
  // elimination on positive diagonal pivots.
  std::size_t n = m.rows();
  std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b[i][j] = -m(i, j);
    }
  }
  while (!b.empty()) {
    n = b.size();
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (b[i][i] < 0) {
        return false;
      }
      if (!pivot && b[i][i] > 0) {
        pivot = i;
      }
    }
    if (!pivot) {
      for (const auto& row : b) {
        for (const auto& x : row) {
          if (x != 0) {
            return false;
          }
        }
      }
      return true;
    }
    const std::size_t p = *pivot;
    std::vector<std::vector<Rational>> next;
    next.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p) {
        continue;
      }
      std::vector<Rational> row;
      row.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == p) {
          continue;
        }
        row.push_back(b[i][j] - b[i][p] * b[p][j] / b[p][p]);
      }
      next.push_back(std::move(row));
    }
    b = std::move(next);
  }
  return true;
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      a[i][j] = m(i, j);
    }
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) {
      ++p;
    }
    if (p == a.size()) {
      continue;
    }
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) {
        continue;
      }
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) {
        a[i][j] -= f * a[r][j];
      }
    }
    ++r;
  }
  return r;
}

ConeMembership cone_membership(std::span<const std::vector<Rational>> generators,
                               std::span<const Rational> target) {
  const std::size_t m = target.size();
  const std::size_t n = generators.size();
  ConeMembership result;
  for (const auto& g : generators) {
    if (g.size() != m) {
      throw ArgumentError("cone_membership: generator dimension mismatch");
    }
  }

  // Phase-one simplex on  A·λ + a = b,  λ, a >= 0, minimising Σa, with rows
  // sign-normalised so that b >= 0. Bland's rule keeps it finite.
  std::vector<int> row_sign(m, 1);
  const std::size_t width = n + m;
  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(width + 1));
  for (std::size_t i = 0; i < m; ++i) {
    row_sign[i] = target[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      tab[i][j] = row_sign[i] * generators[j][i];
    }
    tab[i][n + i] = 1;
    tab[i][width] = row_sign[i] * target[i];
  }
  std::vector<std::size_t> basis(m);
  std::iota(basis.begin(), basis.end(), n);
  std::vector<Rational> reduced(width);
  Rational objective = 0;
  for (std::size_t i = 0; i < m; ++i) {
    objective += tab[i][width];
    for (std::size_t j = 0; j < n; ++j) {
      reduced[j] -= tab[i][j];
    }
  }

  for (;;) {
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < width; ++j) {
      if (reduced[j] < 0) {
        entering = j;
        break;
      }
    }
    if (!entering) {
      break;
    }
    const std::size_t e = *entering;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][e] <= 0) {
        continue;
      }
      Rational ratio = tab[i][width] / tab[i][e];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) {
      throw InvariantViolation("cone_membership: phase-one objective unbounded");
    }
    const std::size_t r = *leave;
    const Rational piv = tab[r][e];
    for (auto& x : tab[r]) {
      x /= piv;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || tab[i][e] == 0) {
        continue;
      }
      const Rational f = tab[i][e];
      for (std::size_t j = 0; j <= width; ++j) {
        tab[i][j] -= f * tab[r][j];
      }
    }
    const Rational f = reduced[e];
    for (std::size_t j = 0; j < width; ++j) {
      reduced[j] -= f * tab[r][j];
    }
    objective += f * tab[r][width];
    basis[r] = e;
  }

  if (objective == 0) {
    result.member = true;
    result.coefficients.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) {
        result.coefficients[basis[i]] = tab[i][width];
      }
    }
    return result;
  }

  // Dual of the phase-one optimum: y_i = 1 - reduced cost of artificial i.
  result.separator.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational y = 1 - reduced[n + i];
    result.separator[i] = -row_sign[i] * y;
  }
  for (const auto& g : generators) {
    if (dot(result.separator, g) < 0) {
      throw InvariantViolation("cone_membership: Farkas certificate failed on a generator");
    }
  }
  if (dot(result.separator, target) >= 0) {
    throw InvariantViolation("cone_membership: Farkas certificate failed on the target");
  }
  return result;
}

}  // namespace surfmmp::linalg
