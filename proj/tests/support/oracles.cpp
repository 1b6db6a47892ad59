#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace surfmmp::testing {

Integer leibniz_determinant(const linalg::IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    // Sign from the inversion count.
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        inversions += perm[i] > perm[j] ? 1 : 0;
      }
    }
    Integer term = inversions % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < n && term != 0; ++i) {
      term *= m(i, perm[i]);
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

template <typename Accept>
bool all_principal_minors(const linalg::IntMatrix& m, Accept accept) {
  const std::size_t n = m.rows();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        subset.push_back(i);
      }
    }
    const Integer det = leibniz_determinant(linalg::principal_submatrix(m, subset));
    if (!accept(det, subset.size())) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool nd_by_all_minors(const linalg::IntMatrix& m) {
  return all_principal_minors(m, [](const Integer& det, std::size_t k) {
    return k % 2 == 0 ? det > 0 : det < 0;
  });
}

bool nsd_by_all_minors(const linalg::IntMatrix& m) {
  return all_principal_minors(m, [](const Integer& det, std::size_t k) {
    return det == 0 || (k % 2 == 0 ? det > 0 : det < 0);
  });
}

Rational expand_intersection(const Configuration& config, const Divisor& a, const Divisor& b) {
  Rational total = 0;
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) {
      total += x * y * config.intersection(i, j);
    }
  }
  return total;
}

}  // namespace surfmmp::testing

namespace surfmmp::testing {

std::optional<std::vector<Rational>> gauss_jordan(DenseMatrix a, std::vector<Rational> rhs) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) {
      ++p;
    }
    if (p == n) {
      return std::nullopt;
    }
    std::swap(a[p], a[c]);
    std::swap(rhs[p], rhs[c]);
    const Rational pivot = a[c][c];
    for (auto& x : a[c]) {
      x /= pivot;
    }
    rhs[c] /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) {
        continue;
      }
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
      }
      rhs[r] -= f * rhs[c];
    }
  }
  return rhs;
}

std::size_t dense_rank(DenseMatrix a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) {
      ++p;
    }
    if (p == a.size()) {
      continue;
    }
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) {
        a[i][j] -= f * a[r][j];
      }
    }
    ++r;
  }
  return r;
}

std::vector<Rational> cramer(const linalg::IntMatrix& m, const std::vector<Rational>& rhs) {
  const std::size_t n = m.rows();
  // Clear denominators so the replaced columns stay integral.
  Integer l = 1;
  for (const auto& x : rhs) {
    l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
  }
  const Integer det = leibniz_determinant(m);
  std::vector<Rational> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    linalg::IntMatrix mk = m;
    for (std::size_t r = 0; r < n; ++r) {
      const Rational scaled = rhs[r] * Rational(l);
      mk(r, k) = static_cast<std::int64_t>(Integer(boost::multiprecision::numerator(scaled)));
    }
    out[k] = Rational(leibniz_determinant(mk)) / Rational(det * l);
  }
  return out;
}

namespace {

std::vector<Rational> solve_exceptional(const Model& model, std::vector<Rational> base,
                                        const std::vector<Rational>& canonical) {
  const auto& config = model.config();
  const auto& ex = model.contracted();
  DenseMatrix a(ex.size(), std::vector<Rational>(ex.size()));
  std::vector<Rational> rhs(ex.size());
  for (std::size_t r = 0; r < ex.size(); ++r) {
    for (std::size_t c = 0; c < ex.size(); ++c) {
      a[r][c] = config.intersection(ex[r], ex[c]);
    }
    Rational s = canonical[ex[r]];
    for (std::size_t i = 0; i < config.size(); ++i) {
      s += base[i] * config.intersection(i, ex[r]);
    }
    rhs[r] = -s;
  }
  const auto x = gauss_jordan(a, rhs);
  if (!x) {
    throw std::logic_error("oracle: contracted locus is singular");
  }
  for (std::size_t r = 0; r < ex.size(); ++r) {
    base[ex[r]] = (*x)[r];
  }
  return base;
}

}  // namespace

std::vector<Rational> oracle_total_boundary(const Model& model, const Divisor& boundary) {
  const auto& config = model.config();
  std::vector<Rational> base(config.size(), 0);
  std::vector<Rational> kappa(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    base[i] = model.is_contracted(i) ? Rational(0) : boundary.coefficient(i);
    kappa[i] = config.curve(i).canon_int;
  }
  return solve_exceptional(model, std::move(base), kappa);
}

std::vector<Rational> oracle_pullback(const Model& model, std::size_t curve) {
  const auto& config = model.config();
  std::vector<Rational> base(config.size(), 0);
  base[curve] = 1;
  return solve_exceptional(model, std::move(base), std::vector<Rational>(config.size(), 0));
}

Rational oracle_log_canonical_degree(const Configuration& config,
                                     const std::vector<Rational>& total, std::size_t curve) {
  Rational s = config.curve(curve).canon_int;
  for (std::size_t i = 0; i < config.size(); ++i) {
    s += total[i] * config.intersection(i, curve);
  }
  return s;
}

Rational dense_form(const Configuration& config, const std::vector<Rational>& a,
                    const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (a[i] == 0) {
      continue;
    }
    for (std::size_t j = 0; j < config.size(); ++j) {
      s += a[i] * config.intersection(i, j) * b[j];
    }
  }
  return s;
}

std::size_t oracle_rho(const Model& model, const std::vector<std::size_t>& vertical) {
  const auto& config = model.config();
  const auto surviving = model.surviving_curves();
  DenseMatrix rows;
  for (auto c : vertical) {
    const auto p = oracle_pullback(model, c);
    std::vector<Rational> row;
    for (auto j : surviving) {
      Rational s = 0;
      for (std::size_t i = 0; i < config.size(); ++i) {
        s += p[i] * config.intersection(i, j);
      }
      row.push_back(s);
    }
    rows.push_back(std::move(row));
  }
  return dense_rank(std::move(rows));
}

}  // namespace surfmmp::testing
