#include "surfmmp/cone.hpp"

#include <algorithm>
#include <set>

#include "surfmmp/errors.hpp"

namespace surfmmp {

namespace {

std::string point_over_everything(const Fibration& fib) {
  return fib.base_points.empty() ? std::string("*") : fib.base_points.front();
}

// λ with a = λ·b, if any.
std::optional<Rational> proportionality(std::span<const Rational> a, std::span<const Rational> b) {
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] == 0) {
      if (a[i] != 0) {
        return std::nullopt;
      }
      continue;
    }
    const Rational r = a[i] / b[i];
    if (lambda && *lambda != r) {
      return std::nullopt;
    }
    lambda = r;
  }
  return lambda;
}

bool same_ray(std::span<const Rational> a, std::span<const Rational> b) {
  const auto lambda = proportionality(a, b);
  return lambda && *lambda > 0;
}

}  // namespace

std::string vertical_tag(const Configuration& config, const Fibration& fib, std::size_t curve) {
  if (fib.target_dim == 0) {
    return point_over_everything(fib);
  }
  const auto& tag = config.curve(curve).vertical_over;
  if (!tag || *tag == kHorizontal) {
    return {};
  }
  return *tag;
}

bool is_vertical(const Configuration& config, const Fibration& fib, std::size_t curve) {
  return !vertical_tag(config, fib, curve).empty();
}

std::vector<std::size_t> fiber_curves(const Configuration& config, const Fibration& fib,
                                      std::string_view base_point) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (fib.target_dim == 0 || vertical_tag(config, fib, i) == base_point) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> vertical_curves(const Model& model, const Fibration& fib) {
  std::vector<std::size_t> out;
  for (auto i : model.surviving_curves()) {
    if (is_vertical(model.config(), fib, i)) {
      out.push_back(i);
    }
  }
  return out;
}

void validate_fibration(const Model& model, const Fibration& fib) {
  const auto& config = model.config();
  if (fib.target_dim < 0 || fib.target_dim > 2) {
    throw ArgumentError("fibration target_dim must be 0, 1 or 2");
  }
  const std::set<std::string> points(fib.base_points.begin(), fib.base_points.end());
  if (points.size() != fib.base_points.size()) {
    throw ArgumentError("fibration base points are not distinct");
  }
  for (const auto& [s, f] : fib.fiber_classes) {
    if (!points.contains(s)) {
      throw ArgumentError("fiber class over unknown base point '" + s + "'");
    }
  }
  if (fib.target_dim == 0) {
    return;
  }
  for (std::size_t i = 0; i < config.size(); ++i) {
    const auto tag = vertical_tag(config, fib, i);
    if (!tag.empty() && !points.contains(tag)) {
      throw ArgumentError("curve '" + config.curve(i).id + "' lies over unknown base point '" +
                          tag + "'");
    }
    if (tag.empty() && model.is_contracted(i)) {
      throw ArgumentError("contracted curve '" + config.curve(i).id + "' is not vertical");
    }
  }
  for (const auto& s : fib.base_points) {
    const auto fiber = fiber_curves(config, fib, s);
    if (fib.target_dim == 2) {
      if (!fiber.empty() && !is_negative_definite(config, fiber).negative_definite) {
        throw ArgumentError("exceptional locus over '" + s + "' is not negative definite");
      }
      continue;
    }
    const auto it = fib.fiber_classes.find(s);
    if (it == fib.fiber_classes.end()) {
      throw ArgumentError("no fiber class declared over '" + s + "'");
    }
    const Divisor& f = it->second;
    check_support(config, f);
    for (const auto& [i, c] : f.terms()) {
      if (!is_integer(c) || c <= 0) {
        throw ArgumentError("fiber class over '" + s + "' has a non-positive-integer coefficient");
      }
      if (vertical_tag(config, fib, i) != s) {
        throw ArgumentError("fiber class over '" + s + "' contains curve '" + config.curve(i).id +
                            "' from another fiber");
      }
    }
    if (f.terms().size() != fiber.size()) {
      throw ArgumentError("fiber class over '" + s + "' misses some curve of the fiber");
    }
    for (auto c : fiber) {
      if (intersect(config, f, Divisor::of_curve(c)) != 0) {
        throw ArgumentError("fiber class over '" + s + "' meets '" + config.curve(c).id + "'");
      }
    }
    if (!linalg::is_negative_semidefinite(
            linalg::to_rational(linalg::principal_submatrix(config.matrix(), fiber)))) {
      throw InvariantViolation("fiber over '" + s + "' is not negative semi-definite");
    }
  }
  if (fib.target_dim == 1 && fib.base_points.empty()) {
    throw ArgumentError("a fibration over a curve needs at least one declared fiber");
  }
}

CurveClasses curve_classes(const Model& model, const Fibration& fib) {
  const auto& config = model.config();
  CurveClasses out;
  out.curves = vertical_curves(model, fib);
  if (out.curves.empty()) {
    return out;
  }
  const auto surviving = model.surviving_curves();
  const auto matrix = model.intersection_matrix();
  for (auto c : out.curves) {
    const auto pos =
        static_cast<std::size_t>(std::lower_bound(surviving.begin(), surviving.end(), c) -
                                 surviving.begin());
    const auto row = matrix.row(pos);
    out.classes.emplace_back(row.begin(), row.end());
    if (std::all_of(row.begin(), row.end(), [](const Rational& x) { return x == 0; })) {
      throw BasisInsufficiency("class of '" + config.curve(c).id +
                               "' pairs to zero with every curve");
    }
  }
  for (std::size_t a = 0; a < out.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < out.classes.size(); ++b) {
      const auto lambda = proportionality(out.classes[a], out.classes[b]);
      if (lambda && *lambda < 0) {
        throw BasisInsufficiency("classes of '" + config.curve(out.curves[a]).id + "' and '" +
                                 config.curve(out.curves[b]).id +
                                 "' are negatively proportional; add a separating divisor");
      }
    }
  }
  linalg::RationalMatrix m(out.classes.size(), surviving.size());
  for (std::size_t a = 0; a < out.classes.size(); ++a) {
    for (std::size_t j = 0; j < surviving.size(); ++j) {
      m(a, j) = out.classes[a][j];
    }
  }
  out.rho = linalg::rank(m);
  return out;
}

std::vector<ExtremalRay> extremal_generators(const CurveClasses& classes) {
  const auto& g = classes.classes;
  std::vector<ExtremalRay> out;
  if (g.empty()) {
    return out;
  }
  {
    // Pointed iff 0 is not a nontrivial nonnegative combination.
    std::vector<std::vector<Rational>> lifted;
    for (const auto& v : g) {
      lifted.push_back(v);
      lifted.back().push_back(1);
    }
    std::vector<Rational> origin(g.front().size() + 1, Rational(0));
    origin.back() = 1;
    if (linalg::cone_membership(lifted, origin).member) {
      throw InvalidInput("the cone of vertical curves contains a line");
    }
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    bool representative = true;
    std::vector<std::vector<Rational>> others;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i == j) {
        continue;
      }
      if (same_ray(g[i], g[j])) {
        representative = representative && i > j;
        continue;
      }
      others.push_back(g[i]);
    }
    if (!representative) {
      continue;
    }
    ExtremalRay ray;
    ray.curve = classes.curves[j];
    if (others.empty()) {
      for (const auto& x : g[j]) {
        ray.separator.push_back(-x);
      }
      out.push_back(std::move(ray));
      continue;
    }
    auto membership = linalg::cone_membership(others, g[j]);
    if (!membership.member) {
      ray.separator = std::move(membership.separator);
      out.push_back(std::move(ray));
    }
  }
  return out;
}

std::vector<ExtremalRay> negative_extremal_rays(const Pair& pair, const CurveClasses& classes) {
  const auto& model = pair.model();
  std::vector<ExtremalRay> out;
  for (auto& ray : extremal_generators(classes)) {
    const auto curve = DivisorClass::of(Divisor::of_curve(ray.curve));
    ray.log_canonical_degree = model.intersect(pair.log_canonical(), curve);
    if (ray.log_canonical_degree < 0) {
      ray.self_int = model.intersect(curve, curve);
      out.push_back(std::move(ray));
    }
  }
  return out;
}

std::vector<ExtremalRay> negative_extremal_rays(const Pair& pair, const Fibration& fib) {
  return negative_extremal_rays(pair, curve_classes(pair.model(), fib));
}

PositivityFlags positivity(const Model& model, const DivisorClass& d, const Fibration& fib) {
  const auto& config = model.config();
  PositivityFlags flags;
  bool strict = true;
  flags.nef = true;
  for (auto c : vertical_curves(model, fib)) {
    const Rational v = model.intersect(d, DivisorClass::of(Divisor::of_curve(c)));
    flags.nef = flags.nef && v >= 0;
    strict = strict && v > 0;
  }
  switch (fib.target_dim) {
    case 0: {
      const bool square_positive = model.intersect(d, d) > 0;
      flags.ample = strict && square_positive;
      flags.big = flags.nef && square_positive;
      break;
    }
    case 1: {
      flags.ample = strict;
      bool positive_on_fibers = !fib.fiber_classes.empty();
      const DivisorClass pulled = model.pullback(d);
      for (const auto& [s, f] : fib.fiber_classes) {
        positive_on_fibers = positive_on_fibers && intersect(config, pulled, DivisorClass::of(f)) > 0;
      }
      flags.big = flags.nef && positive_on_fibers;
      break;
    }
    default:
      flags.ample = strict;
      flags.big = true;
      break;
  }
  return flags;
}

std::size_t fiber_seminegative_witness(const Configuration& config, const Fibration& fib,
                                       std::string_view base_point, const Divisor& d) {
  check_support(config, d);
  const auto fiber = fiber_curves(config, fib, base_point);
  bool positive = false;
  for (const auto& [i, x] : d.terms()) {
    if (!std::binary_search(fiber.begin(), fiber.end(), i)) {
      throw ArgumentError("divisor has a component '" + config.curve(i).id +
                          "' outside the fiber");
    }
    positive = positive || x > 0;
  }
  if (!positive) {
    throw ArgumentError("divisor has no positive coefficient");
  }
  for (const auto& [j, x] : d.terms()) {
    if (x > 0 && intersect(config, Divisor::of_curve(j), d) <= 0) {
      return j;
    }
  }
  throw InvariantViolation("no curve of the fiber meets the divisor non-positively");
}

}  // namespace surfmmp
