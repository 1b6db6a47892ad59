#include "surfmmp/mmp.hpp"

#include <algorithm>

#include "surfmmp/errors.hpp"

namespace surfmmp {

std::string_view to_string(MmpMode mode) { return mode == MmpMode::kQF ? "qf" : "lc"; }

std::string_view to_string(EndpointKind kind) {
  return kind == EndpointKind::kMinimalModel ? "minimal-model" : "mori-fiber-space";
}

std::vector<std::size_t> MMPTrace::rho_sequence() const {
  std::vector<std::size_t> out;
  if (!steps.empty()) {
    out.push_back(steps.front().rho_before);
  }
  for (const auto& s : steps) {
    out.push_back(s.rho_after);
  }
  if (steps.empty()) {
    out.push_back(endpoint.rho);
  }
  return out;
}

namespace {

// g^*B = f^*B - (B·C / C²)·f^*C for the contraction g of C on top of f.
void check_pic_descent(const Model& before, const Model& after, std::size_t curve) {
  const DivisorClass c = DivisorClass::of(Divisor::of_curve(curve));
  const Rational c2 = before.intersect(c, c);
  const DivisorClass pulled_c = before.pullback(c);
  std::vector<DivisorClass> probes{DivisorClass::canonical_class()};
  for (auto b : after.surviving_curves()) {
    probes.push_back(DivisorClass::of(Divisor::of_curve(b)));
  }
  for (const auto& b : probes) {
    const Rational ratio = before.intersect(b, c) / c2;
    DivisorClass expected = before.pullback(b);
    expected.divisor -= ratio * pulled_c.divisor;
    if (after.pullback(b) != expected) {
      throw InvariantViolation("a class orthogonal to the contracted curve fails to descend");
    }
  }
}

Contraction contract_ray(const Pair& pair, const Fibration& fib, const CurveClasses& classes,
                         const ExtremalRay& ray) {
  const auto& model = pair.model();
  if (ray.self_int >= 0) {
    throw ContractionRefused("curve '" + model.config().curve(ray.curve).id +
                             "' has non-negative self-intersection; the endpoint is a Mori "
                             "fiber space");
  }
  Model next = model.with_contracted(ray.curve);
  Divisor boundary = pair.boundary();
  boundary.set(ray.curve, 0);
  Contraction out{Pair(std::move(next), std::move(boundary)), {}};
  const auto& after = out.pair.model();
  if (after.surviving_curves().size() + 1 != model.surviving_curves().size()) {
    throw InvariantViolation("a contraction step removed more than one curve");
  }
  out.step.curve = ray.curve;
  out.step.rho_before = classes.rho;
  out.step.rho_after = curve_classes(after, fib).rho;
  out.step.separator = ray.separator;
  out.step.log_canonical_degree = ray.log_canonical_degree;
  out.step.self_int = ray.self_int;
  if (out.step.rho_after + 1 != out.step.rho_before) {
    throw InvariantViolation("relative Picard number did not drop by one");
  }
  check_pic_descent(model, after, ray.curve);
  return out;
}

}  // namespace

Contraction contract_extremal(const Pair& pair, const Fibration& fib, std::size_t curve) {
  const auto& config = pair.config();
  if (curve >= config.size() || pair.model().is_contracted(curve)) {
    throw ContractionRefused("curve is not on the model");
  }
  const auto classes = curve_classes(pair.model(), fib);
  const auto rays = negative_extremal_rays(pair, classes);
  const auto it = std::find_if(rays.begin(), rays.end(),
                               [&](const ExtremalRay& r) { return r.curve == curve; });
  if (it == rays.end()) {
    throw ContractionRefused("curve '" + config.curve(curve).id +
                             "' does not span a (K+Δ)-negative extremal ray");
  }
  return contract_ray(pair, fib, classes, *it);
}

MMPTrace run_mmp(const Pair& pair, const Fibration& fib, MmpMode mode,
                 std::span<const std::size_t> ray_policy) {
  const auto& config = pair.config();
  validate_fibration(pair.model(), fib);
  if (mode == MmpMode::kLC) {
    if (!classify_pair(pair).flags.lc) {
      throw ArgumentError("the LC-mode MMP needs a log canonical pair");
    }
  } else {
    if (!pair.model().q_factorial()) {
      throw ArgumentError("the QF-mode MMP needs a model declared Q-factorial");
    }
    for (const auto& [i, x] : pair.boundary().terms()) {
      if (x > 1) {
        throw ArgumentError("the QF-mode MMP needs boundary coefficients at most 1");
      }
    }
  }

  MMPTrace trace;
  trace.mode = mode;
  Pair current = pair;
  for (;;) {
    const auto classes = curve_classes(current.model(), fib);
    const auto rays = negative_extremal_rays(current, classes);
    if (rays.empty()) {
      if (!positivity(current.model(), current.log_canonical(), fib).nef) {
        throw InvariantViolation("no negative extremal ray but K+Δ is not nef");
      }
      trace.endpoint.kind = EndpointKind::kMinimalModel;
      trace.endpoint.rho = classes.rho;
      break;
    }
    const ExtremalRay* chosen = &rays.front();
    for (auto wanted : ray_policy) {
      const auto it = std::find_if(rays.begin(), rays.end(),
                                   [&](const ExtremalRay& r) { return r.curve == wanted; });
      if (it != rays.end()) {
        chosen = &*it;
        break;
      }
    }
    if (chosen->self_int >= 0) {
      // Relative dimension drops. The ray is the whole of NE over the base
      // of the fiber space, which pins ρ.
      const bool over_curve = chosen->self_int == 0;
      std::size_t expected_rho = 0;
      if (fib.target_dim == 1 && over_curve) {
        expected_rho = 1;
      } else if (fib.target_dim == 0) {
        expected_rho = over_curve ? 2 : 1;
      } else {
        throw InvariantViolation("negative extremal curve of non-negative self-intersection "
                                 "over a base of the wrong dimension");
      }
      if (classes.rho != expected_rho) {
        throw InvariantViolation("Mori fiber space with unexpected relative Picard number");
      }
      trace.endpoint.kind = EndpointKind::kMoriFiberSpace;
      trace.endpoint.rho = classes.rho;
      trace.endpoint.witness = chosen->curve;
      trace.endpoint.witness_self_int = chosen->self_int;
      trace.endpoint.witness_log_canonical_degree = chosen->log_canonical_degree;
      trace.endpoint.witness_separator = chosen->separator;
      trace.endpoint.base_rho = classes.rho - 1;
      break;
    }
    auto step = contract_ray(current, fib, classes, *chosen);
    current = std::move(step.pair);
    trace.steps.push_back(std::move(step.step));
    if (trace.steps.size() > config.size()) {
      throw InvariantViolation("the MMP did not terminate within the number of curves");
    }
    if (mode == MmpMode::kLC && !classify_pair(current).flags.lc) {
      throw InvariantViolation("an LC-mode MMP step produced a pair that is not lc");
    }
  }
  trace.final_pair = std::move(current);
  return trace;
}

DltBlowupResult dlt_blowup(const Pair& pair) {
  const Model& input = pair.model();
  const Configuration& config = input.config();

  // The exceptional locus over X becomes the vertical part of a birational
  // fibration; everything else is horizontal.
  DltBlowupResult out;
  out.fibration.target_dim = 2;
  auto curves = config.curves();
  for (auto& c : curves) {
    c.vertical_over = std::string(kHorizontal);
  }
  for (const auto& comp : input.components()) {
    const std::string point = "x(" + config.curve(comp.curves.front()).id + ")";
    out.fibration.base_points.push_back(point);
    for (auto c : comp.curves) {
      curves[c].vertical_over = point;
    }
  }
  Configuration tagged(std::move(curves), config.matrix(), config.points(),
                       config.chi_structure(), config.canon_self_int());

  Divisor theta;
  for (const auto& [i, x] : pair.boundary().terms()) {
    out.truncated_boundary.set(i, std::min(x, Rational(1)));
  }
  theta = out.truncated_boundary;
  for (auto c : input.contracted()) {
    theta.set(c, 1);
  }
  out.trace = run_mmp(Pair(Model(tagged, {}, true), theta), out.fibration, MmpMode::kQF);
  out.resolution = out.trace.final_pair;
  const Model& y = out.resolution.model();

  std::vector<std::size_t> exceptional;
  for (auto c : input.contracted()) {
    if (!y.is_contracted(c)) {
      exceptional.push_back(c);
    }
  }
  const CrepantData crepant = crepant_coefficients(pair);
  for (auto c : exceptional) {
    out.e_prime_from_crepant.set(c, crepant.e(c) - 1);
  }
  if (!exceptional.empty()) {
    // K_Y + f⁻¹Δ + E + E' ≡ 0 over X, solved on Y.
    const auto surviving = y.surviving_curves();
    const auto full = y.intersection_matrix();
    std::vector<std::size_t> pos;
    for (auto c : exceptional) {
      pos.push_back(static_cast<std::size_t>(
          std::lower_bound(surviving.begin(), surviving.end(), c) - surviving.begin()));
    }
    linalg::RationalMatrix n(pos.size(), pos.size());
    for (std::size_t a = 0; a < pos.size(); ++a) {
      for (std::size_t b = 0; b < pos.size(); ++b) {
        n(a, b) = full(pos[a], pos[b]);
      }
    }
    Divisor known = pair.boundary();
    for (auto c : exceptional) {
      known.set(c, 1);
    }
    const DivisorClass lhs{1, known};
    std::vector<Rational> rhs;
    for (auto c : exceptional) {
      rhs.push_back(-y.intersect(lhs, DivisorClass::of(Divisor::of_curve(c))));
    }
    const auto x = linalg::solve(n, rhs);
    for (std::size_t a = 0; a < exceptional.size(); ++a) {
      out.e_prime.set(exceptional[a], x[a]);
    }
  }
  if (out.e_prime != out.e_prime_from_crepant) {
    throw InvariantViolation("E' on the dlt model disagrees with the input crepant coefficients");
  }

  out.classification = classify_pair(out.resolution);
  out.relatively_nef = positivity(y, out.resolution.log_canonical(), out.fibration).nef;
  out.e_prime_effective = out.e_prime.is_effective();
  out.negativity = negativity_check(input, y.pullback(out.e_prime));
  out.numerically_lc = pair.boundary() == out.truncated_boundary && out.e_prime.empty();
  if (out.numerically_lc != classify_pair(pair).flags.lc) {
    throw InvariantViolation("E' = 0 disagrees with the lc classification of the input");
  }
  return out;
}

}  // namespace surfmmp
