#include "surfmmp/discrepancy.hpp"

#include <algorithm>
#include <numeric>

#include "surfmmp/errors.hpp"

namespace surfmmp {

Model::Model(Configuration config, std::vector<std::size_t> contracted, bool q_factorial)
    : config_(std::move(config)), contracted_(std::move(contracted)), q_factorial_(q_factorial) {
  const auto report = validate_configuration(config_);
  if (!report.ok()) {
    throw ArgumentError("invalid configuration: " + report.violations.front().message);
  }
  std::sort(contracted_.begin(), contracted_.end());
  contracted_.erase(std::unique(contracted_.begin(), contracted_.end()), contracted_.end());
  const std::size_t n = config_.size();
  for (auto c : contracted_) {
    if (c >= n) {
      throw StructuralError("contracted curve index out of range");
    }
  }

  // Connected components of the contracted locus via incidence.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      x = parent[x] = parent[parent[x]];
    }
    return x;
  };
  std::vector<bool> in_locus(n, false);
  for (auto c : contracted_) {
    in_locus[c] = true;
  }
  for (std::size_t a = 0; a < contracted_.size(); ++a) {
    for (std::size_t b = a + 1; b < contracted_.size(); ++b) {
      if (config_.intersection(contracted_[a], contracted_[b]) != 0) {
        parent[find(contracted_[a])] = find(contracted_[b]);
      }
    }
  }
  component_index_.assign(n, std::nullopt);
  std::map<std::size_t, std::size_t> root_to_component;
  for (auto c : contracted_) {
    const auto root = find(c);
    auto [it, inserted] = root_to_component.try_emplace(root, components_.size());
    if (inserted) {
      components_.emplace_back();
    }
    components_[it->second].curves.push_back(c);
    component_index_[c] = it->second;
  }
  for (auto& comp : components_) {
    auto nd = is_negative_definite(config_, comp.curves);
    if (!nd.negative_definite) {
      std::string names;
      for (auto c : comp.curves) {
        names += (names.empty() ? "" : ",") + config_.curve(c).id;
      }
      throw ArgumentError("contracted component {" + names + "} is not negative definite");
    }
    comp.certificate = std::move(nd.certificate);
  }
}

bool Model::is_contracted(std::size_t curve) const {
  return curve < component_index_.size() && component_index_[curve].has_value();
}

std::optional<std::size_t> Model::component_of(std::size_t curve) const {
  return curve < component_index_.size() ? component_index_[curve] : std::nullopt;
}

std::vector<std::size_t> Model::surviving_curves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < config_.size(); ++i) {
    if (!is_contracted(i)) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<Rational> Model::solve_component(const ContractedComponent& component,
                                             std::span<const Rational> rhs) const {
  return linalg::solve(linalg::principal_submatrix(config_.matrix(), component.curves), rhs);
}

Divisor Model::exceptional_correction(const DivisorClass& w) const {
  check_support(config_, w.divisor);
  Divisor correction;
  for (const auto& comp : components_) {
    std::vector<Rational> rhs;
    rhs.reserve(comp.curves.size());
    bool zero = true;
    for (auto k : comp.curves) {
      Rational v = w.canonical * config_.curve(k).canon_int;
      for (const auto& [i, x] : w.divisor.terms()) {
        v += x * config_.intersection(i, k);
      }
      zero = zero && v == 0;
      rhs.push_back(-v);
    }
    if (zero) {
      continue;
    }
    const auto x = solve_component(comp, rhs);
    for (std::size_t a = 0; a < comp.curves.size(); ++a) {
      correction.add(comp.curves[a], x[a]);
    }
  }
  return correction;
}

Divisor Model::pullback(const Divisor& d) const {
  check_support(config_, d);
  for (const auto& [i, x] : d.terms()) {
    if (is_contracted(i)) {
      throw ArgumentError("numerical pullback: divisor has a component on contracted curve '" +
                          config_.curve(i).id + "'");
    }
  }
  return d + exceptional_correction(DivisorClass::of(d));
}

DivisorClass Model::pullback(const DivisorClass& d) const {
  DivisorClass out{d.canonical, pullback(d.divisor)};
  if (d.canonical != 0) {
    out.divisor += exceptional_correction(DivisorClass{d.canonical, {}});
  }
  return out;
}

Rational Model::intersect(const DivisorClass& a, const DivisorClass& b) const {
  // Projection formula: f*A kills every contracted curve, so any W-lift of B
  // will do.
  return surfmmp::intersect(config_, pullback(a), b);
}

Rational Model::intersect(const Divisor& a, const Divisor& b) const {
  return surfmmp::intersect(config_, pullback(a), b);
}

linalg::RationalMatrix Model::intersection_matrix() const {
  const auto surviving = surviving_curves();
  linalg::RationalMatrix out(surviving.size(), surviving.size());
  for (std::size_t a = 0; a < surviving.size(); ++a) {
    const Divisor pa = pullback(Divisor::of_curve(surviving[a]));
    for (std::size_t b = 0; b < surviving.size(); ++b) {
      out(a, b) = surfmmp::intersect(config_, pa, Divisor::of_curve(surviving[b]));
    }
  }
  return out;
}

Model Model::with_contracted(std::size_t curve) const {
  auto next = contracted_;
  next.push_back(curve);
  return Model(config_, std::move(next), q_factorial_);
}

Divisor numerical_pullback(const Model& model, const Divisor& d) { return model.pullback(d); }

Pair::Pair(Model model, Divisor boundary) : model_(std::move(model)), boundary_(std::move(boundary)) {
  check_support(model_.config(), boundary_);
  for (const auto& [i, x] : boundary_.terms()) {
    if (x < 0) {
      throw ArgumentError("boundary coefficient of '" + model_.config().curve(i).id +
                          "' is negative");
    }
    if (model_.is_contracted(i)) {
      throw ArgumentError("boundary has a component on contracted curve '" +
                          model_.config().curve(i).id + "'");
    }
  }
}

Rational CrepantData::e(std::size_t curve) const {
  auto it = coefficients.find(curve);
  return it == coefficients.end() ? Rational(0) : it->second;
}

Divisor CrepantData::exceptional() const {
  Divisor d;
  for (const auto& [c, v] : coefficients) {
    d.set(c, v);
  }
  return d;
}

CrepantData crepant_coefficients(const Pair& pair) {
  const Divisor correction = pair.model().exceptional_correction(pair.log_canonical());
  CrepantData data;
  for (auto c : pair.model().contracted()) {
    data.coefficients[c] = correction.coefficient(c);
  }
  return data;
}

Divisor total_boundary(const Pair& pair, const CrepantData& crepant) {
  return pair.boundary() + crepant.exceptional();
}

std::string_view to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::kTerminal: return "terminal";
    case SingularityClass::kCanonical: return "canonical";
    case SingularityClass::kKlt: return "klt";
    case SingularityClass::kPlt: return "plt";
    case SingularityClass::kDlt: return "dlt";
    case SingularityClass::kLc: return "lc";
    case SingularityClass::kNone: return "none";
  }
  return "none";
}

SingularityClass strongest(const SingularityFlags& f) {
  if (f.terminal) return SingularityClass::kTerminal;
  if (f.canonical) return SingularityClass::kCanonical;
  if (f.klt) return SingularityClass::kKlt;
  if (f.plt) return SingularityClass::kPlt;
  if (f.dlt) return SingularityClass::kDlt;
  if (f.lc) return SingularityClass::kLc;
  return SingularityClass::kNone;
}

SingularityFlags local_flags(const Pair& pair, const CrepantData& crepant,
                             const std::vector<bool>& curve_mask,
                             const std::vector<bool>& point_mask) {
  const auto& config = pair.config();
  const Divisor total = total_boundary(pair, crepant);
  bool all_at_most_one = true;
  bool all_below_one = true;
  bool exceptional_below_one = true;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (!curve_mask[i]) {
      continue;
    }
    const Rational c = total.coefficient(i);
    all_at_most_one = all_at_most_one && c <= 1;
    all_below_one = all_below_one && c < 1;
    if (pair.model().is_contracted(i)) {
      exceptional_below_one = exceptional_below_one && c < 1;
    }
  }
  bool reduced_node = false;
  for (std::size_t k = 0; k < config.points().size(); ++k) {
    if (!point_mask[k]) {
      continue;
    }
    const auto& p = config.point(k);
    if (total.coefficient(p.curves[0]) == 1 && total.coefficient(p.curves[1]) == 1) {
      reduced_node = true;
    }
  }
  SingularityFlags f;
  f.lc = all_at_most_one;
  f.klt = all_below_one;
  f.dlt = f.lc && exceptional_below_one;
  f.plt = f.dlt && !reduced_node;
  return f;
}

Classification classify_pair(const Pair& pair) {
  const auto& config = pair.config();
  const auto& model = pair.model();
  Classification out;
  out.crepant = crepant_coefficients(pair);
  const Divisor total = total_boundary(pair, out.crepant);

  out.flags = local_flags(pair, out.crepant, std::vector<bool>(config.size(), true),
                          std::vector<bool>(config.points().size(), true));

  // Minimal discrepancy on the snc model: -eⱼ for the exceptional curves,
  // 1 - cᵢ for a general point of a curve, 1 - cᵢ - cⱼ at a node.
  bool exceptional_nonpositive = true;
  bool exceptional_negative = true;
  for (auto c : model.contracted()) {
    exceptional_nonpositive = exceptional_nonpositive && out.crepant.e(c) <= 0;
    exceptional_negative = exceptional_negative && out.crepant.e(c) < 0;
  }
  bool nodes_at_most_one = true;
  bool nodes_below_one = true;
  for (const auto& p : config.points()) {
    const Rational s = total.coefficient(p.curves[0]) + total.coefficient(p.curves[1]);
    nodes_at_most_one = nodes_at_most_one && s <= 1;
    nodes_below_one = nodes_below_one && s < 1;
  }
  out.flags.canonical = out.flags.lc && exceptional_nonpositive && nodes_at_most_one;
  out.flags.terminal = out.flags.klt && exceptional_negative && nodes_below_one;
  out.primary = strongest(out.flags);

  // Numerical lc straight from its definition on W and on the blowup of
  // every node (coefficient cᵢ + cⱼ - 1); on an snc model this must agree
  // with the lc flag.
  bool numerically_lc = true;
  for (std::size_t i = 0; i < config.size(); ++i) {
    numerically_lc = numerically_lc && total.coefficient(i) <= 1;
  }
  for (const auto& p : config.points()) {
    numerically_lc =
        numerically_lc && total.coefficient(p.curves[0]) + total.coefficient(p.curves[1]) - 1 <= 1;
  }
  if (numerically_lc != out.flags.lc) {
    throw InvariantViolation("numerically-lc and lc disagree on an snc model");
  }
  out.numerically_lc = numerically_lc;
  out.dlt_conservative = out.flags.lc && !out.flags.dlt && !model.contracted().empty();
  return out;
}

Divisor multiplier_divisor(const Pair& pair) {
  const Divisor total = total_boundary(pair, crepant_coefficients(pair));
  Divisor out;
  for (const auto& [i, c] : total.terms()) {
    out.set(i, Rational(ceil(Rational(-c))));
  }
  return out;
}

std::string_view to_string(NegativityVerdict v) {
  switch (v) {
    case NegativityVerdict::kEffectiveForced: return "effective-forced";
    case NegativityVerdict::kNotApplicable: return "not-applicable";
    case NegativityVerdict::kContradiction: return "contradiction";
  }
  return "not-applicable";
}

NegativityReport negativity_check(const Model& model, const Divisor& b) {
  const auto& config = model.config();
  check_support(config, b);
  NegativityReport report;
  bool nef = true;
  for (auto k : model.contracted()) {
    const Rational v = -intersect(config, b, Divisor::of_curve(k));
    report.minus_b_degrees.push_back(v);
    nef = nef && v >= 0;
  }
  if (!nef) {
    report.detail = "-B is not nef over the contraction";
    return report;
  }
  for (const auto& [i, x] : b.terms()) {
    if (!model.is_contracted(i) && x < 0) {
      report.detail = "pushforward of B is not effective";
      return report;
    }
  }
  for (const auto& [i, x] : b.terms()) {
    if (x < 0) {
      report.verdict = NegativityVerdict::kContradiction;
      report.detail = "B has negative coefficient on '" + config.curve(i).id + "'";
      return report;
    }
  }
  for (const auto& comp : model.components()) {
    std::size_t inside = 0;
    for (auto c : comp.curves) {
      inside += b.coefficient(c) != 0 ? 1 : 0;
    }
    bool touches = inside > 0;
    if (!touches) {
      for (const auto& [i, x] : b.terms()) {
        for (auto c : comp.curves) {
          touches = touches || config.intersection(i, c) != 0;
        }
      }
    }
    if (touches && inside != comp.curves.size()) {
      report.verdict = NegativityVerdict::kContradiction;
      report.detail = "a contracted component meets Supp B without lying inside it";
      return report;
    }
  }
  report.verdict = NegativityVerdict::kEffectiveForced;
  return report;
}

}  // namespace surfmmp
