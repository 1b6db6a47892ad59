#include "surfmmp/adjunction.hpp"

#include <algorithm>
#include <numeric>

#include "surfmmp/errors.hpp"

namespace surfmmp {

CurveDivisor diff_divisor(const Pair& pair, std::size_t curve) {
  const auto& config = pair.config();
  if (curve >= config.size()) {
    throw ArgumentError("unknown curve");
  }
  if (pair.model().is_contracted(curve) || pair.boundary().coefficient(curve) != 1) {
    throw ArgumentError("curve '" + config.curve(curve).id +
                        "' does not have boundary coefficient 1");
  }
  const Divisor total = total_boundary(pair, crepant_coefficients(pair));
  CurveDivisor diff(config.curve(curve).id);
  for (auto k : config.points_on(curve)) {
    const auto& p = config.point(k);
    const Rational b = total.coefficient(p.other(curve));
    if (b != 0) {
      diff.add(p.id, b, p.residue_degree);
    }
  }
  return diff;
}

IoaReport inversion_of_adjunction(const Pair& pair, std::size_t curve) {
  const auto& config = pair.config();
  const auto& model = pair.model();
  IoaReport report;
  report.curve = curve;
  report.diff = diff_divisor(pair, curve);
  report.diff_lc = std::all_of(report.diff.terms().begin(), report.diff.terms().end(),
                               [](const CurveDivisor::Term& t) { return t.coefficient <= 1; });
  report.diff_klt = std::all_of(report.diff.terms().begin(), report.diff.terms().end(),
                                [](const CurveDivisor::Term& t) { return t.coefficient < 1; });

  const std::size_t n = config.size();
  std::vector<bool> curve_mask(n, false);
  std::vector<bool> component_near(model.components().size(), false);
  curve_mask[curve] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == curve || config.intersection(i, curve) == 0) {
      continue;
    }
    if (const auto comp = model.component_of(i)) {
      component_near[*comp] = true;
    } else {
      curve_mask[i] = true;
    }
  }
  std::vector<bool> in_near_component(n, false);
  for (std::size_t k = 0; k < component_near.size(); ++k) {
    if (!component_near[k]) {
      continue;
    }
    for (auto c : model.components()[k].curves) {
      in_near_component[c] = true;
      curve_mask[c] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n && !curve_mask[i]; ++c) {
      if (in_near_component[c] && config.intersection(i, c) != 0) {
        curve_mask[i] = true;
      }
    }
  }
  std::vector<bool> point_mask(config.points().size(), false);
  for (std::size_t k = 0; k < config.points().size(); ++k) {
    const auto& p = config.point(k);
    point_mask[k] = p.lies_on(curve) || in_near_component[p.curves[0]] ||
                    in_near_component[p.curves[1]];
  }
  const auto flags = local_flags(pair, crepant_coefficients(pair), curve_mask, point_mask);
  report.lc_near_curve = flags.lc;
  report.plt_near_curve = flags.plt;
  return report;
}

NkltLocus nklt_locus(const Pair& pair) {
  const auto& config = pair.config();
  const Divisor total =
      coefficient_filter(total_boundary(pair, crepant_coefficients(pair)), Threshold::kAtLeast, 1);
  NkltLocus locus;
  for (const auto& [i, x] : total.terms()) {
    locus.curves.push_back(i);
  }
  for (std::size_t k = 0; k < config.points().size(); ++k) {
    const auto& p = config.point(k);
    if (total.coefficient(p.curves[0]) != 0 && total.coefficient(p.curves[1]) != 0) {
      locus.points.push_back(k);
    }
  }
  return locus;
}

std::string_view to_string(ConnectednessVerdict v) {
  switch (v) {
    case ConnectednessVerdict::kConnected: return "connected";
    case ConnectednessVerdict::kEmpty: return "empty";
    case ConnectednessVerdict::kHypothesesNotMet: return "hypotheses-not-met";
    case ConnectednessVerdict::kViolation: return "VIOLATION";
  }
  return "empty";
}

bool ConnectednessReport::violated() const {
  return std::any_of(fibers.begin(), fibers.end(), [](const FiberConnectedness& f) {
    return f.verdict == ConnectednessVerdict::kViolation;
  });
}

namespace {

// A closed subset of W: some curves and some isolated incidence points.
struct Piece {
  std::vector<bool> curves;
  std::vector<bool> points;
};

bool touches(const Configuration& config, const Piece& a, const Piece& b) {
  const std::size_t n = config.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.curves[i]) {
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (b.curves[j] && (i == j || config.intersection(i, j) != 0)) {
        return true;
      }
    }
  }
  for (std::size_t k = 0; k < config.points().size(); ++k) {
    const auto& p = config.point(k);
    const bool in_a = a.points[k] || a.curves[p.curves[0]] || a.curves[p.curves[1]];
    const bool in_b = b.points[k] || b.curves[p.curves[0]] || b.curves[p.curves[1]];
    if ((a.points[k] && in_b) || (b.points[k] && in_a)) {
      return true;
    }
  }
  return false;
}

}  // namespace

ConnectednessReport connectedness_check(const Pair& pair, const Fibration& fib) {
  const auto& config = pair.config();
  const auto& model = pair.model();
  ConnectednessReport report;
  const auto flags = positivity(model, -pair.log_canonical(), fib);
  report.anti_log_canonical_nef = flags.nef;
  report.anti_log_canonical_big = flags.big;

  std::vector<std::string> fibers;
  if (fib.target_dim == 0) {
    fibers.push_back(vertical_tag(config, fib, 0));
  } else {
    fibers = fib.base_points;
  }
  if (!report.hypotheses_met()) {
    for (auto& s : fibers) {
      report.fibers.push_back({std::move(s), ConnectednessVerdict::kHypothesesNotMet, 0, 0});
    }
    return report;
  }

  const Divisor total = total_boundary(pair, crepant_coefficients(pair));
  const std::size_t n = config.size();
  const std::size_t np = config.points().size();
  auto empty_piece = [&] { return Piece{std::vector<bool>(n, false), std::vector<bool>(np, false)}; };
  auto add_component = [&](Piece& piece, std::size_t comp) {
    for (auto c : model.components()[comp].curves) {
      piece.curves[c] = true;
    }
  };

  for (const auto& s : fibers) {
    std::vector<bool> over_s(n, false);
    for (auto c : fiber_curves(config, fib, s)) {
      over_s[c] = true;
    }
    std::vector<Piece> pieces;
    for (std::size_t c = 0; c < n; ++c) {
      if (!over_s[c] || total.coefficient(c) < 1) {
        continue;
      }
      Piece piece = empty_piece();
      if (const auto comp = model.component_of(c)) {
        add_component(piece, *comp);
      } else {
        piece.curves[c] = true;
        for (std::size_t j = 0; j < n; ++j) {
          const auto comp_j = model.component_of(j);
          if (comp_j && config.intersection(c, j) != 0) {
            add_component(piece, *comp_j);
          }
        }
      }
      pieces.push_back(std::move(piece));
    }
    for (std::size_t h = 0; h < n; ++h) {
      if (over_s[h] || model.is_contracted(h) || total.coefficient(h) < 1) {
        continue;
      }
      for (auto k : config.points_on(h)) {
        const auto v = config.point(k).other(h);
        if (!over_s[v]) {
          continue;
        }
        Piece piece = empty_piece();
        piece.points[k] = true;
        if (const auto comp = model.component_of(v)) {
          add_component(piece, *comp);
        }
        pieces.push_back(std::move(piece));
      }
    }

    FiberConnectedness fiber{s, ConnectednessVerdict::kEmpty, pieces.size(), 0};
    if (!pieces.empty()) {
      std::vector<std::size_t> parent(pieces.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) {
          x = parent[x] = parent[parent[x]];
        }
        return x;
      };
      for (std::size_t a = 0; a < pieces.size(); ++a) {
        for (std::size_t b = a + 1; b < pieces.size(); ++b) {
          if (find(a) != find(b) && touches(config, pieces[a], pieces[b])) {
            parent[find(a)] = find(b);
          }
        }
      }
      for (std::size_t a = 0; a < pieces.size(); ++a) {
        fiber.component_count += find(a) == a ? 1 : 0;
      }
      fiber.verdict = fiber.component_count == 1 ? ConnectednessVerdict::kConnected
                                                 : ConnectednessVerdict::kViolation;
    }
    report.fibers.push_back(std::move(fiber));
  }
  return report;
}

}  // namespace surfmmp
