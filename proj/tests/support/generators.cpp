#include "generators.hpp"

#include <algorithm>
#include <numeric>

#include "builder.hpp"

namespace surfmmp::testing {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Configuration retag(const Configuration& config, std::size_t curve,
                    std::optional<std::string> tag) {
  auto curves = config.curves();
  curves[curve].vertical_over = std::move(tag);
  return Configuration(std::move(curves), config.matrix(), config.points(),
                       config.chi_structure(), config.canon_self_int());
}

bool is_tagged(const Configuration& config, std::size_t c) {
  const auto& t = config.curve(c).vertical_over;
  return t && *t != kHorizontal;
}

}  // namespace

Rational random_coefficient(Rng& rng, bool allow_above_one) {
  static const Rational pool[] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4),
                                  Rational(1), Rational(3, 2)};
  return pool[uniform(rng, 0, allow_above_one ? 5 : 4)];
}

void randomize_boundary(Rng& rng, Instance& inst, bool allow_above_one, double density) {
  inst.boundary = Divisor();
  std::vector<bool> contracted(inst.config.size(), false);
  for (auto c : inst.contracted) {
    contracted[c] = true;
  }
  for (std::size_t i = 0; i < inst.config.size(); ++i) {
    if (!contracted[i] && chance(rng, density)) {
      inst.boundary.set(i, random_coefficient(rng, allow_above_one));
    }
  }
}

Instance random_local(Rng& rng, const LocalOptions& options) {
  ConfigBuilder b;
  std::vector<std::vector<std::size_t>> components;
  const std::size_t k = uniform(rng, 1, options.max_components);
  std::vector<std::string> bases;
  for (std::size_t c = 0; c < k; ++c) {
    const std::string base = "s" + std::to_string(c);
    bases.push_back(base);
    const std::size_t n = uniform(rng, options.min_size, options.max_size);
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < n; ++i) {
      const auto self = -static_cast<std::int64_t>(uniform(rng, 1, 5));
      const std::int64_t genus = options.higher_genus && chance(rng, 0.15) ? 1 : 0;
      comp.push_back(b.curve_of_genus("E" + std::to_string(c) + "_" + std::to_string(i), self,
                                      genus, base));
    }
    const auto shape = uniform(rng, 0, 2);  // chain, tree, cycle
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t j = shape == 1 ? uniform(rng, 0, i - 1) : i - 1;
      b.node(comp[i], comp[j], chance(rng, 0.2) ? 2 : 1);
    }
    if (shape == 2 && n >= 2) {
      b.node(comp[n - 1], comp[0], 1);
    }
    components.push_back(std::move(comp));
  }
  // Make every component negative definite by lowering self-intersections,
  // keeping each genus.
  for (auto& comp : components) {
    for (int guard = 0; guard < 200; ++guard) {
      const auto config = b.build();
      if (is_negative_definite(config, comp).negative_definite) {
        break;
      }
      auto& curve = b.curves()[comp[uniform(rng, 0, comp.size() - 1)]];
      curve.self_int -= 1;
      curve.canon_int += 1;
    }
  }
  const std::size_t exceptional = b.size();
  const std::size_t m = uniform(rng, 0, options.max_boundary_curves);
  for (std::size_t j = 0; j < m; ++j) {
    const auto self = static_cast<std::int64_t>(uniform(rng, 0, 4)) - 3;
    const auto d = b.curve_of_genus("D" + std::to_string(j), self, 0, std::string(kHorizontal));
    const std::size_t meets = uniform(rng, 1, 2);
    for (std::size_t t = 0; t < meets; ++t) {
      const std::size_t other = uniform(rng, 0, d - 1);
      b.node(d, other, chance(rng, 0.15) ? 2 : 1);
    }
  }
  Instance inst;
  inst.family = "local";
  inst.config = b.build();
  inst.fib.target_dim = 2;
  inst.fib.base_points = bases;
  if (options.contract_all) {
    inst.contracted.resize(exceptional);
    std::iota(inst.contracted.begin(), inst.contracted.end(), 0);
  } else {
    contract_randomly(rng, inst);
  }
  randomize_boundary(rng, inst, options.allow_above_one);
  return inst;
}

Instance random_toric(Rng& rng, std::size_t max_blowups) {
  ConfigBuilder b;
  std::vector<std::int64_t> selfs;
  if (chance(rng, 0.3)) {
    selfs = {1, 1, 1};
  } else {
    const auto a = static_cast<std::int64_t>(uniform(rng, 0, 3));
    selfs = {a, 0, -a, 0};
  }
  for (std::size_t i = 0; i < selfs.size(); ++i) {
    b.curve("T" + std::to_string(i), selfs[i], -2 - selfs[i]);
  }
  for (std::size_t i = 0; i < selfs.size(); ++i) {
    b.node(i, (i + 1) % selfs.size(), 1, "q" + std::to_string(i));
  }
  b.chi(1).canon_self_int(12 - static_cast<std::int64_t>(selfs.size()));
  Configuration config = b.build();
  const std::size_t blowups = uniform(rng, 0, max_blowups);
  for (std::size_t t = 0; t < blowups; ++t) {
    const auto& p = config.point(uniform(rng, 0, config.points().size() - 1));
    config = blowup_at_node(config, p.id);
  }
  Instance inst;
  inst.family = "toric";
  inst.config = std::move(config);
  inst.fib.target_dim = 0;
  inst.fib.base_points = {"pt"};
  return inst;
}

Instance random_ruled(Rng& rng, std::size_t max_blowups, std::vector<std::int64_t>* mult) {
  ConfigBuilder b;
  const auto a = static_cast<std::int64_t>(uniform(rng, 0, 3));
  b.curve("S0", -a, a - 2, std::string(kHorizontal));
  b.curve("S1", a, -a - 2, std::string(kHorizontal));
  const std::size_t fibers = uniform(rng, 1, 3);
  std::vector<std::string> bases;
  for (std::size_t f = 0; f < fibers; ++f) {
    bases.push_back("t" + std::to_string(f));
    const auto c = b.curve("F" + std::to_string(f), 0, -2, bases.back());
    b.node(0, c, 1, "a" + std::to_string(f));
    b.node(1, c, 1, "b" + std::to_string(f));
  }
  b.chi(1).canon_self_int(8);
  Configuration config = b.build();
  std::vector<std::int64_t> m(config.size(), 1);
  m[0] = m[1] = 0;
  const std::size_t blowups = uniform(rng, 0, max_blowups);
  for (std::size_t t = 0; t < blowups; ++t) {
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < config.points().size(); ++k) {
      const auto& p = config.point(k);
      if (is_tagged(config, p.curves[0]) || is_tagged(config, p.curves[1])) {
        candidates.push_back(k);
      }
    }
    const auto& p = config.point(candidates[uniform(rng, 0, candidates.size() - 1)]);
    const auto mi = m[p.curves[0]];
    const auto mj = m[p.curves[1]];
    config = blowup_at_node(config, p.id);
    m.push_back(mi + mj);
  }
  Instance inst;
  inst.family = "ruled";
  inst.fib.target_dim = 1;
  inst.fib.base_points = bases;
  for (const auto& s : bases) {
    Divisor f;
    for (std::size_t i = 0; i < config.size(); ++i) {
      if (config.curve(i).vertical_over == s) {
        f.set(i, m[i]);
      }
    }
    inst.fib.fiber_classes[s] = f;
  }
  inst.config = std::move(config);
  if (mult) {
    *mult = std::move(m);
  }
  return inst;
}

Instance random_birational(Rng& rng, std::size_t max_blowups) {
  ConfigBuilder b;
  const std::size_t horizontal = uniform(rng, 2, 3);
  for (std::size_t i = 0; i < horizontal; ++i) {
    const auto self = static_cast<std::int64_t>(uniform(rng, 0, 4)) - 2;
    b.curve_of_genus("C" + std::to_string(i), self, 0, std::string(kHorizontal));
  }
  b.node(0, 1, chance(rng, 0.2) ? 2 : 1, "o0");
  if (horizontal == 3) {
    b.node(1, 2, 1, "o1");
  }
  Configuration config = b.build();
  std::vector<std::string> bases;
  const std::size_t centers = horizontal == 3 && chance(rng, 0.5) ? 2 : 1;
  for (std::size_t c = 0; c < centers; ++c) {
    bases.push_back("s" + std::to_string(c));
    config = blowup_at_node(config, "o" + std::to_string(c));
    config = retag(config, config.size() - 1, bases.back());
  }
  const std::size_t more = uniform(rng, 0, max_blowups);
  for (std::size_t t = 0; t < more; ++t) {
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < config.points().size(); ++k) {
      const auto& p = config.point(k);
      if (is_tagged(config, p.curves[0]) || is_tagged(config, p.curves[1])) {
        candidates.push_back(k);
      }
    }
    const auto& p = config.point(candidates[uniform(rng, 0, candidates.size() - 1)]);
    config = blowup_at_node(config, p.id);
  }
  Instance inst;
  inst.family = "birational";
  inst.config = std::move(config);
  inst.fib.target_dim = 2;
  inst.fib.base_points = bases;
  return inst;
}

void contract_randomly(Rng& rng, Instance& inst, double probability) {
  std::vector<std::size_t> order(inst.config.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (auto c : order) {
    if (std::find(inst.contracted.begin(), inst.contracted.end(), c) != inst.contracted.end() ||
        !chance(rng, probability)) {
      continue;
    }
    if (inst.fib.target_dim != 0 && !is_tagged(inst.config, c)) {
      continue;
    }
    auto trial = inst.contracted;
    trial.push_back(c);
    std::vector<std::size_t> sorted = trial;
    std::sort(sorted.begin(), sorted.end());
    // The contracted locus is ND iff each connected component is; checking
    // the whole set at once is equivalent.
    if (is_negative_definite(inst.config, sorted).negative_definite) {
      inst.contracted = std::move(sorted);
    }
  }
  inst.boundary = Divisor();
}

Instance random_fibered(Rng& rng, bool allow_above_one) {
  Instance inst;
  switch (uniform(rng, 0, 3)) {
    case 0: inst = random_toric(rng); break;
    case 1: inst = random_ruled(rng); break;
    case 2: inst = random_birational(rng); break;
    default: {
      LocalOptions options;
      options.contract_all = false;
      inst = random_local(rng, options);
      break;
    }
  }
  if (inst.contracted.empty()) {
    contract_randomly(rng, inst);
  }
  randomize_boundary(rng, inst, allow_above_one);
  return inst;
}

}  // namespace surfmmp::testing
