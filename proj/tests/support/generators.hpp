#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "surfmmp/surfmmp.hpp"

namespace surfmmp::testing {

using Rng = std::mt19937_64;

struct Instance {
  std::string family;
  Configuration config;
  std::vector<std::size_t> contracted;
  Divisor boundary;
  Fibration fib;

  Model model() const { return Model(config, contracted, true); }
  Pair pair() const { return Pair(model(), boundary); }
};

// {0, 1/4, 1/2, 3/4, 1} and, when allowed, 3/2.
Rational random_coefficient(Rng& rng, bool allow_above_one);

// Random boundary on the surviving curves of `inst`.
void randomize_boundary(Rng& rng, Instance& inst, bool allow_above_one, double density = 0.5);

struct LocalOptions {
  std::size_t min_size = 1;
  std::size_t max_size = 4;
  std::size_t max_components = 2;
  std::size_t max_boundary_curves = 3;
  bool allow_above_one = true;
  bool higher_genus = true;
  bool contract_all = true;
};

// Negative definite exceptional graphs (chains, trees, cycles) with
// horizontal curves through them. Exceptional curves are tagged over one
// base point per component; target_dim 2.
Instance random_local(Rng& rng, const LocalOptions& options = {});

// Toric surface (P² or a Hirzebruch surface) with node blowups, over a point.
Instance random_toric(Rng& rng, std::size_t max_blowups = 4);

// Hirzebruch surface with declared fibers and node blowups, over a curve.
// `multiplicities` receives the fiber multiplicity of every curve (0 for
// horizontal curves).
Instance random_ruled(Rng& rng, std::size_t max_blowups = 4,
                      std::vector<std::int64_t>* multiplicities = nullptr);

// Iterated blowups of regular points under a few horizontal curves, over the
// blown-down surface.
Instance random_birational(Rng& rng, std::size_t max_blowups = 5);

// One of toric / ruled / birational / local with a random ND subset
// contracted and a random boundary.
Instance random_fibered(Rng& rng, bool allow_above_one);

// Adds random curves to the contracted set while the contracted locus stays
// negative definite and every contracted curve is vertical.
void contract_randomly(Rng& rng, Instance& inst, double probability = 0.4);

}  // namespace surfmmp::testing
