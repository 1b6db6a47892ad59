#include <gtest/gtest.h>

#include "builder.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "surfmmp/surfmmp.hpp"

namespace surfmmp {
namespace {

using testing::ConfigBuilder;

std::vector<Rational> vec(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) {
    out.emplace_back(x);
  }
  return out;
}

TEST(CurveClasses, FiberPair) {
  const Model m(testing::fiber_pair_config());
  const auto fib = testing::fiber_pair_fibration();
  validate_fibration(m, fib);
  const auto cc = curve_classes(m, fib);
  ASSERT_EQ(cc.curves, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(cc.classes[0], vec({1, -1, 1}));
  EXPECT_EQ(cc.classes[1], vec({0, 1, -1}));
  EXPECT_EQ(cc.rho, 2u);

  const auto after = curve_classes(m.with_contracted(1), fib);
  EXPECT_EQ(after.curves, (std::vector<std::size_t>{2}));
  EXPECT_EQ(after.rho, 1u);
}

TEST(CurveClasses, NoVerticalCurves) {
  Fibration fib;
  fib.target_dim = 2;
  const auto cc = curve_classes(Model(testing::transverse_pair_config()), fib);
  EXPECT_TRUE(cc.curves.empty());
  EXPECT_EQ(cc.rho, 0u);
}

TEST(CurveClasses, ZeroClassIsBasisInsufficiency) {
  ConfigBuilder b;
  b.curve("F", 0, -2, "s");
  Fibration fib;
  fib.target_dim = 1;
  fib.base_points = {"s"};
  fib.fiber_classes["s"] = Divisor::of_curve(0);
  const Model m(b.build());
  validate_fibration(m, fib);
  EXPECT_THROW(curve_classes(m, fib), BasisInsufficiency);
}

TEST(ExtremalRays, FiberPair) {
  const Pair pair(Model(testing::fiber_pair_config()), {});
  const auto fib = testing::fiber_pair_fibration();
  const auto rays = negative_extremal_rays(pair, fib);
  ASSERT_EQ(rays.size(), 2u);
  EXPECT_EQ(rays[0].curve, 1u);
  EXPECT_EQ(rays[1].curve, 2u);
  EXPECT_EQ(rays[0].log_canonical_degree, -1);
  const auto cc = curve_classes(pair.model(), fib);
  // Separator certificates.
  EXPECT_LT(linalg::dot(rays[0].separator, cc.classes[0]), 0);
  EXPECT_GE(linalg::dot(rays[0].separator, cc.classes[1]), 0);

  // Enough boundary on A makes (K+Δ)·A >= 0.
  const Pair heavy(Model(testing::fiber_pair_config()), Divisor::of_curve(2, 1));
  const auto only = negative_extremal_rays(heavy, fib);
  ASSERT_EQ(only.size(), 1u);
  EXPECT_EQ(only[0].curve, 2u);
}

TEST(ExtremalRays, SingleVerticalCurve) {
  ConfigBuilder b;
  b.curve("H", 1, -3, "horizontal");
  b.curve("E", -1, -1, "s");
  b.node(0, 1);
  Fibration fib;
  fib.target_dim = 2;
  fib.base_points = {"s"};
  const auto rays = negative_extremal_rays(Pair(Model(b.build()), {}), fib);
  ASSERT_EQ(rays.size(), 1u);
  EXPECT_EQ(rays[0].curve, 1u);
}

TEST(ExtremalRays, ConeWithLineIsInvalid) {
  CurveClasses cc;
  cc.curves = {0, 1};
  cc.classes = {vec({1, 0}), vec({-1, 0})};
  EXPECT_THROW(extremal_generators(cc), InvalidInput);
}

TEST(ExtremalRays, RemovingNonExtremalKeepsCone) {
  // Every generator is a nonnegative combination of the extremal ones.
  testing::Rng rng(61);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 150; ++t) {
    auto inst = testing::random_fibered(rng, false);
    const Model m = inst.model();
    validate_fibration(m, inst.fib);
    CurveClasses cc;
    try {
      cc = curve_classes(m, inst.fib);
    } catch (const BasisInsufficiency&) {
      continue;
    }
    if (cc.curves.empty() || cc.curves.size() > 6) {
      continue;
    }
    const auto rays = extremal_generators(cc);
    std::vector<std::vector<Rational>> kept;
    for (const auto& r : rays) {
      const auto pos = static_cast<std::size_t>(
          std::find(cc.curves.begin(), cc.curves.end(), r.curve) - cc.curves.begin());
      kept.push_back(cc.classes[pos]);
    }
    for (const auto& g : cc.classes) {
      EXPECT_TRUE(linalg::cone_membership(kept, g).member);
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Positivity, Examples) {
  // -(K+C) on the cusp resolution, over the contracted point.
  ConfigBuilder b;
  b.curve("C", -2, 2, "x");
  Fibration fib;
  fib.target_dim = 2;
  fib.base_points = {"x"};
  const Model w(b.build());
  const auto f = positivity(w, -DivisorClass{1, Divisor::of_curve(0)}, fib);
  EXPECT_TRUE(f.nef);
  EXPECT_TRUE(f.big);
  EXPECT_FALSE(f.ample);

  Fibration point;
  point.target_dim = 0;
  const Model p2(testing::two_lines_config());
  const auto zero = positivity(p2, DivisorClass{}, point);
  EXPECT_TRUE(zero.nef);
  EXPECT_FALSE(zero.ample);
  EXPECT_FALSE(zero.big);
  const auto line = positivity(p2, DivisorClass::of(Divisor::of_curve(0)), point);
  EXPECT_TRUE(line.nef);
  EXPECT_TRUE(line.ample);
  EXPECT_TRUE(line.big);
  // -K on the plane needs K², which the configuration declares.
  EXPECT_TRUE(positivity(p2, -DivisorClass::canonical_class(), point).ample);
}

TEST(FiberLemma, Examples) {
  const auto c = testing::fiber_pair_config();
  const auto fib = testing::fiber_pair_fibration();
  EXPECT_EQ(fiber_seminegative_witness(c, fib, "s", Divisor::of_curve(1) - Divisor::of_curve(2)), 1u);
  EXPECT_EQ(fiber_seminegative_witness(c, fib, "s", Divisor::of_curve(1)), 1u);
  EXPECT_THROW(fiber_seminegative_witness(c, fib, "s", Divisor::of_curve(1, -1)), ArgumentError);
  EXPECT_THROW(fiber_seminegative_witness(c, fib, "s", Divisor::of_curve(0)), ArgumentError);
}

TEST(Fibration, FibersAreSemidefiniteWithClassInKernel) {
  testing::Rng rng(67);
  for (int t = 0; t < 150; ++t) {
    const auto inst = testing::random_ruled(rng);
    validate_fibration(Model(inst.config), inst.fib);
    for (const auto& s : inst.fib.base_points) {
      const auto fiber = fiber_curves(inst.config, inst.fib, s);
      if (fiber.size() > 8) {
        continue;
      }
      EXPECT_TRUE(testing::nsd_by_all_minors(
          linalg::principal_submatrix(inst.config.matrix(), fiber)));
      for (auto c : fiber) {
        EXPECT_EQ(intersect(inst.config, inst.fib.fiber_classes.at(s), Divisor::of_curve(c)), 0);
      }
    }
  }
}

TEST(Fibration, RejectsInconsistentDeclarations) {
  const Model m(testing::fiber_pair_config());
  auto fib = testing::fiber_pair_fibration();
  fib.fiber_classes["s"] = Divisor::of_curve(1);
  EXPECT_THROW(validate_fibration(m, fib), ArgumentError);
  fib = testing::fiber_pair_fibration();
  fib.fiber_classes.clear();
  EXPECT_THROW(validate_fibration(m, fib), ArgumentError);
  fib = testing::fiber_pair_fibration();
  EXPECT_THROW(validate_fibration(Model(testing::fiber_pair_config(), {0}), fib), ArgumentError);
}

}  // namespace
}  // namespace surfmmp
