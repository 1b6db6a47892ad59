#include "fixtures.hpp"

#include "builder.hpp"

namespace surfmmp::testing {

Configuration a2_config() {
  ConfigBuilder b;
  b.curve("E1", -2, 0);
  b.curve("E2", -2, 0);
  b.node(0, 1, 1, "p");
  return b.build();
}

Configuration cusp_config() {
  ConfigBuilder b;
  b.curve("C", -2, 2);
  return b.build();
}

Configuration non_lc_cone_config() {
  ConfigBuilder b;
  b.curve("C", -1, 3);
  return b.build();
}

Configuration fiber_pair_config() {
  ConfigBuilder b;
  b.curve("H", -1, -1, "horizontal");
  b.curve("A", -1, -1, "s");
  b.curve("B", -1, -1, "s");
  b.node(0, 1, 1, "ha");
  b.node(1, 2, 1, "ab");
  b.chi(1).canon_self_int(7);
  return b.build();
}

Fibration fiber_pair_fibration() {
  Fibration fib;
  fib.target_dim = 1;
  fib.base_points = {"s"};
  fib.fiber_classes["s"] = Divisor::of_curve(1) + Divisor::of_curve(2);
  return fib;
}

Configuration two_lines_config() {
  ConfigBuilder b;
  b.curve("L1", 1, -3);
  b.curve("L2", 1, -3);
  b.node(0, 1, 1, "o");
  b.chi(1).canon_self_int(9);
  return b.build();
}

Configuration transverse_pair_config(std::int64_t degree) {
  ConfigBuilder b;
  b.curve("C", -1, -1);
  b.curve("D", -1, -1);
  b.node(0, 1, degree, "p");
  return b.build();
}

}  // namespace surfmmp::testing
