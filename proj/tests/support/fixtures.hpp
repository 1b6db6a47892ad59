#pragma once

#include "surfmmp/surfmmp.hpp"

namespace surfmmp::testing {

// E1, E2 two (-2)-curves meeting once.
Configuration a2_config();
// One (-2)-curve of arithmetic genus 1.
Configuration cusp_config();
// One (-1)-curve with K·C = 3.
Configuration non_lc_cone_config();
// Section H and a reducible fiber A + B over "s".
Configuration fiber_pair_config();
Fibration fiber_pair_fibration();
// Two lines in the projective plane.
Configuration two_lines_config();
// Curves C and D' meeting at one node of the given degree, nothing else.
Configuration transverse_pair_config(std::int64_t degree = 1);

}  // namespace surfmmp::testing
