#pragma once

#include <cstddef>
#include <cstdint>

#include "surfmmp/lattice.hpp"

namespace surfmmp {

/// χ(C, O_C(D)) = deg D + χ(O_C) on a regular curve. D must have integer
/// coefficients; ArgumentError otherwise.
Rational euler_char_curve(const CurveDivisor& d, std::int64_t chi0);

/// χ(O_C) = -(C² + K·C)/2, read off from adjunction. Throws
/// InvariantViolation if the parity invariant is broken.
std::int64_t chi_of_curve(const Configuration& config, std::size_t curve);

/// χ(X, O_X(D)) = χ(O_X) + D·(D - K)/2 for an integral divisor on the ambient
/// surface. Requires chi_structure.
Rational euler_char_surface(const Configuration& config, const Divisor& d);

}  // namespace surfmmp
