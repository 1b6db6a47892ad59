#include "surfmmp/riemann_roch.hpp"

#include "surfmmp/errors.hpp"

namespace surfmmp {

Rational euler_char_curve(const CurveDivisor& d, std::int64_t chi0) {
  for (const auto& t : d.terms()) {
    if (!is_integer(t.coefficient)) {
      throw ArgumentError("euler_char_curve: coefficient " + to_string(t.coefficient) + " at '" +
                          t.point + "' is not an integer");
    }
  }
  return degree_on_curve(d) + chi0;
}

std::int64_t chi_of_curve(const Configuration& config, std::size_t curve) {
  const auto& c = config.curve(curve);
  const std::int64_t s = c.self_int + c.canon_int;
  if (s % 2 != 0) {
    throw InvariantViolation("chi_of_curve: '" + c.id + "' violates adjunction parity");
  }
  return -s / 2;
}

Rational euler_char_surface(const Configuration& config, const Divisor& d) {
  if (!config.chi_structure()) {
    throw ArgumentError("euler_char_surface: configuration has no chi_structure");
  }
  if (!d.is_integral()) {
    throw ArgumentError("euler_char_surface: divisor must have integer coefficients");
  }
  const Rational dd = intersect(config, d, d);
  const Rational dk = canonical_degree(config, d);
  return Rational(*config.chi_structure()) + (dd - dk) / 2;
}

}  // namespace surfmmp
