#include "bse2/angle.hpp"

#include <cmath>

namespace bse2 {

double wrap_angle(double radians) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(radians, two_pi);  // in [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double Angle::distance_to(Angle other) const noexcept {
  return std::abs(angle_difference(value_, other.value_));
}

}  // namespace bse2
