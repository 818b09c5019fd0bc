#pragma once

#include <numbers>

namespace bse2 {

/// Maps any finite angle to its representative in (-pi, pi].
double wrap_angle(double radians) noexcept;

/// wrap_angle(a - b).
inline double angle_difference(double a, double b) noexcept { return wrap_angle(a - b); }

inline constexpr double degrees_to_radians(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline constexpr double radians_to_degrees(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

/// A point on the circle, held in canonical form (-pi, pi].
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) noexcept : value_(wrap_angle(radians)) {}

  static Angle radians(double r) noexcept { return Angle(r); }
  static Angle degrees(double d) noexcept { return Angle(degrees_to_radians(d)); }

  double value() const noexcept { return value_; }

  Angle operator+(Angle other) const noexcept { return Angle(value_ + other.value_); }
  Angle operator-(Angle other) const noexcept { return Angle(value_ - other.value_); }
  Angle operator-() const noexcept { return Angle(-value_); }

  /// Absolute wrapped distance, in [0, pi].
  double distance_to(Angle other) const noexcept;

  friend bool operator==(Angle, Angle) = default;

 private:
  double value_ = 0.0;
};

}  // namespace bse2
