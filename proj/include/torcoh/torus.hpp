#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace torcoh {

using Point = std::vector<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Representative of x mod 1 in [0, 1).
inline double frac(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// Signed representative of x mod 1 in [-1/2, 1/2].
inline double centered_frac(double x) { return x - std::nearbyint(x); }

// Distance on R/Z.
inline double circle_distance(double a, double b) {
  return std::abs(centered_frac(a - b));
}

// Sup-metric on T^d (max over coordinates of circle distance).
inline double torus_distance(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, circle_distance(a[i], b[i]));
  return d;
}

// Euclidean metric on T^d.
inline double torus_distance_l2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = circle_distance(a[i], b[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

inline const double kGoldenRatio = std::numbers::phi;

}  // namespace torcoh
