#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace fraclap {

/// Points live in R^3; for n = 2 the third coordinate is zero.
using Point = std::array<double, 3>;

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point operator*(double s, const Point& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// Dimension n and order alpha of (-Delta)^{alpha/2}.
class FracParams {
 public:
  /// Throws PreconditionError unless n in {2, 3} and 0 < alpha < 2.
  FracParams(int n, double alpha);

  int n() const { return n_; }
  double alpha() const { return alpha_; }

  /// (n + alpha) / (n - alpha), the exponent of the critical semilinear equation.
  double critical_exponent() const { return (n_ + alpha_) / (n_ - alpha_); }

  /// Surface measure of the unit sphere S^{n-1}.
  double sphere_area() const { return n_ == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi; }

  bool operator==(const FracParams&) const = default;

 private:
  int n_;
  double alpha_;
};

}  // namespace fraclap
