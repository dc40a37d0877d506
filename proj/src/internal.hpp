#pragma once

// Helpers shared by the quadrature-based evaluators. Not installed.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "fraclap/field.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap::detail {

/// Unit vector from x towards c, or `fallback` if they coincide.
inline Point direction_to(const Point& x, const Point& c, const Point& fallback) {
  const Point d = c - x;
  const double len = norm(d);
  return len > 0.0 ? (1.0 / len) * d : fallback;
}

inline Point default_axis(int n, const Point& x) {
  (void)n;
  return direction_to(x, Point{0, 0, 0}, Point{1, 0, 0});
}

/// Angle at x between the direction to c and the points of the sphere |z - x| = rho
/// lying on the sphere |z - c| = R (requires the two spheres to intersect).
inline double cap_angle(double d, double R, double rho) {
  const double c = (rho * rho + d * d - R * R) / (2.0 * rho * d);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

/// True when the sphere |z - x| = rho crosses the sphere |z - b.center| = b.radius.
inline bool crosses(const Point& x, double rho, const Ball& b) {
  const double d = distance(x, b.center);
  return rho > std::abs(d - b.radius) && rho < d + b.radius && d > 0.0;
}

/// Integral over S^{n-1} of g(omega), splitting the sphere into a cap and its
/// complement when exactly one of `balls` has its boundary crossing |z - x| = rho.
template <class G>
quad::Result sphere_split(int n, G&& g, const Point& x, double rho, std::span<const Ball> balls,
                          const Point& axis, quad::Tolerance tol, quad::Budget& budget) {
  const Ball* hit = nullptr;
  int hits = 0;
  for (const auto& b : balls) {
    if (crosses(x, rho, b)) {
      hit = &b;
      ++hits;
    }
  }
  if (hits == 1) {
    const double d = distance(x, hit->center);
    const double th = cap_angle(d, hit->radius, rho);
    const Point e = direction_to(x, hit->center, axis);
    const quad::Frame near = quad::frame_from_axis(n, e);
    const quad::Frame far = quad::frame_from_axis(n, -1.0 * e);
    quad::Tolerance half{0.5 * tol.abs, tol.rel};
    return quad::integrate_cap(n, g, near, th, half, budget) +
           quad::integrate_cap(n, g, far, std::numbers::pi - th, half, budget);
  }
  const Point e = hits > 1 ? direction_to(x, hit->center, axis) : axis;
  return quad::integrate_sphere(n, g, quad::frame_from_axis(n, e), tol, budget);
}

/// Balls that are pairwise disjoint (so caps of different balls never overlap).
inline bool pairwise_disjoint(std::span<const Ball> balls) {
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      if (distance(balls[i].center, balls[j].center) < balls[i].radius + balls[j].radius) return false;
  return true;
}

/// Integral over S^{n-1} of g(omega), for g vanishing unless x + rho omega lies in
/// one of the (disjoint) support balls.
template <class G>
quad::Result support_caps(int n, G&& g, const Point& x, double rho, std::span<const Ball> support,
                          const Point& axis, quad::Tolerance tol, quad::Budget& budget) {
  quad::Result total;
  const quad::Tolerance each{tol.abs / static_cast<double>(std::max<std::size_t>(1, support.size())), tol.rel};
  for (const auto& b : support) {
    const double d = distance(x, b.center);
    if (rho >= d + b.radius || rho <= d - b.radius) continue;
    if (rho <= b.radius - d) {
      total = total + quad::integrate_sphere(n, g, quad::frame_from_axis(n, direction_to(x, b.center, axis)), each,
                                             budget);
      continue;
    }
    const double th = cap_angle(d, b.radius, rho);
    total = total + quad::integrate_cap(n, g, quad::frame_from_axis(n, direction_to(x, b.center, axis)), th, each,
                                        budget);
  }
  return total;
}

/// Sorted, de-duplicated breakpoints inside (lo, hi) plus the two ends.
inline std::vector<double> breakpoints(double lo, double hi, std::vector<double> cuts) {
  std::vector<double> out{lo};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts)
    if (c > lo * (1.0 + 1e-12) && c < hi * (1.0 - 1e-12) && c > out.back() * (1.0 + 1e-9)) out.push_back(c);
  out.push_back(hi);
  return out;
}

/// Representative magnitude of f: used to turn relative tolerances into absolute ones.
inline double field_scale(const ScalarField& f, const Point& x) {
  double s = std::abs(f(x));
  const auto& m = f.meta();
  if (m.far_limit) s = std::max(s, std::abs(*m.far_limit));
  for (const auto& b : m.support) s = std::max(s, std::abs(f(b.center)));
  if (s == 0.0) s = std::abs(f(Point{0, 0, 0}));
  return s;
}

}  // namespace fraclap::detail
