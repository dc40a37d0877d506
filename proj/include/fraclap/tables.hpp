#pragma once

// Interpolation caches for fields that are expensive to evaluate pointwise
// (Riesz potentials, Poisson extensions, Green solutions).

#include <functional>
#include <memory>
#include <vector>

#include "fraclap/field.hpp"

namespace fraclap {

/// Monotone map between a uniform coordinate u in [0, 1] and a radius r.
struct AxisMap {
  std::function<double(double)> to_r;
  std::function<double(double)> to_u;

  /// r = scale * ((1 + r_max/scale)^u - 1): logarithmic spacing beyond `scale`.
  static AxisMap log_offset(double r_max, double scale);
  /// Radii on [r_begin, r_end] (r_end <= edge) with (edge - r)^{1/exponent} linear in u,
  /// so a profile behaving like (edge - r)^{+-1/exponent} is smooth in u.
  static AxisMap towards_edge(double edge, double r_begin, double r_end, double exponent);
  /// Radii on [edge, r_max] with t = (r/edge - 1)^{1/exponent}: u linear in t near the edge,
  /// logarithmic in t far out.
  static AxisMap away_from_edge(double edge, double r_max, double exponent);
};

/// Cubic B-spline (in the map's u coordinate) of a radial profile.
class RadialTable {
 public:
  RadialTable(AxisMap map, std::vector<double> values);

  /// Samples f at `nodes` uniform u-points.
  static RadialTable build(const AxisMap& map, int nodes, const std::function<double(double)>& f);

  double operator()(double r) const;
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  const std::vector<double>& values() const { return values_; }
  double node_radius(int i) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  AxisMap map_;
  std::vector<double> values_;
  double r_min_, r_max_;
};

/// Table over (r, theta) for fields invariant under rotations about e_1;
/// theta in [0, pi] is the angle to e_1. Cubic spline in r per theta row,
/// 4-point Lagrange across rows with mirror symmetry at theta = 0, pi.
class AxisymTable {
 public:
  static AxisymTable build(const AxisMap& map, int radial_nodes, int angular_nodes,
                           const std::function<double(double r, double theta)>& f);

  double operator()(double r, double theta) const;
  double r_min() const;
  double r_max() const;
  int angular_nodes() const { return static_cast<int>(rows_.size()); }
  /// Row value at the outermost radius (for far-field fits).
  double outer_value(double theta) const;

 private:
  std::vector<RadialTable> rows_;
};

/// Polar angle of x measured from e_1.
double axis_angle(const Point& x);

}  // namespace fraclap
