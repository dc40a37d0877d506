#include "fraclap/tables.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <numbers>

#include "fraclap/errors.hpp"

namespace fraclap {

AxisMap AxisMap::log_offset(double r_max, double scale) {
  if (!(r_max > 0.0) || !(scale > 0.0)) throw PreconditionError("log_offset: r_max and scale must be positive");
  const double span = std::log1p(r_max / scale);
  return {[=](double u) { return scale * std::expm1(u * span); },
          [=](double r) { return std::log1p(std::max(r, 0.0) / scale) / span; }};
}

AxisMap AxisMap::towards_edge(double edge, double r_begin, double r_end, double exponent) {
  if (!(r_begin < r_end) || r_end > edge || !(exponent > 0.0))
    throw PreconditionError("towards_edge: need r_begin < r_end <= edge and exponent > 0");
  const double a = std::pow(edge - r_begin, 1.0 / exponent);
  const double b = std::pow(edge - r_end, 1.0 / exponent);
  return {[=](double u) { return edge - std::pow(a + u * (b - a), exponent); },
          [=](double r) { return (std::pow(std::max(edge - r, 0.0), 1.0 / exponent) - a) / (b - a); }};
}

AxisMap AxisMap::away_from_edge(double edge, double r_max, double exponent) {
  if (!(edge > 0.0) || !(r_max > edge) || !(exponent > 0.0))
    throw PreconditionError("away_from_edge: need 0 < edge < r_max and exponent > 0");
  // t = (r/edge - 1)^{1/exponent}; u = log(1 + t) / log(1 + t_max): linear in t near the edge, logarithmic far out.
  const double span = std::log1p(std::pow(r_max / edge - 1.0, 1.0 / exponent));
  return {[=](double u) { return edge * (1.0 + std::pow(std::expm1(u * span), exponent)); },
          [=](double r) { return std::log1p(std::pow(std::max(r / edge - 1.0, 0.0), 1.0 / exponent)) / span; }};
}

struct RadialTable::Impl {
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline;
};

RadialTable::RadialTable(AxisMap map, std::vector<double> values) : map_(std::move(map)), values_(std::move(values)) {
  if (values_.size() < 5) throw PreconditionError("RadialTable needs at least 5 nodes");
  for (double v : values_)
    if (!std::isfinite(v)) throw ValidationError("RadialTable: non-finite sample");
  const double h = 1.0 / static_cast<double>(values_.size() - 1);
  impl_ = std::make_shared<Impl>(Impl{{values_.begin(), values_.end(), 0.0, h}});
  const double a = map_.to_r(0.0), b = map_.to_r(1.0);
  r_min_ = std::min(a, b);
  r_max_ = std::max(a, b);
}

RadialTable RadialTable::build(const AxisMap& map, int nodes, const std::function<double(double)>& f) {
  if (nodes < 5) throw PreconditionError("RadialTable needs at least 5 nodes");
  std::vector<double> v(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) v[static_cast<std::size_t>(i)] = f(map.to_r(static_cast<double>(i) / (nodes - 1)));
  return RadialTable(map, std::move(v));
}

double RadialTable::node_radius(int i) const {
  return map_.to_r(static_cast<double>(i) / static_cast<double>(values_.size() - 1));
}

double RadialTable::operator()(double r) const {
  const double u = std::clamp(map_.to_u(std::clamp(r, r_min_, r_max_)), 0.0, 1.0);
  return impl_->spline(u);
}

AxisymTable AxisymTable::build(const AxisMap& map, int radial_nodes, int angular_nodes,
                               const std::function<double(double, double)>& f) {
  if (angular_nodes < 4) throw PreconditionError("AxisymTable needs at least 4 angular nodes");
  AxisymTable t;
  t.rows_.reserve(static_cast<std::size_t>(angular_nodes));
  for (int j = 0; j < angular_nodes; ++j) {
    const double theta = std::numbers::pi * j / (angular_nodes - 1);
    t.rows_.push_back(RadialTable::build(map, radial_nodes, [&](double r) { return f(r, theta); }));
  }
  return t;
}

double AxisymTable::r_min() const { return rows_.front().r_min(); }
double AxisymTable::r_max() const { return rows_.front().r_max(); }

namespace {

// 4-point Lagrange across rows; indices outside [0, m-1] reflect through the poles.
template <class RowFn>
double lagrange_rows(int m, double theta, RowFn row) {
  const double h = std::numbers::pi / (m - 1);
  const double s = std::clamp(theta, 0.0, std::numbers::pi) / h;
  int j0 = static_cast<int>(std::floor(s)) - 1;
  j0 = std::clamp(j0, -1, m - 3);
  auto reflect = [m](int j) {
    if (j < 0) return -j;
    if (j > m - 1) return 2 * (m - 1) - j;
    return j;
  };
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (s - (j0 + b)) / static_cast<double>(a - b);
    acc += w * row(reflect(j0 + a));
  }
  return acc;
}

}  // namespace

double AxisymTable::operator()(double r, double theta) const {
  return lagrange_rows(angular_nodes(), theta, [&](int j) { return rows_[static_cast<std::size_t>(j)](r); });
}

double AxisymTable::outer_value(double theta) const {
  return lagrange_rows(angular_nodes(), theta,
                       [&](int j) { return rows_[static_cast<std::size_t>(j)].values().back(); });
}

double axis_angle(const Point& x) {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  return std::acos(std::clamp(x[0] / r, -1.0, 1.0));
}

}  // namespace fraclap
