#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/tables.hpp"
#include "internal.hpp"

namespace fraclap {

double green_function(const Point& x, const Point& y, double R, const FracParams& params) {
  if (!(R > 0.0)) throw PreconditionError("green_function: radius must be positive");
  const double R2 = R * R;
  const double ax = R2 - dot(x, x), ay = R2 - dot(y, y);
  if (ax <= 0.0 || ay <= 0.0) return 0.0;
  const double d2 = dot(x - y, x - y);
  if (d2 == 0.0) return std::numeric_limits<double>::infinity();
  const int n = params.n();
  const double alpha = params.alpha();
  // w / (1 + w) with w = ax ay / (R^2 d^2), written to avoid overflow for tiny d.
  const double z = ax * ay / (ax * ay + R2 * d2);
  return riesz_constant(params) * std::pow(d2, 0.5 * (alpha - n)) *
         boost::math::ibeta(0.5 * alpha, 0.5 * (n - alpha), z);
}

EvalResult green_solve_ball(const ScalarField& f, double R, const Point& x, const FracParams& params,
                            const RieszConfig& cfg) {
  if (!(R > 0.0)) throw PreconditionError("green_solve_ball: radius must be positive");
  const double rx = norm(x);
  if (rx >= R) return {};
  const auto& meta = f.meta();
  if (meta.is_constant && meta.far_limit.value_or(0.0) == 0.0 && f(x) == 0.0) return {};

  const int n = params.n();
  const double alpha = params.alpha();
  const double tol = cfg.tolerance;
  quad::Budget budget(cfg.max_evaluations);
  const double scale = std::max(detail::field_scale(f, x), std::numeric_limits<double>::min());
  const double q = 2.0 / alpha;

  // Polar coordinates around x: y = x + rho w, 0 <= rho <= chord(w), |x + chord w| = R.
  auto along = [&](const Point& w) {
    const double b = dot(x, w);
    double top = -b + std::sqrt(b * b + R * R - rx * rx);
    for (const auto& s : meta.support) {
      const double d = distance(x, s.center);
      top = std::min(top, d + s.radius);
    }
    auto h = [&](double rho) {
      const Point y = x + rho * w;
      return green_function(x, y, R, params) * f(y) * std::pow(rho, n - 1);
    };
    const quad::Tolerance t{0.1 * tol * scale, 0.1 * tol};
    const double half = 0.5 * top;
    const double a = std::min(half, 1.0);
    // rho^alpha near x absorbs the |x - y|^{alpha-n} singularity.
    quad::Result r = quad::integrate([&](double u) {
      const double rho = std::pow(u, 1.0 / alpha);
      return rho > 0.0 ? h(rho) * rho / (alpha * u) : 0.0;
    }, 0.0, std::pow(a, alpha), t, budget, 2);
    if (half > a) {
      const double la = std::log(a), lb = std::log(half);
      r = r + quad::integrate([&](double ell) {
        const double rho = std::exp(ell);
        return h(rho) * rho;
      }, la, lb, t, budget, std::max(1, static_cast<int>(std::ceil(lb - la))));
    }
    // top - rho = half v^q absorbs the (R - |y|)^{alpha/2} edge behaviour.
    r = r + quad::integrate([&](double v) {
      const double rho = top - half * std::pow(v, q);
      return h(rho) * half * q * std::pow(v, q - 1.0);
    }, 0.0, 1.0, t, budget, 2);
    return r.value;
  };
  const Point axis = detail::default_axis(n, x);
  const quad::Frame frame = quad::frame_from_axis(n, axis);
  quad::Result res;
  if (meta.is_radial && meta.support.size() <= 1) {
    // Radial source: the integrand depends only on the angle to the axis through x.
    const double ring = n == 2 ? 2.0 : 2.0 * std::numbers::pi;
    res = quad::integrate([&](double th) {
      const Point w = std::cos(th) * frame.e0 + std::sin(th) * frame.e1;
      return along(w) * ring * (n == 3 ? std::sin(th) : 1.0);
    }, 0.0, std::numbers::pi, {tol * scale, tol}, budget, 4);
  } else {
    res = quad::integrate_sphere(n, along, frame, {tol * scale, tol}, budget);
  }
  return {res.value, res.error, false};
}

ScalarField green_solution_field(const ScalarField& f, double R, const FracParams& params, const RieszConfig& cfg) {
  if (!(R > 0.0)) throw PreconditionError("green_solution_field: radius must be positive");
  FieldMeta meta;
  meta.decay_exponent = std::numeric_limits<double>::infinity();
  meta.far_limit = 0.0;
  meta.bounded = true;
  meta.support = {Ball{Point{0, 0, 0}, R}};
  meta.kinks = {Ball{Point{0, 0, 0}, R}};
  const std::string name = "green_" + std::to_string(R) + "(" + f.name() + ")";
  const bool radial = f.meta().is_radial && f.has_profile();
  meta.is_radial = radial;
  meta.is_axisymmetric = radial;
  if (radial) {
    // v_R ~ (R - r)^{alpha/2} at the sphere: tabulate in (R - r)^{alpha/2}.
    auto table = std::make_shared<const RadialTable>(RadialTable::build(
        AxisMap::towards_edge(R, 0.0, R, 2.0 / params.alpha()), 129,
        [&](double r) { return r >= R ? 0.0 : green_solve_ball(f, R, {r, 0, 0}, params, cfg).value; }));
    auto profile = [table, R](double r) { return r >= R ? 0.0 : (*table)(r); };
    return ScalarField(name, [profile](const Point& x) { return profile(norm(x)); }, meta, profile);
  }
  return ScalarField(name, [f, R, params, cfg](const Point& x) { return green_solve_ball(f, R, x, params, cfg).value; },
                     meta);
}

Report green_symmetry_check(double R, const FracParams& params, std::span<const std::pair<Point, Point>> pairs) {
  Report report("green_symmetry", params);
  const double R2 = R * R;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    if (distance(x, y) == 0.0) throw PreconditionError("green_symmetry_check: coincident points");
    if (!(dot(x, x) < R2 && dot(y, y) < R2)) throw PreconditionError("green_symmetry_check: points must lie inside B_R");
    const double gxy = green_function(x, y, R, params);
    const double gyx = green_function(y, x, R, params);
    report.add_upper_bound("pair_" + std::to_string(i), "relative_asymmetry", std::abs(gxy - gyx) / gxy, 1e-10);
  }
  return report;
}

}  // namespace fraclap
