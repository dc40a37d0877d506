#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/tables.hpp"
#include "internal.hpp"

namespace fraclap {

double poisson_kernel(const Point& y, const Point& x, double k, const FracParams& params) {
  const double ry2 = dot(y, y), rx2 = dot(x, x), k2 = k * k;
  if (!(k > 0.0) || !(ry2 < k2) || !(rx2 > k2))
    throw PreconditionError("poisson_kernel: need |y| < k < |x|");
  const double a = params.alpha();
  return poisson_prefactor(params) * std::pow((rx2 - k2) / (k2 - ry2), 0.5 * a) *
         std::pow(distance(x, y), -static_cast<double>(params.n()));
}

struct PoissonExtension::Cache {
  std::once_flag once;
  std::optional<RadialTable> radial;
  std::optional<AxisymTable> axisym;
  double r_max = 0.0;
  /// u_k(x) ~ c1 |x|^{alpha-n} beyond r_max (radial), or per-angle amplitude via the table's outer row.
  double c1 = 0.0;
};

namespace {

constexpr double kCacheExtent = 256.0;

// k - s = k v^q with q = 2/(2-alpha): (k^2 - s^2)^{-alpha/2} ds = q k^{1-alpha/2} (k + s)^{-alpha/2} dv.
struct EdgeMap {
  double k, alpha;
  double s(double v) const { return k * (1.0 - std::pow(v, 2.0 / (2.0 - alpha))); }
  double weight(double s) const {
    return 2.0 / (2.0 - alpha) * std::pow(k, 1.0 - 0.5 * alpha) * std::pow(k + s, -0.5 * alpha);
  }
};

}  // namespace

PoissonExtension::PoissonExtension(ScalarField base, double k, FracParams params)
    : base_(std::move(base)), k_(k), params_(params), cache_(std::make_shared<Cache>()) {
  if (!(k > 0.0) || !std::isfinite(k)) throw PreconditionError("poisson_extend: radius must be positive");
}

PoissonExtension poisson_extend(const ScalarField& base, double k, const FracParams& params) {
  return PoissonExtension(base, k, params);
}

EvalResult PoissonExtension::exterior_integral(const Point& x) const {
  const double r = norm(x);
  if (!(r > k_)) throw PreconditionError("PoissonExtension::exterior_integral: need |x| > k");
  const int n = params_.n();
  const double alpha = params_.alpha();
  const double k2 = k_ * k_;
  const double pre = poisson_prefactor(params_) * std::pow(r * r - k2, 0.5 * alpha);
  const EdgeMap em{k_, alpha};
  quad::Budget budget(100'000'000);
  const auto& meta = base_.meta();
  if (meta.is_constant && meta.far_limit && *meta.far_limit == 0.0) return {};

  quad::Result res;
  if (meta.is_radial && base_.has_profile()) {
    // int_S |x - s w|^{-n} dw = sigma r^{2-n} / (r^2 - s^2) for s < r.
    const double sigma = params_.sphere_area();
    auto g = [&](double v) {
      const double s = em.s(v);
      return base_.profile(s) * std::pow(s, n - 1) * sigma * std::pow(r, 2 - n) / (r * r - s * s) * em.weight(s);
    };
    res = quad::integrate(g, 0.0, 1.0, {1e-14, 1e-11}, budget, 4);
  } else {
    const Point axis = (1.0 / r) * x;
    const quad::Frame frame = quad::frame_from_axis(n, axis);
    auto g = [&](double v) {
      const double s = em.s(v);
      auto ang = [&](const Point& w) {
        const Point y = s * w;
        return base_(y) * std::pow(distance(x, y), -static_cast<double>(n));
      };
      const auto a = quad::integrate_sphere(n, ang, frame, {1e-13, 1e-10}, budget);
      return a.value * std::pow(s, n - 1) * em.weight(s);
    };
    res = quad::integrate(g, 0.0, 1.0, {1e-12, 1e-9}, budget, 4);
  }
  return {pre * res.value, pre * res.error, false};
}

const PoissonExtension::Cache& PoissonExtension::cache() const {
  std::call_once(cache_->once, [this] {
    const auto& meta = base_.meta();
    const double alpha = params_.alpha();
    const double n = params_.n();
    const AxisMap map = AxisMap::away_from_edge(k_, kCacheExtent * k_, 2.0 / alpha);
    cache_->r_max = kCacheExtent * k_;
    // The extension is continuous across the sphere, so the edge node takes the base value.
    auto ext = [this](double r, double th) {
      const Point x{r * std::cos(th), r * std::sin(th), 0.0};
      if (r <= k_ * (1.0 + 1e-9)) return base_((k_ / r) * x);
      return exterior_integral(x).value;
    };
    if (meta.is_radial && base_.has_profile()) {
      cache_->radial = RadialTable::build(map, 257, [&](double r) { return ext(r, 0.0); });
      cache_->c1 = cache_->radial->values().back() * std::pow(cache_->r_max, n - alpha);
    } else if (meta.is_axisymmetric) {
      cache_->axisym = AxisymTable::build(map, 65, 17, [&](double r, double th) { return ext(r, th); });
    }
  });
  return *cache_;
}

double PoissonExtension::operator()(const Point& x) const {
  const double r = norm(x);
  if (r <= k_) return base_(x);
  const auto& c = cache();
  const double n = params_.n(), alpha = params_.alpha();
  if (c.radial) {
    if (r <= c.r_max) return (*c.radial)(r);
    return c.c1 * std::pow(r, alpha - n);
  }
  if (c.axisym) {
    const double th = axis_angle(x);
    if (r <= c.r_max) return (*c.axisym)(r, th);
    return c.axisym->outer_value(th) * std::pow(c.r_max / r, n - alpha);
  }
  return exterior_integral(x).value;
}

ScalarField PoissonExtension::field() const {
  const auto& bm = base_.meta();
  if (bm.is_constant && bm.far_limit && *bm.far_limit == 0.0) return zero_field();
  FieldMeta m;
  m.decay_exponent = params_.n() - params_.alpha();
  m.far_limit = 0.0;
  m.bounded = bm.bounded || bm.is_constant;
  m.is_radial = bm.is_radial && base_.has_profile();
  m.is_axisymmetric = bm.is_axisymmetric || m.is_radial;
  m.kinks = {Ball{Point{0, 0, 0}, k_}};
  PoissonExtension self = *this;
  ScalarField::Profile profile;
  if (m.is_radial) profile = [self](double r) { return self(Point{r, 0, 0}); };
  return ScalarField("extension(" + base_.name() + ")", [self](const Point& x) { return self(x); }, m, profile);
}

Report verify_alpha_harmonic_outside(const PoissonExtension& ext, std::span<const Point> test_points,
                                     const PvQuadConfig& cfg, const KernelConstants& k) {
  Report report("alpha_harmonic_outside", ext.params());
  for (const auto& x : test_points)
    if (!(norm(x) > 1.1 * ext.radius()))
      throw PreconditionError("verify_alpha_harmonic_outside: test points need |x| > 1.1 k");
  const ScalarField f = ext.field();
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    const auto r = fraclap_pv(f, test_points[i], ext.params(), cfg, k);
    report.add_upper_bound("harmonic_at_r=" + std::to_string(norm(test_points[i])), "abs_fraclap",
                           std::abs(r.value), std::max(1e-2, 3.0 * r.error_estimate));
  }
  return report;
}

}  // namespace fraclap
