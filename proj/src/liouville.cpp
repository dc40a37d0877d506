#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fraclap/errors.hpp"
#include "fraclap/liouville.hpp"
#include "fraclap/quadrature.hpp"
#include "internal.hpp"

namespace fraclap {

namespace {

/// int_{S^{n-1}} g(s w) dw with the polar axis on e_1 (axisymmetric integrands are split at pi/2).
template <class G>
double sphere_integral(int n, G&& g, double s, double tol, quad::Budget& budget, bool axisymmetric = false) {
  if (axisymmetric) {
    auto ring = [&](double th) {
      const double v = g(Point{s * std::cos(th), s * std::sin(th), 0.0});
      return n == 2 ? 2.0 * v : 2.0 * std::numbers::pi * std::sin(th) * v;
    };
    const double h = 0.5 * std::numbers::pi;
    return quad::integrate(ring, 0.0, h, {0.5 * tol, 1e-10}, budget, 2).value +
           quad::integrate(ring, h, 2.0 * h, {0.5 * tol, 1e-10}, budget, 2).value;
  }
  auto h = [&](const Point& w) { return g(s * w); };
  return quad::integrate_sphere(n, h, {tol, 1e-9}, budget).value;
}

void require_increasing(std::span<const double> v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw PreconditionError(std::string(what) + " must be strictly increasing");
}

bool is_zero_constant(const ScalarField& u) {
  return u.meta().is_constant && u.meta().far_limit && *u.meta().far_limit == 0.0;
}

}  // namespace

ScalarField build_phi(const ScalarField& psi, const FracParams& params, const PvQuadConfig& cfg,
                      const KernelConstants& k, bool gate) {
  if (is_zero_constant(psi)) return zero_field();
  const auto& m = psi.meta();
  if (!m.moment_zero) throw PreconditionError("build_phi: psi must have zero mean (moment_zero)");
  if (!m.compactly_supported()) throw PreconditionError("build_phi: psi must be compactly supported");
  const ScalarField phi = riesz_potential_field(psi, params, k);
  if (!gate) return phi;

  Point a{};
  double peak = -1.0;
  for (const auto& b : m.support) {
    const double v = std::abs(psi(b.center));
    if (v > peak) {
      peak = v;
      a = b.center;
    }
  }
  const double residual = std::abs(fraclap_pv(phi, a, params, cfg, k).value - psi(a));
  if (!(residual <= 1e-2 * peak))
    throw ValidationError("build_phi: fraclap(phi) misses psi at its extremum by " + std::to_string(residual));
  return phi;
}

LiouvilleTrace trace_pairing(const ScalarField& u, const ScalarField& psi, std::span<const double> radii_k,
                             const FracParams& params, int N) {
  if (!psi.meta().moment_zero) throw PreconditionError("trace_pairing: psi must have zero mean");
  const auto S = psi.meta().support_radius();
  if (!S) throw PreconditionError("trace_pairing: psi must be compactly supported");
  if (N < 2) throw PreconditionError("trace_pairing: N must be >= 2");
  require_increasing(radii_k, "radii_k");

  LiouvilleTrace trace{params, psi, {radii_k.begin(), radii_k.end()}, {}, {}, {}, {}};
  const int n = params.n();
  const double h = 2.0 * *S / N;
  const double cell = std::pow(h, n);
  std::vector<Point> nodes;
  std::vector<double> weights;
  const int nz = n == 3 ? N : 1;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int l = 0; l < nz; ++l) {
        const Point x{-*S + (i + 0.5) * h, -*S + (j + 0.5) * h, n == 3 ? -*S + (l + 0.5) * h : 0.0};
        const double w = psi(x);
        if (w == 0.0) continue;
        nodes.push_back(x);
        weights.push_back(w * cell);
      }
  for (double k : radii_k) {
    const PoissonExtension ext = poisson_extend(u, k, params);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += ext(nodes[i]) * weights[i];
    trace.pairing_values.push_back(sum);
  }
  return trace;
}

Report check_I1_vanishes(const ScalarField& u, const ScalarField& phi, std::span<const double> k_list, double r,
                         const FracParams& params, LiouvilleTrace* trace) {
  if (k_list.empty()) throw PreconditionError("check_I1_vanishes: empty k list");
  require_increasing(k_list, "k_list");
  if (!(r > 0.0) || !(r < k_list.front())) throw PreconditionError("check_I1_vanishes: need 0 < r < min k");
  const auto& um = u.meta();
  if (!(um.bounded || um.is_constant || um.decay_exponent))
    throw PreconditionError("check_I1_vanishes: u needs boundedness or decay metadata for the tail integral");

  Report report("I1_vanishes", params);
  const int n = params.n();
  const double alpha = params.alpha();
  quad::Budget budget(200'000'000);

  // int_{B_r} |phi|.
  const bool axisym = phi.meta().is_axisymmetric;
  auto abs_phi = [&](const Point& x) { return std::abs(phi(x)); };
  const double phi_mass =
      quad::integrate([&](double s) { return sphere_integral(n, abs_phi, s, 1e-14, budget, axisym) * std::pow(s, n - 1); },
                      0.0, r, {1e-14, 1e-9}, budget, 4)
          .value;

  // int_{|y|>k} |u(y)| / (1 + |y|)^{n+alpha} dy with |y| = k v^{-1/alpha}.
  auto abs_u = [&](const Point& y) { return std::abs(u(y)); };
  auto tail = [&](double k) {
    return quad::integrate(
               [&](double v) {
                 if (v <= 0.0) return 0.0;
                 const double s = k * std::pow(v, -1.0 / alpha);
                 const double a = um.is_constant ? std::abs(*um.far_limit) * params.sphere_area()
                                                 : sphere_integral(n, abs_u, s, 1e-14, budget, um.is_axisymmetric);
                 return a * std::pow(s, n - 1) * std::pow(1.0 + s, -n - alpha) * s / (alpha * v);
               },
               0.0, 1.0, {1e-16, 1e-10}, budget, 4)
        .value;
  };

  std::vector<double> majorants;
  for (double k : k_list) {
    const double mj = phi_mass * tail(k);
    majorants.push_back(mj);
    if (trace) trace->i1_values.push_back({k, r, mj});
  }
  const bool all_zero = std::all_of(majorants.begin(), majorants.end(), [](double v) { return v == 0.0; });
  if (all_zero) {
    report.add_upper_bound("majorants_zero", "max_majorant", 0.0, 0.0);
    report.add_note("u vanishes: every I1 majorant is 0");
    return report;
  }
  for (std::size_t i = 1; i < majorants.size(); ++i)
    report.add_lower_bound("decreasing_k=" + std::to_string(k_list[i]), "previous_minus_current",
                           majorants[i - 1] - majorants[i], std::numeric_limits<double>::min());
  if (majorants.size() >= 2) {
    const double slope = -loglog_slope(k_list, majorants);
    report.add_exponent("I1_majorant_k_exponent", slope, alpha);
    report.add_upper_bound("k_exponent", "relative_error_vs_alpha", std::abs(slope - alpha) / alpha, 0.05);
  }
  return report;
}

ExtensionDensity::ExtensionDensity(const PoissonExtension& ext, const PvQuadConfig& cfg, const KernelConstants& k)
    : k_(ext.radius()), n_(ext.params().n()) {
  const auto& base = ext.base();
  if (!(base.meta().is_radial && base.has_profile()))
    throw PreconditionError("ExtensionDensity: the base field must be radial");
  const FracParams& params = ext.params();
  const double alpha = params.alpha();
  const ScalarField field = ext.field();
  // The extension table limits accuracy to ~1e-6 relative; tighter PV tolerances only cost time
  // (n = 3, alpha = 0.5: 37 s per node at 1e-8).
  PvQuadConfig local = cfg;
  local.tolerance = std::max(cfg.tolerance, 1e-6);
  auto fk = [&](double s) { return fraclap_pv(field, {s, 0, 0}, params, local, k).value; };

  interior_ = std::make_shared<const RadialTable>(
      RadialTable::build(AxisMap::towards_edge(k_, 0.0, 0.98 * k_, 2.0 / alpha), 65, fk));
  exterior_ = std::make_shared<const RadialTable>(
      RadialTable::build(AxisMap::away_from_edge(1.02 * k_, 8.0 * k_, 1.0), 17, fk));

  // Boundary layer f_k ~ A (k - s)^{-gamma} fitted on the three nearest shells.
  const double shells[] = {0.96 * k_, 0.97 * k_, 0.98 * k_};
  std::vector<double> gaps, values;
  for (double s : shells) {
    gaps.push_back(k_ - s);
    values.push_back(fk(s));
  }
  if (std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; })) {
    gamma_ = -loglog_slope(gaps, values);
    if (!(gamma_ < 1.0)) throw QuadratureError("ExtensionDensity: boundary exponent >= 1 is not integrable");
    double log_a = 0.0;
    for (std::size_t i = 0; i < 3; ++i) log_a += std::log(values[i]) + gamma_ * std::log(gaps[i]);
    amplitude_ = std::exp(log_a / 3.0);
  } else if (std::any_of(values.begin(), values.end(), [](double v) { return v != 0.0; })) {
    throw QuadratureError("ExtensionDensity: boundary-layer values change sign; no power-law model");
  }
}

double ExtensionDensity::operator()(double s) const {
  if (s < 0.0) s = -s;
  if (s <= 0.98 * k_) return (*interior_)(s);
  if (s < k_) return amplitude_ * std::pow(k_ - s, -gamma_);
  if (s < 1.02 * k_ || s > 8.0 * k_) return 0.0;
  return (*exterior_)(s);
}

double ExtensionDensity::integrate_interior(double a, const std::function<double(double)>& g, double tol) const {
  quad::Budget budget(100'000'000);
  const double edge = 0.98 * k_;
  double total = 0.0;
  a = std::max(a, 0.0);
  if (a < edge)
    total += quad::integrate([&](double s) { return (*interior_)(s) * std::pow(s, n_ - 1) * g(s); }, a, edge,
                             {tol, tol}, budget, 4)
                 .value;
  if (amplitude_ != 0.0 && a < k_) {
    // k - s = w^{1/(1-gamma)} turns A (k - s)^{-gamma} ds into A / (1 - gamma) dw.
    const double e = 1.0 / (1.0 - gamma_);
    const double lo = std::max(a, edge);
    total += quad::integrate(
                 [&](double w) {
                   const double s = k_ - std::pow(w, e);
                   return amplitude_ * e * std::pow(s, n_ - 1) * g(s);
                 },
                 0.0, std::pow(k_ - lo, 1.0 - gamma_), {tol, tol}, budget, 2)
                 .value;
  }
  return total;
}

double ExtensionDensity::integrate_exterior(double a, const std::function<double(double)>& g, double tol) const {
  quad::Budget budget(100'000'000);
  const double lo = std::max(a, 1.02 * k_);
  const double hi = 8.0 * k_;
  if (!(lo < hi)) return 0.0;
  return quad::integrate([&](double s) { return (*exterior_)(s) * std::pow(s, n_ - 1) * g(s); }, lo, hi, {tol, tol},
                         budget, 4)
      .value;
}

Report check_I2_bound(const ScalarField& u, double k, std::span<const double> r_list, const ScalarField& phi,
                      const FracParams& params, const PvQuadConfig& cfg, const KernelConstants& kc,
                      LiouvilleTrace* trace) {
  if (r_list.empty()) throw PreconditionError("check_I2_bound: empty r list");
  require_increasing(r_list, "r_list");
  Report report("I2_bound", params);
  if (is_zero_constant(u)) {
    for (double r : r_list) {
      report.add_upper_bound("I2_zero_r=" + std::to_string(r), "abs_I2", 0.0, 0.0);
      if (trace) {
        trace->i2_bounds.push_back({r, 0.0, 0.0});
        trace->i2_absolute.push_back({r, 0.0});
      }
    }
    return report;
  }
  const int n = params.n();
  const double alpha = params.alpha();
  const PoissonExtension ext = poisson_extend(u, k, params);
  const ExtensionDensity density(ext, cfg, kc);
  const double u0 = u(Point{0, 0, 0});

  // c_phi = sup |phi(x)| |x|^{n-alpha+1} over |x| >= min r.
  double c_phi = 0.0;
  const double r0 = r_list.front();
  for (int i = 0; i <= 32; ++i) {
    const double s = r0 * std::pow(64.0, i / 32.0);
    for (int j = 0; j < 24; ++j) {
      const double th = std::numbers::pi * j / 23.0;
      const Point x{s * std::cos(th), s * std::sin(th), 0.0};
      c_phi = std::max(c_phi, std::abs(phi(x)) * std::pow(s, n - alpha + 1.0));
    }
  }
  report.add_note("fitted c_phi = " + std::to_string(c_phi));

  quad::Budget budget(200'000'000);
  const bool axisym = phi.meta().is_axisymmetric;
  auto signed_mean = [&](double s) { return sphere_integral(n, phi, s, 1e-15, budget, axisym); };
  auto abs_phi = [&](const Point& x) { return std::abs(phi(x)); };
  auto abs_mean = [&](double s) { return sphere_integral(n, abs_phi, s, 1e-15, budget, axisym); };

  std::vector<double> measured, absolute;
  for (double r : r_list) {
    const double i2 = density.integrate_interior(r, signed_mean, 1e-12) + density.integrate_exterior(r, signed_mean, 1e-14);
    const double j = density.integrate_interior(r, abs_mean, 1e-12) + density.integrate_exterior(r, abs_mean, 1e-14);
    const double bound = c_phi * u0 / (kc.c_riesz * r);
    measured.push_back(std::abs(i2));
    absolute.push_back(j);
    if (trace) {
      trace->i2_bounds.push_back({r, bound, std::abs(i2)});
      trace->i2_absolute.push_back({r, j});
    }
    const std::string tag = "_r=" + std::to_string(r);
    report.add_upper_bound("I2_within_bound" + tag, "abs_I2", std::abs(i2), bound);
    report.add_upper_bound("J_within_bound" + tag, "J", j, bound);
    report.add_upper_bound("r_times_I2" + tag, "r_abs_I2", r * std::abs(i2), c_phi * u0 / kc.c_riesz);
    if (r > k) report.add_upper_bound("I2_far_tail" + tag, "abs_I2", std::abs(i2), 1e-3);
  }
  for (std::size_t i = 1; i < absolute.size(); ++i)
    report.add_lower_bound("J_decreasing_r=" + std::to_string(r_list[i]), "previous_minus_current",
                           absolute[i - 1] - absolute[i], 0.0);
  return report;
}

Report verify_riesz_inversion(const ScalarField& u, double k, std::span<const Point> test_points,
                              const FracParams& params, const PvQuadConfig& cfg, const KernelConstants& kc) {
  for (const auto& x : test_points)
    if (!(norm(x) >= 1.1 * k)) throw PreconditionError("verify_riesz_inversion: test points need |x| >= 1.1 k");
  Report report("riesz_inversion", params);
  if (is_zero_constant(u)) {
    for (std::size_t i = 0; i < test_points.size(); ++i)
      report.add_upper_bound("point_" + std::to_string(i), "abs_difference", 0.0, 0.0);
    return report;
  }
  const int n = params.n();
  const double alpha = params.alpha();
  const PoissonExtension ext = poisson_extend(u, k, params);
  const ExtensionDensity density(ext, cfg, kc);
  quad::Budget budget(200'000'000);

  for (std::size_t i = 0; i < test_points.size(); ++i) {
    const Point& x = test_points[i];
    const double rx = norm(x);
    // int_S |x - s w|^{alpha-n} dw depends on s and |x| only: one angle, weight 2 (n=2) or 2 pi sin (n=3).
    auto kernel_mean = [&](double s) {
      return quad::integrate(
                 [&](double th) {
                   const double d2 = rx * rx + s * s - 2.0 * rx * s * std::cos(th);
                   const double w = n == 2 ? 2.0 : 2.0 * std::numbers::pi * std::sin(th);
                   return w * std::pow(d2, 0.5 * (alpha - n));
                 },
                 0.0, std::numbers::pi, {1e-15, 1e-11}, budget, 4)
          .value;
    };
    // f_k is supported in the closed ball (alpha-harmonic outside), so only the interior part enters.
    const double lhs = kc.c_riesz * density.integrate_interior(0.0, kernel_mean, 1e-12);
    const double rhs = ext(x);
    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
    report.add_upper_bound("inversion_|x|=" + std::to_string(rx), "relative_error", rel, 0.05);
  }
  return report;
}

}  // namespace fraclap
