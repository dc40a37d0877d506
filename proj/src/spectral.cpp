#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/simd.hpp"
#include "internal.hpp"

namespace fraclap {

namespace {

using cplx = std::complex<double>;

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void fft_in_place(std::vector<cplx>& data, int n, int N, int sign) {
  std::vector<int> dims(static_cast<std::size_t>(n), N);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(n, dims.data(), p, p, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

int signed_index(int k, int N) { return k < N / 2 ? k : k - N; }

void check_guard(const GridField& g) {
  const int n = g.dimension();
  const double edge = 0.9 * g.half_width();
  const auto& s = g.samples();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Point x = g.node(i);
    double m = 0.0;
    for (int a = 0; a < n; ++a) m = std::max(m, std::abs(x[a]));
    if (m >= edge && std::abs(s[i]) >= 1e-10)
      throw PreconditionError("fraclap_spectral: samples do not vanish near the box boundary (periodization guard)");
  }
}

/// DFT coefficients of (-Delta)^{alpha/2} g, normalised so the inverse transform
/// needs no further scaling.
std::vector<cplx> symbol_coefficients(const GridField& g, double alpha, SpectralOptions options) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw PreconditionError("alpha must lie in (0,2)");
  if (options.enforce_decay_guard) check_guard(g);
  const int n = g.dimension();
  const int N = g.points_per_axis();
  const double L = g.half_width();
  std::vector<cplx> data(g.samples().begin(), g.samples().end());
  fft_in_place(data, n, N, FFTW_FORWARD);

  std::vector<double> xi2(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double xi = std::numbers::pi * signed_index(k, N) / L;
    xi2[static_cast<std::size_t>(k)] = xi * xi;
  }
  const double norm_factor = 1.0 / static_cast<double>(data.size());
  std::vector<double> factors(data.size());
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    std::size_t rem = flat;
    double s = 0.0;
    for (int a = n - 1; a >= 0; --a) {
      s += xi2[rem % static_cast<std::size_t>(N)];
      rem /= static_cast<std::size_t>(N);
    }
    factors[flat] = s == 0.0 ? 0.0 : std::pow(s, 0.5 * alpha) * norm_factor;
  }
  simd::scale_complex(data, factors);
  return data;
}

std::vector<cplx> axis_phases(int N, double L, double coord) {
  std::vector<cplx> e(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double xi = std::numbers::pi * signed_index(k, N) / L;
    e[static_cast<std::size_t>(k)] = std::polar(1.0, xi * (coord + L));
  }
  return e;
}

double evaluate_series(const std::vector<cplx>& coeffs, int n, int N, double L, const Point& x) {
  const auto e_last = axis_phases(N, L, x[n - 1]);
  const std::size_t row = static_cast<std::size_t>(N);
  if (n == 2) {
    const auto e0 = axis_phases(N, L, x[0]);
    cplx total = 0.0;
    for (int k0 = 0; k0 < N; ++k0) {
      const std::span<const cplx> r(coeffs.data() + static_cast<std::size_t>(k0) * row, row);
      total += e0[static_cast<std::size_t>(k0)] * simd::complex_dot(r, e_last);
    }
    return total.real();
  }
  const auto e0 = axis_phases(N, L, x[0]);
  const auto e1 = axis_phases(N, L, x[1]);
  std::vector<cplx> partial(row);
  cplx total = 0.0;
  for (int k0 = 0; k0 < N; ++k0) {
    for (int k1 = 0; k1 < N; ++k1) {
      const std::span<const cplx> r(coeffs.data() + (static_cast<std::size_t>(k0) * row + k1) * row, row);
      partial[static_cast<std::size_t>(k1)] = simd::complex_dot(r, e_last);
    }
    total += e0[static_cast<std::size_t>(k0)] * simd::complex_dot(partial, e1);
  }
  return total.real();
}

}  // namespace

GridField fraclap_spectral(const GridField& g, double alpha, SpectralOptions options) {
  auto data = symbol_coefficients(g, alpha, options);
  fft_in_place(data, g.dimension(), g.points_per_axis(), FFTW_BACKWARD);
  std::vector<double> out(data.size());
  std::transform(data.begin(), data.end(), out.begin(), [](const cplx& c) { return c.real(); });
  return GridField(g.dimension(), g.half_width(), g.points_per_axis(), std::move(out));
}

std::vector<double> fraclap_spectral_at(const GridField& g, double alpha, std::span<const Point> points,
                                        SpectralOptions options) {
  const auto coeffs = symbol_coefficients(g, alpha, options);
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(evaluate_series(coeffs, g.dimension(), g.points_per_axis(), g.half_width(), x));
  return out;
}

namespace {

double smooth_step(double t) {
  // 0 for t <= 0, 1 for t >= 1, C-infinity in between.
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

/// Sum over lattice vectors m with max|m_i| > shells of |2 L m|^{-n-alpha}, as the
/// integral over the complement of the cube of half-width (2 shells + 1) L.
double continuum_image_tail(int n, double alpha, double L, int shells) {
  const double H = (2.0 * shells + 1.0) * L;
  quad::Budget budget(10'000'000);
  auto g = [&](const Point& w) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(w[i]));
    return std::pow(m, alpha);
  };
  const auto s = quad::integrate_sphere(n, g, {1e-14, 1e-12}, budget);
  return std::pow(H, -alpha) / alpha * s.value / std::pow(2.0 * L, n);
}

}  // namespace

std::vector<EvalResult> fraclap_spectral_field(const ScalarField& f, const FracParams& params,
                                               const KernelConstants& k, std::span<const Point> points,
                                               const WindowedSpectralConfig& cfg) {
  if (!(cfg.inner_fraction > 0.0 && cfg.inner_fraction < cfg.outer_fraction && cfg.outer_fraction < 0.9))
    throw PreconditionError("fraclap_spectral_field: need 0 < inner_fraction < outer_fraction < 0.9");
  if (cfg.image_shells < 1) throw PreconditionError("fraclap_spectral_field: image_shells must be >= 1");
  const int n = params.n();
  const double alpha = params.alpha();
  const double L = cfg.half_width;
  const double a = cfg.inner_fraction * L;
  const double b = cfg.outer_fraction * L;
  for (const auto& x : points)
    if (norm(x) > a - 0.5) throw PreconditionError("fraclap_spectral_field: point outside the window interior");
  if (!f.meta().is_constant && !f.meta().compactly_supported() && !f.meta().decay_exponent)
    throw PreconditionError("fraclap_spectral_field: field needs decay metadata or compact support");

  auto chi = [a, b](double r) { return smooth_step((b - r) / (b - a)); };
  const ScalarField windowed("windowed", [f, chi](const Point& x) { return f(x) * chi(norm(x)); }, FieldMeta{});
  const GridField grid = GridField::sample(windowed, n, L, cfg.points_per_axis);
  const auto periodic = fraclap_spectral_at(grid, alpha, points);

  // Regular lattice-image integral on a coarser sub-lattice of the same grid.
  const double h = grid.spacing();
  const int N = grid.points_per_axis();
  const int stride = std::max(1, static_cast<int>(std::floor(0.4 / h)));
  const double hs = h * stride;
  std::vector<Point> nodes;
  std::vector<double> weights;
  double mass = 0.0;
  {
    const auto& s = grid.samples();
    double peak = 0.0;
    for (double v : s) peak = std::max(peak, std::abs(v));
    const double cell = std::pow(hs, n);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
      std::size_t rem = flat;
      bool on = true;
      for (int ax = n - 1; ax >= 0; --ax) {
        if ((rem % static_cast<std::size_t>(N)) % static_cast<std::size_t>(stride) != 0) on = false;
        rem /= static_cast<std::size_t>(N);
      }
      if (!on) continue;
      mass += s[flat] * cell;
      if (std::abs(s[flat]) <= 1e-17 * peak) continue;
      nodes.push_back(grid.node(flat));
      weights.push_back(s[flat] * cell);
    }
  }
  std::vector<Point> images;
  const int m = cfg.image_shells;
  for (int i = -m; i <= m; ++i)
    for (int j = -m; j <= m; ++j)
      for (int l = (n == 3 ? -m : 0); l <= (n == 3 ? m : 0); ++l)
        if (i != 0 || j != 0 || l != 0) images.push_back({2.0 * L * i, 2.0 * L * j, 2.0 * L * l});
  const double tail_kernel = continuum_image_tail(n, alpha, L, m);
  const double half_power = -0.5 * (n + alpha);

  std::vector<EvalResult> out;
  out.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Point& x = points[p];
    double image = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const Point y = x - nodes[q];
      double kern = 0.0;
      for (const auto& im : images) {
        const Point w = y + im;
        kern += std::pow(dot(w, w), half_power);
      }
      image += weights[q] * kern;
    }
    image += tail_kernel * mass;

    // Far part: f (1 - chi) over |z| >= a, radius r = b v^{-1/alpha} beyond b.
    quad::Budget budget(50'000'000);
    const double scale = std::max(detail::field_scale(f, x), 1e-300);
    const quad::Tolerance tol{cfg.tolerance * scale, cfg.tolerance};
    const quad::Frame frame = quad::frame_from_axis(n, norm(x) > 0 ? x : Point{1, 0, 0});
    auto shell = [&](double r) {
      auto g = [&](const Point& w) {
        const Point z = r * w;
        const Point d = x - z;
        return f(z) * std::pow(dot(d, d), half_power);
      };
      return quad::integrate_sphere(n, g, frame, {tol.abs * 1e-3, tol.rel}, budget).value * std::pow(r, n - 1);
    };
    const auto near = quad::integrate([&](double r) { return shell(r) * (1.0 - chi(r)); }, a, b, tol, budget, 4);
    const auto far = quad::integrate(
        [&](double v) {
          const double r = b * std::pow(v, -1.0 / alpha);
          return shell(r) * r / (alpha * v);
        },
        0.0, 1.0, tol, budget, 4);

    EvalResult e;
    e.value = periodic[p] + k.C_pv * (image - near.value - far.value);
    e.error_estimate = k.C_pv * (near.error + far.error) + std::abs(k.C_pv * tail_kernel * mass) * 0.05;
    out.push_back(e);
  }
  return out;
}

}  // namespace fraclap
