#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fraclap/errors.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/quadrature.hpp"
#include "internal.hpp"

namespace fraclap {

void PvQuadConfig::validate() const {
  if (!(inner_radius > 0.0) || !(outer_radius > inner_radius))
    throw PreconditionError("PvQuadConfig: need 0 < inner_radius < outer_radius");
  if (!(tolerance > 0.0)) throw PreconditionError("PvQuadConfig: tolerance must be positive");
  if (max_evaluations < 10'000) throw PreconditionError("PvQuadConfig: max_evaluations must be at least 1e4");
}

namespace detail {

namespace {

void require_tail_model(const ScalarField& f) {
  const auto& m = f.meta();
  if (m.is_constant || m.compactly_supported() || m.decay_exponent) return;
  throw PreconditionError("fraclap_pv: field '" + f.name() +
                          "' has neither decay metadata nor compact support; the tail cannot be modelled");
}

}  // namespace

EvalResult pv_integral(const ScalarField& f, const Point& x, const FracParams& params, const PvQuadConfig& cfg,
                       double C_pv) {
  cfg.validate();
  require_tail_model(f);
  const auto& meta = f.meta();
  if (meta.is_constant) return {};

  const int n = params.n();
  const double alpha = params.alpha();
  const double sigma = params.sphere_area();
  const double P = cfg.outer_radius;
  const double tol = cfg.tolerance;
  quad::Budget budget(cfg.max_evaluations);

  EvalResult out;
  const double fx = f(x);
  const double scale = std::max(field_scale(f, x), std::numeric_limits<double>::min());
  const Point axis = default_axis(n, x);

  // Inner radius: stay clear of declared kinks.
  double delta = cfg.inner_radius;
  double kink_distance = std::numeric_limits<double>::infinity();
  for (const auto& b : meta.kinks) kink_distance = std::min(kink_distance, std::abs(distance(x, b.center) - b.radius));
  if (kink_distance < cfg.inner_radius) {
    out.flagged = true;
    delta = std::max(0.5 * kink_distance, 1e-3 * cfg.inner_radius);
  } else {
    delta = std::min(delta, 0.5 * kink_distance);
  }

  // (i) |z| < delta, second difference over a hemisphere, rho^{2-alpha} = delta^{2-alpha} s.
  // Below rho_c the second difference is dominated by roundoff; use its even Taylor model there.
  const double rho_c = 1e-2 * delta;
  const double noise = 50.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(fx), scale) * sigma;
  const quad::Frame hemi = quad::frame_from_axis(n, axis);
  auto second_difference = [&](double rho) {
    auto g = [&](const Point& w) { return 2.0 * fx - f(x + rho * w) - f(x - rho * w); };
    const quad::Tolerance in{0.1 * tol * scale * (2.0 - alpha) * rho * rho / std::pow(delta, 2.0 - alpha) + noise,
                             0.1 * tol};
    return quad::integrate_cap(n, g, hemi, 0.5 * std::numbers::pi, in, budget);
  };
  double ball_err_inner = 0.0;
  const double e = 1.0 / (2.0 - alpha);
  const double s1 = second_difference(rho_c).value;
  const double s2 = second_difference(2.0 * rho_c).value;
  const double quartic = (s2 - 4.0 * s1) / (12.0 * std::pow(rho_c, 4));
  const double quadratic = (s1 - quartic * std::pow(rho_c, 4)) / (rho_c * rho_c);
  const double small_s = std::pow(rho_c / delta, 2.0 - alpha);
  auto ball = [&](double s) {
    const double rho = delta * std::pow(s, e);
    if (s <= small_s) {
      // S(rho) / rho^2 from the model; the substitution's weight is delta^{2-alpha} / ((2-alpha) rho^2).
      return (quadratic + quartic * rho * rho) * std::pow(delta, 2.0 - alpha) / (2.0 - alpha);
    }
    const auto r = second_difference(rho);
    const double w = std::pow(delta, -alpha) * e * std::pow(s, -2.0 * e);
    ball_err_inner += r.error * w;
    return r.value * w;
  };
  const quad::Result ball_part = quad::integrate(ball, 0.0, 1.0, {0.3 * tol * scale, tol}, budget, 2);

  // (ii) + (iii): everything beyond delta.
  quad::Result shell_part;
  double tail_value = 0.0;
  double tail_error = 0.0;
  const double log_span = std::max(1.0, std::log(P / delta));
  auto inner_tol = [&](double rho) {
    return quad::Tolerance{0.1 * tol * scale * std::pow(rho, alpha) / log_span + noise, 0.1 * tol};
  };

  if (meta.compactly_supported() && pairwise_disjoint(meta.support)) {
    // f(x) part in closed form over rho > delta; f(z) part only where the support is.
    tail_value = fx * sigma * std::pow(delta, -alpha) / alpha;
    for (const auto& b : meta.support) {
      const double d = distance(x, b.center);
      const double lo = std::max(delta, d - b.radius);
      const double hi = d + b.radius;
      if (!(hi > lo)) continue;
      std::vector<double> cuts{b.radius - d};
      for (const auto& k : meta.kinks) {
        const double dk = distance(x, k.center);
        cuts.push_back(std::abs(dk - k.radius));
        cuts.push_back(dk + k.radius);
      }
      const Ball one[] = {b};
      auto radial = [&](double ell) {
        const double rho = std::exp(ell);
        auto g = [&](const Point& w) { return f(x + rho * w); };
        const auto r = support_caps(n, g, x, rho, one, axis, inner_tol(rho), budget);
        return r.value * std::pow(rho, -alpha);
      };
      const auto bp = breakpoints(lo, hi, cuts);
      for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const auto r = quad::integrate(radial, std::log(bp[i]), std::log(bp[i + 1]), {0.3 * tol * scale, tol},
                                       budget, 2);
        shell_part.value -= r.value;
        shell_part.error += r.error;
      }
    }
  } else {
    const double L = meta.far_limit.value_or(0.0);
    std::vector<double> cuts{norm(x)};
    std::vector<Ball> split = meta.kinks;
    split.insert(split.end(), meta.support.begin(), meta.support.end());
    for (const auto& b : split) {
      const double d = distance(x, b.center);
      cuts.push_back(std::abs(d - b.radius));
      cuts.push_back(d + b.radius);
    }
    auto radial = [&](double ell) {
      const double rho = std::exp(ell);
      auto g = [&](const Point& w) { return fx - f(x + rho * w); };
      const auto r = sphere_split(n, g, x, rho, split, axis, inner_tol(rho), budget);
      return r.value * std::pow(rho, -alpha);
    };
    const auto bp = breakpoints(delta, P, cuts);
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      const double a = std::log(bp[i]), b = std::log(bp[i + 1]);
      const int panels = std::max(1, static_cast<int>(std::ceil(b - a)));
      shell_part = shell_part + quad::integrate(radial, a, b, {0.3 * tol * scale, tol}, budget, panels);
    }

    // Tail: f(z) ~ L + A |z|^-beta beyond P.
    tail_value = (fx - L) * sigma * std::pow(P, -alpha) / alpha;
    const double beta = meta.decay_exponent.value_or(std::numeric_limits<double>::infinity());
    if (std::isfinite(beta)) {
      auto g = [&](const Point& w) { return f(x + P * w) - L; };
      const auto a_p = sphere_split(n, g, x, P, split, axis, {0.1 * tol * scale, 1e-6}, budget);
      const double model = a_p.value * std::pow(P, -alpha) / (alpha + beta);
      tail_value -= model;
      // |x + z| vs |z| and higher-order corrections of the power law.
      tail_error = std::abs(model) * (norm(x) + 1.0) * (n + alpha + beta) / P + a_p.error * std::pow(P, -alpha);
    }
  }

  const double total = ball_part.value + shell_part.value + tail_value;
  out.value = C_pv * total;
  out.error_estimate = C_pv * (ball_part.error + ball_err_inner / 15.0 + shell_part.error + tail_error);
  if (out.flagged) out.error_estimate += C_pv * std::abs(ball_part.value);
  return out;
}

}  // namespace detail

EvalResult fraclap_pv(const ScalarField& f, const Point& x, const FracParams& params, const PvQuadConfig& cfg,
                      const KernelConstants& k) {
  if (!k.validated) throw PreconditionError("fraclap_pv: kernel constants have not been validated");
  return detail::pv_integral(f, x, params, cfg, k.C_pv);
}

}  // namespace fraclap
