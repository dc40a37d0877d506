#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/tables.hpp"
#include "internal.hpp"

namespace fraclap {

namespace {

void check_convergent(const ScalarField& f, const FracParams& params) {
  const auto& m = f.meta();
  if (m.compactly_supported()) return;
  if (m.is_constant && m.far_limit && *m.far_limit == 0.0) return;
  const bool decays = m.decay_exponent && *m.decay_exponent > params.alpha() && m.far_limit.value_or(0.0) == 0.0;
  if (!decays)
    throw DivergenceError("riesz_potential: source '" + f.name() +
                          "' is neither compactly supported nor decaying faster than |x|^-alpha");
}

}  // namespace

EvalResult riesz_potential(const ScalarField& f, const Point& x, const FracParams& params, const KernelConstants& k,
                           const RieszConfig& cfg) {
  if (!k.validated) throw PreconditionError("riesz_potential: kernel constants have not been validated");
  check_convergent(f, params);
  const auto& meta = f.meta();
  if (meta.is_constant) return {};

  const int n = params.n();
  const double alpha = params.alpha();
  quad::Budget budget(cfg.max_evaluations);
  const double scale = std::max(detail::field_scale(f, x), std::numeric_limits<double>::min());
  const Point axis = detail::default_axis(n, x);
  const double tol = cfg.tolerance;

  // c int f(y) |x-y|^{alpha-n} dy = c / alpha int du int_S f(x + u^{1/alpha} w) dw, u = rho^alpha.
  quad::Result total;
  std::vector<double> cuts;
  for (const auto& b : meta.kinks) {
    const double d = distance(x, b.center);
    cuts.push_back(std::abs(d - b.radius));
    cuts.push_back(d + b.radius);
  }

  if (meta.compactly_supported() && detail::pairwise_disjoint(meta.support)) {
    for (const auto& b : meta.support) {
      const double d = distance(x, b.center);
      const double lo = std::max(0.0, d - b.radius);
      const double hi = d + b.radius;
      std::vector<double> c = cuts;
      c.push_back(b.radius - d);
      const Ball one[] = {b};
      auto radial = [&](double u) {
        const double rho = std::pow(u, 1.0 / alpha);
        auto g = [&](const Point& w) { return f(x + rho * w); };
        return detail::support_caps(n, g, x, rho, one, axis, {0.1 * tol * scale, 0.1 * tol}, budget).value / alpha;
      };
      auto bp = detail::breakpoints(lo, hi, c);
      for (std::size_t i = 0; i + 1 < bp.size(); ++i)
        total = total + quad::integrate(radial, std::pow(bp[i], alpha), std::pow(bp[i + 1], alpha),
                                        {tol * scale, tol}, budget, 2);
    }
  } else {
    std::vector<Ball> split = meta.kinks;
    split.insert(split.end(), meta.support.begin(), meta.support.end());
    cuts.insert(cuts.end(), {norm(x), 1.0, 8.0});
    for (const auto& b : meta.support) {
      const double d = distance(x, b.center);
      cuts.push_back(std::abs(d - b.radius));
      cuts.push_back(d + b.radius);
    }
    auto sphere = [&](double rho) {
      auto g = [&](const Point& w) { return f(x + rho * w); };
      return detail::sphere_split(n, g, x, rho, split, axis, {0.1 * tol * scale, 0.1 * tol}, budget).value;
    };
    double far_edge = 0.0;
    for (double c : cuts) far_edge = std::max(far_edge, c);
    const double P = std::max(cfg.outer_radius, 2.0 * far_edge);
    auto bp = detail::breakpoints(0.0, P, cuts);
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      if (bp[i] > 0.0 && bp[i + 1] / bp[i] > 4.0) {
        // Long interval in log radius: rho^{alpha-1} d rho = rho^alpha d(log rho).
        const double la = std::log(bp[i]), lb = std::log(bp[i + 1]);
        auto radial = [&](double ell) {
          const double rho = std::exp(ell);
          return sphere(rho) * std::pow(rho, alpha);
        };
        total = total + quad::integrate(radial, la, lb, {tol * scale, tol}, budget,
                                        std::max(1, static_cast<int>(std::ceil(lb - la))));
      } else {
        auto radial = [&](double u) { return sphere(std::pow(u, 1.0 / alpha)) / alpha; };
        total = total + quad::integrate(radial, std::pow(bp[i], alpha), std::pow(bp[i + 1], alpha),
                                        {tol * scale, tol}, budget, 2);
      }
    }
    // Tail beyond P: f ~ A |y|^-beta; int_P^inf rho^{alpha-1-beta} drho = P^{alpha-beta} / (beta-alpha).
    const double beta = meta.decay_exponent.value_or(std::numeric_limits<double>::infinity());
    if (std::isfinite(beta)) {
      const double a_p = sphere(P);
      total.value += a_p * std::pow(P, alpha) / (beta - alpha);
      total.error += std::abs(a_p * std::pow(P, alpha) / (beta - alpha)) * (norm(x) + 1.0) * (n + beta) / P;
    }
  }
  return {k.c_riesz * total.value, k.c_riesz * total.error, false};
}

namespace {

/// Tabulated radial Riesz potential of a radial field, with a power-law continuation.
std::function<double(double)> radial_riesz_profile(const ScalarField& g, const FracParams& params,
                                                   const KernelConstants& k, const RieszConfig& cfg) {
  check_convergent(g, params);
  if (g.meta().is_constant) return [](double) { return 0.0; };
  const double beta = params.n() - params.alpha() + (g.meta().moment_zero ? 2.0 : 0.0);
  const double scale = std::max(1.0, g.meta().support_radius().value_or(1.0));
  const double r_max = 64.0 * scale;
  auto table = std::make_shared<const RadialTable>(RadialTable::build(
      AxisMap::log_offset(r_max, scale), 161,
      [&](double r) { return riesz_potential(g, {r, 0, 0}, params, k, cfg).value; }));
  return [table, r_max, beta](double r) {
    if (r <= r_max) return (*table)(r);
    return table->values().back() * std::pow(r_max / r, beta);
  };
}

}  // namespace

ScalarField riesz_potential_field(const ScalarField& f, const FracParams& params, const KernelConstants& k,
                                  const RieszConfig& cfg) {
  check_convergent(f, params);
  const auto& m = f.meta();
  const int n = params.n();
  const double alpha = params.alpha();
  double beta = n - alpha;
  if (m.moment_zero) beta += m.is_radial ? 2.0 : 1.0;

  FieldMeta meta;
  meta.decay_exponent = beta;
  meta.far_limit = 0.0;
  meta.bounded = true;
  meta.is_radial = m.is_radial;
  meta.is_axisymmetric = m.is_axisymmetric || m.is_radial;
  const std::string name = "riesz(" + f.name() + ")";
  if (m.is_constant) return ScalarField(name, [](const Point&) { return 0.0; }, meta, [](double) { return 0.0; });

  const auto atoms = f.radial_atoms();
  if (!atoms.empty()) {
    // Sum of translated radial potentials, each distinct radial field tabulated once.
    using Profile = std::shared_ptr<const std::function<double(double)>>;
    std::vector<std::pair<const ScalarField*, Profile>> tables;
    std::vector<std::tuple<double, Point, Profile>> terms;
    for (const auto& a : atoms) {
      Profile prof;
      for (const auto& [key, t] : tables)
        if (key == a.radial.get()) prof = t;
      if (!prof) {
        prof = std::make_shared<const std::function<double(double)>>(radial_riesz_profile(*a.radial, params, k, cfg));
        tables.emplace_back(a.radial.get(), prof);
      }
      terms.emplace_back(a.weight, a.center, prof);
    }
    auto eval = [terms](const Point& x) {
      double s = 0.0;
      for (const auto& [w, c, prof] : terms) s += w * (*prof)(distance(x, c));
      return s;
    };
    ScalarField::Profile profile;
    if (m.is_radial) profile = [eval](double r) { return eval(Point{r, 0, 0}); };
    return ScalarField(name, eval, meta, profile);
  }

  if (m.is_axisymmetric) {
    const double scale = std::max(1.0, m.support_radius().value_or(1.0));
    const double r_max = 64.0 * scale;
    auto table = std::make_shared<const AxisymTable>(
        AxisymTable::build(AxisMap::log_offset(r_max, scale), 97, 49, [&](double r, double th) {
          return riesz_potential(f, {r * std::cos(th), r * std::sin(th), 0}, params, k, cfg).value;
        }));
    auto eval = [table, r_max, beta](const Point& x) {
      const double r = norm(x);
      const double th = axis_angle(x);
      if (r <= r_max) return (*table)(r, th);
      return table->outer_value(th) * std::pow(r_max / r, beta);
    };
    return ScalarField(name, eval, meta);
  }
  return ScalarField(name, [f, params, k, cfg](const Point& x) { return riesz_potential(f, x, params, k, cfg).value; },
                     meta);
}

}  // namespace fraclap
