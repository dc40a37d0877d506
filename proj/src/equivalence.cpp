#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fraclap/equivalence.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {

std::vector<double> bubble_args(double t, const Point& x0, int n, double amplitude) {
  std::vector<double> args{t};
  for (int i = 0; i < n; ++i) args.push_back(x0[i]);
  args.push_back(amplitude);
  return args;
}

}  // namespace

ScalarField normalized_bubble(double t, const Point& x0, const FracParams& params) {
  // (-Delta)^{alpha/2} U = lambda U^p for every t, so c U solves the equation iff c^{p-1} = lambda.
  const double p = params.critical_exponent();
  const double c = std::pow(bubble_eigenvalue(params), 1.0 / (p - 1.0));
  return make_catalog_field("bubble", params, bubble_args(t, x0, params.n(), c));
}

Report verify_bubble(double t, const Point& x0, const FracParams& params, std::span<const Point> test_points,
                     const KernelConstants& k, const BubbleCheckConfig& cfg) {
  if (!(t > 0.0)) throw PreconditionError("verify_bubble: t must be positive");
  if (test_points.size() < 2) throw PreconditionError("verify_bubble: need at least two test points");
  for (std::size_t i = 0; i < test_points.size(); ++i)
    for (std::size_t j = i + 1; j < test_points.size(); ++j)
      if (distance(test_points[i], test_points[j]) == 0.0)
        throw PreconditionError("verify_bubble: test points must be distinct");

  const int n = params.n();
  const double p = cfg.exponent.value_or(params.critical_exponent());
  const ScalarField u = make_catalog_field("bubble", params, bubble_args(t, x0, n, 1.0));
  Report report("bubble", params);

  // The spectral window is centred on the bubble: evaluate the centred bubble at x - x0.
  const ScalarField centred = make_catalog_field("bubble", params, std::vector<double>{t});
  std::vector<Point> shifted;
  for (const auto& x : test_points) shifted.push_back(x - x0);
  const auto spectral = fraclap_spectral_field(centred, params, k, shifted, cfg.spectral);

  std::vector<double> ratios;
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    const Point& x = test_points[i];
    const double up = std::pow(u(x), p);
    const double pv = fraclap_pv(u, x, params, cfg.pv, k).value;
    ratios.push_back(pv / up);
    report.add_upper_bound("pv_vs_spectral_" + std::to_string(i), "relative_difference",
                           std::abs(pv - spectral[i].value) / std::abs(spectral[i].value), 1e-3);
  }
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  report.add_upper_bound("ratio_spread", "spread_over_mean", (*hi - *lo) / std::abs(mean), 0.01);
  report.add_lower_bound("ratio_mean_positive", "mean_ratio", mean, std::numeric_limits<double>::min());
  report.add_exponent("ratio_mean", mean, bubble_eigenvalue(params));
  report.add_note("exponent p = " + std::to_string(p));
  return report;
}

std::vector<double> default_equivalence_radii(const FracParams& params) {
  const double e = params.n() - params.alpha();
  std::vector<double> radii{4.0};
  while (std::pow(4.0 / radii.back(), e) > 0.01) radii.push_back(2.0 * radii.back());
  return radii;
}

Report verify_pde_to_integral(const ScalarField& u, double p, std::span<const double> R_list,
                              const FracParams& params, std::span<const Point> test_points, const KernelConstants& k,
                              EquivalenceTables* tables) {
  if (R_list.empty() || test_points.empty()) throw PreconditionError("verify_pde_to_integral: empty R list or points");
  for (std::size_t i = 1; i < R_list.size(); ++i)
    if (!(R_list[i] > R_list[i - 1])) throw PreconditionError("verify_pde_to_integral: R list must be increasing");
  for (const auto& x : test_points)
    if (!(norm(x) < R_list.front()))
      throw PreconditionError("verify_pde_to_integral: test points must lie inside the smallest ball");

  Report report("pde_to_integral", params);
  const auto& um = u.meta();
  if (um.is_constant && um.far_limit && *um.far_limit == 0.0) {
    report.add_lower_bound("w_R_nonnegative", "min_w_R", 0.0, -1e-3);
    report.add_upper_bound("v_matches_u", "max_relative_difference", 0.0, 0.02);
    return report;
  }
  const ScalarField source = power(u, p);

  std::vector<double> u_values, v_values;
  double u_max = 0.0;
  for (const auto& x : test_points) {
    u_values.push_back(u(x));
    v_values.push_back(riesz_potential(source, x, params, k).value);
    u_max = std::max(u_max, std::abs(u_values.back()));
  }

  double min_w = std::numeric_limits<double>::infinity();
  std::vector<double> sup_diff;
  std::vector<std::vector<double>> vr(R_list.size());
  for (std::size_t r = 0; r < R_list.size(); ++r) {
    double sup = 0.0;
    for (std::size_t i = 0; i < test_points.size(); ++i) {
      const double v_R = green_solve_ball(source, R_list[r], test_points[i], params).value;
      vr[r].push_back(v_R);
      const double w = u_values[i] - v_R;
      min_w = std::min(min_w, w);
      sup = std::max(sup, std::abs(v_R - v_values[i]));
      if (tables) tables->w_values.push_back({R_list[r], static_cast<double>(i), w});
    }
    sup_diff.push_back(sup);
    if (tables) tables->sup_difference.push_back({R_list[r], sup});
  }

  report.add_lower_bound("w_R_nonnegative", "min_w_R", min_w, -1e-3);
  for (std::size_t r = 1; r < R_list.size(); ++r)
    report.add_lower_bound("sup_decreasing_R=" + std::to_string(R_list[r]), "previous_minus_current",
                           sup_diff[r - 1] - sup_diff[r], 0.0);
  report.add_upper_bound("sup_at_largest_R", "sup_over_max_u", sup_diff.back() / u_max, 0.02);
  double worst = 0.0;
  for (std::size_t i = 0; i < test_points.size(); ++i)
    worst = std::max(worst, std::abs(u_values[i] - v_values[i]) / std::abs(u_values[i]));
  report.add_upper_bound("v_matches_u", "max_relative_difference", worst, 0.02);
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < R_list.size(); ++r)
    for (std::size_t i = 0; i < test_points.size(); ++i) min_step = std::min(min_step, vr[r][i] - vr[r - 1][i]);
  if (R_list.size() > 1) report.add_lower_bound("v_R_nondecreasing", "min_increment", min_step, 0.0);
  if (sup_diff.size() >= 2) {
    const double slope = -loglog_slope(R_list, sup_diff);
    report.add_exponent("sup_difference_R_exponent", slope, params.n() - params.alpha());
  }
  return report;
}

Report divergence_check(const FracParams& params, double C, std::span<const double> R_list, const Point& x,
                        const KernelConstants& k, DivergenceTable* table,
                        std::function<double(const Point&, double)> source) {
  if (!(C >= 0.0) || !std::isfinite(C)) throw PreconditionError("divergence_check: C must be a nonnegative constant");
  if (R_list.size() < 2) throw PreconditionError("divergence_check: need at least two radii");
  for (std::size_t i = 1; i < R_list.size(); ++i)
    if (!(R_list[i] > R_list[i - 1])) throw PreconditionError("divergence_check: R list must be increasing");
  if (!(R_list.back() >= 4.0 * R_list.front()))
    throw PreconditionError("divergence_check: R list must span at least two dyads");

  const int n = params.n();
  const double alpha = params.alpha();
  const double p = params.critical_exponent();
  if (!source) source = [p](const Point&, double c) { return std::pow(c, p); };
  Report report("divergence", params);

  // T(R) = c_riesz / alpha int_0^{R^alpha} int_S source(x + rho w) dw du, u = rho^alpha.
  quad::Budget budget(100'000'000);
  auto shell = [&](double u) {
    const double rho = std::pow(u, 1.0 / alpha);
    auto g = [&](const Point& w) { return source(x + rho * w, C); };
    return quad::integrate_sphere(n, g, {1e-15, 1e-12}, budget).value;
  };
  std::vector<double> T;
  double previous = 0.0;
  for (double R : R_list) {
    const double lo = previous;
    const double hi = std::pow(R, alpha);
    const double piece = quad::integrate(shell, lo, hi, {1e-15, 1e-13}, budget, 2).value;
    const double total = (T.empty() ? 0.0 : T.back() * alpha / k.c_riesz) + piece;
    T.push_back(k.c_riesz * total / alpha);
    previous = hi;
    if (table) table->growth.push_back({R, T.back()});
  }

  if (std::all_of(T.begin(), T.end(), [](double v) { return v == 0.0; })) {
    report.add_lower_bound("divergence_witnessed", "T_at_largest_R", 0.0, std::numeric_limits<double>::min());
    report.add_note("no divergence: T(R) = 0 for every R (C = 0)");
    return report;
  }
  const double slope = loglog_slope(R_list, T);
  report.add_exponent("T_growth_exponent", slope, alpha);
  report.add_upper_bound("growth_exponent", "relative_error_vs_alpha", std::abs(slope - alpha) / alpha, 0.01);
  for (std::size_t i = 1; i < T.size(); ++i)
    report.add_lower_bound("T_increasing_R=" + std::to_string(R_list[i]), "previous_minus_current",
                           T[i] - T[i - 1], std::numeric_limits<double>::min());
  return report;
}

}  // namespace fraclap
