#include "fraclap/suites.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <chrono>
#include <limits>
#include <numbers>
#include <cmath>
#include <random>

#include "fraclap/equivalence.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/liouville.hpp"

namespace fraclap {

namespace {

struct Context {
  FracParams params;
  PvQuadConfig pv;
  KernelConstants k;
  SuiteOptions options;
};

std::vector<Point> lattice_points(int n) {
  std::vector<Point> pts;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) pts.push_back({double(i), double(j), 0.0});
  (void)n;
  return pts;
}

std::vector<Point> random_points(int n, double half_width, std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> d(-half_width, half_width);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) {
    Point x{};
    for (int a = 0; a < n; ++a) x[a] = d(rng);
    pts.push_back(x);
  }
  return pts;
}

WindowedSpectralConfig spectral_config(const Context& c) {
  WindowedSpectralConfig w;
  w.points_per_axis = c.params.n() == 2 ? c.options.grid : std::min(c.options.grid, 128);
  w.half_width = c.options.box;
  return w;
}

std::string tag(double v) {
  std::string s = std::to_string(v);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

/// Closed-form probability that the isotropic alpha-stable process started at radius r > k hits B_k.
double hitting_probability(const FracParams& p, double k, double r) {
  const double n = p.n(), a = p.alpha();
  const double z = k * k / (r * r - k * k);
  return std::tgamma(0.5 * n) / (std::tgamma(0.5 * (n - a)) * std::tgamma(0.5 * a)) *
         boost::math::beta(0.5 * (n - a), 0.5 * a, z / (1.0 + z));
}

SuiteResult operator_suite(const Context& c) {
  const FracParams& p = c.params;
  const int n = p.n();
  const double alpha = p.alpha();
  SuiteResult out{Report("operator", p), {}, 0.0};
  Report& r = out.report;
  std::mt19937_64 rng(c.options.seed);

  r.add_lower_bound("constants_validated", "validated", c.k.validated ? 1.0 : 0.0, 1.0);
  r.add_exponent("C_pv", c.k.C_pv, pv_constant(p));
  r.add_exponent("c_riesz", c.k.c_riesz, riesz_constant(p));

  const ScalarField constant = make_catalog_field("constant", p, std::vector<double>{3.0});
  double worst = 0.0;
  for (const auto& x : random_points(n, 5.0, rng, 10))
    worst = std::max(worst, std::abs(fraclap_pv(constant, x, p, c.pv, c.k).value));
  r.add_upper_bound("annihilates_constants", "max_abs_value", worst, 1e-8);

  const auto pts = lattice_points(n);
  CsvTable cross{"cross_evaluator.csv", {"field", "x0", "x1", "pv", "spectral", "relative_difference"}, {}};
  int field_id = 0;
  for (const char* name : {"gaussian", "bubble"}) {
    std::vector<double> args;
    if (std::string(name) == "bubble") args = {1.0};
    const ScalarField f = make_catalog_field(name, p, args);
    const auto spectral = fraclap_spectral_field(f, p, c.k, pts, spectral_config(c));
    double rel = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double pv = fraclap_pv(f, pts[i], p, c.pv, c.k).value;
      const double d = std::abs(pv - spectral[i].value) / std::abs(spectral[i].value);
      rel = std::max(rel, d);
      cross.rows.push_back({double(field_id), pts[i][0], pts[i][1], pv, spectral[i].value, d});
    }
    r.add_upper_bound(std::string("pv_vs_spectral_") + name, "max_relative_difference", rel, 1e-3);
    ++field_id;
  }
  out.tables.push_back(std::move(cross));

  // Translation and scaling covariance on a gaussian.
  const ScalarField g = make_catalog_field("gaussian", p, {});
  const Point x{0.4, 0.2, 0.0};
  const double base = fraclap_pv(g, x, p, c.pv, c.k).value;
  const Point h{0.7, -1.3, 0.0};
  const double moved = fraclap_pv(translated(g, h), x + h, p, c.pv, c.k).value;
  r.add_upper_bound("translation_covariance", "relative_difference", std::abs(moved - base) / std::abs(base), 1e-6);
  for (double lambda : {0.5, 2.0}) {
    const double lhs = fraclap_pv(dilated(g, lambda), x, p, c.pv, c.k).value;
    const double rhs = std::pow(lambda, alpha) * fraclap_pv(g, lambda * x, p, c.pv, c.k).value;
    r.add_upper_bound("scaling_lambda=" + tag(lambda), "relative_difference", std::abs(lhs - rhs) / std::abs(rhs),
                      1e-3);
  }

  // Self-adjointness on a gaussian pair of different widths and centres.
  std::vector<double> phi_args{0.8, 0.5, 0.0};
  if (n == 3) phi_args.push_back(0.0);
  const ScalarField phi = make_catalog_field("gaussian", p, phi_args);
  const double box = n == 2 ? c.options.box : std::min(c.options.box, 5.0);
  const int N = n == 2 ? 128 : 16;
  PvQuadConfig loose = c.pv;
  loose.tolerance = std::max(c.pv.tolerance, 1e-6);
  const auto sa = verify_selfadjoint_identity(g, phi, p, loose, c.k, box, N);
  r.add_upper_bound("selfadjoint_identity", "residual_over_scale", sa.residual / std::max(std::abs(sa.lhs), 1.0), 1e-3);
  r.add_note("selfadjoint lhs = " + std::to_string(sa.lhs) + ", rhs = " + std::to_string(sa.rhs));
  return out;
}

SuiteResult kernels_suite(const Context& c) {
  const FracParams& p = c.params;
  const int n = p.n();
  const double alpha = p.alpha();
  SuiteResult out{Report("kernels", p), {}, 0.0};
  Report& r = out.report;
  std::mt19937_64 rng(c.options.seed + 1);

  // Exterior Poisson extension of the constant 1.
  const ScalarField one = make_catalog_field("constant", p, std::vector<double>{1.0});
  const PoissonExtension ext = poisson_extend(one, 1.0, p);
  const Point harmonic_points[] = {{2, 0, 0}, {4, 0, 0}, {8, 0, 0}};
  r.merge(verify_alpha_harmonic_outside(ext, harmonic_points, c.pv, c.k), "extension.");
  double lo = 1.0, hi = 0.0, oracle_err = 0.0;
  CsvTable profile{"extension_profile.csv", {"r", "u_k", "hitting_probability"}, {}};
  for (int i = 0; i < 40; ++i) {
    const double rr = 1.0 + std::pow(2.0, -6.0 + 0.35 * i);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    const double th = ang(rng);
    const double v = ext(Point{rr * std::cos(th), rr * std::sin(th), 0.0});
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    const double exact = hitting_probability(p, 1.0, rr);
    oracle_err = std::max(oracle_err, std::abs(v - exact) / exact);
    profile.rows.push_back({rr, v, exact});
  }
  out.tables.push_back(std::move(profile));
  r.add_lower_bound("extension_positive", "min_u_k", lo, std::numeric_limits<double>::min());
  r.add_upper_bound("extension_below_base", "max_u_k", hi, 1.0);
  r.add_upper_bound("extension_vs_hitting_probability", "max_relative_difference", oracle_err, 1e-5);
  const double radii[] = {16, 32, 64, 128};
  const double decay = fit_decay_exponent(ext.field(), radii, {1, 0, 0});
  r.add_exponent("extension_decay", decay, n - alpha);
  r.add_upper_bound("extension_decay", "relative_error", std::abs(decay - (n - alpha)) / (n - alpha), 0.02);
  const PoissonExtension ext2 = poisson_extend(one, 2.0, p);
  double nest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    const double rr = 2.0 * (1.05 + 3.0 * i);
    const Point x{rr * std::cos(0.3 * i), rr * std::sin(0.3 * i), 0.0};
    nest = std::min(nest, ext2(x) - ext(x));
  }
  r.add_lower_bound("extension_nesting", "min_u_2_minus_u_1", nest, 0.0);

  // Riesz potentials.
  std::vector<double> unit_args(2 + static_cast<std::size_t>(n), 0.0);
  unit_args.front() = 1.0;
  unit_args.back() = 1.0 / bump_mass(n);
  const ScalarField unit_bump = make_catalog_field("bump", p, unit_args);
  const double far = riesz_potential(unit_bump, {10, 0, 0}, p, c.k).value;
  const double monopole = c.k.c_riesz * std::pow(10.0, alpha - n);
  r.add_upper_bound("riesz_monopole_far_field", "relative_difference", std::abs(far - monopole) / monopole, 0.01);
  const ScalarField bump = make_catalog_field("bump", p, {});
  const double bump_decay = fit_decay_exponent(riesz_potential_field(bump, p, c.k), radii, {1, 0, 0});
  r.add_exponent("bump_potential_decay", bump_decay, n - alpha);
  r.add_upper_bound("bump_potential_decay", "relative_error", std::abs(bump_decay - (n - alpha)) / (n - alpha), 0.02);
  const ScalarField dipole = make_catalog_field("dipole", p, {});
  const double dipole_decay = fit_decay_exponent(riesz_potential_field(dipole, p, c.k), radii, {1, 0, 0});
  r.add_exponent("dipole_potential_decay", dipole_decay, n - alpha + 1);
  r.add_upper_bound("dipole_potential_decay", "relative_error",
                    std::abs(dipole_decay - (n - alpha + 1)) / (n - alpha + 1), 0.05);

  // Green's function of the ball.
  const std::pair<Point, Point> pairs[] = {{{0.5, 0, 0}, {0, 0.5, 0}}, {{0.9, 0, 0}, {-0.9, 0, 0}},
                                           {{0.1, 0.2, 0}, {-0.3, 0.6, 0}}};
  r.merge(green_symmetry_check(1.0, p, pairs), "green.");
  const ScalarField v = green_solution_field(bump, 4.0, p, RieszConfig{1e-9});
  const Point x{0.3, 0, 0};
  const double back = fraclap_pv(v, x, p, c.pv, c.k).value;
  r.add_upper_bound("green_round_trip", "relative_error", std::abs(back - bump(x)) / bump(x), 0.03);
  // f = 1 on B_2 gives c (4 - |x|^2)^{alpha/2}.
  const double torsion = std::tgamma(0.5 * n) / (std::pow(2.0, alpha) * std::tgamma(1 + 0.5 * alpha) *
                                                 std::tgamma(0.5 * (n + alpha)));
  double torsion_err = 0.0;
  for (double rr : {0.0, 0.7, 1.9}) {
    const double got = green_solve_ball(one, 2.0, {rr, 0, 0}, p, RieszConfig{1e-9}).value;
    const double exact = torsion * std::pow(4.0 - rr * rr, 0.5 * alpha);
    torsion_err = std::max(torsion_err, std::abs(got - exact) / exact);
  }
  r.add_upper_bound("green_torsion_closed_form", "max_relative_difference", torsion_err, 1e-6);
  double outside = 0.0;
  for (double rr : {4.0, 4.5, 9.0}) outside = std::max(outside, std::abs(v({rr, 0.0, 0.0})));
  r.add_upper_bound("green_dirichlet_outside", "max_abs_value", outside, 0.0);
  return out;
}

SuiteResult liouville_suite(const Context& c) {
  const FracParams& p = c.params;
  const int n = p.n();
  const double alpha = p.alpha();
  SuiteResult out{Report("liouville", p), {}, 0.0};
  Report& r = out.report;

  const ScalarField psi = make_catalog_field("dipole", p, {});
  const ScalarField phi = build_phi(psi, p, c.pv, c.k);
  r.add_lower_bound("phi_gate", "passed", 1.0, 1.0);
  const double radii[] = {16, 32, 64, 128};
  const double decay = fit_decay_exponent(phi, radii, {1, 0, 0});
  r.add_exponent("phi_decay", decay, n - alpha + 1);
  r.add_upper_bound("phi_decay", "relative_error", std::abs(decay - (n - alpha + 1)) / (n - alpha + 1), 0.05);

  const ScalarField one = make_catalog_field("constant", p, std::vector<double>{1.0});
  const double ks[] = {8, 16, 32};
  LiouvilleTrace trace = trace_pairing(one, psi, ks, p, n == 2 ? 128 : 48);
  CsvTable pairing{"k_vs_pairing.csv", {"k", "pairing"}, {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.radii_k.size(); ++i) {
    pairing.rows.push_back({trace.radii_k[i], trace.pairing_values[i]});
    worst = std::max(worst, std::abs(trace.pairing_values[i]));
  }
  r.add_upper_bound("pairing_zero", "max_abs_pairing", worst, 1e-10);

  const double k_i1[] = {32, 64, 128};
  r.merge(check_I1_vanishes(one, phi, k_i1, 2.0, p, &trace), "I1.");
  const double rs[] = {2, 4, 8};
  r.merge(check_I2_bound(one, 16.0, rs, phi, p, c.pv, c.k, &trace), "I2.");
  const Point inv_points[] = {{2, 0, 0}, {4, 0, 0}, {16, 0, 0}};
  r.merge(verify_riesz_inversion(one, 1.0, inv_points, p, c.pv, c.k), "inversion.");

  CsvTable i1{"k_vs_I1.csv", {"k", "r", "majorant"}, {}};
  for (const auto& row : trace.i1_values) i1.rows.push_back({row[0], row[1], row[2]});
  CsvTable i2{"r_vs_I2.csv", {"r", "majorant", "abs_I2", "J"}, {}};
  for (std::size_t i = 0; i < trace.i2_bounds.size(); ++i)
    i2.rows.push_back({trace.i2_bounds[i][0], trace.i2_bounds[i][1], trace.i2_bounds[i][2], trace.i2_absolute[i][1]});
  out.tables = {std::move(pairing), std::move(i1), std::move(i2)};
  return out;
}

SuiteResult equivalence_suite(const Context& c) {
  const FracParams& p = c.params;
  SuiteResult out{Report("equivalence", p), {}, 0.0};
  Report& r = out.report;

  BubbleCheckConfig bc;
  bc.pv = c.pv;
  bc.spectral = spectral_config(c);
  const std::vector<Point> pts{{0, 0, 0}, {1, 0, 0}, {0, 2, 0}, {3, 3, 0}};
  const Report base = verify_bubble(1.0, {}, p, pts, c.k, bc);
  r.merge(base, "bubble.");
  const double mean = base.exponents().front().fitted;

  const Point x0{2, -1, 0};
  std::vector<Point> moved;
  for (const auto& x : pts) moved.push_back(x + x0);
  const Report shifted = verify_bubble(1.0, x0, p, moved, c.k, bc);
  r.add_upper_bound("bubble_translation", "relative_ratio_change",
                    std::abs(shifted.exponents().front().fitted - mean) / mean, 1e-3);
  const Report wide = verify_bubble(4.0, {}, p, pts, c.k, bc);
  r.add_upper_bound("bubble_scaling_t=4", "relative_ratio_change",
                    std::abs(wide.exponents().front().fitted - mean) / mean, 1e-3);
  BubbleCheckConfig sub = bc;
  sub.exponent = p.critical_exponent() - 0.5;
  const Report subcritical = verify_bubble(1.0, {}, p, pts, c.k, sub);
  r.add_lower_bound("subcritical_ratio_not_constant", "spread_over_mean",
                    subcritical.find("ratio_spread").value, 0.10);

  EquivalenceTables tables;
  const auto R_list = default_equivalence_radii(p);
  const std::vector<Point> inner{{0, 0, 0}, {0.5, 0, 0}, {0, 0.9, 0}};
  r.merge(verify_pde_to_integral(normalized_bubble(1.0, {}, p), p.critical_exponent(), R_list, p, inner, c.k, &tables),
          "pde.");

  DivergenceTable growth;
  const double Rs[] = {1, 2, 4, 8, 16, 32};
  r.merge(divergence_check(p, 1.0, Rs, {0.3, 0, 0}, c.k, &growth), "divergence.");
  const Report none = divergence_check(p, 0.0, Rs, {0.3, 0, 0}, c.k);
  r.add_note(none.notes().empty() ? "C=0 check produced no note" : none.notes().front());

  CsvTable sup{"R_vs_sup_difference.csv", {"R", "sup_abs_vR_minus_v"}, {}};
  for (const auto& row : tables.sup_difference) sup.rows.push_back({row[0], row[1]});
  CsvTable w{"w_R.csv", {"R", "point", "w_R"}, {}};
  for (const auto& row : tables.w_values) w.rows.push_back({row[0], row[1], row[2]});
  CsvTable t{"T_of_R.csv", {"R", "T"}, {}};
  for (const auto& row : growth.growth) t.rows.push_back({row[0], row[1]});
  out.tables = {std::move(sup), std::move(w), std::move(t)};
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"operator", "kernels", "liouville", "equivalence"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  const FracParams params(options.n, options.alpha);
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw PreconditionError("unknown suite '" + name + "'");
  if (options.grid < 16 || options.grid % 2 != 0) throw PreconditionError("grid must be even and >= 16");
  if (!(options.box > 0.0)) throw PreconditionError("box must be positive");
  if (!(options.tol > 0.0)) throw PreconditionError("tol must be positive");
  PvQuadConfig pv;
  pv.tolerance = options.tol;
  const auto start = std::chrono::steady_clock::now();
  Context c{params, pv, {}, options};
  SuiteResult result{Report(name, params), {}, 0.0};
  try {
    c.k = validate_constants(params, pv);
  } catch (const ValidationError& e) {
    result.report.add_lower_bound("constants_validated", "validated", 0.0, 1.0);
    result.report.add_note(e.what());
    result.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }
  if (name == "operator")
    result = operator_suite(c);
  else if (name == "kernels")
    result = kernels_suite(c);
  else if (name == "liouville")
    result = liouville_suite(c);
  else
    result = equivalence_suite(c);
  result.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace fraclap
