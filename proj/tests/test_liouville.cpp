#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>

#include "fraclap/errors.hpp"
#include "fraclap/liouville.hpp"

using namespace fraclap;
using doctest::Approx;

namespace {
const FracParams p21(2, 1.0);

const KernelConstants& k21() {
  static const KernelConstants k = validate_constants(p21, {});
  return k;
}

ScalarField constant(double c) { return make_catalog_field("constant", p21, std::vector<double>{c}); }

const ScalarField& phi21() {
  static const ScalarField phi = build_phi(make_catalog_field("dipole", p21, {}), p21, {}, k21());
  return phi;
}

// int_k^inf s^{n-1} (1 + s)^{-n-alpha} ds = B(n, alpha) I^c_{k/(1+k)}(n, alpha).
double radial_tail(int n, double alpha, double k) {
  return boost::math::beta(double(n), alpha) * boost::math::ibetac(double(n), alpha, k / (1.0 + k));
}
}  // namespace

TEST_CASE("phi inverts the operator on the dipole and decays one order faster") {
  const ScalarField psi = make_catalog_field("dipole", p21, {});
  const ScalarField& phi = phi21();
  const Point a{2, 0, 0};
  double max_psi = 0.0;
  for (int i = 0; i <= 100; ++i) max_psi = std::max(max_psi, std::abs(psi({1.0 + i * 0.02, 0, 0})));
  CHECK(std::abs(fraclap_pv(phi, a, p21, {}, k21()).value - psi(a)) <= 1e-2 * max_psi);
  const double radii[] = {16, 32, 64, 128};
  CHECK(std::abs(fit_decay_exponent(phi, radii, {1, 0, 0}) - 2.0) <= 0.1);
  CHECK(build_phi(zero_field(), p21, {}, k21())({1, 2, 0}) == 0.0);
  CHECK_THROWS_AS(build_phi(make_catalog_field("bump", p21, {}), p21, {}, k21()), PreconditionError);
}

TEST_CASE("pairings with zero-mean test functions vanish") {
  const ScalarField psi = make_catalog_field("dipole", p21, {});
  const double ks[] = {8, 16, 32};
  for (double c : {1.0, 5.0}) {
    const LiouvilleTrace t = trace_pairing(constant(c), psi, ks, p21, 128);
    REQUIRE(t.pairing_values.size() == 3);
    for (double v : t.pairing_values) CHECK(std::abs(v) <= 1e-10);
  }
  CHECK_THROWS_AS(trace_pairing(constant(1.0), make_catalog_field("bump", p21, {}), ks, p21, 64), PreconditionError);
}

TEST_CASE("I1 majorants follow the closed-form radial tail") {
  const double ks[] = {8, 16, 32};
  LiouvilleTrace trace{p21, zero_field(), {}, {}, {}, {}, {}};
  const Report r = check_I1_vanishes(constant(1.0), phi21(), ks, 2.0, p21, &trace);
  REQUIRE(trace.i1_values.size() == 3);
  // Every majorant is (int_{B_r} |phi|) * 2 pi * tail(k): the ratio to the tail is k-independent.
  std::vector<double> tails;
  for (const auto& row : trace.i1_values) tails.push_back(radial_tail(2, 1.0, row[0]));
  const double mass = trace.i1_values[0][2] / (2.0 * std::numbers::pi * tails[0]);
  CHECK(mass > 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(trace.i1_values[i][2] == Approx(mass * 2.0 * std::numbers::pi * tails[i]).epsilon(1e-6));
  // The fitted exponent reported is the least-squares slope of the exact tail.
  const double exact = -loglog_slope(ks, tails);
  CHECK(r.exponents().front().fitted == Approx(exact).epsilon(1e-6));
  CHECK(r.find("decreasing_k=16.000000").pass);
  CHECK(r.find("decreasing_k=32.000000").pass);
}

TEST_CASE("I1 exponent tends to alpha") {
  for (double a : {0.5, 1.0, 1.5}) {
    CAPTURE(a);
    const FracParams p(2, a);
    const KernelConstants k = validate_constants(p, {});
    const ScalarField phi = build_phi(make_catalog_field("dipole", p, {}), p, {}, k);
    const double ks[] = {32, 64, 128};
    const Report r = check_I1_vanishes(make_catalog_field("constant", p, std::vector<double>{1.0}), phi, ks, 2.0, p);
    CHECK(r.overall_pass());
    CHECK(std::abs(r.exponents().front().fitted - a) <= 0.05 * a);
  }
}

TEST_CASE("I1 edge cases") {
  const double ks[] = {8, 16, 32};
  const Report zero = check_I1_vanishes(constant(0.0), phi21(), ks, 2.0, p21);
  CHECK(zero.find("majorants_zero").value == 0.0);
  const double small[] = {2, 4};
  CHECK_THROWS_AS(check_I1_vanishes(constant(1.0), phi21(), small, 2.0, p21), PreconditionError);
}

TEST_CASE("I2 stays under its majorant") {
  const double rs[] = {2, 4, 8};
  LiouvilleTrace trace{p21, zero_field(), {}, {}, {}, {}, {}};
  const Report r = check_I2_bound(constant(1.0), 16.0, rs, phi21(), p21, {}, k21(), &trace);
  CHECK(r.overall_pass());
  REQUIRE(trace.i2_bounds.size() == 3);
  REQUIRE(trace.i2_absolute.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(trace.i2_bounds[i][2] <= trace.i2_bounds[i][1]);
    CHECK(trace.i2_absolute[i][1] <= trace.i2_bounds[i][1]);
  }
  CHECK(trace.i2_absolute[1][1] < trace.i2_absolute[0][1]);
  CHECK(trace.i2_absolute[2][1] < trace.i2_absolute[1][1]);

  const Report zero = check_I2_bound(constant(0.0), 16.0, rs, phi21(), p21, {}, k21());
  for (const auto& c : zero.cases()) CHECK(c.value == 0.0);
}

TEST_CASE("I2 beyond the ball is negligible") {
  const double rs[] = {20, 40};
  const Report r = check_I2_bound(constant(1.0), 16.0, rs, phi21(), p21, {}, k21());
  CHECK(r.find("I2_far_tail_r=20.000000").pass);
  CHECK(r.find("I2_far_tail_r=40.000000").pass);
}

TEST_CASE("extension density matches the constant-base closed form inside the ball") {
  // For a constant base the density inside B_k is kappa (k^2 - s^2)^{-alpha/2}; kappa = 2/pi when n = 2, alpha = 1.
  const PoissonExtension ext = poisson_extend(constant(1.0), 1.0, p21);
  const ExtensionDensity f(ext, {}, k21());
  for (double s : {0.0, 0.3, 0.6, 0.9})
    CHECK(f(s) == Approx(2.0 / std::numbers::pi / std::sqrt(1.0 - s * s)).epsilon(1e-4));
  CHECK(f.boundary_exponent() == Approx(0.5).epsilon(0.05));
}

TEST_CASE("riesz inversion of the extension density") {
  const Point pts[] = {{4, 0, 0}, {16, 0, 0}};
  CHECK(verify_riesz_inversion(constant(1.0), 1.0, pts, p21, {}, k21()).overall_pass());
  const Report zero = verify_riesz_inversion(constant(0.0), 1.0, pts, p21, {}, k21());
  CHECK(zero.overall_pass());
  const Point close[] = {{1.05, 0, 0}};
  CHECK_THROWS_AS(verify_riesz_inversion(constant(1.0), 1.0, close, p21, {}, k21()), PreconditionError);
}
