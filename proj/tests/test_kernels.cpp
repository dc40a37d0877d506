#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"

using namespace fraclap;
using doctest::Approx;

namespace {
const FracParams p21(2, 1.0);

const KernelConstants& constants(const FracParams& p) {
  static std::map<std::pair<int, double>, KernelConstants> cache;
  auto key = std::make_pair(p.n(), p.alpha());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, validate_constants(p, {})).first;
  return it->second;
}

ScalarField one(const FracParams& p) { return make_catalog_field("constant", p, std::vector<double>{1.0}); }

// Probability that the alpha-stable process started at radius r > k ever enters B_k.
double hitting_probability(const FracParams& p, double k, double r) {
  const double n = p.n(), a = p.alpha();
  const double z = k * k / (r * r - k * k);
  return std::tgamma(0.5 * n) / (std::tgamma(0.5 * (n - a)) * std::tgamma(0.5 * a)) *
         boost::math::beta(0.5 * (n - a), 0.5 * a, z / (1.0 + z));
}

Point random_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Point d{g(rng), g(rng), n == 3 ? g(rng) : 0.0};
  return (1.0 / norm(d)) * d;
}
}  // namespace

TEST_CASE("poisson kernel closed form and domain") {
  CHECK(poisson_kernel({0, 0, 0}, {2, 0, 0}, 1.0, p21) ==
        Approx(std::sqrt(3.0) / (4.0 * std::numbers::pi * std::numbers::pi)).epsilon(1e-12));
  CHECK(poisson_kernel({0, 0, 0}, {2, 0, 0}, 1.0, p21) == Approx(0.043873).epsilon(1e-5));
  CHECK_THROWS_AS(poisson_kernel({1, 0, 0}, {2, 0, 0}, 1.0, p21), PreconditionError);
  CHECK_THROWS_AS(poisson_kernel({0, 0, 0}, {1, 0, 0}, 1.0, p21), PreconditionError);
  // Vanishes like (|x|^2 - k^2)^{alpha/2} at the sphere.
  const double a = poisson_kernel({0.2, 0, 0}, {1.0 + 1e-6, 0, 0}, 1.0, p21);
  const double b = poisson_kernel({0.2, 0, 0}, {1.0 + 4e-6, 0, 0}, 1.0, p21);
  CHECK(b / a == Approx(2.0).epsilon(1e-4));
}

TEST_CASE("kernel positivity on random admissible configurations") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n : {2, 3}) {
    const FracParams p(n, 0.5 + u(rng));
    for (int i = 0; i < 50; ++i) {
      const Point y = (0.999 * u(rng)) * random_direction(n, rng);
      const Point x = (1.001 + 5.0 * u(rng)) * random_direction(n, rng);
      CHECK(poisson_kernel(y, x, 1.0, p) > 0.0);
      const Point z = (0.999 * u(rng)) * random_direction(n, rng);
      if (distance(y, z) > 0.0) CHECK(green_function(y, z, 1.0, p) > 0.0);
    }
  }
}

TEST_CASE("extension of a constant is the hitting probability") {
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 1.5}) {
      const FracParams p(n, a);
      CAPTURE(n);
      CAPTURE(a);
      const PoissonExtension ext = poisson_extend(one(p), 1.0, p);
      std::mt19937_64 rng(n * 10 + static_cast<int>(a * 2));
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int i = 0; i < 50; ++i) {
        const double r = 1.0 + std::pow(10.0, -3.0 + 5.0 * u(rng));
        const double v = ext(r * random_direction(n, rng));
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
        CHECK(v == Approx(hitting_probability(p, 1.0, r)).epsilon(1e-5));
      }
      CHECK(ext({1.0, 0, 0}) == 1.0);
      CHECK(ext({0.3, 0.2, 0}) == 1.0);
      const double radii[] = {16, 32, 64, 128};
      CHECK(std::abs(fit_decay_exponent(ext.field(), radii, {1, 0, 0}) - (n - a)) <= 0.02 * (n - a));
    }
}

TEST_CASE("extension is alpha-harmonic outside the ball") {
  const PoissonExtension ext = poisson_extend(one(p21), 1.0, p21);
  const Point pts[] = {{2, 0, 0}, {4, 0, 0}, {8, 0, 0}};
  const Report r = verify_alpha_harmonic_outside(ext, pts, {}, constants(p21));
  CHECK(r.overall_pass());
  const Point close[] = {{1.01, 0, 0}};
  CHECK_THROWS_AS(verify_alpha_harmonic_outside(ext, close, {}, constants(p21)), PreconditionError);
  const PoissonExtension zero = poisson_extend(make_catalog_field("constant", p21, std::vector<double>{0.0}), 1.0, p21);
  CHECK(zero({3, 0, 0}) == 0.0);
  CHECK(fraclap_pv(zero.field(), {3, 0, 0}, p21, {}, constants(p21)).value == 0.0);
}

TEST_CASE("larger balls give larger extensions") {
  const PoissonExtension e1 = poisson_extend(one(p21), 1.0, p21);
  const PoissonExtension e2 = poisson_extend(one(p21), 2.0, p21);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Point x = (2.01 + 30.0 * u(rng)) * random_direction(2, rng);
    CHECK(e2(x) >= e1(x));
  }
}

TEST_CASE("extension of a non-radial base") {
  // Off-centre gaussian: the exterior value is the kernel integral, checked against direct evaluation.
  const ScalarField g = make_catalog_field("gaussian", p21, std::vector<double>{0.5, 0.3, 0.0});
  const PoissonExtension ext = poisson_extend(g, 1.0, p21);
  const Point x{1.5, 1.0, 0};
  CHECK(ext(x) == Approx(ext.exterior_integral(x).value).epsilon(1e-6));
  CHECK(ext(x) > 0.0);
}

TEST_CASE("riesz potential far field and linearity") {
  const KernelConstants& k = constants(p21);
  std::vector<double> args{1.0, 0.0, 0.0, 1.0 / bump_mass(2)};
  const ScalarField unit = make_catalog_field("bump", p21, args);
  const double far = riesz_potential(unit, {10, 0, 0}, p21, k).value;
  CHECK(far == Approx(k.c_riesz / 10.0).epsilon(0.01));

  const ScalarField f = make_catalog_field("bump", p21, {});
  const ScalarField g = make_catalog_field("gaussian", p21, {});
  const double w[] = {2.0, -1.0};
  const ScalarField fs[] = {f, g};
  const Point x{0.4, 1.3, 0};
  const double lhs = riesz_potential(linear_combination(w, fs), x, p21, k).value;
  const double rhs = 2.0 * riesz_potential(f, x, p21, k).value - riesz_potential(g, x, p21, k).value;
  CHECK(lhs == Approx(rhs).epsilon(1e-8));
  CHECK_THROWS_AS(riesz_potential(one(p21), x, p21, k), DivergenceError);
}

TEST_CASE("riesz potential decay exponents") {
  const KernelConstants& k = constants(p21);
  const double radii[] = {16, 32, 64, 128};
  const double bump = fit_decay_exponent(riesz_potential_field(make_catalog_field("bump", p21, {}), p21, k), radii, {1, 0, 0});
  CHECK(std::abs(bump - 1.0) <= 0.02);
  const double dipole =
      fit_decay_exponent(riesz_potential_field(make_catalog_field("dipole", p21, {}), p21, k), radii, {1, 0, 0});
  CHECK(std::abs(dipole - 2.0) <= 0.1);
}

TEST_CASE("green function symmetry and support") {
  const std::pair<Point, Point> pairs[] = {{{0.5, 0, 0}, {0, 0.5, 0}}, {{0.9, 0, 0}, {-0.9, 0, 0}}};
  CHECK(green_symmetry_check(1.0, p21, pairs).overall_pass());
  const std::pair<Point, Point> same[] = {{{0, 0, 0}, {0, 0, 0}}};
  CHECK_THROWS_AS(green_symmetry_check(1.0, p21, same), PreconditionError);
  CHECK(green_function({1.2, 0, 0}, {0, 0, 0}, 1.0, p21) == 0.0);
  // Far from the boundary relative to |x - y| it approaches the free-space kernel.
  const double g = green_function({0, 0, 0}, {1e-4, 0, 0}, 1.0, p21);
  CHECK(g * 1e-4 == Approx(constants(p21).c_riesz).epsilon(1e-3));
}

TEST_CASE("green solutions") {
  for (int n : {2, 3})
    for (double a : {0.5, 1.0, 1.5}) {
      const FracParams p(n, a);
      CAPTURE(n);
      CAPTURE(a);
      // f = 1 on B_R gives Gamma(n/2) / (2^a Gamma(1 + a/2) Gamma((n+a)/2)) (R^2 - |x|^2)^{a/2}.
      const double c = std::tgamma(0.5 * n) / (std::pow(2.0, a) * std::tgamma(1 + 0.5 * a) * std::tgamma(0.5 * (n + a)));
      for (double r : {0.0, 0.5, 1.5, 1.99}) {
        const double got = green_solve_ball(one(p), 2.0, {r, 0, 0}, p, RieszConfig{1e-9}).value;
        CHECK(got == Approx(c * std::pow(4.0 - r * r, 0.5 * a)).epsilon(1e-6));
      }
    }
  CHECK(green_solve_ball(zero_field(), 2.0, {0.5, 0, 0}, p21).value == 0.0);
  CHECK(green_solve_ball(one(p21), 2.0, {2.0, 0, 0}, p21).value == 0.0);
  CHECK(green_solve_ball(one(p21), 2.0, {3.0, 1.0, 0}, p21).value == 0.0);
}

TEST_CASE("green round trip") {
  const ScalarField bump = make_catalog_field("bump", p21, {});
  const ScalarField v = green_solution_field(bump, 4.0, p21, RieszConfig{1e-9});
  for (double r : {0.0, 0.3, 0.7}) {
    const Point x{r, 0, 0};
    CHECK(fraclap_pv(v, x, p21, {}, constants(p21)).value == Approx(bump(x)).epsilon(0.03));
  }
  CHECK(v({4.0, 0, 0}) == 0.0);
  CHECK(v({5.0, 3.0, 0}) == 0.0);
  CHECK(v({0.5, 0, 0}) > 0.0);
}
