#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fraclap/quadrature.hpp"

using namespace fraclap;
using doctest::Approx;

TEST_CASE("adaptive integration of smooth and endpoint-singular integrands") {
  quad::Budget budget(10'000'000);
  CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, {1e-14, 1e-14}, budget).value ==
        Approx(2.0).epsilon(1e-13));
  // int_0^1 x^{-1/2} = 2, integrable singularity at the endpoint.
  CHECK(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-10, 1e-10}, budget, 1, 5000)
            .value == Approx(2.0).epsilon(1e-8));
  CHECK(quad::integrate([](double) { return 1.0; }, 3.0, 3.0, {}, budget).value == 0.0);
  // Reversed limits flip the sign.
  CHECK(quad::integrate([](double x) { return x; }, 1.0, 0.0, {}, budget).value == Approx(-0.5));
}

TEST_CASE("budget exhaustion throws") {
  quad::Budget budget(100);
  CHECK_THROWS_AS(quad::integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {1e-15, 1e-15}, budget),
                  QuadratureError);
}

TEST_CASE("sphere and cap integrals") {
  quad::Budget budget(10'000'000);
  const auto one = [](const Point&) { return 1.0; };
  CHECK(quad::integrate_sphere(2, one, {1e-12, 1e-12}, budget).value == Approx(2.0 * std::numbers::pi));
  CHECK(quad::integrate_sphere(3, one, {1e-12, 1e-12}, budget).value == Approx(4.0 * std::numbers::pi));
  // int_{S^2} w_0^2 = 4 pi / 3.
  CHECK(quad::integrate_sphere(3, [](const Point& w) { return w[0] * w[0]; }, {1e-12, 1e-12}, budget).value ==
        Approx(4.0 * std::numbers::pi / 3.0));
  // Cap of half-angle t on S^2 has area 2 pi (1 - cos t); on S^1 the arc length is 2 t.
  const auto fr3 = quad::frame_from_axis(3, {0, 0, 2});
  CHECK(quad::integrate_cap(3, one, fr3, 0.7, {1e-12, 1e-12}, budget).value ==
        Approx(2.0 * std::numbers::pi * (1.0 - std::cos(0.7))));
  const auto fr2 = quad::frame_from_axis(2, {1, 1, 0});
  CHECK(quad::integrate_cap(2, one, fr2, 0.7, {1e-12, 1e-12}, budget).value == Approx(1.4));
}

TEST_CASE("frames are orthonormal") {
  for (const Point& axis : {Point{1, 0, 0}, Point{0.2, -0.3, 0.9}, Point{0, 1, 0}}) {
    const auto f = quad::frame_from_axis(3, axis);
    CHECK(norm(f.e0) == Approx(1.0));
    CHECK(norm(f.e1) == Approx(1.0));
    CHECK(norm(f.e2) == Approx(1.0));
    CHECK(std::abs(dot(f.e0, f.e1)) < 1e-14);
    CHECK(std::abs(dot(f.e0, f.e2)) < 1e-14);
    CHECK(std::abs(dot(f.e1, f.e2)) < 1e-14);
  }
}

TEST_CASE("ray and ball chords") {
  const auto c = quad::ray_ball_chord({0, 0, 0}, {1, 0, 0}, {3, 0, 0}, 1.0);
  CHECK(c.lo == Approx(2.0));
  CHECK(c.hi == Approx(4.0));
  const auto inside = quad::ray_ball_chord({0, 0, 0}, {0, 1, 0}, {0, 0, 0}, 2.0);
  CHECK(inside.lo == 0.0);
  CHECK(inside.hi == Approx(2.0));
  CHECK(quad::ray_ball_chord({0, 0, 0}, {-1, 0, 0}, {3, 0, 0}, 1.0).empty());
  CHECK(quad::ray_ball_chord({0, 0, 0}, {0, 1, 0}, {3, 0, 0}, 1.0).empty());
}
