#pragma once

// Riesz potential, exterior Poisson kernel and extension, and the Green's
// function of the ball with its Dirichlet solver.

#include <memory>
#include <span>
#include <vector>

#include "fraclap/constants.hpp"
#include "fraclap/field.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/report.hpp"

namespace fraclap {

struct RieszConfig {
  double tolerance = 1e-10;
  /// For non-compact sources, radius beyond which a power-law tail model is used.
  double outer_radius = 1024.0;
  std::size_t max_evaluations = 200'000'000;
};

/// c_riesz int f(y) / |x - y|^{n-alpha} dy. The weak singularity is integrated in
/// polar coordinates around x with rho^alpha as radial variable. Compactly
/// supported sources are integrated over their support balls only.
/// Throws DivergenceError when f neither has compact support nor decays faster than |x|^-alpha.
EvalResult riesz_potential(const ScalarField& f, const Point& x, const FracParams& params, const KernelConstants& k,
                           const RieszConfig& cfg = {});

/// Field x -> riesz_potential(f, x), cached on a radial or (r, theta) table when f is
/// radial or axisymmetric, with metadata decay n - alpha (n - alpha + 1 if f has zero mean).
ScalarField riesz_potential_field(const ScalarField& f, const FracParams& params, const KernelConstants& k,
                                  const RieszConfig& cfg = {});

/// Exterior Poisson kernel of B_k:
/// Gamma(n/2) pi^{-n/2-1} sin(pi alpha/2) ((|x|^2-k^2)/(k^2-|y|^2))^{alpha/2} |x-y|^{-n}, |y| < k < |x|.
double poisson_kernel(const Point& y, const Point& x, double k, const FracParams& params);

/// u_k: equal to `base` on the closed ball B_k, and to int_{B_k} P_k(y, x) base(y) dy outside.
/// The exterior integral is cached lazily on a table in (|x|/k - 1)^{alpha/2} out to 256 k
/// (radial bases) or with an added polar angle (axisymmetric bases); beyond it the
/// asymptotic c_1 |x|^{alpha-n} is used. Other bases are evaluated directly.
class PoissonExtension {
 public:
  PoissonExtension(ScalarField base, double k, FracParams params);

  double operator()(const Point& x) const;
  /// The uncached exterior integral (|x| > k).
  EvalResult exterior_integral(const Point& x) const;
  /// The extension as a field (decay n - alpha, kink on the sphere |x| = k).
  ScalarField field() const;

  const ScalarField& base() const { return base_; }
  double radius() const { return k_; }
  const FracParams& params() const { return params_; }

 private:
  struct Cache;
  const Cache& cache() const;

  ScalarField base_;
  double k_;
  FracParams params_;
  std::shared_ptr<Cache> cache_;
};

PoissonExtension poisson_extend(const ScalarField& base, double k, const FracParams& params);

/// Evaluates the PV operator on the extension at points with |x| > 1.1 k; a case
/// passes when |value| <= max(1e-2, 3 error_estimate).
Report verify_alpha_harmonic_outside(const PoissonExtension& ext, std::span<const Point> test_points,
                                     const PvQuadConfig& cfg, const KernelConstants& k);

/// Green's function of B_R in closed form:
/// kappa |x-y|^{alpha-n} int_0^{w} b^{alpha/2-1} (1+b)^{-n/2} db, w = (R^2-|x|^2)(R^2-|y|^2) / (R^2 |x-y|^2),
/// evaluated as c_riesz |x-y|^{alpha-n} I_{w/(1+w)}(alpha/2, (n-alpha)/2). Zero if x or y is outside B_R.
double green_function(const Point& x, const Point& y, double R, const FracParams& params);

/// v_R(x) = int_{B_R} G_R(x, y) f(y) dy (0 for |x| >= R).
EvalResult green_solve_ball(const ScalarField& f, double R, const Point& x, const FracParams& params,
                            const RieszConfig& cfg = {});

/// Field x -> green_solve_ball(f, R, x), tabulated when f is radial.
ScalarField green_solution_field(const ScalarField& f, double R, const FracParams& params,
                                 const RieszConfig& cfg = {});

/// Checks |G(x,y) - G(y,x)| / G(x,y) <= 1e-10 for each pair strictly inside B_R.
Report green_symmetry_check(double R, const FracParams& params, std::span<const std::pair<Point, Point>> pairs);

}  // namespace fraclap
