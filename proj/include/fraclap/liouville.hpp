#pragma once

// Numerical re-enactment of the Liouville argument: the test potential phi,
// the pairings int u_k psi, the two halves I_1, I_2 of the split integral and
// the Riesz inversion of f_k = (-Delta)^{alpha/2} u_k.

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fraclap/kernels.hpp"
#include "fraclap/report.hpp"
#include "fraclap/tables.hpp"

namespace fraclap {

/// Data accumulated along the argument.
struct LiouvilleTrace {
  FracParams params;
  ScalarField psi;
  std::vector<double> radii_k;
  std::vector<double> pairing_values;
  /// (k, r, majorant of |I_1|)
  std::vector<std::array<double, 3>> i1_values;
  /// (r, bound (c/r) u(0), measured |I_2|)
  std::vector<std::array<double, 3>> i2_bounds;
  /// (r, J(r) = int_{|x|>r} f_k |phi|)
  std::vector<std::array<double, 2>> i2_absolute;
};

/// phi = riesz_potential(psi, .) with decay metadata n - alpha + 1. Requires compact
/// support and psi.meta().moment_zero. Unless `gate` is false, checks
/// |fraclap_pv(phi, a) - psi(a)| <= 1e-2 max|psi| at the extremum a of psi and throws
/// ValidationError otherwise.
ScalarField build_phi(const ScalarField& psi, const FracParams& params, const PvQuadConfig& cfg,
                      const KernelConstants& k, bool gate = true);

/// int u_k psi for every k by midpoint quadrature on [-S, S]^n (S = psi's support radius)
/// with N points per axis.
LiouvilleTrace trace_pairing(const ScalarField& u, const ScalarField& psi, std::span<const double> radii_k,
                             const FracParams& params, int N);

/// For each k: int_{B_r} |phi| * int_{|y|>k} |u(y)| / (1 + |y|)^{n+alpha} dy.
/// Passes when the majorants decrease strictly in k and their fitted k-exponent is alpha within 5%.
Report check_I1_vanishes(const ScalarField& u, const ScalarField& phi, std::span<const double> k_list, double r,
                         const FracParams& params, LiouvilleTrace* trace = nullptr);

/// f_k = (-Delta)^{alpha/2} u_k for a radial base, as a radial density: PV values on
/// [0, 0.98 k] plus a fitted A (k - s)^{-gamma} model on the boundary annulus, and PV
/// values on [1.02 k, 8 k] outside.
class ExtensionDensity {
 public:
  ExtensionDensity(const PoissonExtension& ext, const PvQuadConfig& cfg, const KernelConstants& k);

  /// f_k at radius s (0 on the excluded annulus (k, 1.02 k) and beyond 8 k).
  double operator()(double s) const;
  /// int_{a}^{b} f_k(s) s^{n-1} g(s) ds over the interior part, including the modelled boundary layer.
  double integrate_interior(double a, const std::function<double(double)>& g, double tol) const;
  /// Same over the exterior part [max(a, 1.02 k), 8 k].
  double integrate_exterior(double a, const std::function<double(double)>& g, double tol) const;

  double boundary_amplitude() const { return amplitude_; }
  double boundary_exponent() const { return gamma_; }
  double radius() const { return k_; }

 private:
  double k_;
  int n_;
  std::shared_ptr<const RadialTable> interior_;
  std::shared_ptr<const RadialTable> exterior_;
  double amplitude_ = 0.0;
  double gamma_ = 0.0;
};

/// |I_2(r)| = |int_{|x|>r} f_k phi| against the majorant c_phi u(0) / (c_riesz r), with
/// c_phi = sup |phi(x)| |x|^{n-alpha+1} sampled on |x| >= min r. Also records the
/// absolute integral J(r) = int_{|x|>r} f_k |phi|, which the majorant bounds as well.
Report check_I2_bound(const ScalarField& u, double k, std::span<const double> r_list, const ScalarField& phi,
                      const FracParams& params, const PvQuadConfig& cfg, const KernelConstants& kc,
                      LiouvilleTrace* trace = nullptr);

/// Compares c_riesz int f_k(y) |x - y|^{alpha-n} dy with u_k(x) at points |x| >= 1.1 k; 5% relative.
Report verify_riesz_inversion(const ScalarField& u, double k, std::span<const Point> test_points,
                              const FracParams& params, const PvQuadConfig& cfg, const KernelConstants& kc);

}  // namespace fraclap
