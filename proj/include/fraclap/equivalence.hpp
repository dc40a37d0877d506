#pragma once

// Checks for the equivalence between the semilinear equation
// (-Delta)^{alpha/2} u = u^p and its integral form, and for the bubble family.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fraclap/kernels.hpp"
#include "fraclap/report.hpp"

namespace fraclap {

struct BubbleCheckConfig {
  PvQuadConfig pv;
  WindowedSpectralConfig spectral;
  /// Replaces the critical exponent (used to show the subcritical exponent fails).
  std::optional<double> exponent;
};

/// r(x) = fraclap(u)(x) / u(x)^p for the bubble (t / (t^2 + |x - x0|^2))^{(n-alpha)/2}, by
/// both evaluators. Cases: PV spread <= 1% of the mean, PV/spectral agreement 1e-3, mean > 0.
Report verify_bubble(double t, const Point& x0, const FracParams& params, std::span<const Point> test_points,
                     const KernelConstants& k, const BubbleCheckConfig& cfg = {});

/// The bubble scaled so that it solves (-Delta)^{alpha/2} u = u^p exactly at critical p.
ScalarField normalized_bubble(double t, const Point& x0, const FracParams& params);

struct EquivalenceTables {
  /// (R, sup_x |v_R(x) - v(x)|)
  std::vector<std::array<double, 2>> sup_difference;
  /// (R, point index, w_R(x))
  std::vector<std::array<double, 3>> w_values;
};

/// For each R: v_R = G_R * u^p, v = Riesz * u^p; checks (a) u - v_R >= -1e-3, (b) sup|v_R - v|
/// decreasing in R and <= 2% max u at the largest R, (c) |u - v| <= 2% u, and v_R nondecreasing in R.
Report verify_pde_to_integral(const ScalarField& u, double p, std::span<const double> R_list,
                              const FracParams& params, std::span<const Point> test_points, const KernelConstants& k,
                              EquivalenceTables* tables = nullptr);

/// Dyadic radii 4, 8, ... up to the first R with (4/R)^{n-alpha} <= 0.01.
std::vector<double> default_equivalence_radii(const FracParams& params);

struct DivergenceTable {
  std::vector<std::array<double, 2>> growth;  ///< (R, T(R))
};

/// T(R) = c_riesz int_{B_R(x)} source(y, C) |x - y|^{alpha-n} dy with source = C^p by default;
/// passes when the fitted growth exponent is alpha within 1% and T increases along the list.
/// C = 0 is reported as "no divergence" (a failing case, distinct from a pass).
Report divergence_check(const FracParams& params, double C, std::span<const double> R_list, const Point& x,
                        const KernelConstants& k, DivergenceTable* table = nullptr,
                        std::function<double(const Point&, double)> source = {});

}  // namespace fraclap
