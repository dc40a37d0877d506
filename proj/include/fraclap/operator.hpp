#pragma once

// Two independent evaluators for (-Delta)^{alpha/2}: a principal-value
// singular integral on ScalarFields and a Fourier-symbol evaluator on grids.

#include <cstddef>
#include <span>
#include <vector>

#include "fraclap/constants.hpp"
#include "fraclap/field.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

struct PvQuadConfig {
  /// Radius of the ball around x handled by the second-difference integrand.
  double inner_radius = 0.1;
  /// Radius beyond which the analytic tail model is used.
  double outer_radius = 64.0;
  double tolerance = 1e-8;
  std::size_t max_evaluations = 200'000'000;

  /// Throws PreconditionError unless 0 < inner < outer, tolerance > 0, max_evaluations >= 1e4.
  void validate() const;
};

struct EvalResult {
  double value = 0.0;
  /// Sum of quadrature residual estimates and tail-model bounds. Heuristic, not rigorous.
  double error_estimate = 0.0;
  /// Set when x lies within one inner radius of a declared kink of the field.
  bool flagged = false;
};

/// C_pv PV int (f(x) - f(z)) / |x - z|^{n+alpha} dz.
///
/// The ball |z - x| < delta uses (2f(x) - f(x+z) - f(x-z)) / 2, the shell
/// delta <= |z - x| <= P is integrated in log-radius with an adaptive angular
/// rule, and |z - x| > P uses the closed-form f(x) sigma P^-alpha / alpha minus a
/// power-law model of f's own tail. Requires `k.validated`.
EvalResult fraclap_pv(const ScalarField& f, const Point& x, const FracParams& params, const PvQuadConfig& cfg,
                      const KernelConstants& k);

struct SpectralOptions {
  /// Reject samples that do not vanish (< 1e-10) in the outer 10% shell of the box.
  /// Disable only for inputs that are genuinely periodic on the box.
  bool enforce_decay_guard = true;
};

/// Inverse DFT of |xi|^alpha times the DFT of g on the same lattice (symbol 0 at xi = 0).
GridField fraclap_spectral(const GridField& g, double alpha, SpectralOptions options = {});

/// Values at arbitrary points of the trigonometric interpolant of fraclap_spectral(g).
std::vector<double> fraclap_spectral_at(const GridField& g, double alpha, std::span<const Point> points,
                                        SpectralOptions options = {});

struct WindowedSpectralConfig {
  int points_per_axis = 256;
  double half_width = 12.0;
  /// The smooth window is 1 on |x| <= inner_fraction L and 0 beyond outer_fraction L.
  double inner_fraction = 0.45;
  double outer_fraction = 0.8;
  /// Periodic images with max |m_i| <= image_shells are integrated exactly.
  int image_shells = 3;
  double tolerance = 1e-10;
};

/// Spectral route for fields that need not decay: f = f chi + f (1 - chi) with a
/// smooth window chi. The windowed part goes through the Fourier symbol, its
/// periodic images are removed by a regular lattice-kernel integral, and the
/// far part contributes -C int f (1 - chi) / |x - z|^{n+alpha} (a regular integral
/// for |x| inside the window). Points must satisfy |x| <= inner_fraction L - 0.5.
std::vector<EvalResult> fraclap_spectral_field(const ScalarField& f, const FracParams& params,
                                               const KernelConstants& k, std::span<const Point> points,
                                               const WindowedSpectralConfig& cfg = {});

/// Computes C_pv and c_riesz from their closed forms and cross-validates them:
/// (a) PV vs spectral on a gaussian at 5 points to 1e-3 relative, and
/// (b) the PV operator applied to the Riesz potential of a bump reproduces the bump
/// at 3 interior points to 1e-2 relative. Throws ValidationError on failure.
KernelConstants validate_constants(const FracParams& params, const PvQuadConfig& cfg);

struct SelfAdjointResidual {
  double lhs = 0.0;  ///< int u fraclap(phi)
  double rhs = 0.0;  ///< int fraclap(u) phi
  double residual = 0.0;
};

/// Grid-quadrature witness of int u (-Delta)^{alpha/2} phi = int (-Delta)^{alpha/2} u phi
/// over [-box, box]^n with N points per axis and pointwise PV evaluation.
/// Nodes where the partner factor is below 1e-14 of its maximum are skipped.
SelfAdjointResidual verify_selfadjoint_identity(const ScalarField& u, const ScalarField& phi,
                                                const FracParams& params, const PvQuadConfig& cfg,
                                                const KernelConstants& k, double box, int N);

namespace detail {
/// The PV evaluator without the validated-constants check.
EvalResult pv_integral(const ScalarField& f, const Point& x, const FracParams& params, const PvQuadConfig& cfg,
                       double C_pv);
}  // namespace detail

}  // namespace fraclap
