#pragma once

#include "fraclap/params.hpp"

namespace fraclap {

/// Normalisations tying the principal-value operator, its Fourier symbol and
/// the fundamental solution together.
struct KernelConstants {
  /// C_{n,alpha}: makes C PV int (f(x)-f(z))/|x-z|^{n+alpha} dz have symbol |xi|^alpha.
  double C_pv = 0.0;
  /// c_n: c |x|^{alpha-n} is the fundamental solution of (-Delta)^{alpha/2}.
  double c_riesz = 0.0;
  /// Set only by validate_constants after the cross-evaluator checks pass.
  bool validated = false;

  /// Gamma-function closed forms, not yet validated.
  static KernelConstants closed_form(const FracParams& params);
};

double pv_constant(const FracParams& params);
double riesz_constant(const FracParams& params);

/// Gamma(n/2) pi^{-n/2-1} sin(pi alpha/2), the prefactor of the exterior Poisson kernel.
double poisson_prefactor(const FracParams& params);

/// Ball Green's function normaliser kappa = Gamma(n/2) / (2^alpha pi^{n/2} Gamma(alpha/2)^2).
double green_constant(const FracParams& params);

/// lambda with (-Delta)^{alpha/2} U = lambda U^p for U = (1 + |x|^2)^{-(n-alpha)/2}.
double bubble_eigenvalue(const FracParams& params);

}  // namespace fraclap
