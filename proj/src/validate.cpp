#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "fraclap/errors.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/operator.hpp"

namespace fraclap {

namespace {

std::vector<Point> gaussian_check_points(int n) {
  if (n == 2) return {{0, 0, 0}, {0.3, 0, 0}, {0, 0.5, 0}, {-0.4, 0.3, 0}, {0.5, 0.5, 0}};
  return {{0, 0, 0}, {0.3, 0, 0}, {0, 0.5, 0}, {-0.4, 0.3, 0}, {0.3, 0.3, 0.3}};
}

KernelConstants compute_validated(const FracParams& params, const PvQuadConfig& cfg) {
  KernelConstants k = KernelConstants::closed_form(params);
  KernelConstants provisional = k;
  provisional.validated = true;
  const int n = params.n();
  std::ostringstream failures;

  // (a) PV against the Fourier symbol on a gaussian.
  const ScalarField gauss = make_catalog_field("gaussian", params, {});
  const auto points = gaussian_check_points(n);
  WindowedSpectralConfig wcfg;
  wcfg.points_per_axis = n == 2 ? 256 : 128;
  const auto spectral = fraclap_spectral_field(gauss, params, provisional, points, wcfg);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double pv = detail::pv_integral(gauss, points[i], params, cfg, k.C_pv).value;
    const double rel = std::abs(pv - spectral[i].value) / std::abs(spectral[i].value);
    if (!(rel <= 1e-3)) failures << " (a) point " << i << " relative error " << rel << ";";
  }

  // (b) The PV operator inverts the Riesz potential on a bump.
  const ScalarField bump = make_catalog_field("bump", params, {});
  const ScalarField potential = riesz_potential_field(bump, params, provisional);
  const Point interior[] = {{0, 0, 0}, {0.3, 0, 0}, {0, 0.5, 0}};
  for (std::size_t i = 0; i < 3; ++i) {
    const double back = detail::pv_integral(potential, interior[i], params, cfg, k.C_pv).value;
    const double rel = std::abs(back - bump(interior[i])) / std::abs(bump(interior[i]));
    if (!(rel <= 1e-2)) failures << " (b) point " << i << " relative error " << rel << ";";
  }

  if (!failures.str().empty())
    throw ValidationError("validate_constants failed for n=" + std::to_string(n) +
                          ", alpha=" + std::to_string(params.alpha()) + ":" + failures.str());
  k.validated = true;
  return k;
}

}  // namespace

KernelConstants validate_constants(const FracParams& params, const PvQuadConfig& cfg) {
  cfg.validate();
  // The checks depend only on (n, alpha) and the PV configuration; cache per process.
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double, double, double>, KernelConstants> cache;
  const auto key = std::make_tuple(params.n(), params.alpha(), cfg.inner_radius, cfg.outer_radius, cfg.tolerance);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const KernelConstants k = compute_validated(params, cfg);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, k);
  return k;
}

SelfAdjointResidual verify_selfadjoint_identity(const ScalarField& u, const ScalarField& phi,
                                                const FracParams& params, const PvQuadConfig& cfg,
                                                const KernelConstants& k, double box, int N) {
  if (!(box > 0.0) || N < 2) throw PreconditionError("verify_selfadjoint_identity: need box > 0 and N >= 2");
  const int n = params.n();
  const double h = 2.0 * box / N;
  // Cell-centred midpoint nodes of [-box, box]^n.
  std::vector<Point> nodes;
  const int nz = n == 3 ? N : 1;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int l = 0; l < nz; ++l)
        nodes.push_back({-box + (i + 0.5) * h, -box + (j + 0.5) * h, n == 3 ? -box + (l + 0.5) * h : 0.0});
  std::vector<double> uv(nodes.size()), pv(nodes.size());
  double umax = 0.0, pmax = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    uv[i] = u(nodes[i]);
    pv[i] = phi(nodes[i]);
    umax = std::max(umax, std::abs(uv[i]));
    pmax = std::max(pmax, std::abs(pv[i]));
  }
  const double cell = std::pow(h, n);
  SelfAdjointResidual out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::abs(uv[i]) >= 1e-14 * umax) out.lhs += uv[i] * fraclap_pv(phi, nodes[i], params, cfg, k).value * cell;
    if (std::abs(pv[i]) >= 1e-14 * pmax) out.rhs += fraclap_pv(u, nodes[i], params, cfg, k).value * pv[i] * cell;
  }
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace fraclap
