// Acceptance run: one PASS/FAIL line per criterion, with its wall time against the allowed runtime.
// Exits 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fraclap/constants.hpp"
#include "fraclap/equivalence.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/liouville.hpp"
#include "fraclap/operator.hpp"

using namespace fraclap;

namespace {

const double kAlphas[] = {0.5, 1.0, 1.5};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void require(const Report& r, const std::string& label) {
    for (const auto& c : r.cases())
      if (!c.pass)
        require(false, label + c.name + " " + c.metric + "=" + std::to_string(c.value) + " vs " +
                           std::to_string(c.threshold));
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string config(const FracParams& p) { return "(n=" + std::to_string(p.n()) + ",a=" + fmt(p.alpha()) + ") "; }

std::vector<Point> lattice() {
  std::vector<Point> pts;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) pts.push_back({double(i), double(j), 0.0});
  return pts;
}

WindowedSpectralConfig spectral(int n) {
  WindowedSpectralConfig w;
  w.points_per_axis = n == 2 ? 256 : 128;
  return w;
}

std::vector<FracParams> configurations() {
  std::vector<FracParams> out;
  for (int n : {2, 3})
    for (double a : kAlphas) out.emplace_back(n, a);
  return out;
}

Outcome annihilation() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (double a : kAlphas) {
    const FracParams p(2, a);
    const KernelConstants k = validate_constants(p, {});
    const ScalarField c = make_catalog_field("constant", p, std::vector<double>{2.5});
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) worst = std::max(worst, std::abs(fraclap_pv(c, {d(rng), d(rng), 0}, p, {}, k).value));
    o.require(worst <= 1e-8, config(p) + "max |value| " + fmt(worst));
  }
  return o;
}

Outcome cross_evaluator() {
  Outcome o;
  const auto pts = lattice();
  for (const auto& p : configurations()) {
    const KernelConstants k = validate_constants(p, {});
    for (const char* name : {"gaussian", "bubble"}) {
      std::vector<double> args;
      if (std::string(name) == "bubble") args = {1.0};
      const ScalarField f = make_catalog_field(name, p, args);
      const auto sp = fraclap_spectral_field(f, p, k, pts, spectral(p.n()));
      double rel = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        rel = std::max(rel, std::abs(fraclap_pv(f, pts[i], p, {}, k).value - sp[i].value) / std::abs(sp[i].value));
      o.require(rel <= 1e-3, config(p) + name + " rel " + fmt(rel));
    }
  }
  return o;
}

Outcome bubble_identity() {
  Outcome o;
  const std::vector<Point> pts{{0, 0, 0}, {1, 0, 0}, {0, 2, 0}, {3, 3, 0}};
  for (const auto& p : configurations()) {
    const KernelConstants k = validate_constants(p, {});
    BubbleCheckConfig bc;
    bc.spectral = spectral(p.n());
    const Report r = verify_bubble(1.0, {}, p, pts, k, bc);
    o.require(r, config(p));
    bc.exponent = p.critical_exponent() - 0.5;
    const double spread = verify_bubble(1.0, {}, p, pts, k, bc).find("ratio_spread").value;
    o.require(spread > 0.10, config(p) + "subcritical spread only " + fmt(spread));
  }
  return o;
}

Outcome poisson_extension() {
  Outcome o;
  const FracParams p(2, 1.0);
  const KernelConstants k = validate_constants(p, {});
  const ScalarField one = make_catalog_field("constant", p, std::vector<double>{1.0});
  const PoissonExtension ext = poisson_extend(one, 1.0, p);
  const Point outside[] = {{2, 0, 0}, {0, 4, 0}, {-5, 5, 0}};
  for (const auto& x : outside) {
    const double v = fraclap_pv(ext.field(), x, p, {}, k).value;
    o.require(std::abs(v) <= 1e-2, "fraclap(u_k) = " + fmt(v));
  }
  for (double r : {1.001, 1.1, 2.0, 10.0, 1000.0}) {
    const double v = ext({r, 0, 0});
    o.require(v > 0.0 && v <= 1.0, "u_k(" + fmt(r) + ") = " + fmt(v));
  }
  const double radii[] = {16, 32, 64, 128};
  const double e = fit_decay_exponent(ext.field(), radii, {1, 0, 0});
  o.require(std::abs(e - 1.0) <= 0.02, "decay exponent " + fmt(e));
  return o;
}

Outcome riesz_decay() {
  Outcome o;
  const FracParams p(2, 1.0);
  const KernelConstants k = validate_constants(p, {});
  const double radii[] = {16, 32, 64, 128};
  const double bump = fit_decay_exponent(riesz_potential_field(make_catalog_field("bump", p, {}), p, k), radii,
                                         {1, 0, 0});
  const double dipole = fit_decay_exponent(riesz_potential_field(make_catalog_field("dipole", p, {}), p, k), radii,
                                           {1, 0, 0});
  o.require(std::abs(bump - 1.0) <= 0.02, "bump exponent " + fmt(bump));
  o.require(std::abs(dipole - 2.0) / 2.0 <= 0.05, "dipole exponent " + fmt(dipole));
  return o;
}

Outcome selfadjoint() {
  Outcome o;
  const FracParams p(2, 1.0);
  const KernelConstants k = validate_constants(p, {});
  const ScalarField u = make_catalog_field("gaussian", p, {});
  const ScalarField phi = make_catalog_field("gaussian", p, std::vector<double>{0.8, 0.5, 0.0});
  PvQuadConfig cfg;
  cfg.tolerance = 1e-6;
  const auto r = verify_selfadjoint_identity(u, phi, p, cfg, k, 12.0, 128);
  o.require(r.residual <= 1e-3, "residual " + fmt(r.residual));
  return o;
}

Outcome riesz_inversion() {
  Outcome o;
  const FracParams p(2, 1.0);
  const KernelConstants k = validate_constants(p, {});
  const Point pts[] = {{2, 0, 0}, {0, 4, 0}, {16, 0, 0}};
  o.require(verify_riesz_inversion(make_catalog_field("constant", p, std::vector<double>{1.0}), 1.0, pts, p, {}, k),
            "");
  return o;
}

Outcome green_round_trip() {
  Outcome o;
  const FracParams p(2, 1.0);
  const KernelConstants k = validate_constants(p, {});
  const ScalarField bump = make_catalog_field("bump", p, {});
  const ScalarField v = green_solution_field(bump, 4.0, p, RieszConfig{1e-9});
  for (double r : {0.0, 0.3, 0.7}) {
    const Point x{r, 0, 0};
    const double back = fraclap_pv(v, x, p, {}, k).value;
    const double err = std::abs(back - bump(x)) / bump(x);
    o.require(err <= 0.03, "round trip at " + fmt(r) + " rel " + fmt(err));
  }
  const std::pair<Point, Point> pairs[] = {{{0.5, 0, 0}, {0, 0.5, 0}}, {{0.9, 0, 0}, {-0.9, 0, 0}},
                                           {{0.1, 0.2, 0}, {-0.3, 0.6, 0}}, {{3.5, 1, 0}, {-2, -2, 0}}};
  o.require(green_symmetry_check(4.0, p, pairs), "");
  return o;
}

Outcome equivalence_machinery() {
  Outcome o;
  const FracParams p(2, 1.0);
  const KernelConstants k = validate_constants(p, {});
  const std::vector<Point> inner{{0, 0, 0}, {0.5, 0, 0}, {0, 0.9, 0}};
  const auto R_list = default_equivalence_radii(p);
  o.require(verify_pde_to_integral(normalized_bubble(1.0, {}, p), p.critical_exponent(), R_list, p, inner, k), "");
  return o;
}

Outcome divergence() {
  Outcome o;
  const double Rs[] = {1, 2, 4, 8, 16, 32};
  for (const auto& p : configurations()) {
    const Report r = divergence_check(p, 1.0, Rs, {0.3, 0, 0}, KernelConstants::closed_form(p));
    o.require(r, config(p));
    if (p.n() == 2 && p.alpha() == 1.0) {
      const double e = r.exponents().front().fitted;
      o.require(std::abs(e - 1.0) <= 1e-6, "closed-form case exponent " + fmt(e));
    }
  }
  return o;
}

Outcome liouville_trace() {
  Outcome o;
  const FracParams p(2, 1.0);
  const KernelConstants k = validate_constants(p, {});
  const ScalarField psi = make_catalog_field("dipole", p, {});
  const ScalarField one = make_catalog_field("constant", p, std::vector<double>{1.0});
  const double ks[] = {8, 16, 32};
  const LiouvilleTrace trace = trace_pairing(one, psi, ks, p, 128);
  for (double v : trace.pairing_values) o.require(std::abs(v) <= 1e-10, "pairing " + fmt(v));
  const ScalarField phi = build_phi(psi, p, {}, k);
  const double k_i1[] = {32, 64, 128};
  o.require(check_I1_vanishes(one, phi, k_i1, 2.0, p), "I1 ");
  const double rs[] = {2, 4, 8};
  o.require(check_I2_bound(one, 16.0, rs, phi, p, {}, k), "I2 ");
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"constant annihilation", 10, annihilation},
      {"cross-evaluator oracle", 300, cross_evaluator},
      {"bubble identity", 300, bubble_identity},
      {"poisson extension", 120, poisson_extension},
      {"riesz potential decay", 60, riesz_decay},
      {"self-adjointness", 60, selfadjoint},
      {"riesz inversion", 180, riesz_inversion},
      {"green round trip", 180, green_round_trip},
      {"equivalence machinery", 300, equivalence_machinery},
      {"divergence criterion", 10, divergence},
      {"liouville trace", 180, liouville_trace},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(t <= c.limit_seconds, "runtime " + fmt(t) + " s over " + fmt(c.limit_seconds) + " s");
    std::printf("criterion %2d %-24s %s  %.1f s%s%s\n", index++, c.name, o.pass ? "PASS" : "FAIL", t,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
