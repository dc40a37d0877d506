#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraclap/params.hpp"

namespace fraclap {

struct Ball {
  Point center{};
  double radius = 0.0;
};

/// Analytic facts about a field that the quadratures rely on.
///
/// `decay_exponent` describes |f(x) - far_limit| = O(|x|^-beta); gaussians use +inf.
/// `support` lists balls whose union contains supp f (empty means unbounded support).
/// `kinks` lists spheres across which f is continuous but not C^2.
struct FieldMeta {
  std::optional<double> decay_exponent;
  std::optional<double> far_limit;
  bool is_constant = false;
  bool is_radial = false;
  /// Invariant under rotations fixing the first coordinate axis.
  bool is_axisymmetric = false;
  bool moment_zero = false;
  bool bounded = false;
  std::vector<Ball> support;
  std::vector<Ball> kinks;

  bool compactly_supported() const { return !support.empty(); }
  /// Radius of the smallest origin-centred ball containing every support ball.
  std::optional<double> support_radius() const;
};

class ScalarField;

/// weight * g(x - center) for a radial field g.
struct RadialAtom {
  double weight = 1.0;
  Point center{};
  std::shared_ptr<const ScalarField> radial;
};

/// An evaluatable function R^n -> R plus the metadata that makes its
/// principal-value tails and Riesz integrals computable. Immutable and cheap to copy.
class ScalarField {
 public:
  using Fn = std::function<double(const Point&)>;
  using Profile = std::function<double(double)>;

  ScalarField(std::string name, Fn eval, FieldMeta meta, Profile radial_profile = {});

  double operator()(const Point& x) const { return eval_(x); }
  const FieldMeta& meta() const { return *meta_; }
  const std::string& name() const { return name_; }

  /// f(r e_1) for radial fields; nullopt-like empty function otherwise.
  bool has_profile() const { return static_cast<bool>(profile_); }
  double profile(double r) const { return profile_(r); }

  /// Copy that also records f = sum_i w_i g_i(x - c_i) (exact, not checked).
  ScalarField with_atoms(std::vector<RadialAtom> atoms) const;
  /// The recorded decomposition; a radial field with a profile is its own single atom.
  /// Empty when no decomposition is known.
  std::vector<RadialAtom> radial_atoms() const;

 private:
  std::string name_;
  Fn eval_;
  std::shared_ptr<const FieldMeta> meta_;
  Profile profile_;
  std::shared_ptr<const std::vector<RadialAtom>> atoms_;
};

/// sum_i weights[i] * fields[i], metadata merged conservatively.
ScalarField linear_combination(std::span<const double> weights, std::span<const ScalarField> fields);
/// x -> f(x - shift).
ScalarField translated(const ScalarField& f, const Point& shift);
/// x -> f(lambda x).
ScalarField dilated(const ScalarField& f, double lambda);
/// x -> |f(x)|^p, for nonnegative fields (the u^p source of the semilinear equation).
ScalarField power(const ScalarField& f, double p);
/// The identically-zero field.
ScalarField zero_field();

/// Catalog of analytically known test fields.
///
///  - constant: args {c}
///  - gaussian: args {} | {width} | {width, centre...}; exp(-|x-c|^2 / width^2)
///  - bubble:   args {t} | {t, x0...} | {t, x0..., amplitude}; a (t / (t^2 + |x - x0|^2))^{(n-alpha)/2}
///  - bump:     args {} | {radius} | {radius, centre...} | {radius, centre..., amplitude}
///  - dipole:   args {} | {half_separation}; g(x - a) - g(x + a) with a = half_separation e_1 (default 2)
ScalarField make_catalog_field(const std::string& name, const FracParams& params, std::span<const double> args);

/// The C_0^infinity mollifier profile exp(1 - 1/(1 - s^2)) for s < 1.
double bump_profile(double s);
/// Integral over R^n of the unit-radius bump profile.
double bump_mass(int n);

/// Result of a truncated L_alpha-norm computation.
struct LAlphaCheck {
  double truncated_integral = 0.0;
  double tail_bound = 0.0;
  bool finite = false;
};

/// int |f| / (1 + |x|^{n+alpha}) over a ball of radius `truncation`, plus an analytic tail bound.
LAlphaCheck l_alpha_membership(const ScalarField& f, const FracParams& params, double truncation = 64.0);

/// Negated least-squares slope of log|f(r d)| against log r.
/// Throws PreconditionError if fewer than 4 radii, radii not increasing,
/// a radius inside the support, or f vanishes / is non-finite at a sample.
double fit_decay_exponent(const ScalarField& f, std::span<const double> radii, const Point& direction);

/// Least-squares slope of log y against log x (both positive).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace fraclap
