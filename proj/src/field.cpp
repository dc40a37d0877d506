#include "fraclap/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "fraclap/errors.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool on_first_axis(const Point& c) { return c[1] == 0.0 && c[2] == 0.0; }
bool is_origin(const Point& c) { return c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0; }
}  // namespace

std::optional<double> FieldMeta::support_radius() const {
  if (support.empty()) return std::nullopt;
  double r = 0.0;
  for (const auto& b : support) r = std::max(r, norm(b.center) + b.radius);
  return r;
}

ScalarField::ScalarField(std::string name, Fn eval, FieldMeta meta, Profile radial_profile)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      meta_(std::make_shared<const FieldMeta>(std::move(meta))),
      profile_(std::move(radial_profile)) {}

ScalarField ScalarField::with_atoms(std::vector<RadialAtom> atoms) const {
  ScalarField copy = *this;
  copy.atoms_ = std::make_shared<const std::vector<RadialAtom>>(std::move(atoms));
  return copy;
}

std::vector<RadialAtom> ScalarField::radial_atoms() const {
  if (atoms_) return *atoms_;
  if (meta_->is_radial && profile_) return {RadialAtom{1.0, Point{0, 0, 0}, std::make_shared<const ScalarField>(*this)}};
  return {};
}

ScalarField zero_field() {
  FieldMeta m;
  m.is_constant = true;
  m.far_limit = 0.0;
  m.is_radial = m.is_axisymmetric = true;
  m.bounded = true;
  m.moment_zero = true;
  return ScalarField("zero", [](const Point&) { return 0.0; }, m, [](double) { return 0.0; });
}

ScalarField linear_combination(std::span<const double> weights, std::span<const ScalarField> fields) {
  if (weights.size() != fields.size()) throw PreconditionError("linear_combination: size mismatch");
  std::vector<double> w;
  std::vector<ScalarField> fs;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) {
      w.push_back(weights[i]);
      fs.push_back(fields[i]);
    }
  }
  if (fs.empty()) return zero_field();

  FieldMeta m;
  m.is_constant = true;
  m.is_radial = true;
  m.is_axisymmetric = true;
  m.moment_zero = true;
  m.bounded = true;
  bool all_compact = true;
  bool limit_known = true;
  bool decay_known = true;
  double limit = 0.0;
  double decay = kInf;
  bool all_profiles = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& fm = fs[i].meta();
    m.is_constant = m.is_constant && fm.is_constant;
    m.is_radial = m.is_radial && fm.is_radial;
    m.is_axisymmetric = m.is_axisymmetric && (fm.is_axisymmetric || fm.is_radial);
    m.moment_zero = m.moment_zero && fm.moment_zero;
    m.bounded = m.bounded && fm.bounded;
    all_profiles = all_profiles && fs[i].has_profile();
    all_compact = all_compact && fm.compactly_supported();
    m.kinks.insert(m.kinks.end(), fm.kinks.begin(), fm.kinks.end());
    if (fm.far_limit) {
      limit += w[i] * *fm.far_limit;
    } else if (!(fm.decay_exponent || fm.compactly_supported())) {
      limit_known = false;
    }
    if (!fm.is_constant) {
      if (fm.decay_exponent) {
        decay = std::min(decay, *fm.decay_exponent);
      } else if (!fm.compactly_supported()) {
        decay_known = false;
      }
    }
  }
  if (all_compact) {
    for (const auto& f : fs) m.support.insert(m.support.end(), f.meta().support.begin(), f.meta().support.end());
  }
  if (limit_known) m.far_limit = limit;
  if (decay_known && !m.is_constant) m.decay_exponent = decay;

  auto eval = [w, fs](const Point& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) s += w[i] * fs[i](x);
    return s;
  };
  ScalarField::Profile profile;
  if (m.is_radial && all_profiles) {
    profile = [w, fs](double r) {
      double s = 0.0;
      for (std::size_t i = 0; i < fs.size(); ++i) s += w[i] * fs[i].profile(r);
      return s;
    };
  }
  ScalarField out("combination", eval, m, profile);
  std::vector<RadialAtom> atoms;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto part = fs[i].radial_atoms();
    if (part.empty()) return out;
    for (auto& a : part) a.weight *= w[i];
    atoms.insert(atoms.end(), part.begin(), part.end());
  }
  return out.with_atoms(std::move(atoms));
}

ScalarField translated(const ScalarField& f, const Point& shift) {
  FieldMeta m = f.meta();
  for (auto& b : m.support) b.center = b.center + shift;
  for (auto& b : m.kinks) b.center = b.center + shift;
  const bool still_radial = f.meta().is_radial && is_origin(shift);
  m.is_axisymmetric = (f.meta().is_axisymmetric || f.meta().is_radial) && on_first_axis(shift);
  m.is_radial = still_radial || f.meta().is_constant;
  ScalarField::Profile profile;
  if (m.is_radial && f.has_profile()) profile = [f](double r) { return f.profile(r); };
  ScalarField out(f.name() + "_translated", [f, shift](const Point& x) { return f(x - shift); }, m, profile);
  auto atoms = f.radial_atoms();
  if (atoms.empty()) return out;
  for (auto& a : atoms) a.center = a.center + shift;
  return out.with_atoms(std::move(atoms));
}

ScalarField dilated(const ScalarField& f, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("dilated: lambda must be positive");
  FieldMeta m = f.meta();
  for (auto& b : m.support) {
    b.center = (1.0 / lambda) * b.center;
    b.radius /= lambda;
  }
  for (auto& b : m.kinks) {
    b.center = (1.0 / lambda) * b.center;
    b.radius /= lambda;
  }
  ScalarField::Profile profile;
  if (f.has_profile()) profile = [f, lambda](double r) { return f.profile(lambda * r); };
  return ScalarField(f.name() + "_dilated", [f, lambda](const Point& x) { return f(lambda * x); }, m, profile);
}

ScalarField power(const ScalarField& f, double p) {
  if (!(p > 0.0)) throw PreconditionError("power: exponent must be positive");
  FieldMeta m = f.meta();
  m.moment_zero = false;
  if (m.far_limit) {
    const double lim = *m.far_limit;
    m.far_limit = std::pow(std::abs(lim), p);
    if (m.decay_exponent) {
      // |f^p - L^p| ~ p L^{p-1} |f - L| when L != 0.
      if (lim == 0.0) m.decay_exponent = *m.decay_exponent * p;
    }
  }
  ScalarField::Profile profile;
  if (f.has_profile()) profile = [f, p](double r) { return std::pow(std::abs(f.profile(r)), p); };
  return ScalarField(f.name() + "_pow", [f, p](const Point& x) { return std::pow(std::abs(f(x)), p); }, m, profile);
}

double bump_profile(double s) {
  const double a = std::abs(s);
  if (a >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - a * a));
}

double bump_mass(int n) {
  quad::Budget budget(1'000'000);
  const double sigma = n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  auto r = quad::integrate([n](double s) { return bump_profile(s) * std::pow(s, n - 1); }, 0.0, 1.0,
                           {1e-15, 1e-14}, budget, 4);
  return sigma * r.value;
}

namespace {

Point read_point(std::span<const double> args, std::size_t offset, int n) {
  Point c{0, 0, 0};
  for (int i = 0; i < n; ++i) c[i] = args[offset + i];
  return c;
}

[[noreturn]] void malformed(const std::string& name, std::size_t count) {
  throw PreconditionError("malformed arguments for catalog field '" + name + "' (" + std::to_string(count) +
                          " values)");
}

ScalarField make_constant(std::span<const double> args) {
  if (args.size() != 1) malformed("constant", args.size());
  const double c = args[0];
  FieldMeta m;
  m.is_constant = true;
  m.far_limit = c;
  m.is_radial = m.is_axisymmetric = true;
  m.bounded = true;
  m.moment_zero = c == 0.0;
  return ScalarField("constant", [c](const Point&) { return c; }, m, [c](double) { return c; });
}

ScalarField make_gaussian(const FracParams& p, std::span<const double> args) {
  const int n = p.n();
  if (!(args.empty() || args.size() == 1 || args.size() == 1 + static_cast<std::size_t>(n)))
    malformed("gaussian", args.size());
  const double width = args.empty() ? 1.0 : args[0];
  if (!(width > 0.0)) throw PreconditionError("gaussian width must be positive");
  const Point c = args.size() > 1 ? read_point(args, 1, n) : Point{0, 0, 0};
  FieldMeta m;
  m.decay_exponent = kInf;
  m.far_limit = 0.0;
  m.bounded = true;
  m.is_radial = is_origin(c);
  m.is_axisymmetric = on_first_axis(c);
  const double inv = 1.0 / (width * width);
  ScalarField::Profile profile;
  if (m.is_radial) profile = [inv](double r) { return std::exp(-r * r * inv); };
  ScalarField out("gaussian", [c, inv](const Point& x) { const Point d = x - c; return std::exp(-dot(d, d) * inv); }, m,
                  profile);
  if (m.is_radial) return out;
  const double centred_args[] = {width};
  return out.with_atoms({RadialAtom{1.0, c, std::make_shared<const ScalarField>(make_gaussian(p, centred_args))}});
}

ScalarField make_bubble(const FracParams& p, std::span<const double> args) {
  const int n = p.n();
  const std::size_t un = static_cast<std::size_t>(n);
  if (!(args.size() == 1 || args.size() == 1 + un || args.size() == 2 + un)) malformed("bubble", args.size());
  const double t = args[0];
  if (!(t > 0.0)) throw PreconditionError("bubble scale t must be positive");
  const Point x0 = args.size() > 1 ? read_point(args, 1, n) : Point{0, 0, 0};
  const double amp = args.size() == 2 + un ? args[1 + un] : 1.0;
  const double e = 0.5 * (n - p.alpha());
  FieldMeta m;
  m.decay_exponent = n - p.alpha();
  m.far_limit = 0.0;
  m.bounded = true;
  m.is_radial = is_origin(x0);
  m.is_axisymmetric = on_first_axis(x0);
  ScalarField::Profile profile;
  if (m.is_radial) profile = [t, e, amp](double r) { return amp * std::pow(t / (t * t + r * r), e); };
  ScalarField out(
      "bubble",
      [t, e, amp, x0](const Point& x) {
        const Point d = x - x0;
        return amp * std::pow(t / (t * t + dot(d, d)), e);
      },
      m, profile);
  if (m.is_radial) return out;
  std::vector<double> centred(2 + un, 0.0);
  centred[0] = t;
  centred[1 + un] = amp;
  return out.with_atoms({RadialAtom{1.0, x0, std::make_shared<const ScalarField>(make_bubble(p, centred))}});
}

ScalarField make_bump(const FracParams& p, std::span<const double> args) {
  const int n = p.n();
  const std::size_t un = static_cast<std::size_t>(n);
  if (!(args.size() <= 1 || args.size() == 1 + un || args.size() == 2 + un)) malformed("bump", args.size());
  const double radius = args.empty() ? 1.0 : args[0];
  if (!(radius > 0.0)) throw PreconditionError("bump radius must be positive");
  const Point c = args.size() > 1 ? read_point(args, 1, n) : Point{0, 0, 0};
  const double amp = args.size() == 2 + un ? args[1 + un] : 1.0;
  FieldMeta m;
  m.decay_exponent = kInf;
  m.far_limit = 0.0;
  m.bounded = true;
  m.support = {Ball{c, radius}};
  m.is_radial = is_origin(c);
  m.is_axisymmetric = on_first_axis(c);
  ScalarField::Profile profile;
  if (m.is_radial) profile = [radius, amp](double r) { return amp * bump_profile(r / radius); };
  ScalarField out("bump", [c, radius, amp](const Point& x) { return amp * bump_profile(distance(x, c) / radius); }, m,
                  profile);
  if (m.is_radial) return out;
  std::vector<double> centred(2 + un, 0.0);
  centred[0] = radius;
  centred[1 + un] = amp;
  return out.with_atoms({RadialAtom{1.0, c, std::make_shared<const ScalarField>(make_bump(p, centred))}});
}

ScalarField make_dipole(const FracParams& p, std::span<const double> args) {
  if (args.size() > 1) malformed("dipole", args.size());
  const double a = args.empty() ? 2.0 : args[0];
  if (!(a >= 1.0)) throw PreconditionError("dipole half separation must be >= 1 (disjoint lobes)");
  const Point shift{a, 0, 0};
  FieldMeta m;
  m.decay_exponent = kInf;
  m.far_limit = 0.0;
  m.bounded = true;
  m.moment_zero = true;
  m.is_axisymmetric = true;
  m.support = {Ball{shift, 1.0}, Ball{-1.0 * shift, 1.0}};
  const auto lobe = std::make_shared<const ScalarField>(make_bump(p, {}));
  return ScalarField(
             "dipole",
             [shift](const Point& x) { return bump_profile(norm(x - shift)) - bump_profile(norm(x + shift)); }, m)
      .with_atoms({RadialAtom{1.0, shift, lobe}, RadialAtom{-1.0, -1.0 * shift, lobe}});
}

}  // namespace

ScalarField make_catalog_field(const std::string& name, const FracParams& params, std::span<const double> args) {
  for (double v : args) {
    if (!std::isfinite(v)) malformed(name, args.size());
  }
  if (name == "constant") return make_constant(args);
  if (name == "gaussian") return make_gaussian(params, args);
  if (name == "bubble") return make_bubble(params, args);
  if (name == "bump") return make_bump(params, args);
  if (name == "dipole") return make_dipole(params, args);
  throw PreconditionError("unknown catalog field '" + name + "'");
}

LAlphaCheck l_alpha_membership(const ScalarField& f, const FracParams& params, double truncation) {
  const int n = params.n();
  const double a = params.alpha();
  quad::Budget budget(50'000'000);
  const auto& m = f.meta();
  double T = truncation;
  if (auto s = m.support_radius()) T = std::min(T, *s);

  auto shell = [&](double s) {
    auto ang = quad::integrate_sphere(
        n, [&](const Point& w) { return std::abs(f(s * w)); }, {1e-12, 1e-8}, budget);
    return ang.value * std::pow(s, n - 1) / (1.0 + std::pow(s, n + a));
  };
  const auto inner = quad::integrate(shell, 0.0, T, {1e-12, 1e-8}, budget, 8);

  LAlphaCheck out;
  out.truncated_integral = inner.value;
  if (m.compactly_supported()) {
    out.finite = true;
    return out;
  }
  const bool decays = m.decay_exponent && *m.decay_exponent > 0.0;
  out.finite = m.bounded || decays;
  if (!out.finite) {
    out.tail_bound = kInf;
    return out;
  }
  // sup |f| beyond T estimated from the shell at T and the far limit.
  double sup = m.far_limit ? std::abs(*m.far_limit) : 0.0;
  for (int i = 0; i < 64; ++i) {
    const double th = 2.0 * std::numbers::pi * i / 64.0;
    const Point w = n == 2 ? Point{std::cos(th), std::sin(th), 0.0}
                           : Point{std::cos(th) * std::sin(0.3 + i), std::sin(th) * std::sin(0.3 + i), std::cos(0.3 + i)};
    sup = std::max(sup, std::abs(f(T * w)));
  }
  out.tail_bound = 2.0 * sup * params.sphere_area() * std::pow(T, -a) / a;
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("loglog_slope: need matching samples");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i]))
      throw PreconditionError("loglog_slope: samples must be positive and finite");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double fit_decay_exponent(const ScalarField& f, std::span<const double> radii, const Point& direction) {
  if (radii.size() < 4) throw PreconditionError("fit_decay_exponent: need at least 4 radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw PreconditionError("fit_decay_exponent: radii must increase");
  }
  if (auto s = f.meta().support_radius(); s && radii.front() <= *s)
    throw PreconditionError("fit_decay_exponent: radii must lie beyond the support");
  const double len = norm(direction);
  if (!(len > 0.0)) throw PreconditionError("fit_decay_exponent: direction must be nonzero");
  const Point d = (1.0 / len) * direction;
  std::vector<double> vals;
  for (double r : radii) {
    const double v = std::abs(f(r * d));
    if (!(v > 0.0) || !std::isfinite(v))
      throw PreconditionError("fit_decay_exponent: field is zero or non-finite at r = " + std::to_string(r));
    vals.push_back(v);
  }
  return -loglog_slope(radii, vals);
}

}  // namespace fraclap
