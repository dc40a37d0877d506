#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with a shared evaluation budget,
// plus the spherical integration helpers built on it.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/params.hpp"

namespace fraclap::quad {

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
};

inline Result operator+(Result a, Result b) { return {a.value + b.value, a.error + b.error}; }

/// Counts integrand evaluations across nested integrals; throws once exhausted.
class Budget {
 public:
  explicit Budget(std::size_t limit) : limit_(limit) {}

  void charge(std::size_t n) {
    used_ += n;
    if (used_ > limit_) {
      throw QuadratureError("quadrature budget of " + std::to_string(limit_) + " evaluations exhausted");
    }
  }
  std::size_t used() const { return used_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error, resabs;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b, Budget& budget) {
  budget.charge(15);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, 15> fv;
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv[j] = f(c - dx);
    fv[14 - j] = f(c + dx);
  }
  double kron = fv[7] * kWgk[7];
  double gauss = fv[7] * kWg[3];
  double resabs = std::abs(kron);
  for (int j = 0; j < 7; ++j) {
    const double s = fv[j] + fv[14 - j];
    kron += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  const double mean = 0.5 * kron;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  const double ah = std::abs(h);
  resasc *= ah;
  resabs *= ah;
  double err = std::abs((kron - gauss) * h);
  // QUADPACK rescaling of the Gauss/Kronrod difference.
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, kron * h, err, resabs};
}

}  // namespace detail

/// Globally adaptive integration of f over [a, b], started from `initial_panels`
/// equal panels; the panel with the largest error is bisected until the summed
/// error is below max(tol.abs, tol.rel * |value|) or `max_panels` is reached.
template <class F>
Result integrate(F&& f, double a, double b, Tolerance tol, Budget& budget, int initial_panels = 1,
                 int max_panels = 2000) {
  if (a == b) return {};
  std::priority_queue<detail::Panel> heap;
  double value = 0.0;
  double error = 0.0;
  double resabs = 0.0;
  const int m = std::max(1, initial_panels);
  for (int i = 0; i < m; ++i) {
    const double lo = a + (b - a) * i / m;
    const double hi = (i + 1 == m) ? b : a + (b - a) * (i + 1) / m;
    auto p = detail::gk15(f, lo, hi, budget);
    value += p.value;
    error += p.error;
    resabs += p.resabs;
    heap.push(p);
  }
  int panels = m;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto target = [&] { return std::max({tol.abs, tol.rel * std::abs(value), 100.0 * eps * resabs}); };
  while (error > target() && panels < max_panels) {
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval at machine resolution
    heap.pop();
    auto left = detail::gk15(f, worst.a, mid, budget);
    auto right = detail::gk15(f, mid, worst.b, budget);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    resabs += left.resabs + right.resabs - worst.resabs;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Recompute sums to shed accumulated cancellation.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error};
}

/// Orthonormal frame whose first vector is `axis` (only the first n components matter).
struct Frame {
  Point e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};
};

inline Frame frame_from_axis(int n, const Point& axis) {
  Frame fr;
  const double len = norm(axis);
  if (len == 0.0) return fr;
  fr.e0 = (1.0 / len) * axis;
  if (n == 2) {
    fr.e1 = {-fr.e0[1], fr.e0[0], 0.0};
    fr.e2 = {0, 0, 0};
    return fr;
  }
  const Point trial = std::abs(fr.e0[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
  Point v = trial - dot(trial, fr.e0) * fr.e0;
  fr.e1 = (1.0 / norm(v)) * v;
  fr.e2 = {fr.e0[1] * fr.e1[2] - fr.e0[2] * fr.e1[1], fr.e0[2] * fr.e1[0] - fr.e0[0] * fr.e1[2],
           fr.e0[0] * fr.e1[1] - fr.e0[1] * fr.e1[0]};
  return fr;
}

/// Integral of g(omega) over S^{n-1}. The polar direction is `frame.e0`, so a
/// peak of g near e0 sits on a panel boundary.
template <class G>
Result integrate_sphere(int n, G&& g, const Frame& frame, Tolerance tol, Budget& budget) {
  constexpr double pi = std::numbers::pi;
  if (n == 2) {
    auto ring = [&](double th) {
      return g(Point{std::cos(th) * frame.e0[0] + std::sin(th) * frame.e1[0],
                     std::cos(th) * frame.e0[1] + std::sin(th) * frame.e1[1], 0.0});
    };
    return integrate(ring, -pi, pi, tol, budget, 4);
  }
  // n == 3: polar angle theta from e0, azimuth phi.
  Tolerance inner{tol.abs / (4.0 * pi), tol.rel};
  double inner_err = 0.0;
  auto polar = [&](double th) {
    const double st = std::sin(th), ct = std::cos(th);
    auto az = [&](double ph) {
      const double cp = std::cos(ph), sp = std::sin(ph);
      Point w;
      for (int i = 0; i < 3; ++i) w[i] = ct * frame.e0[i] + st * (cp * frame.e1[i] + sp * frame.e2[i]);
      return g(w);
    };
    auto r = integrate(az, -pi, pi, inner, budget, 2);
    inner_err += r.error * st;
    return r.value * st;
  };
  auto outer = integrate(polar, 0.0, pi, tol, budget, 2);
  outer.error += inner_err / 15.0;
  return outer;
}

template <class G>
Result integrate_sphere(int n, G&& g, Tolerance tol, Budget& budget) {
  return integrate_sphere(n, std::forward<G>(g), Frame{}, tol, budget);
}

/// Integral of g(omega) over the spherical cap {omega : angle(omega, frame.e0) < theta_max}.
/// The angle is parametrised as theta_max sin(t), which removes the square-root
/// behaviour of chord lengths at the rim.
template <class G>
Result integrate_cap(int n, G&& g, const Frame& frame, double theta_max, Tolerance tol, Budget& budget) {
  constexpr double pi = std::numbers::pi;
  if (n == 2) {
    auto arc = [&](double t) {
      const double th = theta_max * std::sin(t);
      const Point w{std::cos(th) * frame.e0[0] + std::sin(th) * frame.e1[0],
                    std::cos(th) * frame.e0[1] + std::sin(th) * frame.e1[1], 0.0};
      return g(w) * theta_max * std::cos(t);
    };
    return integrate(arc, -0.5 * pi, 0.5 * pi, tol, budget, 2);
  }
  Tolerance inner{tol.abs / (2.0 * pi), tol.rel};
  double inner_err = 0.0;
  auto polar = [&](double t) {
    const double th = theta_max * std::sin(t);
    const double jac = std::sin(th) * theta_max * std::cos(t);
    if (jac == 0.0) return 0.0;
    const double st = std::sin(th), ct = std::cos(th);
    auto az = [&](double ph) {
      const double cp = std::cos(ph), sp = std::sin(ph);
      Point w;
      for (int i = 0; i < 3; ++i) w[i] = ct * frame.e0[i] + st * (cp * frame.e1[i] + sp * frame.e2[i]);
      return g(w);
    };
    auto r = integrate(az, -pi, pi, inner, budget, 2);
    inner_err += r.error * jac;
    return r.value * jac;
  };
  auto outer = integrate(polar, 0.0, 0.5 * pi, tol, budget, 1);
  outer.error += inner_err / 15.0;
  return outer;
}

/// Parameter interval [lo, hi] of the ray x + rho*omega (rho >= 0) inside the ball; empty if lo >= hi.
struct Chord {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(hi > lo); }
};

inline Chord ray_ball_chord(const Point& x, const Point& omega, const Point& centre, double radius) {
  const Point d = x - centre;
  const double b = dot(d, omega);
  const double c = dot(d, d) - radius * radius;
  const double disc = b * b - c;
  if (disc <= 0.0) return {};
  const double s = std::sqrt(disc);
  double lo = -b - s;
  double hi = -b + s;
  if (hi <= 0.0) return {};
  return {std::max(lo, 0.0), hi};
}

}  // namespace fraclap::quad
