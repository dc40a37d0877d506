#include "fraclap/grid.hpp"

#include <cmath>
#include <numeric>

#include "fraclap/errors.hpp"
#include "fraclap/simd.hpp"

namespace fraclap {

namespace {
std::size_t lattice_size(int n, int N) {
  std::size_t s = 1;
  for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(N);
  return s;
}
}  // namespace

GridField::GridField(int n, double half_width, int points_per_axis, std::vector<double> samples)
    : n_(n), L_(half_width), N_(points_per_axis), samples_(std::move(samples)) {
  if (n != 2 && n != 3) throw PreconditionError("GridField: n must be 2 or 3");
  if (points_per_axis < 16 || points_per_axis % 2 != 0)
    throw PreconditionError("GridField: points per axis must be even and >= 16");
  if (!(half_width > 0.0)) throw PreconditionError("GridField: box half width must be positive");
  if (samples_.size() != lattice_size(n, points_per_axis)) throw PreconditionError("GridField: sample count mismatch");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw PreconditionError("GridField: samples must be finite");
  }
}

GridField GridField::sample(const ScalarField& f, int n, double half_width, int points_per_axis) {
  if (points_per_axis < 16 || points_per_axis % 2 != 0)
    throw PreconditionError("GridField: points per axis must be even and >= 16");
  const std::size_t total = lattice_size(n, points_per_axis);
  std::vector<double> s(total);
  const double h = 2.0 * half_width / points_per_axis;
  const std::size_t N = static_cast<std::size_t>(points_per_axis);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point x{0, 0, 0};
    std::size_t rem = idx;
    for (int a = n - 1; a >= 0; --a) {
      x[a] = -half_width + static_cast<double>(rem % N) * h;
      rem /= N;
    }
    s[idx] = f(x);
  }
  return GridField(n, half_width, points_per_axis, std::move(s));
}

Point GridField::node(std::size_t flat_index) const {
  Point x{0, 0, 0};
  std::size_t rem = flat_index;
  const std::size_t N = static_cast<std::size_t>(N_);
  for (int a = n_ - 1; a >= 0; --a) {
    x[a] = coordinate(static_cast<int>(rem % N));
    rem /= N;
  }
  return x;
}

double GridField::integral() const {
  const std::vector<double> ones(samples_.size(), 1.0);
  return simd::dot(samples_, ones) * std::pow(spacing(), n_);
}

}  // namespace fraclap
