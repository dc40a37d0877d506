#pragma once

#include <cstddef>
#include <vector>

#include "fraclap/field.hpp"

namespace fraclap {

/// Uniform samples of a field on the lattice x_j = -L + j h, h = 2L/N, j = 0..N-1,
/// in each of n axes; samples are stored row-major with the last axis fastest.
class GridField {
 public:
  /// Throws PreconditionError unless N is even, N >= 16, L > 0 and all samples are finite.
  GridField(int n, double half_width, int points_per_axis, std::vector<double> samples);

  static GridField sample(const ScalarField& f, int n, double half_width, int points_per_axis);

  int dimension() const { return n_; }
  double half_width() const { return L_; }
  int points_per_axis() const { return N_; }
  double spacing() const { return 2.0 * L_ / N_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  double coordinate(int j) const { return -L_ + j * spacing(); }
  Point node(std::size_t flat_index) const;

  /// h^n * sum of samples.
  double integral() const;

 private:
  int n_;
  double L_;
  int N_;
  std::vector<double> samples_;
};

}  // namespace fraclap
