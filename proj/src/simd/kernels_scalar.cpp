#include <cstddef>

#include "fraclap/simd.hpp"

namespace fraclap::simd::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::complex<double> complex_dot(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void scale_complex(std::span<std::complex<double>> data, std::span<const double> factors) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= factors[i];
}

}  // namespace fraclap::simd::scalar
