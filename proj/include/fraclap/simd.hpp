#pragma once

// Data-parallel inner loops with a scalar reference and an AVX2/FMA variant,
// chosen at runtime from the host CPU.

#include <complex>
#include <span>
#include <string_view>

namespace fraclap::simd {

enum class Isa { scalar, avx2 };

/// Best instruction set supported by this CPU (and compiled in).
Isa detected_isa();
/// Instruction set currently used by the dispatching functions.
Isa active_isa();
/// Forces an instruction set; throws PreconditionError if the host lacks it.
void set_active_isa(Isa isa);
std::string_view isa_name(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
/// sum_i a_i * b_i (no conjugation).
std::complex<double> complex_dot(std::span<const std::complex<double>> a,
                                 std::span<const std::complex<double>> b);
/// data_i *= factors_i.
void scale_complex(std::span<std::complex<double>> data, std::span<const double> factors);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
std::complex<double> complex_dot(std::span<const std::complex<double>> a,
                                 std::span<const std::complex<double>> b);
void scale_complex(std::span<std::complex<double>> data, std::span<const double> factors);
}  // namespace scalar

namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
std::complex<double> complex_dot(std::span<const std::complex<double>> a,
                                 std::span<const std::complex<double>> b);
void scale_complex(std::span<std::complex<double>> data, std::span<const double> factors);
}  // namespace avx2

}  // namespace fraclap::simd
