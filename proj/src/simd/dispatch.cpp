#include <atomic>

#include "fraclap/errors.hpp"
#include "fraclap/simd.hpp"

namespace fraclap::simd {

namespace {

Isa probe() {
#if defined(FRACLAP_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{probe()};
  return isa;
}

}  // namespace

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) throw PreconditionError("AVX2/FMA not available on this host");
  active().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionError("simd::dot: length mismatch");
#ifdef FRACLAP_HAVE_AVX2
  if (active_isa() == Isa::avx2) return avx2::dot(a, b);
#endif
  return scalar::dot(a, b);
}

std::complex<double> complex_dot(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
  if (a.size() != b.size()) throw PreconditionError("simd::complex_dot: length mismatch");
#ifdef FRACLAP_HAVE_AVX2
  if (active_isa() == Isa::avx2) return avx2::complex_dot(a, b);
#endif
  return scalar::complex_dot(a, b);
}

void scale_complex(std::span<std::complex<double>> data, std::span<const double> factors) {
  if (data.size() != factors.size()) throw PreconditionError("simd::scale_complex: length mismatch");
#ifdef FRACLAP_HAVE_AVX2
  if (active_isa() == Isa::avx2) return avx2::scale_complex(data, factors);
#endif
  scalar::scale_complex(data, factors);
}

}  // namespace fraclap::simd
