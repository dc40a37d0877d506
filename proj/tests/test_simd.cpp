#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/simd.hpp"

using namespace fraclap;

namespace {
struct Data {
  std::vector<double> a, b;
  std::vector<std::complex<double>> ca, cb;
};

Data make_data(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Data out;
  for (std::size_t i = 0; i < n; ++i) {
    out.a.push_back(d(rng));
    out.b.push_back(d(rng));
    out.ca.emplace_back(d(rng), d(rng));
    out.cb.emplace_back(d(rng), d(rng));
  }
  return out;
}

bool avx2_available() { return simd::detected_isa() == simd::Isa::avx2; }
}  // namespace

TEST_CASE("scalar kernels are correct") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  CHECK(simd::scalar::dot(a, b) == 32.0);
  const std::vector<std::complex<double>> ca{{1, 1}, {0, 2}}, cb{{2, 0}, {1, 1}};
  CHECK(simd::scalar::complex_dot(ca, cb) == std::complex<double>(0, 4));
  std::vector<std::complex<double>> data{{1, 2}, {3, 4}};
  const std::vector<double> f{2, 0.5};
  simd::scalar::scale_complex(data, f);
  CHECK(data[0] == std::complex<double>(2, 4));
  CHECK(data[1] == std::complex<double>(1.5, 2));
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available on this host; skipping");
    return;
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 1000u, 4099u}) {
    CAPTURE(n);
    const Data d = make_data(n, static_cast<unsigned>(n) + 1);
    const double ref = simd::scalar::dot(d.a, d.b);
    CHECK(std::abs(simd::avx2::dot(d.a, d.b) - ref) <= 1e-13 * (1.0 + n));
    const auto cref = simd::scalar::complex_dot(d.ca, d.cb);
    CHECK(std::abs(simd::avx2::complex_dot(d.ca, d.cb) - cref) <= 1e-13 * (1.0 + n));
    auto x = d.ca, y = d.ca;
    simd::scalar::scale_complex(x, d.a);
    simd::avx2::scale_complex(y, d.a);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == x[i]);
  }
}

TEST_CASE("runtime dispatch follows the active instruction set") {
  const Data d = make_data(257, 9);
  const auto original = simd::active_isa();
  simd::set_active_isa(simd::Isa::scalar);
  CHECK(simd::active_isa() == simd::Isa::scalar);
  CHECK(simd::dot(d.a, d.b) == simd::scalar::dot(d.a, d.b));
  if (avx2_available()) {
    simd::set_active_isa(simd::Isa::avx2);
    CHECK(simd::dot(d.a, d.b) == simd::avx2::dot(d.a, d.b));
    CHECK(simd::isa_name(simd::Isa::avx2) == "avx2");
  } else {
    CHECK_THROWS_AS(simd::set_active_isa(simd::Isa::avx2), PreconditionError);
  }
  simd::set_active_isa(original);
}
