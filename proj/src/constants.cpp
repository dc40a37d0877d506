#include "fraclap/constants.hpp"

#include <cmath>
#include <numbers>

namespace fraclap {

namespace {
constexpr double pi = std::numbers::pi;
}

double pv_constant(const FracParams& p) {
  const double n = p.n(), a = p.alpha();
  return a * std::pow(2.0, a - 1.0) * std::tgamma(0.5 * (n + a)) / (std::pow(pi, 0.5 * n) * std::tgamma(1.0 - 0.5 * a));
}

double riesz_constant(const FracParams& p) {
  const double n = p.n(), a = p.alpha();
  return std::tgamma(0.5 * (n - a)) / (std::pow(2.0, a) * std::pow(pi, 0.5 * n) * std::tgamma(0.5 * a));
}

KernelConstants KernelConstants::closed_form(const FracParams& params) {
  return {pv_constant(params), riesz_constant(params), false};
}

double poisson_prefactor(const FracParams& p) {
  const double n = p.n(), a = p.alpha();
  return std::tgamma(0.5 * n) * std::pow(pi, -0.5 * n - 1.0) * std::sin(0.5 * pi * a);
}

double green_constant(const FracParams& p) {
  const double n = p.n(), a = p.alpha();
  const double g = std::tgamma(0.5 * a);
  return std::tgamma(0.5 * n) / (std::pow(2.0, a) * std::pow(pi, 0.5 * n) * g * g);
}

double bubble_eigenvalue(const FracParams& p) {
  const double n = p.n(), a = p.alpha();
  return std::pow(2.0, a) * std::tgamma(0.5 * (n + a)) / std::tgamma(0.5 * (n - a));
}

}  // namespace fraclap
