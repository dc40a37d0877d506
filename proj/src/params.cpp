#include "fraclap/params.hpp"

#include <string>

#include "fraclap/errors.hpp"

namespace fraclap {

FracParams::FracParams(int n, double alpha) : n_(n), alpha_(alpha) {
  if (n != 2 && n != 3) throw PreconditionError("n must be 2 or 3, got " + std::to_string(n));
  if (!(alpha > 0.0 && alpha < 2.0)) throw PreconditionError("alpha must lie in (0,2)");
}

}  // namespace fraclap
