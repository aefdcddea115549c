#pragma once

#include <cmath>

namespace freeplate::testutil {

// |a - b| <= tol * max(1, |b|): relative against the reference b, absolute
// once the reference is below 1.
inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace freeplate::testutil
