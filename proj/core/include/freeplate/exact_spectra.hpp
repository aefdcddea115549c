#pragma once

#include <vector>

#include "freeplate/ritz.hpp"

namespace freeplate {

/// Neumann Laplacian on [0, a] x [0, b]: pi^2 (j^2/a^2 + k^2/b^2) over
/// integer pairs j, k >= 0, sorted ascending.
Spectrum rectangle_neumann(double a, double b, int count);

/// Neumann Laplacian on the disk of radius R: zero plus (x/R)^2 over the
/// positive roots x of J_m', double multiplicity for m >= 1. Supported for
/// count <= 30 (root search covers angular orders 0..20, arguments <= 60).
Spectrum disk_neumann(double radius, int count);

/// Free Euler beam on [0, L] (plate operator in 1-D with tau = 0): 0, 0,
/// then (k/L)^4 over the positive roots k of cos(k) cosh(k) = 1. Supported
/// for count <= 12.
Spectrum free_beam(double length, int count);

/// First `count` positive roots of cos(x) cosh(x) = 1 (bracketed near
/// (j + 1/2) pi). Exposed for tests.
std::vector<double> beam_characteristic_roots(int count);

/// Positive roots of J_m' up to x_max, ascending. Exposed for tests.
std::vector<double> bessel_jprime_roots(int m, double x_max);

}  // namespace freeplate
