#include "freeplate/exact_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "freeplate/numerics.hpp"

namespace freeplate {

namespace {

constexpr double kPi = std::numbers::pi;

Spectrum make_exact(Operator op, double tau, DomainSpec domain, std::vector<double> values) {
  Spectrum s;
  s.op = op;
  s.tau = tau;
  s.domain = std::move(domain);
  s.values = std::move(values);
  s.method = Spectrum::Method::Exact;
  s.degree_used = 0;
  s.converged = true;
  s.last_refinement_delta = 0.0;
  return s;
}

}  // namespace

Spectrum rectangle_neumann(double a, double b, int count) {
  if (count < 1) throw std::invalid_argument("rectangle_neumann: count must be >= 1");
  // Index cap: values grow like pi^2 j^2 / max(a,b)^2, so j, k up to
  // count + 1 already produce more than `count` candidates below the cutoff.
  const int cap = count + 1;
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(cap + 1) * (cap + 1));
  for (int j = 0; j <= cap; ++j)
    for (int k = 0; k <= cap; ++k)
      vals.push_back(kPi * kPi * (static_cast<double>(j) * j / (a * a) +
                                  static_cast<double>(k) * k / (b * b)));
  std::sort(vals.begin(), vals.end());
  vals.resize(count);
  return make_exact(Operator::Membrane, 0.0, DomainSpec::rectangle(a, b), std::move(vals));
}

std::vector<double> bessel_jprime_roots(int m, double x_max) {
  if (x_max > 60.0) throw std::invalid_argument("bessel_jprime_roots: x_max must be <= 60");
  auto f = [m](double x) { return bessel_j(m, x).derivative; };
  std::vector<double> roots;
  // J_m' has simple zeros separated by more than 1, so a 0.25 scan step
  // cannot skip a sign change. Start past 0 to avoid the trivial zero of
  // J_0' at the origin and the x^(m-1) flatness for m >= 2.
  const double step = 0.25;
  double a = 1e-4;
  double fa = f(a);
  for (double b = a + step; b <= x_max + 1e-12; b += step) {
    const double fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa > 0.0) != (fb > 0.0)) {
      roots.push_back(find_root(f, Bracket(a, b), 1e-14));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

Spectrum disk_neumann(double radius, int count) {
  if (count < 1 || count > 30)
    throw std::invalid_argument("disk_neumann: count must be in [1, 30]");
  std::vector<double> vals{0.0};
  // Angular orders 0..20 with arguments up to 60 cover far more than the 30
  // smallest eigenvalues: the first root for m = 21 already exceeds 22,
  // while the 30th eigenvalue of the unit disk lies below 9^2.
  for (int m = 0; m <= 20; ++m) {
    for (const double r : bessel_jprime_roots(m, 60.0)) {
      const double ev = (r / radius) * (r / radius);
      vals.push_back(ev);
      if (m >= 1) vals.push_back(ev);
    }
  }
  std::sort(vals.begin(), vals.end());
  if (static_cast<int>(vals.size()) < count)
    throw std::logic_error("disk_neumann: root table too small");
  vals.resize(count);
  return make_exact(Operator::Membrane, 0.0, DomainSpec::disk(radius), std::move(vals));
}

std::vector<double> beam_characteristic_roots(int count) {
  if (count < 1) throw std::invalid_argument("beam_characteristic_roots: count must be >= 1");
  // cosh overflows past ~710; j <= 200 keeps arguments far below that while
  // covering every supported spectrum request.
  if (count > 200) throw std::invalid_argument("beam_characteristic_roots: count too large");
  auto f = [](double x) { return std::cos(x) * std::cosh(x) - 1.0; };
  std::vector<double> roots;
  roots.reserve(count);
  for (int j = 1; j <= count; ++j) {
    // One root per bracket around (j + 1/2) pi.
    const double lo = (j + 0.4) * kPi;
    const double hi = (j + 0.6) * kPi;
    roots.push_back(find_root(f, Bracket(lo, hi), 1e-13));
  }
  return roots;
}

Spectrum free_beam(double length, int count) {
  if (count < 1 || count > 12)
    throw std::invalid_argument("free_beam: count must be in [1, 12]");
  std::vector<double> vals{0.0, 0.0};
  if (count > 2) {
    for (const double k : beam_characteristic_roots(count - 2)) {
      const double kl = k / length;
      vals.push_back(kl * kl * kl * kl);
    }
  }
  vals.resize(count);
  return make_exact(Operator::Plate, 0.0, DomainSpec::interval(length), std::move(vals));
}

}  // namespace freeplate
