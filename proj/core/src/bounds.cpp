#include "freeplate/bounds.hpp"

#include <cmath>
#include <numbers>

#include "freeplate/domain.hpp"
#include "freeplate/numerics.hpp"

namespace freeplate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double omega_v(const BoundInput& in) { return unit_ball_volume(in.n) * in.volume; }

// N'(r) D(r) - N(r) D'(r); same sign as F'(r) above the threshold radius,
// used to polish the golden-section minimizer.
double f_ratio_deriv_numerator(const BoundInput& in, double r) {
  const double ov = omega_v(in);
  const double n = in.n;
  const double num = n * ov * (std::pow(r, n + 4.0) / (n + 4.0) + in.tau * std::pow(r, n + 2.0) / (n + 2.0));
  const double dnum = n * ov * (std::pow(r, n + 3.0) + in.tau * std::pow(r, n + 1.0));
  const double den = ov * std::pow(r, n) - in.m * std::pow(kTwoPi, n);
  const double dden = n * ov * std::pow(r, n - 1.0);
  return dnum * den - num * dden;
}

PlateEigBound minimize_f(const BoundInput& in) {
  const double r0 = threshold_radius(in);
  auto f = [&in](double r) { return F_ratio(in, r); };
  const double lo = r0 * (1.0 + 1e-9);
  double hi = 2.0 * r0;
  for (int it = 0; it < 60 && F_ratio(in, 2.0 * hi) < F_ratio(in, hi); ++it) hi *= 2.0;
  const MinimizeResult gs =
      minimize_unimodal(f, Bracket(lo, 2.0 * hi), 1e-10 * std::max(1.0, r0));
  // Golden section stalls inside the floating point noise floor of F near
  // the minimum; the derivative sign change pins the argmin much tighter.
  double argmin = gs.argmin;
  const double h = std::max(1e-4 * argmin, 1e-6);
  const double gl = f_ratio_deriv_numerator(in, argmin - h);
  const double gr = f_ratio_deriv_numerator(in, argmin + h);
  if (argmin - h > r0 && gl < 0.0 && gr > 0.0) {
    argmin = find_root([&in](double r) { return f_ratio_deriv_numerator(in, r); },
                       Bracket(argmin - h, argmin + h), 1e-13 * std::max(1.0, r0));
  }
  return {F_ratio(in, argmin), argmin};
}

}  // namespace

BoundInput::BoundInput(int n_, double volume_, double tau_, int m_)
    : n(n_), volume(volume_), tau(tau_), m(m_) {
  if (n < 1) throw std::invalid_argument("BoundInput: n must be >= 1");
  if (!(volume > 0.0)) throw std::invalid_argument("BoundInput: volume must be > 0");
  if (!(tau >= 0.0)) throw std::invalid_argument("BoundInput: tau must be >= 0");
  if (m < 0) throw std::invalid_argument("BoundInput: m must be >= 0");
}

double kroger_sum_bound(const BoundInput& in) {
  if (in.m < 1) throw std::invalid_argument("kroger_sum_bound: m must be >= 1");
  const double n = in.n;
  return kTwoPi * kTwoPi * (n / (n + 2.0)) * std::pow(omega_v(in), -2.0 / n) *
         std::pow(static_cast<double>(in.m), (n + 2.0) / n);
}

double kroger_eig_bound(const BoundInput& in) {
  if (in.m == 0) return 0.0;
  const double n = in.n;
  return kTwoPi * kTwoPi * std::pow((n + 2.0) / (2.0 * omega_v(in)), 2.0 / n) *
         std::pow(static_cast<double>(in.m), 2.0 / n);
}

double plate_sum_bound(const BoundInput& in) {
  if (in.m < 1) throw std::invalid_argument("plate_sum_bound: m must be >= 1");
  const double n = in.n;
  const double ov = omega_v(in);
  const double m = in.m;
  const double bilap = std::pow(kTwoPi, 4) * (n / (n + 4.0)) * std::pow(ov, -4.0 / n) *
                       std::pow(m, (n + 4.0) / n);
  const double tension = in.tau * kTwoPi * kTwoPi * (n / (n + 2.0)) * std::pow(ov, -2.0 / n) *
                         std::pow(m, (n + 2.0) / n);
  return bilap + tension;
}

double threshold_radius(const BoundInput& in) {
  return kTwoPi * std::pow(in.m / omega_v(in), 1.0 / in.n);
}

double F_ratio(const BoundInput& in, double r) {
  const double r0 = threshold_radius(in);
  if (!(r > r0)) throw std::domain_error("F_ratio: r must exceed the threshold radius");
  const double n = in.n;
  const double ov = omega_v(in);
  const double num =
      n * ov * (std::pow(r, n + 4.0) / (n + 4.0) + in.tau * std::pow(r, n + 2.0) / (n + 2.0));
  const double den = ov * std::pow(r, n) - in.m * std::pow(kTwoPi, n);
  return num / den;
}

double plate_eig_closed_form_radius(const BoundInput& in) {
  return kTwoPi * std::pow(in.m * (in.n + 4.0) / (4.0 * omega_v(in)), 1.0 / in.n);
}

PlateEigBound plate_eig_bound_numeric(const BoundInput& in) {
  if (in.m < 1) throw std::invalid_argument("plate_eig_bound_numeric: m must be >= 1");
  return minimize_f(in);
}

PlateEigBound plate_eig_bound_detailed(const BoundInput& in) {
  if (in.m == 0) return {0.0, 0.0};
  if (in.tau == 0.0) {
    const double n = in.n;
    const double closed = std::pow(kTwoPi, 4) *
                          std::pow((n + 4.0) / (4.0 * omega_v(in)), 4.0 / n) *
                          std::pow(static_cast<double>(in.m), 4.0 / n);
    const double radius = plate_eig_closed_form_radius(in);
    const PlateEigBound numeric = minimize_f(in);
    if (std::abs(numeric.value - closed) > 1e-8 * closed ||
        std::abs(numeric.argmin - radius) > 1e-7 * radius)
      throw std::logic_error("plate_eig_bound: closed form and minimization disagree");
    return {closed, radius};
  }
  return minimize_f(in);
}

double plate_eig_bound(const BoundInput& in) { return plate_eig_bound_detailed(in).value; }

bool lemma_a1_holds(double a, double b, double c, std::span<const double> coeffs,
                    std::span<const double> lambdas) {
  const size_t m = coeffs.size();
  if (lambdas.size() != m + 1)
    throw PreconditionViolatedError("lemma_a1_holds: need m coefficients and m+1 eigenvalues");
  if (!(c > 0.0)) throw PreconditionViolatedError("lemma_a1_holds: c must be > 0");
  if (!(b > static_cast<double>(m) * c))
    throw PreconditionViolatedError("lemma_a1_holds: requires b > m c");
  double sum_c = 0.0, sum_lc = 0.0, sum_l = 0.0;
  for (size_t j = 0; j < m; ++j) {
    if (!(coeffs[j] >= 0.0) || coeffs[j] > c)
      throw PreconditionViolatedError("lemma_a1_holds: coefficients must lie in [0, c]");
    if (!(lambdas[j] >= 0.0) || lambdas[j] > lambdas[j + 1])
      throw PreconditionViolatedError("lemma_a1_holds: eigenvalues must be ascending and >= 0");
    sum_c += coeffs[j];
    sum_lc += lambdas[j] * coeffs[j];
    sum_l += lambdas[j];
  }
  if (!(lambdas[m] >= 0.0))
    throw PreconditionViolatedError("lemma_a1_holds: eigenvalues must be >= 0");
  const double den = b - sum_c;  // >= b - m c > 0
  if (lambdas[m] * den > a - sum_lc)
    throw PreconditionViolatedError("lemma_a1_holds: averaged hypothesis fails for this data");
  return c * sum_l <= a + 1e-12 * (std::abs(a) + 1.0);
}

std::vector<BoundsTableRow> bounds_table(int n, double volume, double tau, int m_max) {
  if (m_max < 1) throw std::invalid_argument("bounds_table: m_max must be >= 1");
  std::vector<BoundsTableRow> rows;
  rows.reserve(m_max);
  for (int m = 1; m <= m_max; ++m) {
    const BoundInput in(n, volume, tau, m);
    rows.push_back({m, kroger_sum_bound(in), kroger_eig_bound(in), plate_sum_bound(in),
                    plate_eig_bound(in)});
  }
  return rows;
}

}  // namespace freeplate
