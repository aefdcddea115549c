#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace freeplate {

/// Interval handed to the scalar solvers. `lo < hi` is enforced on
/// construction; sign-change / unimodality requirements are checked by the
/// solver that consumes the bracket.
struct Bracket {
  double lo;
  double hi;

  Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw std::invalid_argument("Bracket requires lo < hi");
  }
};

struct NoSignChangeError : std::runtime_error {
  NoSignChangeError() : std::runtime_error("find_root: no sign change over bracket") {}
};

/// Gamma function for x > 0 (Lanczos approximation, g = 607/128, 15 terms).
/// Relative error is below 1e-13 on [0.5, 20].
double gamma(double x);

struct LegendreValue {
  double value;
  double d1;
  double d2;
};

/// Legendre polynomial P_k with first and second derivatives, via the
/// three-term recurrence. Valid on [-1, 1] for any k >= 0.
LegendreValue legendre_eval(int k, double x);

/// Fills P_k(x), P_k'(x), P_k''(x) for k = 0..max_degree in one recurrence
/// pass. Each span must have max_degree + 1 entries.
void legendre_table(int max_degree, double x, std::span<double> values,
                    std::span<double> d1, std::span<double> d2);

struct GaussRule {
  std::vector<double> nodes;    // ascending, symmetric about 0
  std::vector<double> weights;  // positive, sum to 2
};

/// Gauss-Legendre nodes and weights on [-1, 1]. Nodes are the roots of
/// P_order found by Newton iteration from Chebyshev initial guesses;
/// weights are 2 / ((1 - x^2) P'(x)^2).
GaussRule gauss_legendre_nodes(int order);

struct BesselValue {
  double value;
  double derivative;
};

/// Bessel J_m(x) and J_m'(x) for 0 <= m <= 20, 0 <= x <= 60 (power series
/// below x = 4, backward recurrence with normalization above). Arguments
/// outside the validated range are rejected.
BesselValue bessel_j(int m, double x);

/// Bracketed root finding (Brent). Requires a sign change over the bracket;
/// stops once the bracket width drops below `tol`. The result always lies
/// inside the input bracket.
double find_root(const std::function<double(double)>& f, Bracket b, double tol = 1e-13);

struct MinimizeResult {
  double argmin;
  double value;
};

/// Golden-section search for a unimodal function; shrinks the bracket to
/// width <= tol and returns the midpoint. Deterministic.
MinimizeResult minimize_unimodal(const std::function<double(double)>& f, Bracket b,
                                 double tol = 1e-10);

}  // namespace freeplate
