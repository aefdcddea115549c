#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace freeplate {

/// Inputs shared by every bound: space dimension n >= 1, domain volume > 0,
/// tension parameter tau >= 0 (plate bounds only), and the eigenvalue index
/// m. Validated on construction.
struct BoundInput {
  int n;
  double volume;
  double tau;
  int m;

  BoundInput(int n_, double volume_, double tau_, int m_);
};

/// Berezin-Li-Yau-type upper bound for Neumann eigenvalue averages:
///   sum_{j<=m} mu_j <= (2 pi)^2 n/(n+2) (omega_n V)^(-2/n) m^((n+2)/n).
/// Requires m >= 1.
double kroger_sum_bound(const BoundInput& in);

/// Individual Neumann eigenvalue bound:
///   mu_{m+1} <= (2 pi)^2 ((n+2) / (2 omega_n V))^(2/n) m^(2/n),
/// valid for m >= 1; m = 0 returns 0 (mu_1 = 0 for the free membrane).
double kroger_eig_bound(const BoundInput& in);

/// Free plate eigenvalue average bound:
///   sum_{j<=m} Lambda_j <= (2 pi)^4 n/(n+4) (omega_n V)^(-4/n) m^((n+4)/n)
///                        + tau (2 pi)^2 n/(n+2) (omega_n V)^(-2/n) m^((n+2)/n).
/// Requires m >= 1.
double plate_sum_bound(const BoundInput& in);

/// Radius r0 = 2 pi (m / (omega_n V))^(1/n) below which the averaged
/// phase-space comparison degenerates. F_ratio is defined for r > r0 only.
double threshold_radius(const BoundInput& in);

/// The radial bound profile
///   F(r) = n omega_n V (r^(n+4)/(n+4) + tau r^(n+2)/(n+2))
///          / (omega_n V r^n - m (2 pi)^n),
/// defined for r > threshold_radius. Lambda_{m+1} <= F(r) for every such r.
double F_ratio(const BoundInput& in, double r);

/// Minimizer of F for tau = 0: r* = 2 pi (m (n+4) / (4 omega_n V))^(1/n).
double plate_eig_closed_form_radius(const BoundInput& in);

struct PlateEigBound {
  double value;
  double argmin;  // radius where F attains the bound; 0 for m = 0
};

/// min_{r > r0} F(r), the individual free plate eigenvalue bound
/// Lambda_{m+1} <= F(r*). m = 0 returns 0. For tau = 0 the closed form
/// (2 pi)^4 ((n+4) / (4 omega_n V))^(4/n) m^(4/n) is used and cross-checked
/// against the numeric minimization; tau > 0 is numeric (golden section
/// bracketing plus a derivative polish).
double plate_eig_bound(const BoundInput& in);
PlateEigBound plate_eig_bound_detailed(const BoundInput& in);

/// Numeric minimization of F regardless of tau (golden section plus
/// derivative polish). Exposed so the tau = 0 route can be compared against
/// the closed form independently. Requires m >= 1.
PlateEigBound plate_eig_bound_numeric(const BoundInput& in);

/// Individual-to-averaged eigenvalue lemma: if
///   lambda_{m+1} <= (a - sum_j lambda_j c_j) / (b - sum_j c_j)
/// with b > m c, 0 <= c_j <= c, and 0 <= lambda_1 <= ... <= lambda_{m+1},
/// then c sum_{j<=m} lambda_j <= a. Returns whether the conclusion holds for
/// the given data (slack tolerance 1e-12 relative); throws
/// PreconditionViolatedError when the hypothesis itself is violated.
bool lemma_a1_holds(double a, double b, double c, std::span<const double> coeffs,
                    std::span<const double> lambdas);

struct PreconditionViolatedError : std::invalid_argument {
  explicit PreconditionViolatedError(const std::string& what) : std::invalid_argument(what) {}
};

struct BoundsTableRow {
  int m;
  double kroger_sum;
  double kroger_eig;
  double plate_sum;
  double plate_eig;
};

/// All four bounds for m = 1..m_max.
std::vector<BoundsTableRow> bounds_table(int n, double volume, double tau, int m_max);

}  // namespace freeplate
