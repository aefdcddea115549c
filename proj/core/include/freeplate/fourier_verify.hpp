#pragma once

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "freeplate/domain.hpp"
#include "freeplate/ritz.hpp"

namespace freeplate {

struct ThresholdViolationError : std::domain_error {
  explicit ThresholdViolationError(const std::string& what) : std::domain_error(what) {}
};

/// Fourier transforms of computed eigenfunctions,
///   phi_hat_j(z) = (2 pi)^(-n/2) integral_Omega phi_j(x) e^(i x.z) dx,
/// with ball quadrature in z. Eigenfunctions are L2-normalized, so each
/// ball mass integral_{|z|<r} |phi_hat_j|^2 lies in [0, 1] by Plancherel.
/// Quadrature orders scale with r times the farthest domain point so the
/// oscillatory integrands stay resolved up to r_max.
class FourierField {
 public:
  struct Params {
    int radial_order = 24;   // minimum radial points of the z-ball rule
    int angular_nodes = 49;  // minimum angular points (2-D only)
  };

  /// Keeps the first `modes` eigenpairs of the solution. r_max caps the
  /// usable ball radius (fixed up front so the x-rule can be sized once).
  FourierField(const RitzSolution& solution, int modes, double r_max);
  FourierField(const RitzSolution& solution, int modes, double r_max, Params params);

  int modes() const { return static_cast<int>(lambda_.size()); }
  int dimension() const { return domain_.dimension(); }
  double r_max() const { return r_max_; }
  double tau() const { return tau_; }
  Operator op() const { return op_; }
  const DomainSpec& domain() const { return domain_; }
  const std::vector<double>& eigenvalues() const { return lambda_; }

  /// Transform of mode j at a single frequency point.
  std::complex<double> phi_hat(int j, const Point& z) const;

  /// integral over |z| < r of |phi_hat_j|^2. Cached per radius.
  double plancherel_mass(int j, double r) const;

  /// omega_n |Omega| r^n - (2 pi)^n sum_{j<=m} mass_j(r). Positive for r
  /// above the threshold radius regardless of the trial functions.
  double proof_denominator(int m, double r) const;

  /// n omega_n |Omega| (r^(n+4)/(n+4) + tau r^(n+2)/(n+2))
  ///   - (2 pi)^n sum_{j<=m} Lambda_j mass_j(r). Plate solutions only.
  double proof_numerator(int m, double r) const;

  struct ReportRow {
    double r;
    double numerator;
    double denominator;
    double ratio;
    double lambda_next;
    double margin;  // ratio - lambda_next
  };
  struct Report {
    int m = 0;
    std::vector<ReportRow> rows;
    double min_margin = 0.0;
    double tol = 0.0;
    bool pass = false;
  };

  /// Evaluates Lambda_{m+1} <= N(r)/D(r) on the grid. Every radius must
  /// exceed the threshold radius for m (ThresholdViolationError otherwise)
  /// and stay within r_max. Pass means margin >= -1e-4 max(1, Lambda_{m+1})
  /// on every grid point.
  Report master_inequality_check(int m, std::span<const double> r_grid) const;

  /// Quadrature over the ball |z| < r as sized for this field (exposed so
  /// tests can integrate reference integrands with the same rule).
  QuadratureRule z_ball_rule(double r) const;

 private:
  const std::vector<double>& masses_for(double r) const;

  DomainSpec domain_;
  Operator op_;
  double tau_;
  double volume_;
  double r_max_;
  Params params_;
  double max_norm_;  // farthest domain point from the origin
  std::vector<double> lambda_;
  std::vector<Point> xnodes_;
  std::vector<double> phiw_;  // phi_j(x_k) * w_k, row-major modes x nodes
  mutable std::map<double, std::vector<double>> mass_cache_;
};

std::string report_to_csv(const FourierField::Report& report);

}  // namespace freeplate
