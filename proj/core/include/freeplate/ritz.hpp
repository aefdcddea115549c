#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "freeplate/domain.hpp"
#include "freeplate/eigensolver.hpp"

namespace freeplate {

enum class Operator { Membrane, Plate };

/// Tensor-product Legendre basis mapped to the bounding box of the domain
/// (restricted to the domain for the disk). Index layout for 2-D is
/// i = ix * (degree + 1) + iy. Natural boundary conditions do not constrain
/// the basis, so the span is the full polynomial tensor space.
class RitzBasis {
 public:
  RitzBasis(DomainSpec domain, int degree);

  const DomainSpec& domain() const { return domain_; }
  int degree() const { return degree_; }
  int size() const { return size_; }

  /// Values of every basis function at x (span of size()).
  void evaluate_values(const Point& x, std::span<double> values) const;

  /// Values, gradients and second derivatives of every basis function at x.
  /// Unused components for 1-D domains are written as zero.
  void evaluate_all(const Point& x, std::span<double> values, std::span<double> gx,
                    std::span<double> gy, std::span<double> hxx, std::span<double> hxy,
                    std::span<double> hyy) const;

 private:
  DomainSpec domain_;
  int degree_;
  int size_;
};

/// Galerkin matrices on the Ritz basis: mass (u, v), gradient form
/// (grad u, grad v), and the full second-derivative form
/// sum_jk (d_jk u, d_jk v). All symmetric; mass is positive definite up to
/// conditioning of the restricted basis.
struct RitzSystem {
  RitzBasis basis;
  SymMatrix mass;
  SymMatrix grad_form;
  SymMatrix hess_form;
};

RitzSystem assemble(const DomainSpec& domain, int degree);

/// Computed spectrum. `values` are ascending and start at the zero modes
/// (constants for both operators; for the plate with tau = 0 also the
/// coordinate functions).
struct Spectrum {
  Operator op = Operator::Membrane;
  double tau = 0.0;
  DomainSpec domain = DomainSpec::interval(1.0);
  std::vector<double> values;
  enum class Method { Ritz, Exact } method = Method::Ritz;
  int degree_used = 0;  // 0 for exact spectra
  bool converged = false;
  double last_refinement_delta = 0.0;

  std::string to_json() const;
};

/// Spectrum together with the discrete eigenpairs that produced it.
/// eigenvectors[j] holds basis coefficients of the j-th mode, normalized to
/// v^T M v = 1 (L2-normalized eigenfunctions).
struct RitzSolution {
  Spectrum spectrum;
  RitzBasis basis{DomainSpec::interval(1.0), 1};
  std::vector<std::vector<double>> eigenvectors;
  double smallest_mass_eigenvalue = 0.0;
  int filtered_count = 0;
};

struct NotConvergedError : std::runtime_error {
  explicit NotConvergedError(Spectrum best_so_far);
  Spectrum best;
};

/// Rayleigh-Ritz solve with degree refinement over 8, 12, ..., 28. Stops at
/// the first degree where every requested eigenvalue changed by at most
/// max(target_rel_tol * |value|, floor) since the previous degree; the floor
/// is max(1e-10, 1e-13 * largest retained eigenvalue), which keeps zero
/// modes from blocking convergence on their roundoff noise. Throws
/// NotConvergedError (with the best spectrum attached) if the cap degree
/// still fails the test.
Spectrum compute_spectrum(const DomainSpec& domain, Operator op, double tau, int count,
                          double target_rel_tol = 1e-8);
RitzSolution compute_spectrum_detailed(const DomainSpec& domain, Operator op, double tau,
                                       int count, double target_rel_tol = 1e-8);

/// Number of leading eigenvalues below threshold_rel * max(1, largest
/// computed value). For a free membrane this is 1; for a free plate with
/// tau = 0 it is dimension + 1.
int zero_mode_count(const Spectrum& s, double threshold_rel = 1e-7);

}  // namespace freeplate
