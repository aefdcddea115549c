#pragma once

#include <stdexcept>
#include <vector>

namespace freeplate {

/// Dense symmetric matrix, full row-major storage. Callers are expected to
/// keep entries(i, j) == entries(j, i); symmetrize() restores this exactly
/// after accumulation in floating point.
class SymMatrix {
 public:
  explicit SymMatrix(int size) : n_(size), a_(static_cast<size_t>(size) * size, 0.0) {
    if (size < 1) throw std::invalid_argument("SymMatrix: size must be >= 1");
  }

  int size() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

  /// Averages (i, j) and (j, i) so both triangles agree bit for bit.
  void symmetrize();

 private:
  int n_;
  std::vector<double> a_;
};

struct NoConvergenceError : std::runtime_error {
  explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct JacobiResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
  int sweeps = 0;
};

/// Cyclic-by-rows Jacobi for a dense symmetric matrix. Converged when the
/// off-diagonal Frobenius norm falls below 1e-14 times the diagonal
/// Frobenius norm; throws NoConvergenceError after 100 sweeps.
JacobiResult jacobi_eigensymm(const SymMatrix& a);

struct EigResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // coefficients in the original basis
  double smallest_mass_eigenvalue = 0.0;     // smallest retained one
  int filtered_count = 0;                    // basis directions dropped
};

/// Generalized symmetric problem K v = lambda M v with M positive
/// semi-definite: diagonalize M, drop directions whose mass eigenvalue is
/// <= filter_tol times the largest, whiten, diagonalize the projected K.
/// Returned vectors satisfy v^T M v = 1.
EigResult solve_generalized(const SymMatrix& k, const SymMatrix& m, double filter_tol = 1e-12);

}  // namespace freeplate
