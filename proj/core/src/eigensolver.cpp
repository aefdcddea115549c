#include "freeplate/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace freeplate {

namespace {

// Frobenius norms of the strict off-diagonal part and of the diagonal.
void frobenius_split(const std::vector<double>& a, int n, double* off, double* diag) {
  double so = 0.0, sd = 0.0;
  for (int i = 0; i < n; ++i) {
    sd += a[static_cast<size_t>(i) * n + i] * a[static_cast<size_t>(i) * n + i];
    for (int j = i + 1; j < n; ++j) {
      const double v = a[static_cast<size_t>(i) * n + j];
      so += 2.0 * v * v;
    }
  }
  *off = std::sqrt(so);
  *diag = std::sqrt(sd);
}

}  // namespace

void SymMatrix::symmetrize() {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = v;
      (*this)(j, i) = v;
    }
}

JacobiResult jacobi_eigensymm(const SymMatrix& input) {
  const int n = input.size();
  std::vector<double> a = input.data();
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

  int sweeps = 0;
  bool converged = false;
  for (; sweeps < 100; ++sweeps) {
    double off, diag;
    frobenius_split(a, n, &off, &diag);
    if (off <= 1e-14 * diag || off == 0.0) {
      converged = true;
      break;
    }
    // Small rotations are skipped early on to avoid churning on entries that
    // later sweeps will zero anyway (threshold strategy from the classic
    // cyclic Jacobi).
    const double thresh = (sweeps < 3) ? 0.2 * off * off / (static_cast<double>(n) * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        const double g = 100.0 * std::abs(apq);
        if (sweeps > 3 && std::abs(at(p, p)) + g == std::abs(at(p, p)) &&
            std::abs(at(q, q)) + g == std::abs(at(q, q))) {
          at(p, q) = 0.0;
          at(q, p) = 0.0;
          continue;
        }
        if (apq * apq <= thresh) continue;
        if (apq == 0.0) continue;
        const double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;
        at(p, p) -= h;
        at(q, q) += h;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = at(i, p);
          const double aiq = at(i, q);
          at(i, p) = aip - s * (aiq + tau * aip);
          at(p, i) = at(i, p);
          at(i, q) = aiq + s * (aip - tau * aiq);
          at(q, i) = at(i, q);
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v[static_cast<size_t>(i) * n + p];
          const double viq = v[static_cast<size_t>(i) * n + q];
          v[static_cast<size_t>(i) * n + p] = vip - s * (viq + tau * vip);
          v[static_cast<size_t>(i) * n + q] = viq + s * (vip - tau * viq);
        }
      }
    }
  }
  if (!converged)
    throw NoConvergenceError("jacobi_eigensymm: no convergence in 100 sweeps (n = " +
                             std::to_string(n) + ")");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a[static_cast<size_t>(i) * n + i] < a[static_cast<size_t>(j) * n + j];
  });
  JacobiResult res;
  res.sweeps = sweeps;
  res.values.resize(n);
  res.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    res.values[k] = a[static_cast<size_t>(src) * n + src];
    for (int i = 0; i < n; ++i) res.vectors[k][i] = v[static_cast<size_t>(i) * n + src];
  }
  return res;
}

EigResult solve_generalized(const SymMatrix& k, const SymMatrix& m, double filter_tol) {
  const int n = k.size();
  if (m.size() != n) throw std::invalid_argument("solve_generalized: size mismatch");
  if (!(filter_tol > 0.0)) throw std::invalid_argument("solve_generalized: filter_tol must be > 0");

  const JacobiResult md = jacobi_eigensymm(m);
  const double mu_max = md.values.empty() ? 0.0 : md.values.back();
  if (!(mu_max > 0.0)) throw std::invalid_argument("solve_generalized: mass matrix is not PSD");
  const double cut = filter_tol * mu_max;

  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (md.values[i] > cut) keep.push_back(i);
  const int r = static_cast<int>(keep.size());
  if (r == 0) throw std::invalid_argument("solve_generalized: all mass directions filtered");

  // Whitened basis columns w_c = u_c / sqrt(mu_c); projected K is
  // W^T K W, symmetric r x r.
  std::vector<std::vector<double>> w(r, std::vector<double>(n));
  for (int c = 0; c < r; ++c) {
    const double inv = 1.0 / std::sqrt(md.values[keep[c]]);
    for (int i = 0; i < n; ++i) w[c][i] = md.vectors[keep[c]][i] * inv;
  }
  std::vector<std::vector<double>> kw(r, std::vector<double>(n, 0.0));
  for (int c = 0; c < r; ++c)
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += k(i, j) * w[c][j];
      kw[c][i] = acc;
    }
  SymMatrix kp(r);
  for (int c = 0; c < r; ++c)
    for (int d = c; d < r; ++d) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += w[c][i] * kw[d][i];
      kp(c, d) = acc;
      kp(d, c) = acc;
    }
  kp.symmetrize();

  const JacobiResult kd = jacobi_eigensymm(kp);
  EigResult out;
  out.values = kd.values;
  out.smallest_mass_eigenvalue = md.values[keep.front()];
  out.filtered_count = n - r;
  out.vectors.assign(r, std::vector<double>(n, 0.0));
  for (int e = 0; e < r; ++e)
    for (int c = 0; c < r; ++c) {
      const double coef = kd.vectors[e][c];
      for (int i = 0; i < n; ++i) out.vectors[e][i] += coef * w[c][i];
    }
  return out;
}

}  // namespace freeplate
