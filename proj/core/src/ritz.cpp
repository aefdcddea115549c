#include "freeplate/ritz.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "freeplate/numerics.hpp"
#include "freeplate/serialize.hpp"

namespace freeplate {

namespace {

constexpr int kDegreeSchedule[] = {8, 12, 16, 20, 24, 28};

// Per-axis affine map t = 2 (x - lo) / len - 1 and its chain-rule factor.
struct AxisMap {
  double lo;
  double scale;  // dt/dx = 2 / len
};

AxisMap axis_map(const DomainSpec& d, int axis) {
  const Point lo = d.box_lo();
  const Point hi = d.box_hi();
  return {lo[axis], 2.0 / (hi[axis] - lo[axis])};
}

}  // namespace

RitzBasis::RitzBasis(DomainSpec domain, int degree) : domain_(std::move(domain)), degree_(degree) {
  if (degree < 1) throw std::invalid_argument("RitzBasis: degree must be >= 1");
  const int per_axis = degree_ + 1;
  size_ = (domain_.dimension() == 1) ? per_axis : per_axis * per_axis;
}

void RitzBasis::evaluate_values(const Point& x, std::span<double> values) const {
  if (values.size() < static_cast<size_t>(size_))
    throw std::invalid_argument("evaluate_values: span too small");
  const int k = degree_ + 1;
  std::vector<double> p0(k), d0(k), s0(k);
  const AxisMap m0 = axis_map(domain_, 0);
  legendre_table(degree_, m0.scale * (x[0] - m0.lo) - 1.0, p0, d0, s0);
  if (domain_.dimension() == 1) {
    std::copy(p0.begin(), p0.end(), values.begin());
    return;
  }
  std::vector<double> p1(k), d1(k), s1(k);
  const AxisMap m1 = axis_map(domain_, 1);
  legendre_table(degree_, m1.scale * (x[1] - m1.lo) - 1.0, p1, d1, s1);
  for (int ix = 0; ix < k; ++ix)
    for (int iy = 0; iy < k; ++iy) values[static_cast<size_t>(ix) * k + iy] = p0[ix] * p1[iy];
}

void RitzBasis::evaluate_all(const Point& x, std::span<double> values, std::span<double> gx,
                             std::span<double> gy, std::span<double> hxx, std::span<double> hxy,
                             std::span<double> hyy) const {
  const auto need = static_cast<size_t>(size_);
  if (values.size() < need || gx.size() < need || gy.size() < need || hxx.size() < need ||
      hxy.size() < need || hyy.size() < need)
    throw std::invalid_argument("evaluate_all: span too small");
  const int k = degree_ + 1;
  std::vector<double> p0(k), d0(k), s0(k);
  const AxisMap m0 = axis_map(domain_, 0);
  legendre_table(degree_, m0.scale * (x[0] - m0.lo) - 1.0, p0, d0, s0);
  if (domain_.dimension() == 1) {
    for (int i = 0; i < k; ++i) {
      values[i] = p0[i];
      gx[i] = d0[i] * m0.scale;
      gy[i] = 0.0;
      hxx[i] = s0[i] * m0.scale * m0.scale;
      hxy[i] = 0.0;
      hyy[i] = 0.0;
    }
    return;
  }
  std::vector<double> p1(k), d1(k), s1(k);
  const AxisMap m1 = axis_map(domain_, 1);
  legendre_table(degree_, m1.scale * (x[1] - m1.lo) - 1.0, p1, d1, s1);
  for (int ix = 0; ix < k; ++ix) {
    const double vx = p0[ix];
    const double dx = d0[ix] * m0.scale;
    const double sx = s0[ix] * m0.scale * m0.scale;
    for (int iy = 0; iy < k; ++iy) {
      const size_t i = static_cast<size_t>(ix) * k + iy;
      values[i] = vx * p1[iy];
      gx[i] = dx * p1[iy];
      gy[i] = vx * d1[iy] * m1.scale;
      hxx[i] = sx * p1[iy];
      hxy[i] = dx * d1[iy] * m1.scale;
      hyy[i] = vx * s1[iy] * m1.scale * m1.scale;
    }
  }
}

RitzSystem assemble(const DomainSpec& domain, int degree) {
  RitzBasis basis(domain, degree);
  const int nb = basis.size();
  // The disk rule needs to integrate products of basis restrictions (total
  // degree up to 4 degree); tensor domains only meet per-axis products of
  // degree 2 degree plus the affine map, so degree + 2 points suffice there.
  const int order = (domain.kind() == DomainKind::Disk) ? 2 * degree + 2 : degree + 2;
  const QuadratureRule rule = quadrature(domain, order);
  const int nn = static_cast<int>(rule.nodes.size());

  using Mat = Eigen::MatrixXd;
  Mat mass = Mat::Zero(nb, nb);
  Mat grad = Mat::Zero(nb, nb);
  Mat hess = Mat::Zero(nb, nb);

  const int block = 512;
  Mat bv(nb, block), bgx(nb, block), bgy(nb, block), bhxx(nb, block), bhxy(nb, block),
      bhyy(nb, block);
  std::vector<double> v(nb), gx(nb), gy(nb), hxx(nb), hxy(nb), hyy(nb);
  for (int base = 0; base < nn; base += block) {
    const int cols = std::min(block, nn - base);
    for (int c = 0; c < cols; ++c) {
      const int node = base + c;
      basis.evaluate_all(rule.nodes[node], v, gx, gy, hxx, hxy, hyy);
      const double sw = std::sqrt(rule.weights[node]);
      const double sw2 = std::sqrt(2.0 * rule.weights[node]);
      for (int i = 0; i < nb; ++i) {
        bv(i, c) = sw * v[i];
        bgx(i, c) = sw * gx[i];
        bgy(i, c) = sw * gy[i];
        bhxx(i, c) = sw * hxx[i];
        bhxy(i, c) = sw2 * hxy[i];  // mixed derivative enters twice
        bhyy(i, c) = sw * hyy[i];
      }
    }
    const auto vb = bv.leftCols(cols);
    mass.selfadjointView<Eigen::Lower>().rankUpdate(vb);
    grad.selfadjointView<Eigen::Lower>().rankUpdate(bgx.leftCols(cols));
    grad.selfadjointView<Eigen::Lower>().rankUpdate(bgy.leftCols(cols));
    hess.selfadjointView<Eigen::Lower>().rankUpdate(bhxx.leftCols(cols));
    hess.selfadjointView<Eigen::Lower>().rankUpdate(bhxy.leftCols(cols));
    hess.selfadjointView<Eigen::Lower>().rankUpdate(bhyy.leftCols(cols));
  }

  RitzSystem sys{std::move(basis), SymMatrix(nb), SymMatrix(nb), SymMatrix(nb)};
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j <= i; ++j) {
      sys.mass(i, j) = mass(i, j);
      sys.mass(j, i) = mass(i, j);
      sys.grad_form(i, j) = grad(i, j);
      sys.grad_form(j, i) = grad(i, j);
      sys.hess_form(i, j) = hess(i, j);
      sys.hess_form(j, i) = hess(i, j);
    }
  return sys;
}

std::string Spectrum::to_json() const {
  std::string out = "{\"operator\":\"";
  out += (op == Operator::Membrane) ? "membrane" : "plate";
  out += "\",\"tau\":";
  out += format_sci(tau);
  out += ",\"domain\":";
  out += domain.to_json();
  out += ",\"values\":[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_sci(values[i]);
  }
  out += "],\"method\":\"";
  out += (method == Method::Ritz) ? "ritz" : "exact";
  out += "\",\"degree_used\":";
  out += std::to_string(degree_used);
  out += ",\"converged\":";
  out += converged ? "true" : "false";
  out += ",\"last_refinement_delta\":";
  out += format_sci(last_refinement_delta);
  out += "}";
  return out;
}

NotConvergedError::NotConvergedError(Spectrum best_so_far)
    : std::runtime_error("compute_spectrum: not converged at the degree cap"),
      best(std::move(best_so_far)) {}

RitzSolution compute_spectrum_detailed(const DomainSpec& domain, Operator op, double tau,
                                       int count, double target_rel_tol) {
  if (count < 1) throw std::invalid_argument("compute_spectrum: count must be >= 1");
  if (!(tau >= 0.0)) throw std::invalid_argument("compute_spectrum: tau must be >= 0");
  if (!(target_rel_tol > 0.0) || target_rel_tol > 0.1)
    throw std::invalid_argument("compute_spectrum: target_rel_tol must be in (0, 0.1]");
  const int dim = domain.dimension();
  {
    const int cap = kDegreeSchedule[std::size(kDegreeSchedule) - 1];
    const int max_basis = (dim == 1) ? cap + 1 : (cap + 1) * (cap + 1);
    if (count + 1 > max_basis)
      throw std::invalid_argument("compute_spectrum: count too large for the degree cap");
  }

  std::vector<double> prev;
  RitzSolution best;
  bool have_result = false;
  for (const int degree : kDegreeSchedule) {
    const int basis_size = (dim == 1) ? degree + 1 : (degree + 1) * (degree + 1);
    if (basis_size < count + 1) continue;  // need headroom past the requested set
    RitzSystem sys = assemble(domain, degree);
    SymMatrix k = sys.grad_form;
    if (op == Operator::Plate) {
      const int nb = k.size();
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) k(i, j) = sys.hess_form(i, j) + tau * sys.grad_form(i, j);
    }
    EigResult eig = solve_generalized(k, sys.mass);
    if (static_cast<int>(eig.values.size()) < count) continue;  // over-filtered; refine

    best.spectrum.op = op;
    best.spectrum.tau = tau;
    best.spectrum.domain = domain;
    best.spectrum.values.assign(eig.values.begin(), eig.values.begin() + count);
    best.spectrum.method = Spectrum::Method::Ritz;
    best.spectrum.degree_used = degree;
    best.basis = sys.basis;
    best.eigenvectors.assign(eig.vectors.begin(), eig.vectors.begin() + count);
    best.smallest_mass_eigenvalue = eig.smallest_mass_eigenvalue;
    best.filtered_count = eig.filtered_count;
    have_result = true;

    if (!prev.empty()) {
      const double floor = std::max(1e-10, 1e-13 * std::abs(eig.values.back()));
      bool ok = true;
      double rel_delta = 0.0;
      for (int j = 0; j < count; ++j) {
        const double d = std::abs(best.spectrum.values[j] - prev[j]);
        rel_delta = std::max(rel_delta, d / std::max(std::abs(best.spectrum.values[j]), 1.0));
        if (d > std::max(target_rel_tol * std::abs(best.spectrum.values[j]), floor)) ok = false;
      }
      best.spectrum.last_refinement_delta = rel_delta;
      if (ok) {
        best.spectrum.converged = true;
        return best;
      }
    }
    prev = best.spectrum.values;
  }
  if (!have_result) throw std::invalid_argument("compute_spectrum: no usable degree for count");
  best.spectrum.converged = false;
  throw NotConvergedError(best.spectrum);
}

Spectrum compute_spectrum(const DomainSpec& domain, Operator op, double tau, int count,
                          double target_rel_tol) {
  return compute_spectrum_detailed(domain, op, tau, count, target_rel_tol).spectrum;
}

int zero_mode_count(const Spectrum& s, double threshold_rel) {
  if (s.values.empty()) return 0;
  const double cut = threshold_rel * std::max(1.0, std::abs(s.values.back()));
  int n = 0;
  while (n < static_cast<int>(s.values.size()) && std::abs(s.values[n]) <= cut) ++n;
  return n;
}

}  // namespace freeplate
