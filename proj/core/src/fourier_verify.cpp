#include "freeplate/fourier_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "freeplate/bounds.hpp"
#include "freeplate/numerics.hpp"
#include "freeplate/serialize.hpp"

namespace freeplate {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

FourierField::FourierField(const RitzSolution& solution, int modes, double r_max)
    : FourierField(solution, modes, r_max, Params{}) {}

FourierField::FourierField(const RitzSolution& solution, int modes, double r_max, Params params)
    : domain_(solution.spectrum.domain),
      op_(solution.spectrum.op),
      tau_(solution.spectrum.tau),
      volume_(solution.spectrum.domain.volume()),
      r_max_(r_max),
      params_(params),
      max_norm_(solution.spectrum.domain.max_point_norm()) {
  if (modes < 1 || modes > static_cast<int>(solution.eigenvectors.size()))
    throw std::invalid_argument("FourierField: modes out of range");
  if (!(r_max > 0.0)) throw std::invalid_argument("FourierField: r_max must be > 0");
  if (params_.radial_order < 4 || params_.angular_nodes < 5)
    throw std::invalid_argument("FourierField: quadrature parameters too small");
  lambda_.assign(solution.spectrum.values.begin(), solution.spectrum.values.begin() + modes);

  // Domain rule sized for the largest phase r_max |x|: per-axis frequency is
  // at most r_max times the axis length, and Gauss-Legendre needs about half
  // a point per radian on top of the polynomial degree.
  const RitzBasis& basis = solution.basis;
  int order;
  if (domain_.kind() == DomainKind::Disk) {
    order = std::max(2 * basis.degree() + 2,
                     static_cast<int>(std::ceil(r_max_ * domain_.extents()[0])) + 12);
  } else {
    const auto& e = domain_.extents();
    const double lmax = (domain_.dimension() == 1) ? e[0] : std::max(e[0], e[1]);
    order = std::max(basis.degree() + 8, static_cast<int>(std::ceil(0.5 * r_max_ * lmax)) + 12);
  }
  const QuadratureRule rule = quadrature(domain_, order);
  xnodes_ = rule.nodes;
  const size_t nn = xnodes_.size();
  const int nb = basis.size();
  phiw_.assign(static_cast<size_t>(modes) * nn, 0.0);
  std::vector<double> tmp(nb);
  for (size_t k = 0; k < nn; ++k) {
    basis.evaluate_values(xnodes_[k], tmp);
    for (int j = 0; j < modes; ++j) {
      double acc = 0.0;
      const std::vector<double>& coef = solution.eigenvectors[j];
      for (int i = 0; i < nb; ++i) acc += coef[i] * tmp[i];
      phiw_[static_cast<size_t>(j) * nn + k] = acc * rule.weights[k];
    }
  }
}

QuadratureRule FourierField::z_ball_rule(double r) const {
  if (!(r > 0.0) || r > r_max_ * (1.0 + 1e-12))
    throw std::invalid_argument("z_ball_rule: r must be in (0, r_max]");
  QuadratureRule rule;
  const double phase = r * max_norm_;
  if (domain_.dimension() == 1) {
    const int q = std::max(2 * params_.radial_order, static_cast<int>(std::ceil(phase)) + 16);
    const GaussRule gl = gauss_legendre_nodes(q);
    rule.nodes.reserve(q);
    rule.weights.reserve(q);
    for (int i = 0; i < q; ++i) {
      rule.nodes.push_back({r * gl.nodes[i], 0.0});
      rule.weights.push_back(r * gl.weights[i]);
    }
    rule.exact_degree = 2 * q - 1;
    return rule;
  }
  const int qr = std::max(params_.radial_order, static_cast<int>(std::ceil(0.5 * phase)) + 10);
  const int na = std::max(params_.angular_nodes, 2 * static_cast<int>(std::ceil(phase)) + 17);
  const GaussRule gl = gauss_legendre_nodes(qr);
  const double wa = kTwoPi / na;
  rule.nodes.reserve(static_cast<size_t>(qr) * na);
  rule.weights.reserve(static_cast<size_t>(qr) * na);
  for (int i = 0; i < qr; ++i) {
    const double rho = 0.5 * r * (gl.nodes[i] + 1.0);
    const double wr = 0.5 * r * gl.weights[i] * rho * wa;
    for (int k = 0; k < na; ++k) {
      const double th = wa * k;
      rule.nodes.push_back({rho * std::cos(th), rho * std::sin(th)});
      rule.weights.push_back(wr);
    }
  }
  rule.exact_degree = 2 * qr - 2;
  return rule;
}

std::complex<double> FourierField::phi_hat(int j, const Point& z) const {
  if (j < 0 || j >= modes()) throw std::invalid_argument("phi_hat: mode index out of range");
  const size_t nn = xnodes_.size();
  const double* pw = phiw_.data() + static_cast<size_t>(j) * nn;
  double re = 0.0, im = 0.0;
  for (size_t k = 0; k < nn; ++k) {
    const double phase = xnodes_[k][0] * z[0] + xnodes_[k][1] * z[1];
    re += pw[k] * std::cos(phase);
    im += pw[k] * std::sin(phase);
  }
  const double scale = std::pow(kTwoPi, -0.5 * dimension());
  return {scale * re, scale * im};
}

const std::vector<double>& FourierField::masses_for(double r) const {
  const auto hit = mass_cache_.find(r);
  if (hit != mass_cache_.end()) return hit->second;
  const QuadratureRule zr = z_ball_rule(r);
  const int nm = modes();
  const size_t nn = xnodes_.size();
  std::vector<double> masses(nm, 0.0);
  std::vector<double> cosv(nn), sinv(nn);
  for (size_t zi = 0; zi < zr.nodes.size(); ++zi) {
    const double z0 = zr.nodes[zi][0];
    const double z1 = zr.nodes[zi][1];
    for (size_t k = 0; k < nn; ++k) {
      const double phase = xnodes_[k][0] * z0 + xnodes_[k][1] * z1;
      cosv[k] = std::cos(phase);
      sinv[k] = std::sin(phase);
    }
    for (int j = 0; j < nm; ++j) {
      const double* pw = phiw_.data() + static_cast<size_t>(j) * nn;
      double re = 0.0, im = 0.0;
      for (size_t k = 0; k < nn; ++k) {
        re += pw[k] * cosv[k];
        im += pw[k] * sinv[k];
      }
      masses[j] += zr.weights[zi] * (re * re + im * im);
    }
  }
  const double scale = std::pow(kTwoPi, -dimension());
  for (double& v : masses) v *= scale;
  return mass_cache_.emplace(r, std::move(masses)).first->second;
}

double FourierField::plancherel_mass(int j, double r) const {
  if (j < 0 || j >= modes()) throw std::invalid_argument("plancherel_mass: mode out of range");
  if (!(r > 0.0) || r > r_max_ * (1.0 + 1e-12))
    throw std::invalid_argument("plancherel_mass: r must be in (0, r_max]");
  return masses_for(r)[j];
}

double FourierField::proof_denominator(int m, double r) const {
  if (m < 0 || m > modes()) throw std::invalid_argument("proof_denominator: m out of range");
  if (!(r > 0.0) || r > r_max_ * (1.0 + 1e-12))
    throw std::invalid_argument("proof_denominator: r must be in (0, r_max]");
  const int n = dimension();
  const std::vector<double>& masses = masses_for(r);
  double sum = 0.0;
  for (int j = 0; j < m; ++j) sum += masses[j];
  return unit_ball_volume(n) * volume_ * std::pow(r, n) - std::pow(kTwoPi, n) * sum;
}

double FourierField::proof_numerator(int m, double r) const {
  if (op_ != Operator::Plate)
    throw std::invalid_argument("proof_numerator: needs a plate solution");
  if (m < 0 || m > modes()) throw std::invalid_argument("proof_numerator: m out of range");
  if (!(r > 0.0) || r > r_max_ * (1.0 + 1e-12))
    throw std::invalid_argument("proof_numerator: r must be in (0, r_max]");
  const double n = dimension();
  const std::vector<double>& masses = masses_for(r);
  double sum = 0.0;
  for (int j = 0; j < m; ++j) sum += lambda_[j] * masses[j];
  const double moments = n * unit_ball_volume(dimension()) * volume_ *
                         (std::pow(r, n + 4.0) / (n + 4.0) + tau_ * std::pow(r, n + 2.0) / (n + 2.0));
  return moments - std::pow(kTwoPi, dimension()) * sum;
}

FourierField::Report FourierField::master_inequality_check(int m,
                                                           std::span<const double> r_grid) const {
  if (m < 0 || m + 1 > modes())
    throw std::invalid_argument("master_inequality_check: need m + 1 computed modes");
  if (r_grid.empty()) throw std::invalid_argument("master_inequality_check: empty grid");
  const double r0 =
      threshold_radius(BoundInput(dimension(), volume_, tau_, m));
  Report rep;
  rep.m = m;
  const double lnext = lambda_[m];
  rep.tol = 1e-4 * std::max(1.0, lnext);
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (const double r : r_grid) {
    if (!(r > r0))
      throw ThresholdViolationError("master_inequality_check: grid radius at or below threshold");
    ReportRow row;
    row.r = r;
    row.numerator = proof_numerator(m, r);
    row.denominator = proof_denominator(m, r);
    row.ratio = row.numerator / row.denominator;
    row.lambda_next = lnext;
    row.margin = row.ratio - lnext;
    rep.min_margin = std::min(rep.min_margin, row.margin);
    rep.rows.push_back(row);
  }
  rep.pass = rep.min_margin >= -rep.tol;
  return rep;
}

std::string report_to_csv(const FourierField::Report& report) {
  std::string out = "m,r,N,D,ratio,lambda_next,margin\n";
  for (const auto& row : report.rows) {
    out += csv_line({std::to_string(report.m), format_sci(row.r), format_sci(row.numerator),
                     format_sci(row.denominator), format_sci(row.ratio),
                     format_sci(row.lambda_next), format_sci(row.margin)});
  }
  return out;
}

}  // namespace freeplate
