#include "freeplate/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace freeplate {

namespace {

constexpr double kPi = std::numbers::pi;

// Godfrey's coefficients for g = 607/128. Used as
//   Gamma(x) = sqrt(2 pi) t^(x - 1/2) e^(-t) A(x),  t = x + g - 1/2,
//   A(x) = c0 + sum_k c_k / (x - 1 + k).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

double gamma_positive(double x) {
  double acc = kLanczos[0];
  for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (x - 1.0 + k);
  const double t = x + kLanczosG - 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

// Ascending power series for J_m, adequate for x <= 4.
double bessel_series(int m, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= m; ++k) term *= h / k;  // (x/2)^m / m!
  double sum = term;
  const double h2 = -h * h;
  for (int k = 1; k <= 60; ++k) {
    term *= h2 / (static_cast<double>(k) * (m + k));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Backward (Miller) recurrence normalized with J_0 + 2 sum J_{2k} = 1.
// Returns J_k(x) for k = 0..kmax. Requires x > 0.
std::vector<double> bessel_backward(int kmax, double x) {
  int start = std::max(kmax, static_cast<int>(std::ceil(x))) + 16 +
              static_cast<int>(std::ceil(std::sqrt(42.0 * std::max<double>(kmax, x))));
  if (start % 2 != 0) ++start;
  std::vector<double> j(start + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-30;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start + 1; ++i) j[i] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
  std::vector<double> out(kmax + 1);
  for (int k = 0; k <= kmax; ++k) out[k] = j[k] / norm;
  return out;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma: requires x > 0");
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
  return gamma_positive(x);
}

LegendreValue legendre_eval(int k, double x) {
  if (k < 0) throw std::invalid_argument("legendre_eval: degree must be >= 0");
  double pm1 = 0.0, p = 1.0;    // P_{k-1}, P_k
  double dm1 = 0.0, d = 0.0;    // first derivatives
  double sm1 = 0.0, s = 0.0;    // second derivatives
  for (int i = 1; i <= k; ++i) {
    // (2i-1) x P_{i-1} - (i-1) P_{i-2}, all over i; derivatives use
    // P'_i = P'_{i-2} + (2i-1) P_{i-1} and its derivative.
    const double pnew = ((2.0 * i - 1.0) * x * p - (i - 1.0) * pm1) / i;
    const double dnew = dm1 + (2.0 * i - 1.0) * p;
    const double snew = sm1 + (2.0 * i - 1.0) * d;
    pm1 = p;
    p = pnew;
    dm1 = d;
    d = dnew;
    sm1 = s;
    s = snew;
  }
  return {p, d, s};
}

void legendre_table(int max_degree, double x, std::span<double> values, std::span<double> d1,
                    std::span<double> d2) {
  const auto need = static_cast<size_t>(max_degree) + 1;
  if (max_degree < 0 || values.size() < need || d1.size() < need || d2.size() < need)
    throw std::invalid_argument("legendre_table: bad degree or span sizes");
  values[0] = 1.0;
  d1[0] = 0.0;
  d2[0] = 0.0;
  if (max_degree == 0) return;
  values[1] = x;
  d1[1] = 1.0;
  d2[1] = 0.0;
  for (int i = 2; i <= max_degree; ++i) {
    values[i] = ((2.0 * i - 1.0) * x * values[i - 1] - (i - 1.0) * values[i - 2]) / i;
    d1[i] = d1[i - 2] + (2.0 * i - 1.0) * values[i - 1];
    d2[i] = d2[i - 2] + (2.0 * i - 1.0) * d1[i - 1];
  }
}

GaussRule gauss_legendre_nodes(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre_nodes: order must be >= 1");
  GaussRule rule;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root; Chebyshev-based guess then Newton on P_order.
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    LegendreValue lv{};
    for (int it = 0; it < 100; ++it) {
      lv = legendre_eval(order, x);
      const double dx = lv.value / lv.d1;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    lv = legendre_eval(order, x);
    const double w = 2.0 / ((1.0 - x * x) * lv.d1 * lv.d1);
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
  }
  if (order % 2 == 1) rule.nodes[half - 1] = 0.0;
  return rule;
}

BesselValue bessel_j(int m, double x) {
  if (m < 0 || m > 20) throw std::domain_error("bessel_j: order must be in [0, 20]");
  if (!(x >= 0.0) || x > 60.0) throw std::domain_error("bessel_j: argument must be in [0, 60]");
  if (x == 0.0) {
    const double v = (m == 0) ? 1.0 : 0.0;
    const double d = (m == 1) ? 0.5 : 0.0;
    return {v, d};
  }
  double jm, jm_prev, jm_next;
  if (x <= 4.0) {
    jm = bessel_series(m, x);
    jm_next = bessel_series(m + 1, x);
    jm_prev = (m == 0) ? 0.0 : bessel_series(m - 1, x);
  } else {
    const auto all = bessel_backward(m + 1, x);
    jm = all[m];
    jm_next = all[m + 1];
    jm_prev = (m == 0) ? 0.0 : all[m - 1];
  }
  const double d = (m == 0) ? -jm_next : 0.5 * (jm_prev - jm_next);
  return {jm, d};
}

double find_root(const std::function<double(double)>& f, Bracket br, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be > 0");
  double a = br.lo, b = br.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw NoSignChangeError();
  // Brent: b is the best iterate, a the previous one, c brackets with b.
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < 200; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * 2.22e-16 * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, falling back to secant.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

MinimizeResult minimize_unimodal(const std::function<double(double)>& f, Bracket br, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("minimize_unimodal: tol must be > 0");
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = br.lo, b = br.hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

}  // namespace freeplate
