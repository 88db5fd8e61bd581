#include "akann/special.hpp"

#include <cmath>

namespace akann {

namespace {

// Continued fraction for I_t(a,b), evaluated with the modified Lentz scheme.
double beta_cf(double t, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * t / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 400; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * t / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * t / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

double simpson(const std::function<double(double)>& f, double lo, double hi, double flo,
               double fmid, double fhi) {
  return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double flo,
                        double fmid, double fhi, double whole, double tol, int depth,
                        int max_depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double flmid = f(lmid);
  const double frmid = f(rmid);
  const double left = simpson(f, lo, mid, flo, flmid, fmid);
  const double right = simpson(f, mid, hi, fmid, frmid, fhi);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol || (hi - lo) < 1e-14)
    return left + right + delta / 15.0;
  if (depth >= max_depth)
    throw std::runtime_error("integrate: adaptive Simpson did not converge");
  return adaptive_simpson(f, lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth + 1, max_depth) +
         adaptive_simpson(f, mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth + 1, max_depth);
}

// 32-point Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
// iteration on the Legendre recurrence.
struct GaussTable {
  std::vector<double> node, weight;
  GaussTable() {
    constexpr int n = 32;
    node.resize(n);
    weight.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      node[i] = -x;
      node[n - 1 - i] = x;
      weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
      weight[n - 1 - i] = weight[i];
    }
  }
};

double gauss_panel(const std::function<double(double)>& f, double lo, double hi) {
  static const GaussTable table;
  const double c = 0.5 * (hi - lo);
  const double m = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < table.node.size(); ++i)
    sum += table.weight[i] * f(m + c * table.node[i]);
  return c * sum;
}

double gauss_composite(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                       int max_subdivisions) {
  int panels = 1;
  double prev = gauss_panel(f, lo, hi);
  for (int round = 0; round < max_subdivisions; ++round) {
    panels *= 2;
    double sum = 0.0;
    const double w = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) sum += gauss_panel(f, lo + p * w, lo + (p + 1) * w);
    const double scale = std::max({std::fabs(sum), std::fabs(prev), 1e-300});
    if (std::fabs(sum - prev) <= rel_tol * scale) return sum;
    prev = sum;
  }
  throw std::runtime_error("integrate: Gauss-Legendre refinement did not converge");
}

}  // namespace

double reg_inc_beta(double t, const BetaParams& p) {
  require(t >= 0.0 && t <= 1.0, "reg_inc_beta: t outside [0,1]");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  const double a = p.a, b = p.b;
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front = std::exp(a * std::log(t) + b * std::log1p(-t) - log_beta);
  if (t < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(t, a, b) / a;
  return 1.0 - front * beta_cf(1.0 - t, b, a) / b;
}

double reg_inc_gamma(double a, double x) {
  require(a > 0.0 && x >= 0.0, "reg_inc_gamma: domain");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    // Series representation.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16)
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("reg_inc_gamma: series did not converge");
  }
  // Continued fraction for Q(a,x), modified Lentz.
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) {
      const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
      return 1.0 - q;
    }
  }
  throw std::runtime_error("reg_inc_gamma: continued fraction did not converge");
}

double log_gamma_ratio(Index d, Index L) {
  require(L >= 1 && d >= 1, "log_gamma_ratio: d and L must be positive");
  require(d % L == 0, "log_gamma_ratio: d must be divisible by L");
  const double dd = static_cast<double>(d);
  const double ll = static_cast<double>(L);
  const double lg = std::lgamma((dd + ll) / (2.0 * ll)) + std::lgamma(dd / 2.0) -
                    std::lgamma(dd / (2.0 * ll)) - std::lgamma((dd + 1.0) / 2.0);
  return std::sqrt(ll) * std::exp(lg);
}

double sphere_cosine_pdf(double y, Index sub_dim) {
  require(sub_dim >= 3, "sphere_cosine_pdf: d' must be >= 3");
  require(y >= -1.0 && y <= 1.0, "sphere_cosine_pdf: y outside [-1,1]");
  const double dd = static_cast<double>(sub_dim);
  const double log_c = std::lgamma(dd / 2.0) - 0.5 * std::log(M_PI) - std::lgamma((dd - 1.0) / 2.0);
  const double expo = (dd - 3.0) / 2.0;
  const double one_minus = 1.0 - y * y;
  if (one_minus <= 0.0) return expo == 0.0 ? std::exp(log_c) : 0.0;
  return std::exp(log_c + expo * std::log(one_minus));
}

double sphere_cosine_cdf(double y, Index sub_dim) {
  require(sub_dim >= 2, "sphere_cosine_cdf: d' must be >= 2");
  if (y <= -1.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double alpha = (static_cast<double>(sub_dim) - 1.0) / 2.0;
  return reg_inc_beta(0.5 * (1.0 + y), BetaParams(alpha, alpha));
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec) {
  require(spec.rel_tol > 0.0 && spec.rel_tol <= 1e-3, "quadrature rel_tol outside (0, 1e-3]");
  if (lo == hi) return 0.0;
  if (spec.method == QuadratureMethod::GaussLegendre)
    return gauss_composite(f, lo, hi, spec.rel_tol, spec.max_subdivisions);
  const double flo = f(lo);
  const double fhi = f(hi);
  const double fmid = f(0.5 * (lo + hi));
  const double whole = simpson(f, lo, hi, flo, fmid, fhi);
  const double tol = spec.rel_tol * std::max(std::fabs(whole), 1e-12);
  return adaptive_simpson(f, lo, hi, flo, fmid, fhi, whole, tol, 0, spec.max_subdivisions);
}

double refangle_lower_bound(Index m, const SubspaceLayout& layout, const QuadratureSpec& spec) {
  require(m >= 1, "refangle_lower_bound: m must be >= 1");
  require(layout.sub_dim >= 3, "refangle_lower_bound: d' must be >= 3");
  const Index sub = layout.sub_dim;
  const auto integrand = [m, sub](double y) {
    const double f = sphere_cosine_pdf(y, sub);
    if (f == 0.0) return 0.0;
    if (m == 1) return y * f;
    const double cdf = sphere_cosine_cdf(y, sub);
    if (cdf <= 0.0) return 0.0;
    return y * std::exp(static_cast<double>(m - 1) * std::log(cdf)) * f;
  };
  const double expected_max = static_cast<double>(m) * integrate(integrand, -1.0, 1.0, spec);
  return log_gamma_ratio(layout.d, layout.levels) * expected_max;
}

}  // namespace akann
