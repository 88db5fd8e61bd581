#pragma once

#include "akann/common.hpp"
#include "akann/sphere.hpp"

#include <functional>

namespace akann {

struct BetaParams {
  double a = 1.0;
  double b = 1.0;
  BetaParams(double a_, double b_) : a(a_), b(b_) {
    require(a > 0.0 && b > 0.0, "beta params must be positive");
  }
};

enum class QuadratureMethod { AdaptiveSimpson, GaussLegendre };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::AdaptiveSimpson;
  double rel_tol = 1e-9;
  int max_subdivisions = 60;
};

// Regularized incomplete Beta function I_t(a, b) via the modified Lentz
// continued fraction, switching to 1 - I_{1-t}(b, a) past the standard
// crossover (a+1)/(a+b+2).
double reg_inc_beta(double t, const BetaParams& p);

// CDF complement machinery for chi-square checks: regularized lower
// incomplete gamma P(a, x).
double reg_inc_gamma(double a, double x);

// Survival function of a chi-square with dof degrees of freedom.
inline double chi2_sf(double stat, double dof) { return 1.0 - reg_inc_gamma(dof / 2.0, stat / 2.0); }

// sqrt(L) * Gamma((d+L)/(2L)) Gamma(d/2) / (Gamma(d/(2L)) Gamma((d+1)/2)),
// the expected cosine between a uniform vector and its per-level normalized
// counterpart. Equals 1 at L = 1.
double log_gamma_ratio(Index d, Index L);

// Density of the cosine between a fixed direction and a uniform point on
// S^{d'-1}: c_{d'} (1 - y^2)^{(d'-3)/2}.
double sphere_cosine_pdf(double y, Index sub_dim);

// CDF of the same law, expressed through the symmetric Beta CDF.
double sphere_cosine_cdf(double y, Index sub_dim);

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

// Expected reference cosine of the purely random configuration with m
// codewords per level: the gamma prefactor times E[max of m iid cosines],
// with the CDF power taken in log space.
double refangle_lower_bound(Index m, const SubspaceLayout& layout, const QuadratureSpec& spec = {});

}  // namespace akann
