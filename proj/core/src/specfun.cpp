#include "dunklsq/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace dunklsq {

double laguerre_poly(int m, double a, double r) {
  if (m < 0) throw std::invalid_argument("laguerre_poly: degree must be >= 0");
  if (a <= -1.0) throw std::invalid_argument("laguerre_poly: order must be > -1");
  if (m == 0) return 1.0;
  double lm1 = 1.0;          // L_0
  double l = 1.0 + a - r;    // L_1
  for (int k = 1; k < m; ++k) {
    const double lp1 = ((2.0 * k + a + 1.0 - r) * l - (k + a) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double laguerre_poly_derivative(int m, double a, double r) {
  if (m <= 0) return 0.0;
  return -laguerre_poly(m - 1, a + 1.0, r);
}

namespace {

// Ascending series for e^{-u} I_nu(u)/u^nu.  All terms positive, no cancellation.
double ratio_series_scaled(double nu, double u) {
  const double q = 0.25 * u * u;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 600; ++k) {
    term *= q / ((k + 1.0) * (nu + k + 1.0));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(-u - nu * std::log(2.0) - std::lgamma(nu + 1.0)) * sum;
}

// Large-argument expansion of e^{-u} I_nu(u), truncated at the smallest term.
double ratio_asymptotic_scaled(double nu, double u) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::abs(term);
  for (int k = 1; k <= 30; ++k) {
    const double f = (2.0 * k - 1.0);
    term *= -(mu - f * f) / (8.0 * u * k);
    if (std::abs(term) >= prev) break;  // divergent tail reached
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * M_PI * u) * std::exp(-nu * std::log(u));
}

}  // namespace

double bessel_i_ratio_scaled(double nu, double u) {
  if (nu < -0.5) throw std::invalid_argument("bessel_i_ratio: order must be >= -1/2");
  if (u < 0.0) throw std::invalid_argument("bessel_i_ratio: argument must be >= 0");
  const double cut = std::min(std::max(30.0, nu * nu), 600.0);
  if (u <= cut) return ratio_series_scaled(nu, u);
  return ratio_asymptotic_scaled(nu, u);
}

double bessel_i_ratio(double nu, double u) {
  return std::exp(u) * bessel_i_ratio_scaled(nu, u);
}

double normalizing_const(int k, double a) {
  if (k < 0) throw std::invalid_argument("normalizing_const: k must be >= 0");
  const int q = k / 2;
  // Even k=2q: d^2 = q! / Gamma(q+a+1); odd k=2q+1: d^2 = q! / Gamma(q+a+2).
  const double shift = (k % 2 == 0) ? 1.0 : 2.0;
  return std::exp(0.5 * (std::lgamma(q + 1.0) - std::lgamma(q + a + shift)));
}

double hermite_gen_1d(int k, double a, double x) {
  const int q = k / 2;
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  const double d = normalizing_const(k, a);
  const double r = x * x;
  if (k % 2 == 0) return sign * d * std::exp(-0.5 * r) * laguerre_poly(q, a, r);
  return sign * d * std::exp(-0.5 * r) * x * laguerre_poly(q, a + 1.0, r);
}

double hermite_gen_1d_derivative(int k, double a, double x) {
  const int q = k / 2;
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  const double d = normalizing_const(k, a);
  const double r = x * x;
  const double e = std::exp(-0.5 * r);
  if (k % 2 == 0) {
    const double L = laguerre_poly(q, a, r);
    const double Lp = laguerre_poly_derivative(q, a, r);
    return sign * d * e * x * (2.0 * Lp - L);
  }
  const double L = laguerre_poly(q, a + 1.0, r);
  const double Lp = laguerre_poly_derivative(q, a + 1.0, r);
  return sign * d * e * ((1.0 - r) * L + 2.0 * r * Lp);
}

double hermite_gen(const MultiIndex& m, const AlphaVector& alpha, const Point& x) {
  if (!m.valid()) return 0.0;
  if (m.dim() != alpha.dim() || x.size() != alpha.dim())
    throw std::invalid_argument("hermite_gen: dimension mismatch");
  double v = 1.0;
  for (std::size_t j = 0; j < alpha.dim(); ++j) v *= hermite_gen_1d(m[j], alpha[j], x[j]);
  return v;
}

double hermite_gen_partial(const MultiIndex& m, const AlphaVector& alpha, const Point& x,
                           std::size_t j) {
  if (!m.valid()) return 0.0;
  double v = 1.0;
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    v *= (i == j) ? hermite_gen_1d_derivative(m[i], alpha[i], x[i])
                  : hermite_gen_1d(m[i], alpha[i], x[i]);
  }
  return v;
}

double phi_factor(int mj, double aj) {
  if (mj < 0) return 0.0;
  if (mj % 2 == 0) return std::sqrt(2.0 * mj);
  return std::sqrt(2.0 * mj + 4.0 * aj + 2.0);
}

}  // namespace dunklsq
