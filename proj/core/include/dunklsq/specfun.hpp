#pragma once

#include "dunklsq/types.hpp"

namespace dunklsq {

/// Laguerre polynomial L_m^a(r) by the three-term recurrence in the degree.
/// Requires a > -1.
double laguerre_poly(int m, double a, double r);

/// d/dr L_m^a(r) = -L_{m-1}^{a+1}(r).
double laguerre_poly_derivative(int m, double a, double r);

/// The normalized modified Bessel function I_nu(u)/u^nu, entire in u^2 and
/// regular at u = 0 where it equals 1/(2^nu Gamma(nu+1)).  nu >= -1/2, u >= 0.
double bessel_i_ratio(double nu, double u);

/// e^{-u} I_nu(u)/u^nu.  Safe for large u where the unscaled ratio overflows.
double bessel_i_ratio_scaled(double nu, double u);

/// The positive normalizing constant d_{k,a} giving the one-dimensional
/// generalized Hermite function h_k^a unit norm in L^2(R, |x|^{2a+1} dx).
double normalizing_const(int k, double a);

/// One-dimensional generalized Hermite function h_k^a(x).  Carries the sign
/// (-1)^{floor(k/2)} fixed by the ladder rule delta h_k = Phi(k,a) h_{k-1};
/// at a = -1/2 this reduces to the classical Hermite function, signs included.
double hermite_gen_1d(int k, double a, double x);

/// d/dx of hermite_gen_1d.
double hermite_gen_1d_derivative(int k, double a, double x);

/// Tensor-product generalized Hermite function h_m^alpha(x); 0 for invalid m.
double hermite_gen(const MultiIndex& m, const AlphaVector& alpha, const Point& x);

/// Partial derivative of h_m^alpha in coordinate j.
double hermite_gen_partial(const MultiIndex& m, const AlphaVector& alpha, const Point& x,
                           std::size_t j);

/// Ladder factor Phi(m_j, a_j): sqrt(2 m_j) for even m_j, sqrt(2 m_j + 4 a_j + 2) for odd.
double phi_factor(int mj, double aj);

}  // namespace dunklsq
