#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dunklsq {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  double integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// n-point Gauss-Legendre rule on [-1,1], weight 1.
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a,b].
QuadratureRule gauss_legendre_ab(int n, double a, double b);

/// n-point Gauss-Jacobi rule on [-1,1] for the weight (1-s)^a (1+s)^b, a,b > -1.
QuadratureRule gauss_jacobi(int n, double a, double b);

/// n-point generalized Gauss-Laguerre rule on [0,inf) for the weight r^a e^{-r}, a > -1.
QuadratureRule gauss_laguerre(int n, double a);

/// Composite rule: Gauss-Legendre with gl points on each panel [c_k, c_{k+1}].
QuadratureRule composite_gauss(const std::vector<double>& cuts, int gl);

/// Panel cuts for (lo,hi) graded dyadically toward both endpoints (levels per side),
/// used where the integrand has endpoint kinks or algebraic endpoint behavior.
std::vector<double> graded_cuts(double lo, double hi, int levels);

/// Adaptive 1-d integration of f over [lo,hi] with pre-declared split points.
/// Splits are clamped to the interval; each smooth piece gets a graded composite rule.
double integrate_split(const std::function<double(double)>& f, double lo, double hi,
                       std::vector<double> splits, int levels = 4, int gl = 12);

}  // namespace dunklsq
