#pragma once

#include <functional>
#include <vector>

#include "dunklsq/quadrature.hpp"
#include "dunklsq/types.hpp"

namespace dunklsq {

/// The measure dw_alpha(x) = prod |x_j|^{2 a_j + 1} dx, on R^d or restricted
/// to the positive orthant.
struct WeightedMeasure {
  AlphaVector alpha;
  bool restricted = true;

  double density(const Point& x) const;
};

/// w_{a}((p,q)) for the one-dimensional full-line weight |u|^{2a+1}.
double weight_interval(double p, double q, double a);

/// V_t^{a,+}(x) = w_a^+((x-t, x+t) ∩ R_+), piecewise in x vs t.
double v_plus(double xj, double t, double aj);

/// V_t^{alpha,+}(x) = prod_j V_t^{a_j,+}(x_j).
double v_plus_cube(const Point& x, double t, const AlphaVector& alpha);

/// Full-space cube volume V_t^{alpha}(x) = prod_j w_{a_j}((x_j - t, x_j + t)).
double v_full_cube(const Point& x, double t, const AlphaVector& alpha);

/// phi_alpha(x,z,t) = prod_j (x_j+z_j)^{2a_j+1} / V_{sqrt(t)}^{a_j,+}(x_j),
/// extended by 0 when x+z leaves the closed positive orthant.
double phi_alpha(const Point& x, const Point& z, double t, const AlphaVector& alpha);

/// Tensor quadrature rule for the measure Pi_beta on [-1,1]^d.  Each axis is
/// either a normalized Gauss-Jacobi rule with exponents (b_i-1/2, b_i-1/2) or,
/// at b_i = -1/2, the two point masses at +-1 with weight 1/sqrt(2 pi) each.
struct PiBetaRule {
  std::vector<QuadratureRule> axes;
  std::vector<bool> point_mass;

  double axis_mass(std::size_t i) const;
};

PiBetaRule pi_beta_rule(const std::vector<double>& beta, int n);

struct BallSpec {
  Point center;   // in the closed positive orthant
  double radius;  // > 0
};

struct BallMeasureResult {
  double measure;         // w_alpha^+(B ∩ R^d_+)
  double cube_surrogate;  // V_r^{alpha,+}(center)
  double ratio;           // measure / cube_surrogate
  bool exact;             // false when d > 3 forced the cube fallback
};

/// w_alpha^+ measure of a Euclidean ball restricted to the orthant.  Exact
/// (nested chord quadrature) for d <= 3; cube surrogate with a flag beyond.
BallMeasureResult ball_measure(const BallSpec& ball, const AlphaVector& alpha);

/// Integral of f against dw_alpha^+ over B ∩ R^d_+, d <= 3.  `levels` grades
/// the chord quadrature toward boundaries, fixing how closely an integrand
/// singularity at the origin is resolved.
double ball_integrate(const std::function<double(const Point&)>& f, const BallSpec& ball,
                      const AlphaVector& alpha, int levels = 6, int gl = 12);

/// Deterministic dyadic ball family: centers on a per-axis log grid (from
/// 2^-6 up), radii 2^{radius_lo} .. 2^{radius_hi}; includes origin-touching balls.
std::vector<BallSpec> dyadic_ball_family(std::size_t d, int radius_lo = -10, int radius_hi = 4,
                                         int centers_per_axis = 9);

/// Empirical Muckenhoupt A_p constant of the weight U over the given balls.
/// p = 1 uses average / essential-inf (sampled); p > 1 the usual A_p ratio.
/// For weights singular at the orthant boundary the result grows with `depth`
/// (a genuinely non-A_p weight has no finite sup to converge to).
double ap_constant(const std::function<double(const Point&)>& weight, double p,
                   const AlphaVector& alpha, const std::vector<BallSpec>& balls, int depth = 6);

/// Tensor quadrature for integrals against dw_alpha^+ (orthant) or dw_alpha
/// (full space, via reflected copies).  Exact for polynomial * Gaussian data.
struct WeightRule {
  std::vector<Point> nodes;
  std::vector<double> weights;

  double integrate(const std::function<double(const Point&)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

WeightRule orthant_rule(const AlphaVector& alpha, int n);
WeightRule fullspace_rule(const AlphaVector& alpha, int n);

}  // namespace dunklsq
