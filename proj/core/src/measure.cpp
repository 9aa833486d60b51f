#include "dunklsq/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dunklsq {

double WeightedMeasure::density(const Point& x) const {
  double v = 1.0;
  for (std::size_t j = 0; j < alpha.dim(); ++j) {
    if (restricted && x[j] < 0.0) return 0.0;
    v *= std::pow(std::abs(x[j]), 2.0 * alpha[j] + 1.0);
  }
  return v;
}

namespace {
// Antiderivative of |u|^{2a+1}: sign(u) |u|^{2a+2} / (2a+2).
double weight_prim(double u, double a) {
  const double p = 2.0 * a + 2.0;
  return std::copysign(std::pow(std::abs(u), p), u) / p;
}
}  // namespace

double weight_interval(double p, double q, double a) {
  return weight_prim(q, a) - weight_prim(p, a);
}

double v_plus(double xj, double t, double aj) {
  if (t <= 0.0) throw std::invalid_argument("v_plus: t must be > 0");
  const double p = 2.0 * aj + 2.0;
  if (xj < t) return std::pow(xj + t, p) / p;
  return (std::pow(xj + t, p) - std::pow(xj - t, p)) / p;
}

double v_plus_cube(const Point& x, double t, const AlphaVector& alpha) {
  double v = 1.0;
  for (std::size_t j = 0; j < alpha.dim(); ++j) v *= v_plus(x[j], t, alpha[j]);
  return v;
}

double v_full_cube(const Point& x, double t, const AlphaVector& alpha) {
  double v = 1.0;
  for (std::size_t j = 0; j < alpha.dim(); ++j)
    v *= weight_interval(x[j] - t, x[j] + t, alpha[j]);
  return v;
}

double phi_alpha(const Point& x, const Point& z, double t, const AlphaVector& alpha) {
  if (t <= 0.0) throw std::invalid_argument("phi_alpha: t must be > 0");
  const double rt = std::sqrt(t);
  double v = 1.0;
  for (std::size_t j = 0; j < alpha.dim(); ++j) {
    const double s = x[j] + z[j];
    if (s < 0.0) return 0.0;
    v *= std::pow(s, 2.0 * alpha[j] + 1.0) / v_plus(x[j], rt, alpha[j]);
  }
  return v;
}

double PiBetaRule::axis_mass(std::size_t i) const {
  double s = 0.0;
  for (double w : axes[i].weights) s += w;
  return s;
}

PiBetaRule pi_beta_rule(const std::vector<double>& beta, int n) {
  if (n < 1) throw std::invalid_argument("pi_beta_rule: n must be >= 1");
  PiBetaRule rule;
  for (double b : beta) {
    if (b < -0.5) throw std::invalid_argument("pi_beta_rule: beta must be >= -1/2");
    if (b < -0.5 + 1e-12) {
      QuadratureRule axis;
      axis.nodes = {-1.0, 1.0};
      axis.weights = {1.0 / std::sqrt(2.0 * M_PI), 1.0 / std::sqrt(2.0 * M_PI)};
      rule.axes.push_back(std::move(axis));
      rule.point_mass.push_back(true);
    } else {
      QuadratureRule axis = gauss_jacobi(n, b - 0.5, b - 0.5);
      const double c = 1.0 / (std::sqrt(M_PI) * std::exp(b * std::log(2.0) + std::lgamma(b + 0.5)));
      for (double& w : axis.weights) w *= c;
      rule.axes.push_back(std::move(axis));
      rule.point_mass.push_back(false);
    }
  }
  return rule;
}

namespace {

// Integral over (lo,hi) of u^{2a+1} H(u) du, 0 <= lo < hi, with declared interior
// split points.  The segment touching 0 is handled by the exact substitution
// v = u^{2a+2}, so the endpoint weight singularity never meets the rule.
double chord_integral(double a, double lo, double hi, const std::function<double(double)>& H,
                      std::vector<double> splits, int levels, int gl) {
  if (!(hi > lo)) return 0.0;
  const double p = 2.0 * a + 2.0;
  splits.push_back(lo);
  splits.push_back(hi);
  std::sort(splits.begin(), splits.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
    const double s0 = std::max(lo, splits[k]);
    const double s1 = std::min(hi, splits[k + 1]);
    if (s1 - s0 <= 1e-300) continue;
    if (s0 < 1e-13 * s1) {
      // v = u^p maps the weight to dv/p exactly
      const double v1 = std::pow(s1, p);
      const QuadratureRule rule = composite_gauss(graded_cuts(0.0, v1, levels), gl);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        total += rule.weights[i] * H(std::pow(rule.nodes[i], 1.0 / p)) / p;
    } else {
      const QuadratureRule rule = composite_gauss(graded_cuts(s0, s1, levels), gl);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        total += rule.weights[i] * std::pow(rule.nodes[i], p - 1.0) * H(rule.nodes[i]);
    }
  }
  return total;
}

// w_alpha^+ measure of the ball of radius r around center (coords from `from`),
// nested chord-by-chord.  The innermost coordinate is integrated in closed form.
double ball_w_rec(const AlphaVector& alpha, std::size_t from, const Point& center, double r,
                  int levels, int gl) {
  if (r <= 0.0) return 0.0;
  const std::size_t d = alpha.dim() - from;
  const double c = center[from];
  const double a = alpha[from];
  const double lo = std::max(0.0, c - r);
  const double hi = c + r;
  if (d == 1) return weight_interval(lo, hi, a);  // lo >= 0, so this is the w^+ value

  // interior kinks: inner section radius sqrt(r^2 - (u-c)^2) touches a
  // coordinate plane of a later axis
  std::vector<double> splits;
  for (std::size_t k = from + 1; k < alpha.dim(); ++k) {
    const double ck = center[k];
    if (ck < r) {
      const double off = std::sqrt(r * r - ck * ck);
      splits.push_back(c - off);
      splits.push_back(c + off);
    }
  }
  auto H = [&](double u) {
    const double du = u - c;
    const double rr = r * r - du * du;
    if (rr <= 0.0) return 0.0;
    return ball_w_rec(alpha, from + 1, center, std::sqrt(rr), levels, gl);
  };
  return chord_integral(a, lo, hi, H, std::move(splits), levels, gl);
}

double ball_f_rec(const std::function<double(const Point&)>& f, const AlphaVector& alpha,
                  std::size_t from, const Point& center, double r, Point& work, int levels,
                  int gl) {
  if (r <= 0.0) return 0.0;
  const double c = center[from];
  const double a = alpha[from];
  const double lo = std::max(0.0, c - r);
  const double hi = c + r;
  if (from + 1 == alpha.dim()) {
    auto H = [&](double u) {
      work[from] = u;
      return f(work);
    };
    return chord_integral(a, lo, hi, H, {}, levels, gl);
  }
  std::vector<double> splits;
  for (std::size_t k = from + 1; k < alpha.dim(); ++k) {
    const double ck = center[k];
    if (ck < r) {
      const double off = std::sqrt(r * r - ck * ck);
      splits.push_back(c - off);
      splits.push_back(c + off);
    }
  }
  auto H = [&](double u) {
    const double du = u - c;
    const double rr = r * r - du * du;
    if (rr <= 0.0) return 0.0;
    work[from] = u;
    return ball_f_rec(f, alpha, from + 1, center, std::sqrt(rr), work, levels, gl);
  };
  return chord_integral(a, lo, hi, H, std::move(splits), levels, gl);
}

}  // namespace

BallMeasureResult ball_measure(const BallSpec& ball, const AlphaVector& alpha) {
  if (ball.radius <= 0.0) throw std::invalid_argument("ball_measure: radius must be > 0");
  BallMeasureResult out;
  out.cube_surrogate = v_plus_cube(ball.center, ball.radius, alpha);
  if (alpha.dim() <= 3) {
    out.measure = ball_w_rec(alpha, 0, ball.center, ball.radius, 12, 14);
    out.exact = true;
  } else {
    out.measure = out.cube_surrogate;
    out.exact = false;
  }
  out.ratio = out.measure / out.cube_surrogate;
  return out;
}

double ball_integrate(const std::function<double(const Point&)>& f, const BallSpec& ball,
                      const AlphaVector& alpha, int levels, int gl) {
  if (alpha.dim() > 3)
    throw std::invalid_argument("ball_integrate: exact path supports d <= 3 only");
  Point work = ball.center;
  return ball_f_rec(f, alpha, 0, ball.center, ball.radius, work, levels, gl);
}

std::vector<BallSpec> dyadic_ball_family(std::size_t d, int radius_lo, int radius_hi,
                                         int centers_per_axis) {
  std::vector<double> axis;
  for (int i = 0; i < centers_per_axis; ++i)
    axis.push_back(std::ldexp(1.0, -6 + i));  // 2^-6, 2^-5, ..., log-spaced
  std::vector<BallSpec> out;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    Point c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = axis[idx[j]];
    for (int e = radius_lo; e <= radius_hi; ++e)
      out.push_back(BallSpec{c, std::ldexp(1.0, e)});
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++idx[j] < axis.size()) break;
      idx[j] = 0;
    }
    if (j == d) break;
  }
  return out;
}

double ap_constant(const std::function<double(const Point&)>& weight, double p,
                   const AlphaVector& alpha, const std::vector<BallSpec>& balls, int depth) {
  if (p < 1.0) throw std::invalid_argument("ap_constant: p must be >= 1");
  auto checked = [&](const Point& x) {
    const double u = weight(x);
    if (!(u > 0.0)) throw std::runtime_error("ap_constant: weight must be positive on samples");
    return u;
  };
  double sup = 0.0;
  for (const BallSpec& ball : balls) {
    const double wb = ball_w_rec(alpha, 0, ball.center, ball.radius, depth, 12);
    if (wb <= 0.0) continue;
    const double avg_u = ball_integrate(checked, ball, alpha, depth) / wb;
    double ratio;
    if (p == 1.0) {
      // empirical essential inf over a deterministic sample cloud
      double inf = std::numeric_limits<double>::infinity();
      const int ns = 9;
      Point x(alpha.dim());
      std::vector<int> ii(alpha.dim(), 0);
      while (true) {
        double rr = 0.0;
        for (std::size_t j = 0; j < alpha.dim(); ++j) {
          x[j] = ball.center[j] + ball.radius * (-1.0 + 2.0 * (ii[j] + 0.5) / ns);
          const double dj = x[j] - ball.center[j];
          rr += dj * dj;
        }
        if (rr < ball.radius * ball.radius && in_closed_orthant(x)) inf = std::min(inf, checked(x));
        std::size_t j = 0;
        for (; j < alpha.dim(); ++j) {
          if (++ii[j] < ns) break;
          ii[j] = 0;
        }
        if (j == alpha.dim()) break;
      }
      if (!std::isfinite(inf)) continue;
      ratio = avg_u / inf;
    } else {
      const double q = 1.0 / (1.0 - p);
      const double avg_dual =
          ball_integrate([&](const Point& x) { return std::pow(checked(x), q); }, ball, alpha,
                         depth) /
          wb;
      ratio = avg_u * std::pow(avg_dual, p - 1.0);
    }
    sup = std::max(sup, ratio);
  }
  return sup;
}

WeightRule orthant_rule(const AlphaVector& alpha, int n) {
  if (n < 1 || n > 150) throw std::invalid_argument("orthant_rule: n out of range");
  const std::size_t d = alpha.dim();
  std::vector<QuadratureRule> axes(d);
  for (std::size_t j = 0; j < d; ++j) {
    QuadratureRule gl = gauss_laguerre(n, alpha[j]);
    QuadratureRule axis;
    axis.nodes.resize(n);
    axis.weights.resize(n);
    // x = sqrt(r): int_0^inf g(x) x^{2a+1} dx = 1/2 int g(sqrt r) e^r r^a e^{-r} dr
    for (int i = 0; i < n; ++i) {
      axis.nodes[i] = std::sqrt(gl.nodes[i]);
      axis.weights[i] = 0.5 * gl.weights[i] * std::exp(gl.nodes[i]);
    }
    axes[j] = std::move(axis);
  }
  WeightRule rule;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    Point x(d);
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = axes[j].nodes[idx[j]];
      w *= axes[j].weights[idx[j]];
    }
    rule.nodes.push_back(std::move(x));
    rule.weights.push_back(w);
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++idx[j] < axes[j].nodes.size()) break;
      idx[j] = 0;
    }
    if (j == d) break;
  }
  return rule;
}

WeightRule fullspace_rule(const AlphaVector& alpha, int n) {
  const WeightRule plus = orthant_rule(alpha, n);
  WeightRule rule;
  const std::size_t d = alpha.dim();
  for (const ReflectionSignature& eta : ReflectionSignature::all(d)) {
    for (std::size_t i = 0; i < plus.nodes.size(); ++i) {
      rule.nodes.push_back(eta.apply(plus.nodes[i]));
      rule.weights.push_back(plus.weights[i]);
    }
  }
  return rule;
}

}  // namespace dunklsq
