#include "dunklsq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dunklsq {

namespace {

// Diagonalize the symmetric tridiagonal Jacobi matrix (diagonal d, subdiagonal e)
// by the implicit QL method with Wilkinson shifts, rotating the first-row
// eigenvector components carried in z.  Classic IMTQLX; nodes come out in d
// sorted ascending, Gauss weights are mu0 * z_i^2.
void imtqlx(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  const double prec = 2.22e-16;
  const int max_iter = 60;
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        if (std::abs(e[m]) <= prec * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
      }
      if (m == l) break;
      if (++iter > max_iter) throw std::runtime_error("imtqlx: no convergence");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;

      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  // insertion sort by node
  for (int i = 1; i < n; ++i) {
    double dk = d[i], zk = z[i];
    int j = i - 1;
    while (j >= 0 && d[j] > dk) {
      d[j + 1] = d[j];
      z[j + 1] = z[j];
      --j;
    }
    d[j + 1] = dk;
    z[j + 1] = zk;
  }
}

QuadratureRule golub_welsch(std::vector<double> a, std::vector<double> b, double mu0) {
  const std::size_t n = a.size();
  std::vector<double> e(n, 0.0), z(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) e[k] = std::sqrt(b[k + 1]);
  z[0] = 1.0;
  imtqlx(a, e, z);
  QuadratureRule rule;
  rule.nodes = a;
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) rule.weights[i] = mu0 * z[i] * z[i];
  return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must be > -1");

  const double ab = a + b;
  std::vector<double> alpha(n), beta(n);
  alpha[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double kk = 2.0 * k + ab;
    alpha[k] = (b * b - a * a) / (kk * (kk + 2.0));
  }
  beta[0] = 0.0;  // unused
  if (n > 1) beta[1] = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
  for (int k = 2; k < n; ++k) {
    const double kk = 2.0 * k + ab;
    beta[k] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (kk * kk * (kk + 1.0) * (kk - 1.0));
  }
  const double mu0 =
      std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
               std::lgamma(ab + 2.0));
  return golub_welsch(std::move(alpha), std::move(beta), mu0);
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadratureRule gauss_legendre_ab(int n, double a, double b) {
  QuadratureRule base = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    base.nodes[i] = mid + half * base.nodes[i];
    base.weights[i] *= half;
  }
  return base;
}

QuadratureRule gauss_laguerre(int n, double a) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be >= 1");
  if (a <= -1.0) throw std::invalid_argument("gauss_laguerre: exponent must be > -1");
  std::vector<double> alpha(n), beta(n);
  for (int k = 0; k < n; ++k) {
    alpha[k] = 2.0 * k + a + 1.0;
    beta[k] = k * (k + a);  // beta[0] unused
  }
  const double mu0 = std::exp(std::lgamma(a + 1.0));
  return golub_welsch(std::move(alpha), std::move(beta), mu0);
}

QuadratureRule composite_gauss(const std::vector<double>& cuts, int gl) {
  QuadratureRule out;
  const QuadratureRule base = gauss_legendre(gl);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    const double half = 0.5 * (cuts[k + 1] - cuts[k]);
    if (half <= 0.0) continue;
    for (int i = 0; i < gl; ++i) {
      out.nodes.push_back(mid + half * base.nodes[i]);
      out.weights.push_back(half * base.weights[i]);
    }
  }
  return out;
}

std::vector<double> graded_cuts(double lo, double hi, int levels) {
  std::vector<double> cuts;
  cuts.push_back(lo);
  const double len = hi - lo;
  for (int k = levels; k >= 2; --k) cuts.push_back(lo + len * std::ldexp(1.0, -k));
  cuts.push_back(lo + 0.5 * len);
  for (int k = 2; k <= levels; ++k) cuts.push_back(hi - len * std::ldexp(1.0, -k));
  cuts.push_back(hi);
  return cuts;
}

double integrate_split(const std::function<double(double)>& f, double lo, double hi,
                       std::vector<double> splits, int levels, int gl) {
  if (!(hi > lo)) return 0.0;
  splits.push_back(lo);
  splits.push_back(hi);
  std::sort(splits.begin(), splits.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
    const double a = std::max(lo, splits[k]);
    const double b = std::min(hi, splits[k + 1]);
    if (b - a <= 1e-300) continue;
    const QuadratureRule rule = composite_gauss(graded_cuts(a, b, levels), gl);
    total += rule.integrate(f);
  }
  return total;
}

}  // namespace dunklsq
