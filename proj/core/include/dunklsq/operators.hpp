#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "dunklsq/kernel.hpp"
#include "dunklsq/types.hpp"

namespace dunklsq {

/// lambda_n^alpha = 2n + 2|alpha| + 2d.
double eigenvalue(int n, const AlphaVector& alpha, std::size_t d);

struct EigenvalueTable {
  std::vector<double> lambda;  // lambda[n], n = 0..N

  static EigenvalueTable make(int max_n, const AlphaVector& alpha);
};

/// Finitely supported generalized Hermite expansion f = sum_m c_m h_m^alpha.
/// Immutable value type; operators return new instances.
class SpectralFunction {
 public:
  explicit SpectralFunction(AlphaVector alpha) : alpha_(std::move(alpha)) {}
  SpectralFunction(AlphaVector alpha, std::map<MultiIndex, double> coeffs)
      : alpha_(std::move(alpha)), coeffs_(std::move(coeffs)) {}

  const AlphaVector& alpha() const { return alpha_; }
  std::size_t dim() const { return alpha_.dim(); }
  const std::map<MultiIndex, double>& coefficients() const { return coeffs_; }

  void set(const MultiIndex& m, double c);
  double coefficient(const MultiIndex& m) const;
  int max_order() const;

  double operator()(const Point& x) const;

  /// Parseval norm in L^2(R^d, dw_alpha): sqrt(sum c_m^2).
  double norm_l2() const;

  /// {"alpha": [...], "coeffs": [{"m": [...], "c": ...}]}
  std::string to_json() const;
  static SpectralFunction from_json(const std::string& text);

 private:
  AlphaVector alpha_;
  std::map<MultiIndex, double> coeffs_;
};

/// delta_j on coefficients: c_m contributes Phi(m_j, a_j) c_m at m - e_j.
SpectralFunction delta_apply(const SpectralFunction& f, std::size_t j);

/// delta_j^* on coefficients: c_m contributes Phi(m_j + 1, a_j) c_m at m + e_j.
SpectralFunction delta_star_apply(const SpectralFunction& f, std::size_t j);

/// The Dunkl harmonic oscillator: multiply c_m by lambda_{|m|}.
SpectralFunction oscillator_apply(const SpectralFunction& f);

/// Dunkl derivative T_j f(x) = delta_j f(x) - x_j f(x), exact on expansions.
double dunkl_derivative(const SpectralFunction& f, std::size_t j, const Point& x);

/// Heat semigroup on coefficients: c_m -> e^{-t lambda_{|m|}} c_m.  An eps
/// filter keeps only m in N_eps; `restricted` applies the extra 2^{-d} carried
/// by the orthant-restricted operators T_t^{alpha,eps,+}.
SpectralFunction heat_apply(const SpectralFunction& f, double t,
                            const std::optional<EpsVector>& eps = std::nullopt,
                            bool restricted = false);

/// Poisson semigroup on coefficients: c_m -> e^{-t sqrt(lambda_{|m|})} c_m.
SpectralFunction poisson_apply(const SpectralFunction& f, double t,
                               const std::optional<EpsVector>& eps = std::nullopt);

/// One-mode subordination factor: int_0^inf e^{-t^2 lambda/(4u)} e^{-u} du/sqrt(pi u),
/// evaluated on the exponential grid u = sqrt(t^2 lambda)/2 e^v where the
/// trapezoid rule is superexponentially accurate.  Equals e^{-t sqrt(lambda)}.
double poisson_subordination_factor(double lambda, double t, int nodes = 129);

/// Poisson semigroup via the subordination quadrature; if `max_disagreement`
/// is given it receives the worst per-mode relative gap against e^{-t sqrt(lambda)}.
SpectralFunction poisson_apply_subordination(const SpectralFunction& f, double t, int nodes = 129,
                                             double* max_disagreement = nullptr);

/// Heat semigroup by kernel quadrature against a sampled function:
/// T_t f(x) = int G f dw (full space) or the eps-restricted orthant variant.
double heat_apply_grid(const std::function<double(const Point&)>& f, double t, const Point& x,
                       const AlphaVector& alpha, const std::optional<EpsVector>& eps,
                       bool restricted, const KernelEvalConfig& cfg = {}, int quad_nodes = 48);

/// Values on a strictly monotone tensor grid with local polynomial interpolation.
class GridFunction {
 public:
  GridFunction(std::vector<std::vector<double>> axes, std::vector<double> values,
               int interp_order = 3);

  static GridFunction sample(const std::function<double(const Point&)>& f,
                             std::vector<std::vector<double>> axes, int interp_order = 3);

  std::size_t dim() const { return axes_.size(); }
  const std::vector<std::vector<double>>& axes() const { return axes_; }
  double operator()(const Point& x) const;

  /// Dunkl derivative by centered differences plus the reflection term; the
  /// grid must cover both x + h e_j and sigma_j x.
  double dunkl_derivative(std::size_t j, const Point& x, const AlphaVector& alpha,
                          double h = 1e-5) const;

 private:
  double value_at(const std::vector<std::size_t>& idx) const;

  std::vector<std::vector<double>> axes_;
  std::vector<double> values_;
  int order_;
};

}  // namespace dunklsq
