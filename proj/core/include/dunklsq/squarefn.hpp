#pragma once

#include <functional>
#include <optional>

#include "dunklsq/kernel.hpp"
#include "dunklsq/measure.hpp"
#include "dunklsq/operators.hpp"

namespace dunklsq {

enum class SemigroupKind { Heat, Poisson };

/// Selector for the vertical / horizontal square functions: derivative, the
/// driving semigroup, and an optional eps for the orthant-restricted variants.
struct SquareFnKind {
  AreaKind deriv = AreaKind::Vertical;
  std::size_t j = 0;
  SemigroupKind semigroup = SemigroupKind::Heat;
  std::optional<EpsVector> eps_plus;  // engaged: the eps-plus variant on R^d_+
};

/// g-function at x by the closed-form t-integrals (1/(lam+lam') for dt,
/// 1/(lam+lam')^2 for t dt; sqrt(lam) replacing lam for the Poisson semigroup).
double g_function(const SquareFnKind& kind, const SpectralFunction& f, const Point& x);

/// Quadrature path over zeta panels; mutual oracle for the closed form.
double g_function_quadrature(const SquareFnKind& kind, const SpectralFunction& f, const Point& x,
                             const ZetaPanels& panels);

/// Lusin area integral over the parabolic cone of the given aperture (heat
/// semigroup only; the Poisson-based area integrals are out of scope).
double area_integral(const SquareFnKind& kind, const SpectralFunction& f, const Point& x,
                     const ConeSpec& cone, const ZetaPanels& panels);

/// Same cone integral with the derivative field frozen at z = 0; the aperture
/// beta -> 0 collapse reference for area_integral.
double area_integral_frozen(const SquareFnKind& kind, const SpectralFunction& f, const Point& x,
                            const ConeSpec& cone, const ZetaPanels& panels);

/// Laguerre convolution-type area integrals, evaluated through the eps
/// components: the Laguerre heat semigroup is 2^d T_t^{alpha,0,+} and the
/// modified one is 2^d e^{-2t} T_t^{alpha,e_j,+}.
enum class LaguerreAreaKind { VerticalT, HorizontalT, HorizontalTTilde };
double laguerre_area_integral(LaguerreAreaKind kind, std::size_t j, std::size_t i,
                              const SpectralFunction& f_plus, const Point& x, const ConeSpec& cone,
                              const ZetaPanels& panels);

/// Square-function spec for the weighted-norm probes: a g-function or a Lusin
/// area integral of the chosen kind.
struct SquareFnSpec {
  SquareFnKind kind;
  bool area = false;
  ConeSpec cone;
};

double square_function(const SquareFnSpec& spec, const SpectralFunction& f, const Point& x,
                       const ZetaPanels& panels);

struct LpRatioResult {
  double ratio;
  double g_norm;
  double f_norm;
};

/// || g(f) ||_{L^p(U dw)} / || f ||_{L^p(U dw)} over the given quadrature rule.
LpRatioResult weighted_lp_ratio(const SquareFnSpec& spec, const SpectralFunction& f,
                                const std::function<double(const Point&)>& weight, double p,
                                const WeightRule& rule, const ZetaPanels& panels);

struct Weak11Result {
  double constant = 0.0;  // sup over the lambda grid
  std::vector<double> lambdas;
  std::vector<double> values;  // lambda * (U dw)({g > lambda}) / ||f||_1
};

/// Empirical weak-(1,1) constant over a lambda grid; reported, not asserted.
/// For d = 1 the level sets {g > lambda} are located by scan + bisection and
/// their U dw_alpha^+ measures integrated exactly; d >= 2 falls back to
/// thresholding on the quadrature nodes.
Weak11Result weak11_probe(const SquareFnSpec& spec, const SpectralFunction& f,
                          const std::function<double(const Point&)>& weight,
                          const std::vector<double>& lambda_grid, const WeightRule& rule,
                          const ZetaPanels& panels, int scan_points = 400);

}  // namespace dunklsq
