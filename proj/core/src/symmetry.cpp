#include "dunklsq/symmetry.hpp"

#include <cmath>

namespace dunklsq {

SpectralFunction eps_project(const SpectralFunction& f, const EpsVector& eps) {
  SpectralFunction out(f.alpha());
  for (const auto& [m, c] : f.coefficients())
    if (eps.contains(m)) out.set(m, c);
  return out;
}

double eps_project_pointwise(const std::function<double(const Point&)>& f, const EpsVector& eps,
                             const Point& x) {
  const std::size_t d = eps.dim();
  double acc = 0.0;
  for (const ReflectionSignature& eta : ReflectionSignature::all(d))
    acc += eta.parity_sign(eps) * f(eta.apply(x));
  return std::ldexp(acc, -static_cast<int>(d));
}

std::function<double(const Point&)> restrict_plus(std::function<double(const Point&)> f) {
  return [f = std::move(f)](const Point& x) {
    if (!in_closed_orthant(x)) throw std::invalid_argument("restrict_plus: point not in R^d_+");
    return f(x);
  };
}

std::function<double(const Point&)> extend_eps(std::function<double(const Point&)> f_plus,
                                               EpsVector eps) {
  return [f = std::move(f_plus), eps = std::move(eps)](const Point& x) {
    Point ax = x;
    double sign = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < 0.0) {
        ax[j] = -x[j];
        if (eps[j] == 1) sign = -sign;
      }
    }
    return sign * f(ax);
  };
}

ReductionReport reduction_verify(const SpectralFunction& f, std::size_t j,
                                 const std::vector<Point>& grid, const ConeSpec& cone,
                                 const ZetaPanels& panels, double slack) {
  const std::size_t d = f.dim();
  const double constant = std::pow(2.0, 1.5 * d);
  const std::vector<EpsVector> all_eps = EpsVector::all(d);

  SquareFnKind full;
  full.deriv = AreaKind::Horizontal;
  full.j = j;

  ReductionReport report;
  for (const Point& x : grid) {
    ReductionReport::Row row;
    row.x = x;
    row.lhs = area_integral(full, f, x, cone, panels);

    row.mid_sum = 0.0;
    row.bound_sum = 0.0;
    row.chain2_ratio = 0.0;
    for (const EpsVector& eps : all_eps) {
      const SpectralFunction f_eps = eps_project(f, eps);
      if (f_eps.coefficients().empty()) continue;
      // intermediate square function: full-space cone integral of the
      // eps-filtered semigroup field
      const double mid = area_integral(full, f_eps, x, cone, panels);
      row.mid_sum += mid;

      SquareFnKind plus = full;
      plus.eps_plus = eps;
      const double bound = constant * area_integral(plus, f_eps, x, cone, panels);
      row.bound_sum += bound;
      row.chain2_ratio = std::max(row.chain2_ratio, bound > 0.0 ? mid / bound : 0.0);
    }

    row.chain1_ratio = row.mid_sum > 0.0 ? row.lhs / row.mid_sum : 0.0;
    row.pass = row.chain1_ratio <= 1.0 + slack && row.chain2_ratio <= 1.0 + slack;
    report.max_chain1 = std::max(report.max_chain1, row.chain1_ratio);
    report.max_chain2 = std::max(report.max_chain2, row.chain2_ratio);
    report.pass = report.pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace dunklsq
