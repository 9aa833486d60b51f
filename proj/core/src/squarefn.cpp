#include "dunklsq/squarefn.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "dunklsq/specfun.hpp"

namespace dunklsq {

namespace {

struct Mode {
  MultiIndex out;  // index of the basis function appearing in the field
  double coef;     // includes ladder factors and the 2^{-d} of the plus variants
  int level;       // |m| of the source index, fixing the decay rate
};

std::vector<Mode> prepare_modes(const SquareFnKind& kind, const SpectralFunction& f) {
  const std::size_t d = f.dim();
  const double factor =
      kind.eps_plus ? std::ldexp(1.0, -static_cast<int>(d)) : 1.0;
  std::vector<Mode> modes;
  for (const auto& [m, c] : f.coefficients()) {
    if (kind.eps_plus && !kind.eps_plus->contains(m)) continue;
    switch (kind.deriv) {
      case AreaKind::Vertical:
        modes.push_back(Mode{m, factor * c, m.order()});
        break;
      case AreaKind::Horizontal: {
        const double phi = phi_factor(m[kind.j], f.alpha()[kind.j]);
        if (phi == 0.0) continue;
        const MultiIndex down = m.lowered(kind.j);
        if (!down.valid()) continue;
        modes.push_back(Mode{down, factor * c * phi, m.order()});
        break;
      }
      case AreaKind::HorizontalStar: {
        const double phi = phi_factor(m[kind.j] + 1, f.alpha()[kind.j]);
        modes.push_back(Mode{m.raised(kind.j), factor * c * phi, m.order()});
        break;
      }
    }
  }
  return modes;
}

double decay_rate(const SquareFnKind& kind, const AlphaVector& alpha, int level) {
  const double lam = eigenvalue(level, alpha, alpha.dim());
  return kind.semigroup == SemigroupKind::Heat ? lam : std::sqrt(lam);
}

// derivative multiplier on the amplitude: lambda (or sqrt(lambda)) for the
// vertical field, 1 for the horizontal ones
double deriv_multiplier(const SquareFnKind& kind, double mu) {
  return kind.deriv == AreaKind::Vertical ? mu : 1.0;
}

TimeWeight time_weight(const SquareFnKind& kind) {
  if (kind.semigroup == SemigroupKind::Poisson) return TimeWeight::TDt;
  return kind.deriv == AreaKind::Vertical ? TimeWeight::TDt : TimeWeight::Dt;
}

}  // namespace

double g_function(const SquareFnKind& kind, const SpectralFunction& f, const Point& x) {
  const std::vector<Mode> modes = prepare_modes(kind, f);
  // group amplitudes by eigenlevel; the t-integral is then a closed form
  std::map<int, double> amp;
  for (const Mode& mode : modes)
    amp[mode.level] += mode.coef * hermite_gen(mode.out, f.alpha(), x);
  const bool tdt = time_weight(kind) == TimeWeight::TDt;
  double acc = 0.0;
  for (const auto& [n1, a1] : amp) {
    const double mu1 = decay_rate(kind, f.alpha(), n1);
    const double v1 = a1 * deriv_multiplier(kind, mu1);
    for (const auto& [n2, a2] : amp) {
      const double mu2 = decay_rate(kind, f.alpha(), n2);
      const double v2 = a2 * deriv_multiplier(kind, mu2);
      const double s = mu1 + mu2;
      acc += v1 * v2 * (tdt ? 1.0 / (s * s) : 1.0 / s);
    }
  }
  return std::sqrt(std::max(acc, 0.0));
}

double g_function_quadrature(const SquareFnKind& kind, const SpectralFunction& f, const Point& x,
                             const ZetaPanels& panels) {
  const std::vector<Mode> modes = prepare_modes(kind, f);
  std::map<int, double> amp;
  for (const Mode& mode : modes)
    amp[mode.level] += mode.coef * hermite_gen(mode.out, f.alpha(), x);
  auto field = [&](double t, double) {
    double v = 0.0;
    for (const auto& [n, a] : amp) {
      const double mu = decay_rate(kind, f.alpha(), n);
      v += a * deriv_multiplier(kind, mu) * std::exp(-t * mu);
    }
    return v;
  };
  return time_norm(field, panels, time_weight(kind));
}

namespace {

double area_integral_impl(const SquareFnKind& kind, const SpectralFunction& f, const Point& x,
                          const ConeSpec& cone, const ZetaPanels& panels, double scale,
                          double extra_decay, bool freeze_field) {
  if (kind.semigroup != SemigroupKind::Heat)
    throw std::invalid_argument("area_integral: Poisson-based area integrals are out of scope");
  const std::size_t d = f.dim();
  const AlphaVector& alpha = f.alpha();
  const std::vector<Mode> modes = prepare_modes(kind, f);
  const bool plus = kind.eps_plus.has_value();
  const TimeWeight tw = time_weight(kind);

  double acc = 0.0;
  Point zt_point(d), xz(d);
  for (std::size_t i = 0; i < panels.zeta.size(); ++i) {
    const double zeta = panels.zeta[i];
    const double t = panels.t[i];
    const double rt = std::sqrt(t);
    // per-slice coefficients with the decay folded in
    std::vector<double> coef(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const double lam = eigenvalue(modes[k].level, alpha, d);
      coef[k] = modes[k].coef * deriv_multiplier(kind, lam) * std::exp(-t * lam);
    }
    const double slice_scale = scale * std::exp(-extra_decay * t);

    const std::vector<Point> kinks{x};
    const CrossSection cs = cone_cross_section_multi(d, cone, rt, kinks, plus ? &x : nullptr);

    double frozen_field = 0.0;
    if (freeze_field) {
      for (std::size_t k = 0; k < modes.size(); ++k)
        frozen_field += coef[k] * hermite_gen(modes[k].out, alpha, x);
    }

    double slice = 0.0;
    const double v_cube = plus ? 0.0 : v_full_cube(x, rt, alpha);
    for (std::size_t q = 0; q < cs.u.size(); ++q) {
      bool inside = true;
      for (std::size_t j2 = 0; j2 < d; ++j2) {
        zt_point[j2] = rt * cs.u[q][j2];
        xz[j2] = x[j2] + zt_point[j2];
        if (plus && xz[j2] < 0.0) inside = false;
      }
      if (plus && !inside) continue;
      double w;
      if (plus) {
        w = phi_alpha(x, zt_point, t, alpha);
      } else {
        double dens = 1.0;
        for (std::size_t j2 = 0; j2 < d; ++j2)
          dens *= std::pow(std::abs(xz[j2]), 2.0 * alpha[j2] + 1.0);
        w = dens / v_cube;
      }
      double field;
      if (freeze_field) {
        field = frozen_field;
      } else {
        field = 0.0;
        for (std::size_t k = 0; k < modes.size(); ++k)
          field += coef[k] * hermite_gen(modes[k].out, alpha, xz);
      }
      field *= slice_scale;
      slice += cs.w[q] * field * field * w;
    }
    double fslice = slice * std::pow(t, 0.5 * d) / (1.0 - zeta * zeta);
    if (tw == TimeWeight::TDt) fslice *= t;
    acc += panels.weight[i] * fslice;
  }
  return std::sqrt(acc);
}

}  // namespace

double area_integral(const SquareFnKind& kind, const SpectralFunction& f, const Point& x,
                     const ConeSpec& cone, const ZetaPanels& panels) {
  return area_integral_impl(kind, f, x, cone, panels, 1.0, 0.0, false);
}

double area_integral_frozen(const SquareFnKind& kind, const SpectralFunction& f, const Point& x,
                            const ConeSpec& cone, const ZetaPanels& panels) {
  return area_integral_impl(kind, f, x, cone, panels, 1.0, 0.0, true);
}

double laguerre_area_integral(LaguerreAreaKind kind, std::size_t j, std::size_t i,
                              const SpectralFunction& f_plus, const Point& x, const ConeSpec& cone,
                              const ZetaPanels& panels) {
  const std::size_t d = f_plus.dim();
  const double two_d = std::ldexp(1.0, static_cast<int>(d));
  SquareFnKind base;
  base.semigroup = SemigroupKind::Heat;
  switch (kind) {
    case LaguerreAreaKind::VerticalT:
      base.deriv = AreaKind::Vertical;
      base.eps_plus = EpsVector::zeros(d);
      return area_integral_impl(base, f_plus, x, cone, panels, two_d, 0.0, false);
    case LaguerreAreaKind::HorizontalT:
      base.deriv = AreaKind::Horizontal;
      base.j = j;
      base.eps_plus = EpsVector::zeros(d);
      return area_integral_impl(base, f_plus, x, cone, panels, two_d, 0.0, false);
    case LaguerreAreaKind::HorizontalTTilde:
      base.deriv = (i == j) ? AreaKind::HorizontalStar : AreaKind::Horizontal;
      base.j = (i == j) ? j : i;
      base.eps_plus = EpsVector::unit(d, j);
      return area_integral_impl(base, f_plus, x, cone, panels, two_d, 2.0, false);
  }
  return 0.0;
}

double square_function(const SquareFnSpec& spec, const SpectralFunction& f, const Point& x,
                       const ZetaPanels& panels) {
  if (spec.area) return area_integral(spec.kind, f, x, spec.cone, panels);
  return g_function(spec.kind, f, x);
}

LpRatioResult weighted_lp_ratio(const SquareFnSpec& spec, const SpectralFunction& f,
                                const std::function<double(const Point&)>& weight, double p,
                                const WeightRule& rule, const ZetaPanels& panels) {
  if (p <= 1.0 || !std::isfinite(p))
    throw std::invalid_argument("weighted_lp_ratio: p must be in (1, inf)");
  double gp = 0.0, fp = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Point& xi = rule.nodes[i];
    const double u = weight(xi);
    gp += rule.weights[i] * u * std::pow(square_function(spec, f, xi, panels), p);
    fp += rule.weights[i] * u * std::pow(std::abs(f(xi)), p);
  }
  LpRatioResult out;
  out.g_norm = std::pow(gp, 1.0 / p);
  out.f_norm = std::pow(fp, 1.0 / p);
  out.ratio = out.g_norm / out.f_norm;
  return out;
}

Weak11Result weak11_probe(const SquareFnSpec& spec, const SpectralFunction& f,
                          const std::function<double(const Point&)>& weight,
                          const std::vector<double>& lambda_grid, const WeightRule& rule,
                          const ZetaPanels& panels, int scan_points) {
  double l1 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    l1 += rule.weights[i] * weight(rule.nodes[i]) * std::abs(f(rule.nodes[i]));

  Weak11Result out;
  out.lambdas = lambda_grid;

  if (f.dim() == 1) {
    // exact level sets: scan g on a dense grid, bisect the threshold
    // crossings, and integrate U dw_alpha^+ over the resulting intervals
    const double hi = 8.0;
    const double a = f.alpha()[0];
    std::vector<double> xs(scan_points + 1), gs(scan_points + 1);
    for (int i = 0; i <= scan_points; ++i) {
      xs[i] = hi * i / scan_points;
      gs[i] = square_function(spec, f, {xs[i]}, panels);
    }
    auto eval = [&](double x) { return square_function(spec, f, {x}, panels); };
    auto crossing = [&](double p, double q, double lam) {
      // g(p) and g(q) straddle lam; bisect the threshold
      const bool side = eval(p) > lam;
      for (int b = 0; b < 40; ++b) {
        const double mid = 0.5 * (p + q);
        if ((eval(mid) > lam) == side)
          p = mid;
        else
          q = mid;
      }
      return 0.5 * (p + q);
    };
    auto udw = [&](double lo, double up) {
      return integrate_split(
          [&](double x) { return weight({x}) * std::pow(x, 2.0 * a + 1.0); }, lo, up, {}, 6, 8);
    };
    for (double lam : lambda_grid) {
      double meas = 0.0;
      for (int i = 0; i < scan_points; ++i) {
        const bool in0 = gs[i] > lam, in1 = gs[i + 1] > lam;
        if (!in0 && !in1) continue;
        const double lo = in0 ? xs[i] : crossing(xs[i], xs[i + 1], lam);
        const double up = in1 ? xs[i + 1] : crossing(xs[i], xs[i + 1], lam);
        if (up > lo) meas += udw(lo, up);
      }
      const double v = lam * meas / l1;
      out.values.push_back(v);
      out.constant = std::max(out.constant, v);
    }
    return out;
  }

  // d >= 2: node-thresholded fallback (coarser; reported only)
  std::vector<double> gvals(rule.nodes.size()), uvals(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    gvals[i] = square_function(spec, f, rule.nodes[i], panels);
    uvals[i] = weight(rule.nodes[i]);
  }
  for (double lam : lambda_grid) {
    double meas = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      if (gvals[i] > lam) meas += rule.weights[i] * uvals[i];
    const double v = lam * meas / l1;
    out.values.push_back(v);
    out.constant = std::max(out.constant, v);
  }
  return out;
}

}  // namespace dunklsq
