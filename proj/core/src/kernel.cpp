#include "dunklsq/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dunklsq {

ZetaTime ZetaTime::from_t(double t) {
  if (t <= 0.0) throw std::invalid_argument("ZetaTime: t must be > 0");
  return ZetaTime{t, std::tanh(t)};
}

ZetaTime ZetaTime::from_zeta(double zeta) {
  if (zeta <= 0.0 || zeta >= 1.0) throw std::invalid_argument("ZetaTime: zeta must be in (0,1)");
  return ZetaTime{std::atanh(zeta), zeta};
}

QPair q_pm(const Point& x, const Point& y, const std::vector<double>& s) {
  double base = norm2(x) + norm2(y);
  double cross = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) cross += x[i] * y[i] * s[i];
  return QPair{base + 2.0 * cross, base - 2.0 * cross};
}

ZetaPanels ZetaPanels::make(const KernelEvalConfig& cfg) {
  return make(cfg.zeta_low_panels, cfg.zeta_high_panels, cfg.zeta_gl);
}

ZetaPanels ZetaPanels::make(int low_panels, int high_panels, int gl) {
  std::vector<double> cuts;
  cuts.push_back(0.0);
  for (int k = low_panels; k >= 1; --k) cuts.push_back(std::ldexp(1.0, -k));
  for (int k = 2; k < high_panels; ++k) cuts.push_back(1.0 - std::ldexp(1.0, -k));
  cuts.push_back(1.0 - std::ldexp(1.0, -high_panels));
  cuts.push_back(1.0);
  QuadratureRule rule = composite_gauss(cuts, gl);
  ZetaPanels out;
  out.zeta = rule.nodes;
  out.weight = rule.weights;
  out.t.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) out.t[i] = std::atanh(rule.nodes[i]);
  return out;
}

namespace {
int pi_node_target(double u) {
  // Gauss-Jacobi resolves exp(-u s) once 2n comfortably exceeds the Chebyshev
  // decay threshold ~ sqrt(2 u log(1/tol)); 3.25 sqrt(u) targets ~1e-9.
  return static_cast<int>(std::ceil(3.25 * std::sqrt(std::max(u, 1.0))));
}
}  // namespace

HeatKernel::HeatKernel(AlphaVector alpha, EpsVector eps, KernelEvalConfig cfg)
    : alpha_(std::move(alpha)), eps_(std::move(eps)), cfg_(cfg) {
  if (eps_.dim() != alpha_.dim()) throw std::invalid_argument("HeatKernel: dimension mismatch");
  p_ = static_cast<double>(alpha_.dim()) + alpha_.sum() + eps_.order();
  pi_ladder_.resize(alpha_.dim());
  for (std::size_t i = 0; i < alpha_.dim(); ++i) {
    const double nu = alpha_[i] + eps_[i];
    if (nu < -0.5 + 1e-12) {
      QuadratureRule pm;
      pm.nodes = {-1.0, 1.0};
      pm.weights = {1.0 / std::sqrt(2.0 * M_PI), 1.0 / std::sqrt(2.0 * M_PI)};
      pi_ladder_[i].push_back(std::move(pm));
    } else {
      const double c =
          1.0 / (std::sqrt(M_PI) * std::exp(nu * std::log(2.0) + std::lgamma(nu + 0.5)));
      int n = cfg_.pi_nodes;
      const int rungs = cfg_.adapt_pi_nodes ? 5 : 1;
      for (int r = 0; r < rungs; ++r, n *= 2) {
        QuadratureRule rule = gauss_jacobi(n, nu - 0.5, nu - 0.5);
        for (double& w : rule.weights) w *= c;
        pi_ladder_[i].push_back(std::move(rule));
      }
    }
  }
}

double HeatKernel::xy_eps(const Point& x, const Point& y) const {
  double v = 1.0;
  for (std::size_t i = 0; i < alpha_.dim(); ++i)
    if (eps_[i] == 1) v *= x[i] * y[i];
  return v;
}

double HeatKernel::x_pow(const Point& x, std::size_t skip) const {
  double v = 1.0;
  for (std::size_t i = 0; i < alpha_.dim(); ++i)
    if (eps_[i] == 1 && i != skip) v *= x[i];
  return v;
}

HeatKernel::Moments HeatKernel::moments(const Point& x, const Point& y, double zeta) const {
  const std::size_t d = alpha_.dim();
  Moments mom;
  mom.m0.resize(d);
  mom.m1.resize(d);
  const double log_a = std::log1p(-zeta * zeta) - std::log(2.0 * zeta);
  mom.log_pref = -static_cast<double>(d) * std::log(2.0) + p_ * log_a -
                 dist2(x, y) / (4.0 * zeta) -
                 0.25 * zeta * (norm2(x) + norm2(y) + 2.0 * dot(x, y));
  const double mu = (1.0 - zeta * zeta) / (2.0 * zeta);
  for (std::size_t i = 0; i < d; ++i) {
    const double u = x[i] * y[i] * mu;
    const double nu = alpha_[i] + eps_[i];
    if (cfg_.rep == KernelRep::Bessel) {
      mom.m0[i] = bessel_i_ratio_scaled(nu, u);
      mom.m1[i] = -u * bessel_i_ratio_scaled(nu + 1.0, u);
    } else {
      const auto& ladder = pi_ladder_[i];
      std::size_t idx = 0;
      if (ladder.size() > 1) {
        const int want = pi_node_target(u);
        while (idx + 1 < ladder.size() &&
               static_cast<int>(ladder[idx].nodes.size()) < want)
          ++idx;
      }
      const QuadratureRule& rule = ladder[idx];
      double s0 = 0.0, s1 = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double e = std::exp(-u * (1.0 + rule.nodes[k]));
        s0 += rule.weights[k] * e;
        s1 += rule.weights[k] * rule.nodes[k] * e;
      }
      mom.m0[i] = s0;
      mom.m1[i] = s1;
    }
  }
  return mom;
}

double HeatKernel::value_zt(const Point& x, const Point& y, const ZetaTime& zt,
                            KernelDiag* diag) const {
  if (cfg_.rep == KernelRep::Series) return series_sum(x, y, zt.t, 0, 0, diag);
  const Moments mom = moments(x, y, zt.zeta);
  double j0 = 1.0;
  for (double m : mom.m0) j0 *= m;
  return std::exp(mom.log_pref) * xy_eps(x, y) * j0;
}

double HeatKernel::dt_zt(const Point& x, const Point& y, const ZetaTime& zt) const {
  if (cfg_.rep == KernelRep::Series) return series_sum(x, y, zt.t, 1, 0, nullptr);
  const std::size_t d = alpha_.dim();
  const double zeta = zt.zeta;
  const Moments mom = moments(x, y, zeta);
  double j0 = 1.0;
  for (double m : mom.m0) j0 *= m;
  // q_+- are affine in s, so both integrals reduce to first moments
  double cross = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double js = mom.m1[i];
    for (std::size_t k = 0; k < d; ++k)
      if (k != i) js *= mom.m0[k];
    cross += x[i] * y[i] * js;
  }
  const double base = norm2(x) + norm2(y);
  const double jqp = base * j0 + 2.0 * cross;
  const double jqm = base * j0 - 2.0 * cross;
  const double h = p_ * (1.0 + zeta * zeta) / zeta * j0 +
                   (1.0 - zeta * zeta) / zeta * (0.25 * zeta * jqm - 0.25 / zeta * jqp);
  return -std::exp(mom.log_pref) * xy_eps(x, y) * h;
}

double HeatKernel::delta_zt(std::size_t j, const Point& x, const Point& y,
                            const ZetaTime& zt) const {
  if (cfg_.rep == KernelRep::Series) return series_sum(x, y, zt.t, 2, j, nullptr);
  const double zeta = zt.zeta;
  const Moments mom = moments(x, y, zeta);
  const std::size_t d = alpha_.dim();
  double j0 = 1.0;
  for (double m : mom.m0) j0 *= m;
  double jsj = mom.m1[j];
  for (std::size_t k = 0; k < d; ++k)
    if (k != j) jsj *= mom.m0[k];
  const double cp = 0.5 / zeta + 0.5 * zeta;
  const double cm = 0.5 / zeta - 0.5 * zeta;
  const double xe = xy_eps(x, y);
  double h = -xe * (x[j] * cp * j0 + y[j] * cm * jsj) + x[j] * xe * j0;
  if (eps_[j] == 1) h += (2.0 * alpha_[j] + 2.0) * x_pow(x, j) * x_pow(y, alpha_.dim()) * j0;
  return std::exp(mom.log_pref) * h;
}

double HeatKernel::delta_star_zt(std::size_t j, const Point& x, const Point& y,
                                 const ZetaTime& zt) const {
  if (cfg_.rep == KernelRep::Series) return series_sum(x, y, zt.t, 3, j, nullptr);
  return -delta_zt(j, x, y, zt) + 2.0 * x[j] * value_zt(x, y, zt);
}

double HeatKernel::value(const Point& x, const Point& y, double t, KernelDiag* diag) const {
  return value_zt(x, y, ZetaTime::from_t(t), diag);
}
double HeatKernel::dt(const Point& x, const Point& y, double t) const {
  return dt_zt(x, y, ZetaTime::from_t(t));
}
double HeatKernel::delta(std::size_t j, const Point& x, const Point& y, double t) const {
  return delta_zt(j, x, y, ZetaTime::from_t(t));
}
double HeatKernel::delta_star(std::size_t j, const Point& x, const Point& y, double t) const {
  return delta_star_zt(j, x, y, ZetaTime::from_t(t));
}

namespace {
// multi-indices k in N^d with |k| = total, lexicographic
void compositions(std::size_t d, int total, std::vector<int>& work,
                  const std::function<void(const std::vector<int>&)>& emit) {
  if (d == 1) {
    work.back() = total;
    emit(work);
    return;
  }
  const std::size_t pos = work.size() - d;
  for (int v = 0; v <= total; ++v) {
    work[pos] = v;
    compositions(d - 1, total - v, work, emit);
  }
}
}  // namespace

double HeatKernel::series_sum(const Point& x, const Point& y, double t, int deriv, std::size_t j,
                              KernelDiag* diag) const {
  const std::size_t d = alpha_.dim();
  const int e_order = eps_.order();
  const double lam_shift = 2.0 * alpha_.sum() + 2.0 * d;
  double sum = 0.0;
  double env = 0.0;     // max summand magnitude over the last two levels
  int edge_count = 1;   // index count at the last level
  std::vector<int> work(d);

  for (int n = e_order; n <= cfg_.series_n; n += 2) {
    const int half = (n - e_order) / 2;
    const double lam = 2.0 * n + lam_shift;
    const double decay = std::exp(-t * lam);
    double level_env = 0.0;
    int level_count = 0;
    compositions(d, half, work, [&](const std::vector<int>& k) {
      std::vector<int> me(d);
      for (std::size_t i = 0; i < d; ++i) me[i] = eps_[i] + 2 * k[i];
      const MultiIndex m(me);
      ++level_count;
      switch (deriv) {
        case 0: {
          const double hh = hermite_gen(m, alpha_, x) * hermite_gen(m, alpha_, y);
          level_env = std::max(level_env, std::abs(hh));
          sum += decay * hh;
          break;
        }
        case 1: {
          const double hh = hermite_gen(m, alpha_, x) * hermite_gen(m, alpha_, y);
          level_env = std::max(level_env, lam * std::abs(hh));
          sum -= lam * decay * hh;
          break;
        }
        case 2: {
          const double v = phi_factor(m[j], alpha_[j]) * hermite_gen(m.lowered(j), alpha_, x) *
                           hermite_gen(m, alpha_, y);
          level_env = std::max(level_env, std::abs(v));
          sum += decay * v;
          break;
        }
        case 3: {
          const double v = phi_factor(m[j] + 1, alpha_[j]) *
                           hermite_gen(m.raised(j), alpha_, x) * hermite_gen(m, alpha_, y);
          level_env = std::max(level_env, std::abs(v));
          sum += decay * v;
          break;
        }
      }
    });
    if (n + 4 > cfg_.series_n) {
      env = std::max(env, level_env);
      edge_count = level_count;
    }
  }

  if (diag != nullptr) {
    // geometric tail estimate: edge envelope times sum of e^{-t lam_n}, with
    // allowances for index-count growth and envelope wobble near h_m zeros
    const double lam_next = 2.0 * (cfg_.series_n + 2) + lam_shift;
    const double r = std::exp(-4.0 * t);
    const double growth = (d >= 2) ? 2.0 : 1.0;
    diag->series_tail = 4.0 * env * edge_count * growth * std::exp(-t * lam_next) / (1.0 - r);
    if (diag->series_tail > cfg_.series_tail_tol) diag->accuracy_warning = true;
  }
  return sum;
}

DunklHeatKernel::DunklHeatKernel(AlphaVector alpha, KernelEvalConfig cfg)
    : eps_(EpsVector::all(alpha.dim())) {
  for (const EpsVector& e : eps_) components_.emplace_back(alpha, e, cfg);
}

double DunklHeatKernel::value(const Point& x, const Point& y, double t) const {
  // parity extension: each component satisfies G^eps(eta x, y) = eta^eps G^eps(x, y)
  Point ax = x, ay = y;
  for (double& v : ax) v = std::abs(v);
  for (double& v : ay) v = std::abs(v);
  const ZetaTime zt = ZetaTime::from_t(t);
  double total = 0.0;
  for (std::size_t idx = 0; idx < components_.size(); ++idx) {
    double sign = 1.0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
      if (eps_[idx][i] == 1 && x[i] < 0.0) sign = -sign;
      if (eps_[idx][i] == 1 && y[i] < 0.0) sign = -sign;
    }
    total += sign * components_[idx].value_zt(ax, ay, zt);
  }
  return total;
}

double area_kernel_zt(const HeatKernel& kern, AreaKind kind, std::size_t j, const Point& x,
                      const Point& y, const Point& z, const ZetaTime& zt) {
  Point xz(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xz[i] = x[i] + z[i];
    if (xz[i] < 0.0) return 0.0;
  }
  const double w = std::sqrt(phi_alpha(x, z, zt.t, kern.alpha()));
  switch (kind) {
    case AreaKind::Vertical:
      return kern.dt_zt(xz, y, zt) * w;
    case AreaKind::Horizontal:
      return kern.delta_zt(j, xz, y, zt) * w;
    case AreaKind::HorizontalStar:
      return kern.delta_star_zt(j, xz, y, zt) * w;
  }
  return 0.0;
}

double area_kernel(const HeatKernel& kern, AreaKind kind, std::size_t j, const Point& x,
                   const Point& y, const Point& z, double t) {
  return area_kernel_zt(kern, kind, j, x, y, z, ZetaTime::from_t(t));
}

double time_norm(const std::function<double(double, double)>& k, const ZetaPanels& panels,
                 TimeWeight tw) {
  double acc = 0.0;
  for (std::size_t i = 0; i < panels.zeta.size(); ++i) {
    const double zeta = panels.zeta[i];
    const double t = panels.t[i];
    const double v = k(t, zeta);
    double f = v * v / (1.0 - zeta * zeta);
    if (tw == TimeWeight::TDt) f *= t;
    acc += panels.weight[i] * f;
  }
  return std::sqrt(acc);
}

namespace {

void append_graded(std::vector<Point>& us, std::vector<double>& ws, double lo, double hi,
                   int levels, int gl) {
  if (!(hi > lo)) return;
  const QuadratureRule rule = composite_gauss(graded_cuts(lo, hi, levels), gl);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    us.push_back(Point{rule.nodes[i]});
    ws.push_back(rule.weights[i]);
  }
}

}  // namespace

CrossSection cone_cross_section(std::size_t d, const ConeSpec& cone, const Point& x,
                                double sqrt_t, bool restrict_to_orthant) {
  std::vector<Point> kinks{x};
  return cone_cross_section_multi(d, cone, sqrt_t, kinks,
                                  restrict_to_orthant ? &x : nullptr);
}

CrossSection cone_cross_section_multi(std::size_t d, const ConeSpec& cone, double sqrt_t,
                                      const std::vector<Point>& kink_centers, const Point* clip) {
  CrossSection cs;
  const double beta = cone.beta;
  const int refine = cone.boundary_refine + 2;

  if (d == 1) {
    std::vector<double> splits;
    double lo = -beta;
    for (const Point& c : kink_centers) {
      const double cut = -c[0] / sqrt_t;
      if (cut > -beta && cut < beta) splits.push_back(cut);
    }
    if (clip != nullptr) lo = std::max(lo, -(*clip)[0] / sqrt_t);
    if (lo >= beta) return cs;
    splits.push_back(lo);
    splits.push_back(beta);
    std::sort(splits.begin(), splits.end());
    const int gl = std::max(4, cone.nodes / 2);
    for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
      const double a = std::max(lo, splits[k]);
      const double b = std::min(beta, splits[k + 1]);
      append_graded(cs.u, cs.w, a, b, refine, gl);
    }
    return cs;
  }

  if (d == 2) {
    // polar: u = rho (cos th, sin th).  The lines x_j + sqrt_t rho u_j = 0 cut
    // the circle into segments of constant admissibility; collect all crossing
    // angles, then keep (clip) or merely split (kinks) each segment.  The arc
    // measure has sqrt-kinks at the radii where a line first meets the circle,
    // so the radial rule is split there as well.
    std::vector<double> rcuts{0.0, beta};
    auto add_radii = [&](const Point& c) {
      for (std::size_t j2 = 0; j2 < 2; ++j2) {
        const double rc = c[j2] / sqrt_t;
        if (rc > 0.0 && rc < beta) rcuts.push_back(rc);
      }
      const double corner = std::sqrt(c[0] * c[0] + c[1] * c[1]) / sqrt_t;
      if (corner > 0.0 && corner < beta) rcuts.push_back(corner);
    };
    for (const Point& c : kink_centers) add_radii(c);
    if (clip != nullptr) add_radii(*clip);
    std::sort(rcuts.begin(), rcuts.end());
    rcuts.erase(std::unique(rcuts.begin(), rcuts.end()), rcuts.end());
    const QuadratureRule radial = composite_gauss(rcuts, cone.nodes);
    const int agl = std::max(4, cone.nodes / 4);
    for (std::size_t r = 0; r < radial.nodes.size(); ++r) {
      const double rho = radial.nodes[r];
      const double wr = radial.weights[r] * rho;
      std::vector<double> ths{-M_PI, M_PI};
      auto add_crossings = [&](const Point& c) {
        const double c1 = -c[0] / (sqrt_t * rho);
        if (std::abs(c1) < 1.0) {
          const double A = std::acos(c1);
          ths.push_back(A);
          ths.push_back(-A);
        }
        const double c2 = -c[1] / (sqrt_t * rho);
        if (std::abs(c2) < 1.0) {
          const double B = std::asin(c2);
          ths.push_back(B);
          ths.push_back(B >= 0.0 ? M_PI - B : -M_PI - B);
        }
      };
      for (const Point& c : kink_centers) add_crossings(c);
      if (clip != nullptr) add_crossings(*clip);
      std::sort(ths.begin(), ths.end());
      for (std::size_t k = 0; k + 1 < ths.size(); ++k) {
        if (ths[k + 1] - ths[k] < 1e-14) continue;
        if (clip != nullptr) {
          const double mid = 0.5 * (ths[k] + ths[k + 1]);
          const double u1 = (*clip)[0] + sqrt_t * rho * std::cos(mid);
          const double u2 = (*clip)[1] + sqrt_t * rho * std::sin(mid);
          if (u1 < 0.0 || u2 < 0.0) continue;
        }
        const QuadratureRule arc =
            composite_gauss(graded_cuts(ths[k], ths[k + 1], cone.boundary_refine + 1), agl);
        for (std::size_t i = 0; i < arc.nodes.size(); ++i) {
          cs.u.push_back(Point{rho * std::cos(arc.nodes[i]), rho * std::sin(arc.nodes[i])});
          cs.w.push_back(wr * arc.weights[i]);
        }
      }
    }
    return cs;
  }

  // d >= 3: tensor rule over the bounding cube with a ball indicator
  const QuadratureRule axis = gauss_legendre_ab(cone.nodes, -beta, beta);
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    Point u(d);
    double w = 1.0;
    for (std::size_t j2 = 0; j2 < d; ++j2) {
      u[j2] = axis.nodes[idx[j2]];
      w *= axis.weights[idx[j2]];
    }
    if (norm2(u) < beta * beta) {
      cs.u.push_back(u);
      cs.w.push_back(w);
    }
    std::size_t j2 = 0;
    for (; j2 < d; ++j2) {
      if (++idx[j2] < axis.nodes.size()) break;
      idx[j2] = 0;
    }
    if (j2 == d) break;
  }
  return cs;
}

double cone_norm(const std::function<double(const Point&, double, double)>& k, std::size_t d,
                 const Point& x, const ConeSpec& cone, const ZetaPanels& panels, TimeWeight tw,
                 bool restrict_to_orthant) {
  std::vector<Point> kinks{x};
  return cone_norm_multi(k, d, cone, panels, tw, kinks, restrict_to_orthant ? &x : nullptr);
}

double cone_norm_multi(const std::function<double(const Point&, double, double)>& k,
                       std::size_t d, const ConeSpec& cone, const ZetaPanels& panels,
                       TimeWeight tw, const std::vector<Point>& kink_centers, const Point* clip) {
  double acc = 0.0;
  Point z(d);
  for (std::size_t i = 0; i < panels.zeta.size(); ++i) {
    const double zeta = panels.zeta[i];
    const double t = panels.t[i];
    const double rt = std::sqrt(t);
    const CrossSection cs = cone_cross_section_multi(d, cone, rt, kink_centers, clip);
    double slice = 0.0;
    for (std::size_t q = 0; q < cs.u.size(); ++q) {
      for (std::size_t j2 = 0; j2 < d; ++j2) z[j2] = rt * cs.u[q][j2];
      const double v = k(z, t, zeta);
      slice += cs.w[q] * v * v;
    }
    double f = slice * std::pow(t, 0.5 * d) / (1.0 - zeta * zeta);
    if (tw == TimeWeight::TDt) f *= t;
    acc += panels.weight[i] * f;
  }
  return std::sqrt(acc);
}

double banach_norm(const HeatKernel& kern, const KernelFamilySpec& fam, const Point& x,
                   const Point& y, BanachSpace space, const ConeSpec& cone,
                   const ZetaPanels& panels, KernelDiag* diag) {
  auto scaled = [&](double t) {
    return (fam.time_decay != 0.0) ? fam.scale * std::exp(-fam.time_decay * t) : fam.scale;
  };
  double result = 0.0;
  if (space == BanachSpace::L2dt || space == BanachSpace::L2tdt) {
    auto f = [&](double t, double zeta) {
      const ZetaTime zt{t, zeta};
      double v;
      switch (fam.kind) {
        case AreaKind::Vertical:
          v = kern.dt_zt(x, y, zt);
          break;
        case AreaKind::Horizontal:
          v = kern.delta_zt(fam.j, x, y, zt);
          break;
        default:
          v = kern.delta_star_zt(fam.j, x, y, zt);
      }
      return scaled(t) * v;
    };
    result = time_norm(f, panels, space == BanachSpace::L2tdt ? TimeWeight::TDt : TimeWeight::Dt);
  } else {
    auto f = [&](const Point& z, double t, double zeta) {
      const ZetaTime zt{t, zeta};
      return scaled(t) * area_kernel_zt(kern, fam.kind, fam.j, x, y, z, zt);
    };
    result = cone_norm(f, kern.dim(), x, cone, panels,
                       space == BanachSpace::L2ConeTdt ? TimeWeight::TDt : TimeWeight::Dt, true);
  }
  if (diag != nullptr) {
    const ZetaPanels fine = ZetaPanels::make(kern.config().zeta_low_panels * 2,
                                             kern.config().zeta_high_panels * 2,
                                             kern.config().zeta_gl);
    const double again = banach_norm(kern, fam, x, y, space, cone, fine, nullptr);
    diag->refine_disagreement = std::abs(again - result) / std::max(again, 1e-300);
    if (diag->refine_disagreement > 1e-4) diag->accuracy_warning = true;
  }
  return result;
}

}  // namespace dunklsq
