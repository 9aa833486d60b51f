#include "dunklsq/czcheck.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dunklsq/parallel.hpp"
#include "dunklsq/report.hpp"
#include "json.hpp"

namespace dunklsq {

std::string audit_family_name(AuditFamily f) {
  switch (f) {
    case AuditFamily::GV: return "gV";
    case AuditFamily::GH: return "gH";
    case AuditFamily::GHstar: return "gHstar";
    case AuditFamily::SV: return "SV";
    case AuditFamily::SH: return "SH";
    case AuditFamily::SHstar: return "SHstar";
    case AuditFamily::SVT: return "SVT";
    case AuditFamily::SHT: return "SHT";
    case AuditFamily::SHTt: return "SHTtilde";
  }
  return "?";
}

bool audit_family_cone(AuditFamily f) {
  switch (f) {
    case AuditFamily::GV:
    case AuditFamily::GH:
    case AuditFamily::GHstar:
      return false;
    default:
      return true;
  }
}

BanachSpace audit_family_space(AuditFamily f) {
  switch (f) {
    case AuditFamily::GV: return BanachSpace::L2tdt;
    case AuditFamily::GH:
    case AuditFamily::GHstar: return BanachSpace::L2dt;
    case AuditFamily::SV:
    case AuditFamily::SVT: return BanachSpace::L2ConeTdt;
    default: return BanachSpace::L2ConeDt;
  }
}

double audit_family_delta(AuditFamily f) { return audit_family_cone(f) ? 0.5 : 1.0; }

KernelFamilySpec audit_family_spec(AuditFamily f, std::size_t d, std::size_t j) {
  KernelFamilySpec spec;
  spec.j = j;
  const double two_d = std::ldexp(1.0, static_cast<int>(d));
  switch (f) {
    case AuditFamily::GV:
    case AuditFamily::SV:
      spec.kind = AreaKind::Vertical;
      break;
    case AuditFamily::GH:
    case AuditFamily::SH:
      spec.kind = AreaKind::Horizontal;
      break;
    case AuditFamily::GHstar:
    case AuditFamily::SHstar:
      spec.kind = AreaKind::HorizontalStar;
      break;
    case AuditFamily::SVT:
      spec.kind = AreaKind::Vertical;
      spec.scale = two_d;
      break;
    case AuditFamily::SHT:
      spec.kind = AreaKind::Horizontal;
      spec.scale = two_d;
      break;
    case AuditFamily::SHTt:
      spec.kind = AreaKind::HorizontalStar;  // the j = i branch dispatches to delta*
      spec.scale = two_d;
      spec.time_decay = 2.0;
      break;
  }
  return spec;
}

EpsVector audit_family_eps(AuditFamily f, std::size_t d, const EpsVector& requested) {
  switch (f) {
    case AuditFamily::SVT:
    case AuditFamily::SHT:
      return EpsVector::zeros(d);
    case AuditFamily::SHTt:
      return EpsVector::unit(d, 0);
    default:
      return requested;
  }
}

namespace {

std::vector<double> base_locations(int level, double range_max) {
  // nested geometric ladder; higher levels densify and push outward
  std::vector<double> locs = {0.35, 0.7, 1.4, 2.8};
  if (level >= 2) locs.insert(locs.end(), {0.5, 1.0, 2.0, 4.0});
  if (level >= 3) locs.insert(locs.end(), {0.25, 5.6});
  if (level >= 4) locs.push_back(range_max);
  return locs;
}

int location_level(double a, double range_max) {
  for (int lvl = 1; lvl <= 4; ++lvl) {
    for (double b : base_locations(lvl, range_max))
      if (b == a) return lvl;
  }
  return 4;
}

Point make_point(std::size_t d, double a) {
  Point x(d, a);
  if (d >= 2) x[1] = 0.75 * a;
  if (d >= 3) x[2] = 0.6 * a;
  return x;
}

std::vector<Point> directions(std::size_t d) {
  std::vector<Point> dirs;
  Point e1(d, 0.0);
  e1[0] = 1.0;
  dirs.push_back(e1);
  if (d >= 2) {
    Point diag(d, 0.0);
    const double c = 1.0 / std::sqrt(2.0);
    diag[0] = c;
    diag[1] = c;
    dirs.push_back(diag);
  }
  return dirs;
}

}  // namespace

TripleGrid make_triple_grid(std::size_t d, const AuditConfig& cfg) {
  TripleGrid grid;
  const std::vector<Point> dirs = directions(d);
  const auto exp_level = [&](int e) {
    const int lvl = static_cast<int>(cfg.levels - (e - cfg.sep_exp_min));
    return std::max(1, std::min(cfg.levels, lvl));
  };

  const std::vector<double> all_locs = base_locations(cfg.levels, cfg.range_max);
  for (double a : all_locs) {
    const int aloc_level = location_level(a, cfg.range_max);
    for (int e = static_cast<int>(cfg.sep_exp_min); e <= static_cast<int>(cfg.sep_exp_max); ++e) {
      const int lvl = std::max(aloc_level, exp_level(e));
      const double s = std::ldexp(1.0, e);
      for (std::size_t di = 0; di < dirs.size(); ++di) {
        Point x = make_point(d, a);
        Point y = x;
        bool ok = true;
        for (std::size_t k = 0; k < d; ++k) {
          y[k] += s * dirs[di][k];
          if (y[k] < 0.0) ok = false;
        }
        if (ok && std::sqrt(dist2(x, y)) <= 2.5 * cfg.range_max)
          grid.pairs.push_back(TripleGrid::Pair{x, y, lvl});
        // the mirrored pair approaches the origin
        if (di == 0 && a - s > 0.01) {
          Point ym = make_point(d, a);
          ym[0] -= s;
          grid.pairs.push_back(TripleGrid::Pair{make_point(d, a), ym, lvl});
        }
      }
    }
  }

  // smoothness triples from a reduced pair set, with the x-x' (resp. y-y')
  // distance shrinking geometrically per level so a false exponent is forced
  // to show growth toward the diagonal
  std::vector<double> rho_by_level = {0.2, 0.05};
  for (int lvl = 2; lvl <= cfg.levels; ++lvl)
    rho_by_level.push_back(0.05 / std::pow(cfg.ratio_shrink, lvl - 1));
  const auto rho_level = [&](std::size_t ri) {
    return ri < 2 ? 1 : static_cast<int>(ri);  // 0.2,0.05 -> level 1; later entries -> their level
  };

  const std::vector<double> tri_locs = base_locations(1, cfg.range_max);
  const std::vector<int> tri_exps = {-2, 0, 2};
  for (double a : tri_locs) {
    for (int e : tri_exps) {
      const double s = std::ldexp(1.0, e);
      Point x = make_point(d, a);
      Point y = x;
      y[0] += s;
      for (std::size_t ri = 0; ri < rho_by_level.size(); ++ri) {
        const double step = rho_by_level[ri] * s;
        const int lvl = rho_level(ri);
        for (double sign : {1.0, -1.0}) {
          Point xp = x;
          xp[0] += sign * step;
          if (xp[0] > 0.0 && dist2(x, y) > 4.0 * dist2(x, xp))
            grid.x_triples.push_back(TripleGrid::Triple{x, xp, y, lvl});
          Point yp = y;
          yp[0] += sign * step;
          if (yp[0] > 0.0 && dist2(x, y) > 4.0 * dist2(y, yp))
            grid.y_triples.push_back(TripleGrid::Triple{x, yp, y, lvl});
        }
      }
    }
  }
  return grid;
}

namespace {

double denominator_w(const BallSpec& ball, const AlphaVector& alpha, bool use_ball) {
  if (use_ball) return ball_measure(ball, alpha).measure;
  return v_plus_cube(ball.center, ball.radius, alpha);
}

double kernel_time_value(const HeatKernel& kern, const KernelFamilySpec& spec, const Point& x,
                         const Point& y, const ZetaTime& zt) {
  double v;
  switch (spec.kind) {
    case AreaKind::Vertical:
      v = kern.dt_zt(x, y, zt);
      break;
    case AreaKind::Horizontal:
      v = kern.delta_zt(spec.j, x, y, zt);
      break;
    default:
      v = kern.delta_star_zt(spec.j, x, y, zt);
  }
  if (spec.time_decay != 0.0) v *= std::exp(-spec.time_decay * zt.t);
  return spec.scale * v;
}

struct NormEvaluator {
  const HeatKernel& kern;
  KernelFamilySpec spec;
  bool cone_family;
  TimeWeight tw;
  ConeSpec cone;
  ZetaPanels panels;

  double pair(const Point& x, const Point& y) const {
    if (!cone_family) {
      return time_norm(
          [&](double t, double zeta) {
            return kernel_time_value(kern, spec, x, y, ZetaTime{t, zeta});
          },
          panels, tw);
    }
    auto f = [&](const Point& z, double t, double zeta) {
      double v = area_kernel_zt(kern, spec.kind, spec.j, x, y, z, ZetaTime{t, zeta});
      if (spec.time_decay != 0.0) v *= std::exp(-spec.time_decay * t);
      return spec.scale * v;
    };
    return cone_norm_multi(f, kern.dim(), cone, panels, tw, {x}, &x);
  }

  double diff_x(const Point& x, const Point& xp, const Point& y) const {
    if (!cone_family) {
      return time_norm(
          [&](double t, double zeta) {
            const ZetaTime zt{t, zeta};
            return kernel_time_value(kern, spec, x, y, zt) -
                   kernel_time_value(kern, spec, xp, y, zt);
          },
          panels, tw);
    }
    auto f = [&](const Point& z, double t, double zeta) {
      const ZetaTime zt{t, zeta};
      double v = area_kernel_zt(kern, spec.kind, spec.j, x, y, z, zt) -
                 area_kernel_zt(kern, spec.kind, spec.j, xp, y, z, zt);
      if (spec.time_decay != 0.0) v *= std::exp(-spec.time_decay * t);
      return spec.scale * v;
    };
    return cone_norm_multi(f, kern.dim(), cone, panels, tw, {x, xp}, nullptr);
  }

  double diff_y(const Point& x, const Point& y, const Point& yp) const {
    if (!cone_family) {
      return time_norm(
          [&](double t, double zeta) {
            const ZetaTime zt{t, zeta};
            return kernel_time_value(kern, spec, x, y, zt) -
                   kernel_time_value(kern, spec, x, yp, zt);
          },
          panels, tw);
    }
    auto f = [&](const Point& z, double t, double zeta) {
      const ZetaTime zt{t, zeta};
      double v = area_kernel_zt(kern, spec.kind, spec.j, x, y, z, zt) -
                 area_kernel_zt(kern, spec.kind, spec.j, x, yp, z, zt);
      if (spec.time_decay != 0.0) v *= std::exp(-spec.time_decay * t);
      return spec.scale * v;
    };
    return cone_norm_multi(f, kern.dim(), cone, panels, tw, {x}, &x);
  }
};

NormEvaluator make_evaluator(const HeatKernel& kern, AuditFamily family,
                             const AuditConfig& cfg) {
  const BanachSpace space = audit_family_space(family);
  NormEvaluator ev{kern,
                   audit_family_spec(family, kern.dim(), 0),
                   audit_family_cone(family),
                   (space == BanachSpace::L2tdt || space == BanachSpace::L2ConeTdt)
                       ? TimeWeight::TDt
                       : TimeWeight::Dt,
                   cfg.cone,
                   ZetaPanels::make(cfg.kernel)};
  return ev;
}

void finish_levels(EstimateAudit& audit, const std::vector<int>& levels,
                   const std::vector<double>& values, const AuditConfig& cfg) {
  audit.constants.assign(cfg.levels, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (int k = levels[i]; k <= cfg.levels; ++k)
      audit.constants[k - 1] = std::max(audit.constants[k - 1], values[i]);
  audit.pass = true;
  for (int k = 0; k + 1 < cfg.levels; ++k) {
    const double r = audit.constants[k] > 0.0 ? audit.constants[k + 1] / audit.constants[k] : 0.0;
    audit.ratios.push_back(r);
    if (r > cfg.pass_ratio) audit.pass = false;
  }
  for (double c : audit.constants)
    if (!(c > 0.0) || !std::isfinite(c)) audit.pass = false;
}

std::string space_name(BanachSpace s) {
  switch (s) {
    case BanachSpace::L2dt: return "L2(dt)";
    case BanachSpace::L2tdt: return "L2(tdt)";
    case BanachSpace::L2ConeDt: return "L2(A,dtdz)";
    case BanachSpace::L2ConeTdt: return "L2(A,tdtdz)";
  }
  return "?";
}

}  // namespace

EstimateAudit growth_audit(const HeatKernel& kern, AuditFamily family, const TripleGrid& grid,
                           const AuditConfig& cfg) {
  EstimateAudit audit;
  audit.family = audit_family_name(family);
  audit.space = space_name(audit_family_space(family));
  audit.audit = "growth";
  audit.eps = kern.eps().str();
  audit.alpha = kern.alpha()[0];
  audit.delta = 0.0;

  const NormEvaluator ev = make_evaluator(kern, family, cfg);
  const std::size_t n = grid.pairs.size();
  std::vector<double> values(n), values_cube(n);
  std::vector<int> levels(n);
  for (const auto& pr : grid.pairs)
    if (dist2(pr.x, pr.y) == 0.0)
      throw std::invalid_argument("growth_audit: pair with x == y");
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const auto& pr = grid.pairs[i];
    const double sep = std::sqrt(dist2(pr.x, pr.y));
    const double norm = ev.pair(pr.x, pr.y);
    const double wb = denominator_w(BallSpec{pr.x, sep}, kern.alpha(), true);
    const double wc = denominator_w(BallSpec{pr.x, sep}, kern.alpha(), false);
    values[i] = norm * (cfg.use_ball_measure ? wb : wc);
    values_cube[i] = norm * wc;
    levels[i] = pr.level;
  });
  audit.item_value = values;
  audit.item_sep.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    audit.item_sep[i] = std::sqrt(dist2(grid.pairs[i].x, grid.pairs[i].y));
  finish_levels(audit, levels, values, cfg);
  audit.constants_cube.assign(cfg.levels, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = levels[i]; k <= cfg.levels; ++k)
      audit.constants_cube[k - 1] = std::max(audit.constants_cube[k - 1], values_cube[i]);
  return audit;
}

EstimateAudit smoothness_audit(const HeatKernel& kern, AuditFamily family, bool x_argument,
                               double delta, const TripleGrid& grid, const AuditConfig& cfg) {
  EstimateAudit audit;
  audit.family = audit_family_name(family);
  audit.space = space_name(audit_family_space(family));
  audit.audit = x_argument ? "smooth-x" : "smooth-y";
  audit.eps = kern.eps().str();
  audit.alpha = kern.alpha()[0];
  audit.delta = delta;

  const NormEvaluator ev = make_evaluator(kern, family, cfg);
  const auto& triples = x_argument ? grid.x_triples : grid.y_triples;
  const std::size_t n = triples.size();
  std::vector<double> values(n);
  std::vector<int> levels(n);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const auto& tr = triples[i];
    const double sep = std::sqrt(dist2(tr.x, tr.y));
    const double move =
        x_argument ? std::sqrt(dist2(tr.x, tr.xp)) : std::sqrt(dist2(tr.y, tr.xp));
    const double w = denominator_w(BallSpec{tr.x, sep}, kern.alpha(), cfg.use_ball_measure);
    const double norm =
        x_argument ? ev.diff_x(tr.x, tr.xp, tr.y) : ev.diff_y(tr.x, tr.y, tr.xp);
    values[i] = norm * w / std::pow(move / sep, delta);
    levels[i] = tr.level;
  });
  audit.item_value = values;
  audit.item_sep.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tr = triples[i];
    audit.item_sep[i] = (x_argument ? std::sqrt(dist2(tr.x, tr.xp)) : std::sqrt(dist2(tr.y, tr.xp))) /
                        std::sqrt(dist2(tr.x, tr.y));
  }
  finish_levels(audit, levels, values, cfg);
  return audit;
}

AuditSuiteResult audit_suite(const AuditConfig& cfg) {
  AuditSuiteResult result;
  std::ostringstream canon;
  canon << "d=" << cfg.d << ";levels=" << cfg.levels << ";pass=" << cfg.pass_ratio
        << ";shrink=" << cfg.ratio_shrink << ";ball=" << cfg.use_ball_measure << ";alphas=";
  for (double a : cfg.alpha_values) canon << a << ',';
  canon << ";beta=" << cfg.cone.beta << ";rep=" << static_cast<int>(cfg.kernel.rep);
  result.config_hash = config_hash(canon.str());

  const TripleGrid grid = make_triple_grid(cfg.d, cfg);
  const std::vector<AuditFamily> families = {
      AuditFamily::GV,  AuditFamily::GH,  AuditFamily::GHstar,
      AuditFamily::SV,  AuditFamily::SH,  AuditFamily::SHstar,
      AuditFamily::SVT, AuditFamily::SHT, AuditFamily::SHTt};

  result.pass = true;
  for (AuditFamily family : families) {
    const bool eps_fixed = (family == AuditFamily::SVT || family == AuditFamily::SHT ||
                            family == AuditFamily::SHTt);
    std::vector<EpsVector> eps_set;
    if (eps_fixed)
      eps_set.push_back(audit_family_eps(family, cfg.d, EpsVector::zeros(cfg.d)));
    else if (cfg.all_eps)
      eps_set = EpsVector::all(cfg.d);
    else
      eps_set.push_back(EpsVector::zeros(cfg.d));

    for (double a : cfg.alpha_values) {
      const AlphaVector alpha = AlphaVector::constant(cfg.d, a);
      for (const EpsVector& eps : eps_set) {
        const HeatKernel kern(alpha, eps, cfg.kernel);
        const double delta = audit_family_delta(family);
        EstimateAudit g = growth_audit(kern, family, grid, cfg);
        EstimateAudit sx = smoothness_audit(kern, family, true, delta, grid, cfg);
        EstimateAudit sy = smoothness_audit(kern, family, false, delta, grid, cfg);
        result.pass = result.pass && g.pass && sx.pass && sy.pass;
        result.audits.push_back(std::move(g));
        result.audits.push_back(std::move(sx));
        result.audits.push_back(std::move(sy));
      }
    }
  }
  return result;
}

std::string AuditSuiteResult::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "cz-audit/1";
  j["config_hash"] = config_hash;
  j["pass"] = pass;
  j["audits"] = nlohmann::ordered_json::array();
  for (const EstimateAudit& a : audits) {
    nlohmann::ordered_json e;
    e["family"] = a.family;
    e["space"] = a.space;
    e["audit"] = a.audit;
    e["eps"] = a.eps;
    e["alpha"] = a.alpha;
    e["delta"] = a.delta;
    e["levels"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < a.constants.size(); ++k) {
      nlohmann::ordered_json lv;
      lv["k"] = k + 1;
      lv["C"] = a.constants[k];
      if (k < a.constants_cube.size()) lv["C_cube"] = a.constants_cube[k];
      lv["pass"] = (k == 0) ? true : (a.ratios[k - 1] <= 1.5 || a.constants[k - 1] == 0.0);
      e["levels"].push_back(lv);
    }
    e["pass"] = a.pass;
    j["audits"].push_back(e);
  }
  return j.dump(2);
}

AuditSuiteResult AuditSuiteResult::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  AuditSuiteResult out;
  out.config_hash = j.at("config_hash").get<std::string>();
  out.pass = j.at("pass").get<bool>();
  for (const auto& e : j.at("audits")) {
    EstimateAudit a;
    a.family = e.at("family").get<std::string>();
    a.space = e.at("space").get<std::string>();
    a.audit = e.at("audit").get<std::string>();
    a.eps = e.at("eps").get<std::string>();
    a.alpha = e.at("alpha").get<double>();
    a.delta = e.at("delta").get<double>();
    for (const auto& lv : e.at("levels")) {
      a.constants.push_back(lv.at("C").get<double>());
      if (lv.contains("C_cube")) a.constants_cube.push_back(lv.at("C_cube").get<double>());
    }
    for (std::size_t k = 1; k < a.constants.size(); ++k)
      a.ratios.push_back(a.constants[k - 1] > 0.0 ? a.constants[k] / a.constants[k - 1] : 0.0);
    a.pass = e.at("pass").get<bool>();
    out.audits.push_back(std::move(a));
  }
  return out;
}

std::string AuditSuiteResult::to_csv() const {
  std::ostringstream os;
  CsvWriter csv(os);
  csv.row({"family", "audit", "alpha", "eps", "delta", "sep_or_ratio", "value", "config_hash"});
  for (const EstimateAudit& a : audits)
    for (std::size_t i = 0; i < a.item_value.size(); ++i)
      csv.row({a.family, a.audit, format_double(a.alpha), a.eps, format_double(a.delta),
               format_double(a.item_sep[i]), format_double(a.item_value[i]), config_hash});
  return os.str();
}

}  // namespace dunklsq
