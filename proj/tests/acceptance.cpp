// Acceptance suite: one numbered criterion per run (or all), each printing a
// single PASS/FAIL line with the measured quantity against its pinned
// tolerance.  Exit status is 0 iff every selected criterion passes.

#include <cmath>
#include <cstring>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "dunklsq/czcheck.hpp"
#include "dunklsq/measure.hpp"
#include "dunklsq/operators.hpp"
#include "dunklsq/report.hpp"
#include "dunklsq/specfun.hpp"
#include "dunklsq/squarefn.hpp"
#include "dunklsq/symmetry.hpp"

using namespace dunklsq;

namespace {

const std::vector<double> kAlphas = {-0.5, 0.0, 1.3};

SpectralFunction random_expansion(const AlphaVector& alpha, const EpsVector& eps, int max_order,
                                  unsigned seed) {
  std::uint64_t s = 0x853c49e6748fea9bull + seed;
  auto next = [&]() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return 2.0 * ((s >> 11) * 0x1.0p-53) - 1.0;
  };
  SpectralFunction f(alpha);
  const std::size_t d = alpha.dim();
  std::vector<int> m(d, 0);
  while (true) {
    int total = 0;
    for (int v : m) total += v;
    if (total <= max_order) {
      bool in_class = true;
      for (std::size_t j = 0; j < d; ++j)
        if (m[j] % 2 != eps[j]) in_class = false;
      if (in_class) f.set(MultiIndex(m), next());
    }
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++m[j] <= max_order) break;
      m[j] = 0;
    }
    if (j == d) break;
  }
  return f;
}

bool report(int n, const std::string& name, bool pass, const std::string& detail) {
  std::cout << "criterion " << n << " (" << name << "): " << (pass ? "PASS" : "FAIL") << " - "
            << detail << "\n";
  return pass;
}

// 1. orthonormality over |m|,|n| <= 8, alpha in {-1/2,0,1.3}^d, d <= 2
bool criterion1() {
  const double tol = 1e-8;
  double worst = 0.0;
  std::map<double, std::vector<std::vector<double>>> gram;  // per alpha, (9x9)
  for (double a : kAlphas) {
    const AlphaVector alpha({a});
    const WeightRule rule = fullspace_rule(alpha, 48);
    std::vector<std::vector<double>> g(9, std::vector<double>(9));
    for (int k = 0; k <= 8; ++k)
      for (int l = 0; l <= 8; ++l)
        g[k][l] = rule.integrate([&](const Point& x) {
          return hermite_gen_1d(k, a, x[0]) * hermite_gen_1d(l, a, x[0]);
        });
    for (int k = 0; k <= 8; ++k)
      for (int l = 0; l <= 8; ++l)
        worst = std::max(worst, std::abs(g[k][l] - (k == l ? 1.0 : 0.0)));
    gram[a] = std::move(g);
  }
  // d = 2: the tensor rule factorizes, so the Gram matrix is the product of
  // the one-dimensional ones; scan all index pairs with |m|,|n| <= 8
  for (double a1 : kAlphas) {
    for (double a2 : kAlphas) {
      const auto& g1 = gram[a1];
      const auto& g2 = gram[a2];
      for (int m1 = 0; m1 <= 8; ++m1)
        for (int m2 = 0; m1 + m2 <= 8; ++m2)
          for (int n1 = 0; n1 <= 8; ++n1)
            for (int n2 = 0; n1 + n2 <= 8; ++n2) {
              const double v = g1[m1][n1] * g2[m2][n2];
              const double want = (m1 == n1 && m2 == n2) ? 1.0 : 0.0;
              worst = std::max(worst, std::abs(v - want));
            }
    }
  }
  return report(1, "orthonormality", worst <= tol,
                "max |<h_m,h_n> - delta| = " + format_double(worst) + " (tol 1e-8)");
}

// 2. three-representation agreement on the specified grid
bool criterion2() {
  const double tol = 1e-6;
  const std::vector<double> axis = {0.6, 1.2, 1.8, 2.4, 3.0};
  const std::vector<double> times = {0.05, 0.1, 0.25, 0.5, 1.0, 2.0};
  double worst_schl = 0.0, worst_series = 0.0, worst_series_cert = 0.0;
  std::size_t uncert = 0, total = 0, missed_warning = 0;
  for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
    for (double a : kAlphas) {
      const AlphaVector alpha = AlphaVector::constant(d, a);
      std::vector<Point> pts;
      if (d == 1)
        for (double v : axis) pts.push_back({v});
      else
        for (double v : axis)
          for (double w : axis) pts.push_back({v, w});
      for (const EpsVector& eps : EpsVector::all(d)) {
        const HeatKernel bessel(alpha, eps, KernelEvalConfig{});
        KernelEvalConfig c2;
        c2.rep = KernelRep::Schlafli;
        const HeatKernel schl(alpha, eps, c2);
        KernelEvalConfig c3;
        c3.rep = KernelRep::Series;
        const HeatKernel series(alpha, eps, c3);
        for (double t : times) {
          for (const Point& x : pts) {
            for (const Point& y : pts) {
              ++total;
              const double vb = bessel.value(x, y, t);
              worst_schl = std::max(worst_schl, std::abs(schl.value(x, y, t) - vb) / vb);
              KernelDiag diag;
              const double vr = series.value(x, y, t, &diag);
              const double rel = std::abs(vr - vb) / vb;
              worst_series = std::max(worst_series, rel);
              if (diag.series_tail <= 0.01 * tol * vb) {
                worst_series_cert = std::max(worst_series_cert, rel);
                if (rel > tol) ++missed_warning;  // certified yet inaccurate: unsound
              } else {
                ++uncert;
              }
            }
          }
        }
      }
    }
  }
  const bool pass_a = worst_schl <= tol;
  const bool pass_b = worst_series <= tol;
  const bool pass_cert = worst_series_cert <= tol && missed_warning == 0;
  report(2, "3-rep agreement: schlafli vs bessel", pass_a,
         "max rel " + format_double(worst_schl) + " over " + std::to_string(total) + " points");
  report(2, "3-rep agreement: series N=64 vs bessel, as stated", pass_b,
         "max rel " + format_double(worst_series) + "; " + std::to_string(uncert) +
             " points are tail-limited at N=64 (small t, large |x||y|) - see ledger; min "
             "attainable there ~e^{-t lam_N} and the fp cancellation floor");
  report(2, "3-rep agreement: series N=64 vs bessel on its certified domain", pass_cert,
         "max rel " + format_double(worst_series_cert) + "; the tail estimate excluded " +
             std::to_string(uncert) + " points and certified no inaccurate one");
  return pass_a && pass_b && pass_cert;
}

// 3. the exact vertical identity, ratio 2^{-d-1} within 1e-3
bool criterion3() {
  const double tol = 1e-3;
  const ZetaPanels panels = ZetaPanels::make(KernelEvalConfig{});
  double worst = 0.0;
  int runs = 0;
  for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
    const double target = std::ldexp(1.0, -static_cast<int>(d) - 1);
    for (double a : kAlphas) {
      const AlphaVector alpha = AlphaVector::constant(d, a);
      const WeightRule rule = orthant_rule(alpha, d == 1 ? 40 : 24);
      for (const EpsVector& eps : EpsVector::all(d)) {
        for (unsigned seed = 0; seed < 20; ++seed) {
          const SpectralFunction f = random_expansion(alpha, eps, 6, seed);
          SquareFnSpec spec;
          spec.kind.deriv = AreaKind::Vertical;
          spec.kind.eps_plus = eps;
          const LpRatioResult r =
              weighted_lp_ratio(spec, f, [](const Point&) { return 1.0; }, 2.0, rule, panels);
          worst = std::max(worst, std::abs(r.ratio - target));
          ++runs;
        }
      }
    }
  }
  return report(3, "exact identity ||g_V^{eps,+}f|| = 2^{-d-1}||f||", worst <= tol,
                "max |ratio - 2^{-d-1}| = " + format_double(worst) + " over " +
                    std::to_string(runs) + " expansions (tol 1e-3)");
}

// 4. ladder rule, factorization, eigenvalue formula
bool criterion4() {
  bool pass = true;
  double worst_ladder = 0.0;
  for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
    for (double a : kAlphas) {
      const AlphaVector alpha = AlphaVector::constant(d, a);
      std::vector<MultiIndex> idx;
      if (d == 1)
        for (int m = 0; m <= 8; ++m) idx.push_back(MultiIndex({m}));
      else
        for (int m0 = 0; m0 <= 8; ++m0)
          for (int m1 = 0; m0 + m1 <= 8; ++m1) idx.push_back(MultiIndex({m0, m1}));
      for (const MultiIndex& m : idx) {
        for (std::size_t j = 0; j < d; ++j) {
          for (int g = 1; g <= 20; ++g) {
            Point x(d, 0.11 + 0.09 * g);
            if (d == 2) x[1] = 0.17 + 0.095 * g;
            // delta_j h = d/dx_j h + x_j h + (odd case) (2a+1)/x_j h
            double lhs = hermite_gen_partial(m, alpha, x, j) + x[j] * hermite_gen(m, alpha, x);
            if (m[j] % 2 == 1)
              lhs += (2.0 * alpha[j] + 1.0) / x[j] * hermite_gen(m, alpha, x);
            const double rhs =
                phi_factor(m[j], alpha[j]) * hermite_gen(m.lowered(j), alpha, x);
            worst_ladder =
                std::max(worst_ladder, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
          }
        }
      }
    }
  }
  pass = pass && worst_ladder <= 1e-8;
  report(4, "ladder rule delta_j h_m = Phi h_{m-e_j}", worst_ladder <= 1e-8,
         "max pointwise deviation " + format_double(worst_ladder) + " (tol 1e-8)");

  double worst_fact = 0.0;
  for (double a : kAlphas) {
    const AlphaVector alpha = AlphaVector::constant(2, a);
    const SpectralFunction f = random_expansion(alpha, EpsVector::zeros(2), 6, 3);
    SpectralFunction sum(alpha);
    for (std::size_t j : {std::size_t{0}, std::size_t{1}}) {
      const SpectralFunction x1 = delta_star_apply(delta_apply(f, j), j);
      const SpectralFunction x2 = delta_apply(delta_star_apply(f, j), j);
      for (const auto& [m, c] : x1.coefficients()) sum.set(m, sum.coefficient(m) + 0.5 * c);
      for (const auto& [m, c] : x2.coefficients()) sum.set(m, sum.coefficient(m) + 0.5 * c);
    }
    const SpectralFunction want = oscillator_apply(f);
    for (const auto& [m, c] : want.coefficients())
      worst_fact = std::max(worst_fact, std::abs(sum.coefficient(m) - c) / std::abs(c));
  }
  pass = pass && worst_fact <= 1e-13;
  report(4, "factorization (1/2)sum(delta*delta + delta delta*) = L_alpha", worst_fact <= 1e-13,
         "max coefficient deviation " + format_double(worst_fact) + " (exact up to roundoff)");

  bool eig = true;
  for (double a : kAlphas) {
    for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
      const AlphaVector alpha = AlphaVector::constant(d, a);
      for (int n = 0; n <= 20; ++n)
        eig = eig && (eigenvalue(n, alpha, d) == 2.0 * n + 2.0 * alpha.sum() + 2.0 * d);
    }
  }
  pass = pass && eig;
  report(4, "eigenvalue formula lambda_n = 2n + 2|alpha| + 2d", eig, "exact");
  return pass;
}

// 5. semigroup laws and subordination
bool criterion5() {
  bool pass = true;
  // exact spectral law
  double worst_sp = 0.0;
  {
    const AlphaVector alpha({0.3, 1.3});
    const SpectralFunction f = random_expansion(alpha, EpsVector::zeros(2), 6, 5);
    const SpectralFunction a2 = heat_apply(heat_apply(f, 0.3), 0.45);
    const SpectralFunction b2 = heat_apply(f, 0.75);
    for (const auto& [m, c] : b2.coefficients())
      worst_sp = std::max(worst_sp, std::abs(a2.coefficient(m) - c) / std::abs(c));
  }
  pass = pass && worst_sp <= 1e-14;
  report(5, "T_t T_s = T_{t+s} exact on coefficients", worst_sp <= 1e-14,
         "max rel " + format_double(worst_sp));

  // kernel quadrature, d = 1
  double worst_kq = 0.0;
  for (double a : kAlphas) {
    const AlphaVector alpha({a});
    const DunklHeatKernel kern(alpha, KernelEvalConfig{});
    const WeightRule rule = fullspace_rule(alpha, 64);
    for (double x : {0.5, 1.2}) {
      for (double y : {0.8, 2.0}) {
        const double got = rule.integrate(
            [&](const Point& w) { return kern.value({x}, w, 0.25) * kern.value(w, {y}, 0.4); });
        worst_kq = std::max(worst_kq,
                            std::abs(got - kern.value({x}, {y}, 0.65)) / kern.value({x}, {y}, 0.65));
      }
    }
  }
  pass = pass && worst_kq <= 1e-5;
  report(5, "kernel semigroup property (quadrature, d=1)", worst_kq <= 1e-5,
         "max rel " + format_double(worst_kq) + " (tol 1e-5)");

  // subordination
  double worst_sub = 0.0;
  for (double lam : {2.0, 3.0, 4.6, 12.0, 20.6, 40.0}) {
    for (double t : {0.05, 0.25, 1.0, 2.0}) {
      const double got = poisson_subordination_factor(lam, t);
      const double want = std::exp(-t * std::sqrt(lam));
      worst_sub = std::max(worst_sub, std::abs(got - want) / want);
    }
  }
  pass = pass && worst_sub <= 1e-7;
  report(5, "subordination vs e^{-t sqrt(lambda)}", worst_sub <= 1e-7,
         "max rel " + format_double(worst_sub) + " (tol 1e-7)");
  return pass;
}

// 6. reduction inequality with the explicit constant 2^{3d/2}
bool criterion6() {
  bool pass = true;
  const ZetaPanels panels = ZetaPanels::make(12, 6, 10);
  ConeSpec cone;
  cone.nodes = 10;
  cone.boundary_refine = 2;
  for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
    const AlphaVector alpha = AlphaVector::constant(d, d == 1 ? 0.3 : 0.8);
    SpectralFunction f(alpha);
    for (const EpsVector& eps : EpsVector::all(d)) {
      const SpectralFunction g = random_expansion(alpha, eps, d == 1 ? 4 : 3, 7);
      for (const auto& [m, c] : g.coefficients()) f.set(m, f.coefficient(m) + c);
    }
    std::vector<Point> grid;
    const int n = d == 1 ? 50 : 12;
    for (int i = 1; i <= n; ++i) {
      Point x(d, 0.06 * i);
      if (d == 2) x[1] = 0.05 + 0.11 * ((i * 7) % n);
      grid.push_back(x);
    }
    for (std::size_t j = 0; j < d; ++j) {
      const ReductionReport rep = reduction_verify(f, j, grid, cone, panels, 1e-4);
      pass = pass && rep.pass;
      report(6, "reduction inequality d=" + std::to_string(d) + " j=" + std::to_string(j),
             rep.pass,
             "chain ratios " + format_double(rep.max_chain1) + ", " +
                 format_double(rep.max_chain2) + " over " + std::to_string(rep.rows.size()) +
                 " grid points (constant 2^{3d/2}, slack 1e-4)");
    }
  }
  return pass;
}

// 7. CZ audit: refinement stability at the theorem exponents + negative control
bool criterion7() {
  AuditConfig cfg;
  cfg.kernel.zeta_low_panels = 14;
  cfg.kernel.zeta_high_panels = 6;
  cfg.kernel.zeta_gl = 12;
  cfg.cone.nodes = 8;
  cfg.cone.boundary_refine = 1;

  const AuditSuiteResult result = audit_suite(cfg);
  std::size_t stable = 0;
  for (const EstimateAudit& a : result.audits)
    if (a.pass) ++stable;
  bool pass = result.pass;
  report(7, "CZ standard estimates, 9 families x growth/smooth-x/smooth-y", result.pass,
         std::to_string(stable) + "/" + std::to_string(result.audits.size()) +
             " audits refinement-stable (ratio <= 1.5 over levels)");

  // negative control: delta = 1.5 must blow up by >= 2x per level
  const TripleGrid grid = make_triple_grid(1, cfg);
  const HeatKernel kern(AlphaVector({0.0}), EpsVector::zeros(1), cfg.kernel);
  const EstimateAudit bad = smoothness_audit(kern, AuditFamily::GV, true, 1.5, grid, cfg);
  bool control = !bad.pass;
  double min_ratio = 1e300;
  for (double r : bad.ratios) {
    control = control && r >= 2.0;
    min_ratio = std::min(min_ratio, r);
  }
  pass = pass && control;
  report(7, "negative control at delta = 1.5", control,
         "constants grow x" + format_double(min_ratio) + " per level (>= 2 required)");
  return pass;
}

// 8. area-vs-vertical comparability bracket for the eps-plus variants
bool criterion8() {
  const ZetaPanels panels = ZetaPanels::make(12, 6, 10);
  ConeSpec cone;
  cone.nodes = 8;
  cone.boundary_refine = 1;
  bool pass = true;
  for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
    for (double a : (d == 1 ? kAlphas : std::vector<double>{0.3})) {
      const AlphaVector alpha = AlphaVector::constant(d, a);
      const WeightRule rule = orthant_rule(alpha, d == 1 ? 32 : 10);
      double lower = std::ldexp(1.0, -static_cast<int>(d));
      for (std::size_t j = 0; j < d; ++j) lower *= std::pow(3.0, -(2.0 * alpha[j] + 1.0));
      const double upper = std::ldexp(1.0, static_cast<int>(d));
      for (const EpsVector& eps : EpsVector::all(d)) {
        const SpectralFunction f = random_expansion(alpha, eps, d == 1 ? 5 : 3, 11);
        SquareFnKind gv, sv;
        gv.deriv = sv.deriv = AreaKind::Vertical;
        gv.eps_plus = sv.eps_plus = eps;
        double g2 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double g = g_function(gv, f, rule.nodes[i]);
          const double s = area_integral(sv, f, rule.nodes[i], cone, panels);
          g2 += rule.weights[i] * g * g;
          s2 += rule.weights[i] * s * s;
        }
        const double ratio = std::sqrt(s2 / g2);
        const bool ok = ratio >= lower && ratio <= upper;
        pass = pass && ok;
        if (!ok || (d == 1 && eps[0] == 0)) {
          report(8, "||S_V||/||g_V|| bracket d=" + std::to_string(d) + " alpha=" +
                        format_double(a) + " eps=" + eps.str(),
                 ok,
                 "ratio " + format_double(ratio) + " in [" + format_double(lower) + ", " +
                     format_double(upper) + "]");
        }
      }
    }
  }
  report(8, "area-vs-vertical comparability, all (d, alpha, eps) combos", pass,
         "per-coordinate lower bound (1/2) 3^{-2 a_j - 1}, upper 2^d");
  return pass;
}

// 9. determinism: repeated runs are bit-identical
bool criterion9() {
  AuditConfig cfg;
  cfg.alpha_values = {0.3};
  cfg.all_eps = false;
  cfg.levels = 2;
  cfg.kernel.zeta_low_panels = 10;
  cfg.kernel.zeta_high_panels = 5;
  cfg.kernel.zeta_gl = 8;
  cfg.cone.nodes = 6;
  cfg.cone.boundary_refine = 1;
  const std::string a = audit_suite(cfg).to_json();
  const std::string b = audit_suite(cfg).to_json();
  cfg.threads = 4;
  const std::string c = audit_suite(cfg).to_json();
  const std::string csv1 = audit_suite(cfg).to_csv();
  cfg.threads = 1;
  const std::string csv2 = audit_suite(cfg).to_csv();
  const bool pass = (a == b) && (a == c) && (csv1 == csv2);
  return report(9, "determinism", pass,
                "repeated and re-threaded runs produce byte-identical JSON/CSV");
}

// 10. (unnumbered in the criteria list) empirical L^p / weak-(1,1) stability
bool criterion10() {
  const ZetaPanels panels = ZetaPanels::make(KernelEvalConfig{});
  const AlphaVector alpha({0.3});
  const EpsVector eps = EpsVector::zeros(1);
  auto one = [](const Point&) { return 1.0; };

  double max_coarse = 0.0, max_fine = 0.0;
  const WeightRule coarse = orthant_rule(alpha, 32);
  const WeightRule fine = orthant_rule(alpha, 64);
  for (unsigned seed = 0; seed < 20; ++seed) {
    const SpectralFunction f = random_expansion(alpha, eps, 8, seed);
    SquareFnSpec spec;
    spec.kind.deriv = AreaKind::Vertical;
    spec.kind.eps_plus = eps;
    max_coarse = std::max(max_coarse,
                          weighted_lp_ratio(spec, f, one, 3.0, coarse, panels).ratio);
    max_fine = std::max(max_fine, weighted_lp_ratio(spec, f, one, 3.0, fine, panels).ratio);
  }
  const double drift = std::abs(max_fine - max_coarse) / max_coarse;
  bool pass = drift <= 0.10;
  report(10, "weighted L^p ratio family maximum, stability under refinement", pass,
         "max ratio " + format_double(max_fine) + ", refinement drift " + format_double(drift) +
             " (<= 0.10)");

  std::vector<double> lambdas;
  for (int k = -8; k <= 4; ++k) lambdas.push_back(std::ldexp(1.0, k));
  const SpectralFunction f = random_expansion(alpha, eps, 6, 77);
  SquareFnSpec spec;
  spec.kind.deriv = AreaKind::Vertical;
  spec.kind.eps_plus = eps;
  const double w1 = weak11_probe(spec, f, one, lambdas, coarse, panels, 300).constant;
  const double w2 = weak11_probe(spec, f, one, lambdas, fine, panels, 600).constant;
  const double wdrift = std::abs(w2 - w1) / w1;
  pass = pass && wdrift <= 0.10;
  report(10, "weak-(1,1) probe stability under refinement", wdrift <= 0.10,
         "constant " + format_double(w2) + ", refinement drift " + format_double(wdrift) +
             " (<= 0.10)");
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i + 1 < argc + 1; ++i) {
    if (i < argc && std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      which = std::atoi(argv[i + 1]);
  }
  bool pass = true;
  const auto run = [&](int n, bool (*fn)()) {
    if (which == 0 || which == n) pass = fn() && pass;
  };
  run(1, criterion1);
  run(2, criterion2);
  run(3, criterion3);
  run(4, criterion4);
  run(5, criterion5);
  run(6, criterion6);
  run(7, criterion7);
  run(8, criterion8);
  run(9, criterion9);
  run(10, criterion10);
  return pass ? 0 : 1;
}
