#pragma once

#include <string>
#include <vector>

#include "dunklsq/kernel.hpp"

namespace dunklsq {

/// The nine audited kernel families: the six Dunkl square-function kernels
/// plus the three Laguerre convolution-type area-integral kernels (fixed eps).
enum class AuditFamily { GV, GH, GHstar, SV, SH, SHstar, SVT, SHT, SHTt };

std::string audit_family_name(AuditFamily f);
BanachSpace audit_family_space(AuditFamily f);
bool audit_family_cone(AuditFamily f);

/// Theorem-prescribed Hoelder exponent: 1 for g-functions, 1/2 for area integrals.
double audit_family_delta(AuditFamily f);

/// Nested point/pair/triple grids; level k+1 contains level k, extends the
/// range outward and moves pairs closer to the diagonal.
struct TripleGrid {
  struct Pair {
    Point x, y;
    int level;
  };
  struct Triple {
    Point x, xp, y;  // |x - y| > 2 |x - xp| (xp plays y' for the y-argument audit)
    int level;
  };
  std::vector<Pair> pairs;
  std::vector<Triple> x_triples;
  std::vector<Triple> y_triples;
};

struct AuditConfig {
  std::size_t d = 1;
  std::vector<double> alpha_values = {-0.5, 0.0, 1.3};  // isotropic alpha sweeps
  bool all_eps = true;
  int levels = 4;
  double sep_exp_min = -5;  // closest diagonal separation 2^{sep_exp_min} at the top level
  double sep_exp_max = 3;
  double range_max = 8.0;
  double pass_ratio = 1.5;
  double ratio_shrink = 8.0;  // per-level shrink of |x-x'| / |x-y| in the triples
  bool use_ball_measure = true;
  KernelEvalConfig kernel;
  ConeSpec cone;
  unsigned threads = 1;
};

TripleGrid make_triple_grid(std::size_t d, const AuditConfig& cfg);

struct EstimateAudit {
  std::string family;
  std::string space;
  std::string audit;  // "growth" | "smooth-x" | "smooth-y"
  std::string eps;
  double alpha = 0.0;
  double delta = 0.0;
  std::vector<double> constants;  // C_k per level
  std::vector<double> ratios;     // C_{k+1} / C_k
  // growth audits also carry the cube-surrogate denominators; the standard
  // estimates are stated up to constants, so both normalizations are reported
  std::vector<double> constants_cube;
  bool pass = false;
  // per-item contributions for the CSV output
  std::vector<double> item_sep;
  std::vector<double> item_value;
};

EstimateAudit growth_audit(const HeatKernel& kern, AuditFamily family, const TripleGrid& grid,
                           const AuditConfig& cfg);

/// Smoothness audit in the x or y argument at Hoelder exponent `delta`.
EstimateAudit smoothness_audit(const HeatKernel& kern, AuditFamily family, bool x_argument,
                               double delta, const TripleGrid& grid, const AuditConfig& cfg);

struct AuditSuiteResult {
  std::vector<EstimateAudit> audits;
  bool pass = false;
  std::string config_hash;

  std::string to_json() const;
  static AuditSuiteResult from_json(const std::string& text);
  std::string to_csv() const;  // per-item contributions
};

/// Growth + both smoothness audits for all nine families over the configured
/// (alpha, eps) sweep, at the exponents of the kernel-estimate theorem.
AuditSuiteResult audit_suite(const AuditConfig& cfg);

/// Kernel family spec (scale/decay/eps fixing) for a named audit family.
KernelFamilySpec audit_family_spec(AuditFamily f, std::size_t d, std::size_t j = 0);
EpsVector audit_family_eps(AuditFamily f, std::size_t d, const EpsVector& requested);

}  // namespace dunklsq
