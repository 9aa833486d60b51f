#pragma once

#include <functional>
#include <vector>

#include "dunklsq/measure.hpp"
#include "dunklsq/specfun.hpp"
#include "dunklsq/types.hpp"

namespace dunklsq {

enum class KernelRep { Series, Bessel, Schlafli };

/// Heat time t > 0 and its Schlafli parameter zeta = tanh t in (0,1).
struct ZetaTime {
  double t;
  double zeta;

  static ZetaTime from_t(double t);
  static ZetaTime from_zeta(double zeta);
};

struct QPair {
  double plus;
  double minus;
};

/// q_+-(x,y,s) = |x|^2 + |y|^2 +- 2 sum_i x_i y_i s_i.
QPair q_pm(const Point& x, const Point& y, const std::vector<double>& s);

struct KernelEvalConfig {
  KernelRep rep = KernelRep::Bessel;
  int series_n = 64;       // spectral truncation: eigenlevels n <= series_n
  int pi_nodes = 48;       // Gauss-Jacobi nodes per coordinate (Schlafli form)
  bool adapt_pi_nodes = true;
  int zeta_low_panels = 16;   // dyadic panels toward zeta = 0
  int zeta_high_panels = 8;   // dyadic panels toward zeta = 1
  int zeta_gl = 16;           // Gauss points per panel
  double series_tail_tol = 1e-9;
};

struct KernelDiag {
  double series_tail = 0.0;     // estimated absolute truncation tail
  bool accuracy_warning = false;
  double refine_disagreement = 0.0;  // set by norm evaluations on request
};

/// zeta-integration nodes on (0,1) concentrated dyadically at both endpoints.
struct ZetaPanels {
  std::vector<double> zeta;
  std::vector<double> weight;  // plain d-zeta panel weights
  std::vector<double> t;

  static ZetaPanels make(const KernelEvalConfig& cfg);
  static ZetaPanels make(int low_panels, int high_panels, int gl);
};

enum class TimeWeight { Dt, TDt };

/// Parabolic cone cross-section parameters: {(z,t) : |z| < beta sqrt(t)}.
struct ConeSpec {
  double beta = 1.0;
  int nodes = 16;           // per axis (radial x angular when d = 2)
  int boundary_refine = 3;  // graded split levels at cutoff/kink lines
};

/// Evaluator for one eps-component G_t^{alpha,eps} of the Dunkl heat kernel
/// together with its time and ladder derivative kernels.  Representations:
///   Series   - spectral sum over N_eps, truncated at series_n (oracle grade)
///   Bessel   - closed product form via scaled ratios I_nu(u)/u^nu (exact)
///   Schlafli - integral over [-1,1]^d against Pi_{alpha+eps} (paper form)
/// All evaluations expect x, y in the closed positive orthant.
class HeatKernel {
 public:
  HeatKernel(AlphaVector alpha, EpsVector eps, KernelEvalConfig cfg = {});

  const AlphaVector& alpha() const { return alpha_; }
  const EpsVector& eps() const { return eps_; }
  const KernelEvalConfig& config() const { return cfg_; }
  std::size_t dim() const { return alpha_.dim(); }

  double value(const Point& x, const Point& y, double t, KernelDiag* diag = nullptr) const;
  double dt(const Point& x, const Point& y, double t) const;
  double delta(std::size_t j, const Point& x, const Point& y, double t) const;
  double delta_star(std::size_t j, const Point& x, const Point& y, double t) const;

  // zeta-parameterized entry points used on integration panels
  double value_zt(const Point& x, const Point& y, const ZetaTime& zt,
                  KernelDiag* diag = nullptr) const;
  double dt_zt(const Point& x, const Point& y, const ZetaTime& zt) const;
  double delta_zt(std::size_t j, const Point& x, const Point& y, const ZetaTime& zt) const;
  double delta_star_zt(std::size_t j, const Point& x, const Point& y, const ZetaTime& zt) const;

 private:
  struct Moments {
    double log_pref;          // log(2^{-d} A^p E), A = (1-z^2)/(2z)
    std::vector<double> m0;   // int e^{-u_i (1+s)} dPi_i
    std::vector<double> m1;   // int s e^{-u_i (1+s)} dPi_i
  };
  Moments moments(const Point& x, const Point& y, double zeta) const;
  double series_sum(const Point& x, const Point& y, double t, int deriv, std::size_t j,
                    KernelDiag* diag) const;
  double xy_eps(const Point& x, const Point& y) const;
  double x_pow(const Point& x, std::size_t skip) const;

  AlphaVector alpha_;
  EpsVector eps_;
  KernelEvalConfig cfg_;
  double p_;  // d + |alpha| + |eps|
  std::vector<std::vector<QuadratureRule>> pi_ladder_;  // per coordinate, increasing node count
};

/// Full Dunkl heat kernel G_t^alpha on R^d x R^d, assembled from the 2^d
/// eps-components by parity extension.
class DunklHeatKernel {
 public:
  explicit DunklHeatKernel(AlphaVector alpha, KernelEvalConfig cfg = {});

  double value(const Point& x, const Point& y, double t) const;
  const HeatKernel& component(std::size_t idx) const { return components_[idx]; }
  std::size_t component_count() const { return components_.size(); }

 private:
  std::vector<HeatKernel> components_;
  std::vector<EpsVector> eps_;
};

enum class AreaKind { Vertical, Horizontal, HorizontalStar };

/// Lusin-cone kernel K_{z,t}(x,y): the chosen derivative kernel evaluated at
/// (x+z, y), times sqrt(phi_alpha(x,z,t)), extended by 0 outside the orthant.
double area_kernel(const HeatKernel& kern, AreaKind kind, std::size_t j, const Point& x,
                   const Point& y, const Point& z, double t);
double area_kernel_zt(const HeatKernel& kern, AreaKind kind, std::size_t j, const Point& x,
                      const Point& y, const Point& z, const ZetaTime& zt);

enum class BanachSpace { L2dt, L2tdt, L2ConeDt, L2ConeTdt };

/// Kernel family selector for norm evaluation and the CZ audits.  `scale` and
/// `time_decay` cover the Laguerre-semigroup variants (2^d and 2^d e^{-2t}).
struct KernelFamilySpec {
  AreaKind kind = AreaKind::Vertical;
  std::size_t j = 0;
  double scale = 1.0;
  double time_decay = 0.0;
};

/// ||K(x,y)||_B for the selected family.  Requires x != y for finiteness near
/// the diagonal; `diag`, when given, carries a panel-refinement disagreement.
double banach_norm(const HeatKernel& kern, const KernelFamilySpec& fam, const Point& x,
                   const Point& y, BanachSpace space, const ConeSpec& cone,
                   const ZetaPanels& panels, KernelDiag* diag = nullptr);

/// L^2 t-norm of a scalar kernel family t -> k(t), for oracle checks.
double time_norm(const std::function<double(double t, double zeta)>& k, const ZetaPanels& panels,
                 TimeWeight tw);

/// Cross-section rule for int_{|u| < beta} f(u) du at a fixed time slice.
/// With `restrict_to_orthant`, the domain is clipped to {x + sqrt_t u >= 0}
/// (nodes outside are dropped and panels split at the cutoff); otherwise the
/// full section is used with splits on the weight-kink lines x_j + sqrt_t u_j = 0.
struct CrossSection {
  std::vector<Point> u;
  std::vector<double> w;
};
CrossSection cone_cross_section(std::size_t d, const ConeSpec& cone, const Point& x, double sqrt_t,
                                bool restrict_to_orthant);

/// Variant taking several kink-generating base points (difference kernels have
/// two cutoff hyperplanes) and an optional clip point for the hard restriction.
CrossSection cone_cross_section_multi(std::size_t d, const ConeSpec& cone, double sqrt_t,
                                      const std::vector<Point>& kink_centers, const Point* clip);

/// L^2(A, t^a dt dz) norm of a kernel family (z,t) -> k(z,t) over the cone of
/// the given aperture; the z integral is taken in the scaled variable u = z/sqrt(t).
double cone_norm(const std::function<double(const Point& z, double t, double zeta)>& k,
                 std::size_t d, const Point& x, const ConeSpec& cone, const ZetaPanels& panels,
                 TimeWeight tw, bool restrict_to_orthant);

double cone_norm_multi(const std::function<double(const Point& z, double t, double zeta)>& k,
                       std::size_t d, const ConeSpec& cone, const ZetaPanels& panels,
                       TimeWeight tw, const std::vector<Point>& kink_centers, const Point* clip);

}  // namespace dunklsq
