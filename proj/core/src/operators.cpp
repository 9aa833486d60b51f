#include "dunklsq/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dunklsq/measure.hpp"
#include "dunklsq/specfun.hpp"
#include "json.hpp"

namespace dunklsq {

double eigenvalue(int n, const AlphaVector& alpha, std::size_t d) {
  if (n < 0) throw std::invalid_argument("eigenvalue: n must be >= 0");
  if (d != alpha.dim()) throw std::invalid_argument("eigenvalue: dimension mismatch");
  return 2.0 * n + 2.0 * alpha.sum() + 2.0 * d;
}

EigenvalueTable EigenvalueTable::make(int max_n, const AlphaVector& alpha) {
  EigenvalueTable table;
  table.lambda.reserve(max_n + 1);
  for (int n = 0; n <= max_n; ++n) table.lambda.push_back(eigenvalue(n, alpha, alpha.dim()));
  return table;
}

void SpectralFunction::set(const MultiIndex& m, double c) {
  if (!m.valid()) return;
  if (m.dim() != dim()) throw std::invalid_argument("SpectralFunction: index dimension mismatch");
  if (c == 0.0)
    coeffs_.erase(m);
  else
    coeffs_[m] = c;
}

double SpectralFunction::coefficient(const MultiIndex& m) const {
  const auto it = coeffs_.find(m);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int SpectralFunction::max_order() const {
  int n = 0;
  for (const auto& [m, c] : coeffs_) n = std::max(n, m.order());
  return n;
}

double SpectralFunction::operator()(const Point& x) const {
  double v = 0.0;
  for (const auto& [m, c] : coeffs_) v += c * hermite_gen(m, alpha_, x);
  return v;
}

double SpectralFunction::norm_l2() const {
  double s = 0.0;
  for (const auto& [m, c] : coeffs_) s += c * c;
  return std::sqrt(s);
}

std::string SpectralFunction::to_json() const {
  nlohmann::ordered_json j;
  j["alpha"] = alpha_.entries();
  j["coeffs"] = nlohmann::ordered_json::array();
  for (const auto& [m, c] : coeffs_) {
    nlohmann::ordered_json e;
    e["m"] = m.entries();
    e["c"] = c;
    j["coeffs"].push_back(e);
  }
  return j.dump();
}

SpectralFunction SpectralFunction::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SpectralFunction f(AlphaVector(j.at("alpha").get<std::vector<double>>()));
  for (const auto& e : j.at("coeffs"))
    f.set(MultiIndex(e.at("m").get<std::vector<int>>()), e.at("c").get<double>());
  return f;
}

SpectralFunction delta_apply(const SpectralFunction& f, std::size_t j) {
  SpectralFunction out(f.alpha());
  for (const auto& [m, c] : f.coefficients()) {
    const double phi = phi_factor(m[j], f.alpha()[j]);
    if (phi == 0.0) continue;
    const MultiIndex down = m.lowered(j);
    if (!down.valid()) continue;
    out.set(down, out.coefficient(down) + phi * c);
  }
  return out;
}

SpectralFunction delta_star_apply(const SpectralFunction& f, std::size_t j) {
  SpectralFunction out(f.alpha());
  for (const auto& [m, c] : f.coefficients()) {
    const double phi = phi_factor(m[j] + 1, f.alpha()[j]);
    const MultiIndex up = m.raised(j);
    out.set(up, out.coefficient(up) + phi * c);
  }
  return out;
}

SpectralFunction oscillator_apply(const SpectralFunction& f) {
  SpectralFunction out(f.alpha());
  for (const auto& [m, c] : f.coefficients())
    out.set(m, c * eigenvalue(m.order(), f.alpha(), f.dim()));
  return out;
}

double dunkl_derivative(const SpectralFunction& f, std::size_t j, const Point& x) {
  return delta_apply(f, j)(x) - x[j] * f(x);
}

SpectralFunction heat_apply(const SpectralFunction& f, double t,
                            const std::optional<EpsVector>& eps, bool restricted) {
  if (t < 0.0) throw std::invalid_argument("heat_apply: t must be >= 0");
  const double factor = restricted ? std::ldexp(1.0, -static_cast<int>(f.dim())) : 1.0;
  SpectralFunction out(f.alpha());
  for (const auto& [m, c] : f.coefficients()) {
    if (eps && !eps->contains(m)) continue;
    out.set(m, factor * c * std::exp(-t * eigenvalue(m.order(), f.alpha(), f.dim())));
  }
  return out;
}

SpectralFunction poisson_apply(const SpectralFunction& f, double t,
                               const std::optional<EpsVector>& eps) {
  if (t < 0.0) throw std::invalid_argument("poisson_apply: t must be >= 0");
  SpectralFunction out(f.alpha());
  for (const auto& [m, c] : f.coefficients()) {
    if (eps && !eps->contains(m)) continue;
    out.set(m, c * std::exp(-t * std::sqrt(eigenvalue(m.order(), f.alpha(), f.dim()))));
  }
  return out;
}

double poisson_subordination_factor(double lambda, double t, int nodes) {
  // u = sqrt(a) e^v turns the integrand into exp(-2 sqrt(a) cosh v) e^{v/2},
  // which the trapezoid rule integrates to machine precision; a plain
  // Gauss-Laguerre rule cannot resolve the e^{-a/u} layer for small t^2 lambda
  const double a = 0.25 * t * t * lambda;
  const double z = 2.0 * std::sqrt(a);
  const double L = std::max(4.0, std::log(50.0 / z)) + 8.0;
  const double h = 2.0 * L / (nodes - 1);
  double s = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double v = -L + i * h;
    s += std::exp(-z * std::cosh(v) + 0.5 * v);
  }
  return s * h * std::pow(a, 0.25) / std::sqrt(M_PI);
}

SpectralFunction poisson_apply_subordination(const SpectralFunction& f, double t, int nodes,
                                             double* max_disagreement) {
  SpectralFunction out(f.alpha());
  double worst = 0.0;
  for (const auto& [m, c] : f.coefficients()) {
    const double lam = eigenvalue(m.order(), f.alpha(), f.dim());
    const double quad = poisson_subordination_factor(lam, t, nodes);
    const double exact = std::exp(-t * std::sqrt(lam));
    worst = std::max(worst, std::abs(quad - exact) / exact);
    out.set(m, c * quad);
  }
  if (max_disagreement != nullptr) *max_disagreement = worst;
  return out;
}

double heat_apply_grid(const std::function<double(const Point&)>& f, double t, const Point& x,
                       const AlphaVector& alpha, const std::optional<EpsVector>& eps,
                       bool restricted, const KernelEvalConfig& cfg, int quad_nodes) {
  if (restricted) {
    if (!eps) throw std::invalid_argument("heat_apply_grid: restricted path needs an eps");
    const HeatKernel kern(alpha, *eps, cfg);
    const WeightRule rule = orthant_rule(alpha, quad_nodes);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * kern.value(x, rule.nodes[i], t) * f(rule.nodes[i]);
    return s;
  }
  const WeightRule rule = fullspace_rule(alpha, quad_nodes);
  if (eps) {
    const HeatKernel kern(alpha, *eps, cfg);
    const std::size_t d = alpha.dim();
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const Point& y = rule.nodes[i];
      Point ay(d);
      double sign = 1.0;
      for (std::size_t k = 0; k < d; ++k) {
        ay[k] = std::abs(y[k]);
        if ((*eps)[k] == 1 && y[k] < 0.0) sign = -sign;
      }
      s += rule.weights[i] * sign * kern.value(x, ay, t) * f(y);
    }
    return s;
  }
  const DunklHeatKernel kern(alpha, cfg);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * kern.value(x, rule.nodes[i], t) * f(rule.nodes[i]);
  return s;
}

GridFunction::GridFunction(std::vector<std::vector<double>> axes, std::vector<double> values,
                           int interp_order)
    : axes_(std::move(axes)), values_(std::move(values)), order_(interp_order) {
  std::size_t n = 1;
  for (const auto& axis : axes_) {
    if (axis.size() < 2) throw std::invalid_argument("GridFunction: axis too short");
    for (std::size_t i = 0; i + 1 < axis.size(); ++i)
      if (!(axis[i] < axis[i + 1]))
        throw std::invalid_argument("GridFunction: axes must be strictly increasing");
    n *= axis.size();
  }
  if (values_.size() != n) throw std::invalid_argument("GridFunction: value count mismatch");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: values must be finite");
  if (order_ < 1) order_ = 1;
}

GridFunction GridFunction::sample(const std::function<double(const Point&)>& f,
                                  std::vector<std::vector<double>> axes, int interp_order) {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.size();
  std::vector<double> values(n);
  const std::size_t d = axes.size();
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    Point x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = axes[j][idx[j]];
    values[flat] = f(x);
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
    }
  }
  return GridFunction(std::move(axes), std::move(values), interp_order);
}

double GridFunction::value_at(const std::vector<std::size_t>& idx) const {
  std::size_t flat = 0;
  for (std::size_t j = 0; j < axes_.size(); ++j) flat = flat * axes_[j].size() + idx[j];
  return values_[flat];
}

double GridFunction::operator()(const Point& x) const {
  const std::size_t d = axes_.size();
  // per-axis local Lagrange stencils of order_+1 points
  std::vector<std::vector<std::size_t>> stencil(d);
  std::vector<std::vector<double>> lweights(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& axis = axes_[j];
    const std::size_t width = std::min<std::size_t>(order_ + 1, axis.size());
    auto it = std::lower_bound(axis.begin(), axis.end(), x[j]);
    std::size_t anchor = (it == axis.begin()) ? 0 : (it - axis.begin() - 1);
    std::size_t start = (anchor >= width / 2) ? anchor - width / 2 : 0;
    start = std::min(start, axis.size() - width);
    stencil[j].resize(width);
    lweights[j].resize(width);
    for (std::size_t a = 0; a < width; ++a) stencil[j][a] = start + a;
    for (std::size_t a = 0; a < width; ++a) {
      double w = 1.0;
      for (std::size_t b = 0; b < width; ++b) {
        if (a == b) continue;
        w *= (x[j] - axis[start + b]) / (axis[start + a] - axis[start + b]);
      }
      lweights[j][a] = w;
    }
  }
  std::vector<std::size_t> pick(d, 0), gidx(d);
  double acc = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      w *= lweights[j][pick[j]];
      gidx[j] = stencil[j][pick[j]];
    }
    acc += w * value_at(gidx);
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++pick[j] < stencil[j].size()) break;
      pick[j] = 0;
    }
    if (j == d) break;
  }
  return acc;
}

double GridFunction::dunkl_derivative(std::size_t j, const Point& x, const AlphaVector& alpha,
                                      double h) const {
  Point xp = x, xm = x;
  xp[j] += h;
  xm[j] -= h;
  const double dj = ((*this)(xp) - (*this)(xm)) / (2.0 * h);
  const double lo = axes_[j].front(), hi = axes_[j].back();
  if (std::abs(x[j]) <= 4.0 * h) {
    // near the reflecting hyperplane the quotient needs the odd part's slope
    if (-x[j] - h < lo || -x[j] + h < lo)
      throw std::runtime_error("GridFunction: stencil cannot reach the reflected point");
    Point rp = x, rm = x;
    rp[j] = x[j] + h;
    rm[j] = x[j] - h;
    Point sp = rp, sm = rm;
    sp[j] = -rp[j];
    sm[j] = -rm[j];
    const double odd_slope = (((*this)(rp) - (*this)(sp)) - ((*this)(rm) - (*this)(sm))) /
                             (4.0 * h);
    return dj + (alpha[j] + 0.5) * 2.0 * odd_slope;
  }
  const Point sx = reflect(x, j);
  if (sx[j] < lo || sx[j] > hi)
    throw std::runtime_error("GridFunction: reflected point outside the grid");
  return dj + (alpha[j] + 0.5) * ((*this)(x) - (*this)(sx)) / x[j];
}

}  // namespace dunklsq
