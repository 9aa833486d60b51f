#pragma once

#include <functional>

#include "dunklsq/squarefn.hpp"

namespace dunklsq {

/// Exact spectral projection onto the parity class N_eps.
SpectralFunction eps_project(const SpectralFunction& f, const EpsVector& eps);

/// Grid-path projection f_eps(x) = 2^{-d} sum_eta eta^eps f(eta x).
double eps_project_pointwise(const std::function<double(const Point&)>& f, const EpsVector& eps,
                             const Point& x);

/// Restriction of a function on R^d to the positive orthant.
std::function<double(const Point&)> restrict_plus(std::function<double(const Point&)> f);

/// Parity extension of a function on R^d_+ back to R^d: f(eta x) = eta^eps f(x).
std::function<double(const Point&)> extend_eps(std::function<double(const Point&)> f_plus,
                                               EpsVector eps);

/// Verification of the reduction chain
///   S_H^j(f)(x) <= sum_eps S_H^{j,eps} f_eps(x) <= sum_eps 2^{3d/2} S_H^{j,eps,+}(f_eps^+)(x)
/// pointwise on a grid, with the stated constant and a relative slack.
struct ReductionReport {
  struct Row {
    Point x;
    double lhs;            // S_H^j(f)(x)
    double mid_sum;        // sum_eps of the intermediate square functions
    double bound_sum;      // 2^{3d/2} sum_eps S_H^{j,eps,+}(f_eps^+)(x)
    double chain1_ratio;   // lhs / mid_sum
    double chain2_ratio;   // worst per-eps mid / (2^{3d/2} rhs)
    bool pass;
  };
  std::vector<Row> rows;
  double max_chain1 = 0.0;
  double max_chain2 = 0.0;
  bool pass = true;
};

ReductionReport reduction_verify(const SpectralFunction& f, std::size_t j,
                                 const std::vector<Point>& grid, const ConeSpec& cone,
                                 const ZetaPanels& panels, double slack = 1e-4);

}  // namespace dunklsq
