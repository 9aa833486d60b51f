#include <cmath>
#include <vector>

#include "doctest.h"
#include "dunklsq/measure.hpp"
#include "dunklsq/specfun.hpp"

using namespace dunklsq;

namespace {

double binom_real(double top, int k) {
  return std::exp(std::lgamma(top + 1.0) - std::lgamma(top - k + 1.0) - std::lgamma(k + 1.0));
}

// power-series oracle: L_m^a(r) = sum_k (-1)^k binom(m+a, m-k) r^k / k!
double laguerre_series_oracle(int m, double a, double r) {
  double sum = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double c = binom_real(m + a, m - k) / std::exp(std::lgamma(k + 1.0));
    sum += ((k % 2 == 0) ? 1.0 : -1.0) * c * std::pow(r, k);
  }
  return sum;
}

// ascending-series oracle for I_nu(u)/u^nu in long double, no cancellation
double bessel_ratio_series_oracle(double nu, double u) {
  const long double q = 0.25L * static_cast<long double>(u) * u;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 0; k < 2000; ++k) {
    term *= q / ((k + 1.0L) * (nu + k + 1.0L));
    sum += term;
    if (term < 1e-25L * sum) break;
  }
  const long double scale =
      std::exp(static_cast<long double>(-nu * std::log(2.0) - std::lgamma(nu + 1.0)));
  return static_cast<double>(scale * sum);
}

// classical normalized Hermite functions via the stable recurrence
double hermite_classical(int n, double x) {
  double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return h0;
  double h1 = std::sqrt(2.0) * x * h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = std::sqrt(2.0 / (k + 1.0)) * x * h1 - std::sqrt(k / (k + 1.0)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// delta_j h via the defining operator delta = T_j + x_j applied analytically
double delta_apply_analytic(const MultiIndex& m, const AlphaVector& alpha, const Point& x,
                            std::size_t j) {
  const double dh = hermite_gen_partial(m, alpha, x, j);
  const double h = hermite_gen(m, alpha, x);
  double reflect_term = 0.0;
  if (m[j] % 2 == 1) {
    // odd in x_j: (h(x) - h(sigma_j x)) / x_j = 2 h(x) / x_j
    reflect_term = (alpha[j] + 0.5) * 2.0 * h / x[j];
  }
  return dh + reflect_term + x[j] * h;
}

}  // namespace

TEST_CASE("Laguerre polynomial closed forms") {
  CHECK(laguerre_poly(0, 0.5, 3.7) == 1.0);
  CHECK(laguerre_poly(1, 0.0, 2.0) == doctest::Approx(laguerre_series_oracle(1, 0.0, 2.0)));
  CHECK(laguerre_poly(1, 0.0, 2.0) == doctest::Approx(-1.0));
  CHECK(laguerre_poly(2, 1.0, 0.0) == doctest::Approx(binom_real(3.0, 2)));
  CHECK(laguerre_poly(2, 1.0, 0.0) == doctest::Approx(3.0));
  for (int m : {3, 5, 8}) {
    for (double a : {-0.5, 0.0, 1.3}) {
      for (double r : {0.1, 1.0, 4.5}) {
        CHECK(laguerre_poly(m, a, r) ==
              doctest::Approx(laguerre_series_oracle(m, a, r)).epsilon(1e-11));
      }
    }
  }
  CHECK_THROWS(laguerre_poly(2, -1.5, 1.0));
}

TEST_CASE("Bessel ratio across the series and asymptotic regimes") {
  SUBCASE("small-argument limit 1/(2^nu Gamma(nu+1))") {
    for (double nu : {-0.5, 0.0, 1.3, 4.3}) {
      const double limit = std::exp(-nu * std::log(2.0) - std::lgamma(nu + 1.0));
      CHECK(bessel_i_ratio(nu, 0.0) == doctest::Approx(limit).epsilon(1e-14));
      CHECK(bessel_i_ratio(nu, 1e-8) == doctest::Approx(limit).epsilon(1e-12));
    }
  }

  SUBCASE("half-integer closed form at nu = -1/2") {
    CHECK(bessel_i_ratio(-0.5, 1.0) ==
          doctest::Approx(std::sqrt(2.0 / M_PI) * std::cosh(1.0)).epsilon(1e-14));
  }

  SUBCASE("nu = 0, u = 50 against the two-term asymptotic and the series oracle") {
    const double got = bessel_i_ratio(0.0, 50.0);
    const double two_term = std::exp(50.0) / std::sqrt(100.0 * M_PI) * (1.0 + 1.0 / 400.0);
    // the two-term expansion itself carries an O(9/(2(8u)^2)) ~ 2.8e-5 error
    CHECK(got == doctest::Approx(two_term).epsilon(5e-5));
    CHECK(got == doctest::Approx(bessel_ratio_series_oracle(0.0, 50.0)).epsilon(1e-12));
  }

  SUBCASE("series oracle agreement to 1e-12 in both regimes") {
    for (double nu : {-0.5, 0.0, 0.8, 1.3, 4.3}) {
      for (double u : {0.5, 7.0, 25.0, 40.0, 120.0, 350.0}) {
        const double got = bessel_i_ratio_scaled(nu, u);
        const double want = bessel_ratio_series_oracle(nu, u) * std::exp(-u);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }

  SUBCASE("switchover overlap agreement below 1e-11") {
    for (double nu : {-0.5, 0.0, 1.3, 4.3}) {
      const double cut = std::max(30.0, nu * nu);
      for (double u : {cut * 0.999, cut * 1.001, cut * 1.2}) {
        const double series = bessel_ratio_series_oracle(nu, u) * std::exp(-u);
        CHECK(bessel_i_ratio_scaled(nu, u) == doctest::Approx(series).epsilon(1e-11));
      }
    }
  }

  SUBCASE("domain errors") {
    CHECK_THROWS(bessel_i_ratio(-0.6, 1.0));
    CHECK_THROWS(bessel_i_ratio(0.0, -1.0));
  }
}

TEST_CASE("normalizing constants: closed form and quadrature oracle") {
  CHECK(normalizing_const(0, -0.5) == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-14));
  CHECK(normalizing_const(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

  // quadrature oracle: the 1-d h_k^a has unit norm in L^2(R, |x|^{2a+1} dx)
  for (double a : {-0.5, 0.0, 1.3}) {
    const AlphaVector alpha({a});
    const WeightRule rule = fullspace_rule(alpha, 48);
    for (int k : {0, 1, 2, 5, 8}) {
      const MultiIndex m({k});
      const double norm2 =
          rule.integrate([&](const Point& x) { return std::pow(hermite_gen(m, alpha, x), 2); });
      CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("generalized Hermite functions") {
  SUBCASE("invalid multi-index evaluates to 0") {
    const AlphaVector alpha({0.3, 1.0});
    CHECK(hermite_gen(MultiIndex({1, 2}).lowered(1).lowered(1).lowered(1), alpha, {0.4, 0.7}) ==
          0.0);
    CHECK(hermite_gen(MultiIndex::invalid(2), alpha, {0.4, 0.7}) == 0.0);
  }

  SUBCASE("ground state at alpha = -1/2 is the classical Gaussian") {
    for (double x : {-1.2, 0.0, 0.33, 2.4}) {
      CHECK(hermite_gen_1d(0, -0.5, x) ==
            doctest::Approx(std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x)).epsilon(1e-14));
    }
  }

  SUBCASE("parity h_m(sigma_j x) = (-1)^{m_j} h_m(x)") {
    const AlphaVector alpha({0.0, 1.3});
    const Point x{0.7, 1.1};
    for (int m0 : {0, 1, 2, 3}) {
      for (int m1 : {0, 1, 4}) {
        const MultiIndex m({m0, m1});
        const double base = hermite_gen(m, alpha, x);
        CHECK(hermite_gen(m, alpha, reflect(x, 0)) ==
              doctest::Approx((m0 % 2 == 0 ? 1.0 : -1.0) * base));
        CHECK(hermite_gen(m, alpha, reflect(x, 1)) ==
              doctest::Approx((m1 % 2 == 0 ? 1.0 : -1.0) * base));
      }
    }
  }

  SUBCASE("classical reduction: alpha = -1/2 gives the Hermite functions") {
    for (int n = 0; n <= 12; ++n) {
      for (double x : {-2.1, -0.4, 0.9, 3.0}) {
        const double got = hermite_gen_1d(n, -0.5, x);
        const double want = hermite_classical(n, x);
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
      }
    }
  }

  SUBCASE("derivative matches a central finite difference") {
    const double h = 1e-6;
    for (int k : {0, 1, 2, 5}) {
      for (double a : {-0.5, 0.7}) {
        for (double x : {0.3, 1.7}) {
          const double fd = (hermite_gen_1d(k, a, x + h) - hermite_gen_1d(k, a, x - h)) / (2 * h);
          CHECK(hermite_gen_1d_derivative(k, a, x) == doctest::Approx(fd).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("phi factor branches") {
  CHECK(phi_factor(2, 1.234) == doctest::Approx(2.0));
  CHECK(phi_factor(1, -0.5) == doctest::Approx(std::sqrt(2.0)));
  CHECK(phi_factor(0, 0.7) == 0.0);
  CHECK(phi_factor(3, 0.0) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("orthonormality of h_m under dw_alpha") {
  SUBCASE("d = 1, all spec alphas, orders up to 8") {
    for (double a : {-0.5, 0.0, 1.3}) {
      const AlphaVector alpha({a});
      const WeightRule rule = fullspace_rule(alpha, 48);
      for (int mi = 0; mi <= 8; ++mi) {
        for (int ni = mi; ni <= 8; ++ni) {
          const double got = rule.integrate([&](const Point& x) {
            return hermite_gen(MultiIndex({mi}), alpha, x) *
                   hermite_gen(MultiIndex({ni}), alpha, x);
          });
          CHECK(std::abs(got - (mi == ni ? 1.0 : 0.0)) <= 1e-9);
        }
      }
    }
  }

  SUBCASE("d = 2 spot check") {
    const AlphaVector alpha({0.0, 1.3});
    const WeightRule rule = fullspace_rule(alpha, 24);
    const std::vector<MultiIndex> idx = {MultiIndex({0, 0}), MultiIndex({1, 2}),
                                         MultiIndex({3, 1}), MultiIndex({4, 4})};
    for (const auto& m : idx) {
      for (const auto& n : idx) {
        const double got = rule.integrate([&](const Point& x) {
          return hermite_gen(m, alpha, x) * hermite_gen(n, alpha, x);
        });
        CHECK(std::abs(got - (m == n ? 1.0 : 0.0)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("ladder rule delta_j h_m = Phi(m_j, a_j) h_{m - e_j} pointwise") {
  const AlphaVector alpha({0.3, 1.3});
  for (int m0 : {0, 1, 2, 5}) {
    for (int m1 : {0, 3}) {
      const MultiIndex m({m0, m1});
      for (std::size_t j : {std::size_t{0}, std::size_t{1}}) {
        for (int g = 1; g <= 20; ++g) {
          const Point x{0.1 + 0.11 * g, 0.2 + 0.09 * g};
          const double lhs = delta_apply_analytic(m, alpha, x, j);
          const double rhs =
              phi_factor(m[j], alpha[j]) * hermite_gen(m.lowered(j), alpha, x);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
      }
    }
  }
}
