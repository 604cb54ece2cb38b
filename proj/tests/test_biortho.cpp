#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>

#include "mb/biortho.hpp"
#include "mb/ckernel.hpp"

using namespace mb;

TEST_CASE("bimoments are Gamma and Beta integrals") {
  const auto l = EnsembleParams::laguerre(1.5, 0.25, 3);
  CHECK(bimoment(l, 2, 3) == doctest::Approx(std::tgamma(0.25 + 2 + 4.5 + 1)).epsilon(1e-13));
  const auto j = EnsembleParams::jacobi(2, 0.5, 1.5, 3);
  CHECK(bimoment(j, 1, 2) == doctest::Approx(boost::math::beta(0.5 + 1 + 4 + 1, 2.5)).epsilon(1e-13));
}

TEST_CASE("theta = 1 Laguerre q_j are monic Laguerre polynomials") {
  for (unsigned c : {0u, 1u, 3u})
    for (unsigned j = 1; j <= 6; ++j) {
      const auto q = laguerre_q(1, c, j);
      REQUIRE(q.degree() == int(j));
      CHECK(q.coeff.back() == doctest::Approx(1));
      const double sign = (j % 2) ? -1.0 : 1.0;
      for (double x : {0.3, 2.0, 7.5}) {
        const double ref = sign * std::tgamma(j + 1.0) * std::assoc_laguerre(j, c, x);
        CHECK(q.eval(x) == doctest::Approx(ref).epsilon(1e-10).scale(std::tgamma(j + 1.0)));
      }
    }
}

namespace {

// int x^m q_k(x^theta) w(x) dx by quadrature, divided by int |.| dx
double quad_orthogonality(const EnsembleParams& p, int k, int m) {
  const auto q = family_q(p, k);
  auto f = [&](double x) {
    const double w = p.is_jacobi() ? std::pow(x, p.c1) * std::pow(1 - x, p.c2) : std::pow(x, p.c) * std::exp(-x);
    return std::pow(x, m) * q.eval(std::pow(x, p.theta)) * w;
  };
  double val = 0, mag = 0;
  if (p.is_jacobi()) {
    boost::math::quadrature::tanh_sinh<double> ts;
    val = ts.integrate([&](double x) { return (x <= 0 || x >= 1) ? 0.0 : f(x); }, 0.0, 1.0, 1e-13);
    mag = ts.integrate([&](double x) { return (x <= 0 || x >= 1) ? 0.0 : std::abs(f(x)); }, 0.0, 1.0, 1e-13);
  } else {
    boost::math::quadrature::exp_sinh<double> es;
    auto g = [&](double x) {
      const double v = x <= 0 ? 0.0 : f(x);
      return std::isfinite(v) ? v : 0.0;  // pow * exp overflows far out where the integrand is 0
    };
    val = es.integrate(g, 0.0, std::numeric_limits<double>::infinity(),
                       1e-13);
    mag = es.integrate([&](double x) { return std::abs(g(x)); }, 0.0,
                       std::numeric_limits<double>::infinity(), 1e-13);
  }
  return val / mag;
}

}  // namespace

TEST_CASE("biorthogonality checked by direct quadrature") {
  for (const auto& p : {EnsembleParams::laguerre(1.5, 0.25, 1), EnsembleParams::laguerre(0.5, -0.3, 1),
                        EnsembleParams::jacobi(1.5, 0.25, 0.5, 1), EnsembleParams::jacobi(3, 0, 1, 1)})
    for (int k = 1; k <= 4; ++k)
      for (int m = 0; m < k; ++m) CHECK(std::abs(quad_orthogonality(p, k, m)) < 1e-9);
}

TEST_CASE("residuals: exact zeros, fractional small, h_k positive") {
  const auto integer = EnsembleParams::laguerre(2, 1, 1);
  const auto jinteger = EnsembleParams::jacobi(3, 2, 1, 1);
  for (int k = 1; k <= 10; ++k)
    for (int m = 0; m < k; ++m) {
      CHECK(biortho_exact_path(integer, m, k));
      CHECK(biortho_residual(integer, k, m) == 0.0);
      CHECK(biortho_residual(jinteger, k, m) == 0.0);
      CHECK(std::abs(biortho_residual(EnsembleParams::laguerre(1.3, 0.7, 1), k, m)) < 1e-8);
      CHECK(std::abs(biortho_residual(EnsembleParams::jacobi(0.6, 0.1, 2.2, 1), k, m)) < 1e-8);
    }
  for (int k = 0; k <= 10; ++k) {
    CHECK(biortho_residual(integer, k, k) > 0);
    CHECK(biortho_residual(EnsembleParams::jacobi(1.5, 0.25, 0.5, 1), k, k) > 0);
  }
  CHECK_THROWS_AS(biortho_residual(integer, 2, 3), ValidationError);
}

TEST_CASE("hypergeometric differential equation") {
  for (int th = 1; th <= 3; ++th)
    for (int j = 0; j <= 6; ++j) {
      CHECK(hypergeom_check(EnsembleParams::laguerre(th, 0.5, 1), j) < 1e-9);
      CHECK(hypergeom_check(EnsembleParams::jacobi(th, 0.5, 2, 1), j) < 1e-9);
    }
}

TEST_CASE("q_1 is x minus the mean of lambda^theta (N = 1)") {
  // N = 1 Laguerre: lambda ~ Gamma(c+1), so E lambda^theta = Gamma(c+1+theta)/Gamma(c+1)
  const double c = 0.4, th = 1.7;
  const auto q = laguerre_q(th, c, 1);
  CHECK(q.eval(2.0) == doctest::Approx(2.0 - std::tgamma(c + 1 + th) / std::tgamma(c + 1)).epsilon(1e-13));
}

TEST_CASE("characteristic polynomial by Monte Carlo") {
  const auto p = EnsembleParams::laguerre(2, 0, 2);
  const auto mc = char_poly_mc(p, 4.0, 40000, 3);
  CHECK(std::abs(mc.mean - family_q(p, 2).eval(4.0)) < 4 * mc.se);
}

TEST_CASE("bimoment-inverse kernel oracle") {
  const auto p = EnsembleParams::laguerre(1.5, 0.5, 3);
  const KernelOracle o(p);
  const FiniteKernel k(p);
  for (double x : {0.4, 2.0})
    for (double y : {1.0, 3.0}) CHECK(o(x, y) == doctest::Approx(k(x, y)).epsilon(1e-9));
  CHECK(o.condition() > 1);
  CHECK_THROWS_AS(KernelOracle(EnsembleParams::laguerre(2, 0, 13)), NumericalError);
}
