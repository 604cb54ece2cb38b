#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "mb/ckernel.hpp"
#include "mb/densities.hpp"

using namespace mb;

namespace {

// Christoffel-Darboux sum for the theta = 1 (Laguerre unitary) kernel, integer c.
double lue_kernel(int n, unsigned c, double x, double y) {
  double s = 0;
  for (int k = 0; k < n; ++k)
    s += std::exp(std::lgamma(k + 1.0) - std::lgamma(k + c + 1.0)) * std::assoc_laguerre(k, c, x) *
         std::assoc_laguerre(k, c, y);
  return std::pow(x * y, c / 2.0) * std::exp(-(x + y) / 2) * s;
}

double trace(const FiniteKernel& k) {
  const auto& p = k.params();
  if (p.is_jacobi()) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([&](double t) { return (t <= 0 || t >= 1) ? 0.0 : k(t, t); }, 0.0, 1.0, 1e-12);
  }
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate([&](double t) { return t <= 0 ? 0.0 : k(t, t); }, 0.0, std::numeric_limits<double>::infinity(),
                      1e-12);
}

}  // namespace

TEST_CASE("theta = 1 reduces to the Laguerre unitary kernel") {
  for (unsigned c : {0u, 2u}) {
    const FiniteKernel k(EnsembleParams::laguerre(1, c, 6));
    for (double x : {0.5, 3.0, 9.0})
      for (double y : {0.2, 4.0}) CHECK(k(x, y) == doctest::Approx(lue_kernel(6, c, x, y)).epsilon(1e-11));
  }
}

TEST_CASE("series and contour quadrature agree") {
  const auto p = EnsembleParams::laguerre(1.5, 0.3, 3);
  const FiniteKernel k(p);
  for (double x : {0.7, 2.5})
    for (double y : {1.1, 4.0}) CHECK(kernel_laguerre_quadrature(p, x, y) == doctest::Approx(k(x, y)).epsilon(1e-9));
  const auto j = EnsembleParams::jacobi(0.7, 0.4, 2, 3);
  const FiniteKernel kj(j);
  for (double x : {0.2, 0.6})
    for (double y : {0.3, 0.9}) CHECK(kernel_jacobi_quadrature(j, x, y) == doctest::Approx(kj(x, y)).epsilon(1e-9));
}

TEST_CASE("kernel trace equals N") {
  CHECK(trace(FiniteKernel(EnsembleParams::laguerre(0.5, 0.2, 4))) == doctest::Approx(4).epsilon(1e-8));
  CHECK(trace(FiniteKernel(EnsembleParams::jacobi(2.5, 0.1, 0.7, 3))) == doctest::Approx(3).epsilon(1e-8));
}

TEST_CASE("theta = 0 kernel via spread exponents") {
  const FiniteKernel k(EnsembleParams::theta_zero(0.5, 3));
  CHECK(k.perturbed());
  CHECK(trace(k) == doctest::Approx(3).epsilon(1e-4));
}

TEST_CASE("non-integer c2 Jacobi is flagged with an error estimate") {
  const FiniteKernel k(EnsembleParams::jacobi(2, 0.3, 0.5, 3));
  const auto v = k.evaluate(0.2, 0.7);
  CHECK(v.experimental);
  CHECK(v.error_estimate < 1e-10);
  const auto w = FiniteKernel(EnsembleParams::jacobi(2, 0.3, 1, 3)).evaluate(0.2, 0.7);
  CHECK_FALSE(w.experimental);
}

TEST_CASE("two-level kernel on the diagonal is the smaller ensemble's kernel") {
  const FiniteKernel big(EnsembleParams::laguerre(2, 0.5, 5));
  const FiniteKernel small(EnsembleParams::laguerre(2, 0.5, 3));
  for (double x : {0.6, 2.0})
    for (double y : {1.2, 5.0}) CHECK(big.two_level(3, x, 3, y) == doctest::Approx(small(x, y)).epsilon(1e-10));
  CHECK(big.two_level(5, 1.3, 5, 0.7) == doctest::Approx(big(1.3, 0.7)).epsilon(1e-12));
}

TEST_CASE("scaled kernel diagonal approaches the Fuss-Catalan density") {
  const double exact = fc_density(2, 1.0);
  const double e25 = std::abs(global_density_estimate(FiniteKernel(EnsembleParams::laguerre(2, 0, 25)), 1.0) - exact);
  const double e100 = std::abs(global_density_estimate(FiniteKernel(EnsembleParams::laguerre(2, 0, 100)), 1.0) - exact);
  CHECK(e100 < e25);
  CHECK(e100 < 0.01);
  const double j = global_density_estimate(FiniteKernel(EnsembleParams::jacobi(1, 0, 0, 100)), 0.5);
  CHECK(j == doctest::Approx(jfc_density(1, 0.5)).epsilon(0.02));
}
