#include <doctest.h>

#include <cmath>

#include "mb/hardedge.hpp"

using namespace mb;

namespace {

double bessel_kernel(double x, double y) {
  const double sx = std::sqrt(x), sy = std::sqrt(y);
  return (sx * std::cyl_bessel_j(1.0, 2 * sx) * std::cyl_bessel_j(0.0, 2 * sy) -
          sy * std::cyl_bessel_j(0.0, 2 * sx) * std::cyl_bessel_j(1.0, 2 * sy)) /
         (x - y);
}

}  // namespace

TEST_CASE("Wright function with b = 1 is a Bessel function") {
  // J_{a,1}(x) = x^{-(a-1)/2} J_{a-1}(2 sqrt x)
  for (double a : {1.0, 1.5, 3.0})
    for (double x : {0.3, 5.0, 60.0, 400.0}) {
      const double ref = std::pow(x, -(a - 1) / 2) * std::cyl_bessel_j(a - 1, 2 * std::sqrt(x));
      CHECK(wright_bessel(a, 1, x) == doctest::Approx(ref).epsilon(1e-10).scale(std::pow(x, -(a - 1) / 2 - 0.25)));
    }
  CHECK(wright_bessel(2, 0.5, 0) == doctest::Approx(1.0));
  CHECK(wright_bessel(-1, 0.5, 0) == 0.0);
  CHECK_THROWS_AS(wright_bessel(1, 0, 1), ValidationError);
}

TEST_CASE("classical Bessel kernel at theta = 1, c = 0") {
  for (auto [x, y] : {std::pair{1.0, 2.0}, std::pair{0.4, 3.0}})
    CHECK(borodin_kernel(0, 1, x, y) == doctest::Approx(bessel_kernel(x, y)).epsilon(1e-10));
}

TEST_CASE("series and contour forms agree") {
  for (double th : {0.5, 1.5, 2.5})
    for (double c : {0.0, 1.0}) {
      const double a = borodin_kernel(c, th, 0.7, 1.9), b = borodin_kernel_contour(c, th, 0.7, 1.9);
      CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
}

TEST_CASE("integer theta: KZ identity") {
  const int th = 2;
  const double c = 0.5, x = 0.6, y = 1.3, t = 1.0 / th;
  const double lhs = std::pow(x, t - 1) * borodin_kernel(c, th, th * std::pow(x, t), th * std::pow(y, t));
  CHECK(lhs == doctest::Approx(kz_kernel(kz_nu_for(c, th), y, x)).epsilon(1e-8));
  // one nu = 0 gives the Bessel kernel with arguments swapped
  CHECK(kz_kernel({0.0}, 1.0, 2.0) == doctest::Approx(bessel_kernel(2.0, 1.0)).epsilon(1e-8));
}

TEST_CASE("finite-N hard-edge convergence report") {
  const auto r = hard_edge_convergence(EnsembleParams::laguerre(1, 0, 1), {10, 20, 40}, {{0.5, 1.5}, {1.0, 1.0}});
  CHECK(r.pass);
  CHECK(r.statistic < 1);
  const auto errs = r.detail["errors"].get<std::vector<double>>();
  REQUIRE(errs.size() == 3);
  CHECK(errs[2] < errs[0]);
  CHECK_THROWS_AS(hard_edge_convergence(EnsembleParams::laguerre(1, 0, 1), {10}, {{1, 1}}), ValidationError);
}
