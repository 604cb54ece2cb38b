#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mb/densities.hpp"
#include "mb/params.hpp"
#include "mb/special.hpp"

using namespace mb;
using std::numbers::pi;

TEST_CASE("log_gamma against real lgamma and |Gamma(iy)|^2") {
  for (double x : {0.1, 0.5, 1.0, 3.7, 25.0, 140.5})
    CHECK(log_gamma(cplx(x, 0)).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  for (double y : {0.3, 1.0, 4.0, 20.0}) {
    // |Gamma(iy)|^2 = pi / (y sinh(pi y))
    const double expect = 0.5 * std::log(pi / (y * std::sinh(pi * y)));
    CHECK(log_gamma(cplx(0, y)).real() == doctest::Approx(expect).epsilon(1e-12));
  }
  // reflection region
  const cplx z(-2.3, 0.7);
  const cplx lhs = std::exp(log_gamma(z) + log_gamma(1.0 - z));
  const cplx rhs = pi / std::sin(pi * z);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("Lambert W") {
  CHECK(lambert_w(cplx(std::numbers::e, 0)).real() == doctest::Approx(1).epsilon(1e-15));
  CHECK(lambert_w(cplx(-1 / std::numbers::e, 0)).real() == doctest::Approx(-1).epsilon(1e-7));
  for (cplx t : {cplx(0.3, 0), cplx(-0.2, 0.1), cplx(5, -3), cplx(-4, 0), cplx(1e5, 1e3)}) {
    const cplx w = lambert_w(t, WApproach::above_cut);
    CHECK(std::abs(w * std::exp(w) - t) < 1e-12 * std::max(1.0, std::abs(t)));
  }
  const cplx w = lambert_w(cplx(-2, 0), WApproach::above_cut);
  CHECK(w.imag() > 0);
}

TEST_CASE("theta = 1 Fuss-Catalan is Marchenko-Pastur") {
  CHECK(fc_support(1) == doctest::Approx(4));
  CHECK(fc_support(2) == doctest::Approx(27.0 / 4));
  for (double x : {0.01, 0.5, 1.0, 2.0, 3.9}) {
    const double mp = std::sqrt((4 - x) / x) / (2 * pi);
    CHECK(fc_density(1, x) == doctest::Approx(mp).epsilon(1e-12));
  }
  CHECK(fc_density(2, -1) == 0);
  CHECK(fc_density(2, 7) == 0);
}

TEST_CASE("Fuss-Catalan moments") {
  // binom((s+1)k, k) / (s k + 1)
  const double fc2[] = {1, 1, 3, 12, 55, 273};
  const double cat[] = {1, 1, 2, 5, 14, 42};
  for (unsigned k = 0; k < 6; ++k) {
    CHECK(fc_moment(2, k) == doctest::Approx(fc2[k]).epsilon(1e-13));
    CHECK(fc_moment(1, k) == doctest::Approx(cat[k]).epsilon(1e-13));
  }
  for (double th : {0.5, 2.0, 3.0}) {
    const auto d = fc_density_fn(th);
    CHECK(density_mass(d, d.lo, d.hi) == doctest::Approx(1).epsilon(1e-8));
    for (unsigned k = 1; k <= 3; ++k) {
      const double m = integrate_density(d, [k](double x) { return std::pow(x, k); }, d.lo, d.hi);
      CHECK(m == doctest::Approx(fc_moment(th, k)).epsilon(1e-8));
    }
  }
}

TEST_CASE("Jacobi counterpart") {
  for (double x : {0.05, 0.3, 0.5, 0.9}) {
    const double arcsine = 1 / (pi * std::sqrt(x * (1 - x)));
    CHECK(jfc_density(1, x) == doctest::Approx(arcsine).epsilon(1e-11));
  }
  CHECK(std::abs(jfc_density(1, 0.5) - 2 / pi) < 1e-10);
  CHECK(jfc_moment(1, 1) == doctest::Approx(0.5));
  CHECK(jfc_moment(2, 1) == doctest::Approx(4.0 / 9));
  for (double th : {0.5, 2.0, 3.0}) {
    const auto d = jfc_density_fn(th);
    CHECK(density_mass(d, 0, 1) == doctest::Approx(1).epsilon(1e-8));
    const double m2 = integrate_density(d, [](double x) { return x * x; }, 0, 1);
    CHECK(m2 == doctest::Approx(jfc_moment(th, 2)).epsilon(1e-8));
  }
}

TEST_CASE("theta = 0 density") {
  const auto d = theta0_density_fn();
  CHECK(std::abs(density_mass(d, 0, std::numbers::e) - 1) < 1e-8);
  CHECK(theta0_density(3.0) == 0);
  CHECK(theta0_density(1.0) > 0);
}

TEST_CASE("saddle roots reproduce the densities") {
  for (double th : {0.5, 1.0, 2.0})
    for (double t : {0.1, 0.4, 0.8}) {
      const double x = t * fc_support(th);
      CHECK(saddle_roots_laguerre(th, x).u_plus.imag() / (pi * x) ==
            doctest::Approx(fc_density(th, x)).epsilon(1e-10));
      CHECK(saddle_roots_jacobi(th, t).u_plus.imag() / (pi * t) == doctest::Approx(jfc_density(th, t)).epsilon(1e-10));
    }
  for (double x : {0.2, 1.0, 2.5})
    CHECK(saddle_root_theta0(x).imag() / (pi * x) == doctest::Approx(theta0_density(x)).epsilon(1e-10));
}

TEST_CASE("resolvent functional equations") {
  for (int th = 1; th <= 3; ++th)
    for (cplx z : {cplx(10, 5), cplx(-1, 0.5), cplx(2, -3)}) {
      CHECK(std::abs(resolvent_residual_laguerre(th, z)) < 1e-6);
      CHECK(std::abs(resolvent_residual_jacobi(th, z * 0.2)) < 1e-6);
    }
  // arcsine resolvent: G(2) = 1 / sqrt(z (z - 1)) = 1/sqrt(2)
  CHECK(resolvent_from_density(jfc_density_fn(1), 2.0).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(resolvent_from_density(jfc_density_fn(1), 0.5), ValidationError);
}

TEST_CASE("phi parametrisation round trips") {
  for (double th : {0.5, 2.0})
    for (double t : {0.01, 0.3, 0.9}) {
      const double x = t * fc_support(th);
      CHECK(fc_x_from_phi(th, fc_phi_from_x(th, x)) == doctest::Approx(x).epsilon(1e-12));
      CHECK(jfc_x_from_phi(th, jfc_phi_from_x(th, t)) == doctest::Approx(t).epsilon(1e-12));
    }
}
