#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "mb/eigensolve.hpp"
#include "mb/params.hpp"
#include "mb/rng.hpp"
#include "mb/sampler.hpp"

using namespace mb;

TEST_CASE("params validation") {
  CHECK_NOTHROW(EnsembleParams::laguerre(2, 0, 3));
  CHECK_NOTHROW(EnsembleParams::laguerre(0.5, -0.5, 3));
  CHECK_THROWS_AS(EnsembleParams::laguerre(2, -1, 3), ValidationError);
  CHECK_THROWS_AS(EnsembleParams::laguerre(-1, 0, 3), ValidationError);
  CHECK_THROWS_AS(EnsembleParams::laguerre(0, 0, 3), ValidationError);  // theta = 0 has its own family
  CHECK_THROWS_AS(EnsembleParams::laguerre(1, 0, 0), ValidationError);
  CHECK_THROWS_AS(EnsembleParams::jacobi(1, 0, -1.5, 2), ValidationError);
  CHECK_NOTHROW(EnsembleParams::theta_zero(0, 4));
  CHECK(alpha_sequence(2, 0.5, 3) == std::vector<double>{0.5, 2.5, 4.5});
  CHECK(beta_sequence(0.25, 3) == std::vector<double>{2.25, 1.25, 0.25});
}

TEST_CASE("params json round trip") {
  for (const auto& p : {EnsembleParams::laguerre(2, 0.5, 7), EnsembleParams::jacobi(1.5, 0.2, 1.1, 3),
                        EnsembleParams::theta_zero(0.3, 5)}) {
    const nlohmann::json j = p;
    const auto q = j.get<EnsembleParams>();
    CHECK(q.family == p.family);
    CHECK(q.theta == p.theta);
    CHECK(q.c == p.c);
    CHECK(q.c1 == p.c1);
    CHECK(q.c2 == p.c2);
    CHECK(q.n == p.n);
  }
}

namespace {

// Integral of exp(log_pdf) over x1 > x2 on (0, inf) or (0, 1).
double total_mass_n2(const EnsembleParams& p) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto pdf = [&](double a, double b) {
    const double v[2] = {a, b};
    const double d = std::exp(log_pdf(p, v).value);
    return std::isfinite(d) ? d : 0.0;  // integrable endpoint singularities
  };
  if (p.is_jacobi()) {
    auto inner = [&](double a) {
      if (a <= 0 || a >= 1) return 0.0;
      return ts.integrate([&](double b) { return (b <= 0 || b >= a) ? 0.0 : pdf(a, b); }, 0.0, a, 1e-10);
    };
    return ts.integrate(inner, 0.0, 1.0, 1e-9);
  }
  boost::math::quadrature::exp_sinh<double> es;
  auto inner = [&](double a) {
    if (a <= 0) return 0.0;
    return ts.integrate([&](double b) { return (b <= 0 || b >= a) ? 0.0 : pdf(a, b); }, 0.0, a, 1e-10);
  };
  return es.integrate(inner, 0.0, std::numeric_limits<double>::infinity(), 1e-9);
}

}  // namespace

TEST_CASE("joint densities are normalised (N = 2, by quadrature)") {
  CHECK(total_mass_n2(EnsembleParams::laguerre(2, 0.5, 2)) == doctest::Approx(1).epsilon(1e-6));
  CHECK(total_mass_n2(EnsembleParams::laguerre(0.7, -0.4, 2)) == doctest::Approx(1).epsilon(1e-6));
  CHECK(total_mass_n2(EnsembleParams::jacobi(2, 0.3, 0.5, 2)) == doctest::Approx(1).epsilon(1e-6));
  CHECK(total_mass_n2(EnsembleParams::theta_zero(0.5, 2)) == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("log_pdf flags coincident eigenvalues") {
  const double v[2] = {1.0, 1.0};
  const auto r = log_pdf(EnsembleParams::laguerre(1, 0, 2), v);
  CHECK(r.degenerate);
  CHECK(std::isinf(r.value));
}

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(7, 3), b(7, 3), c(7, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    CHECK(x == b.normal());
    differs = differs || x != c.normal();
  }
  CHECK(differs);
}

TEST_CASE("gamma sampler moments") {
  for (double shape : {0.3, 1.0, 2.5}) {
    RngStream r(11, 0);
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double g = r.gamma(shape);
      REQUIRE(g > 0);
      s += g;
      s2 += g * g;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    // Gamma(shape, 1): mean = var = shape
    CHECK(std::abs(mean - shape) < 5 * std::sqrt(shape / n));
    CHECK(var == doctest::Approx(shape).epsilon(0.03));
  }
}

TEST_CASE("complex normal has unit second moment") {
  RngStream r(5, 1);
  double s = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) s += std::norm(r.complex_normal());
  CHECK(s / n == doctest::Approx(1).epsilon(0.02));
}

TEST_CASE("hermitian eigenvalues of known matrices") {
  CMatrix a(3, 3);
  a(0, 0) = 2;
  a(0, 1) = cplx(1, -1);
  a(1, 0) = cplx(1, 1);
  a(1, 1) = 3;
  a(2, 2) = 1;
  const auto ev = hermitian_eigenvalues(a);  // block [[2,1-i],[1+i,3]] has eigenvalues 4, 1
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == doctest::Approx(4).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(1).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(1).epsilon(1e-14));

  // second-difference matrix: 2 - 2 cos(k pi / (n+1))
  const int n = 6;
  const auto t = tridiagonal_eigenvalues(std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0));
  for (int k = 1; k <= n; ++k) CHECK(t[n - k] == doctest::Approx(2 - 2 * std::cos(k * M_PI / (n + 1))).epsilon(1e-13));
}

TEST_CASE("gram spectrum matches eigenvalues of the gram matrix") {
  RngStream r(3, 0);
  const auto alpha = alpha_sequence(1.5, 0.25, 5);
  const CMatrix y = sample_Y(alpha, r);
  const auto a = gram_spectrum(y);
  const auto b = hermitian_eigenvalues(gram(y));
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  // upper triangular
  for (int i = 0; i < y.rows(); ++i)
    for (int j = 0; j < i; ++j) CHECK(y(i, j) == cplx(0, 0));
}

TEST_CASE("householder reduction is triangular and keeps every leading gram block") {
  const GaussianMask full{6, {5, 4, 3, 2}};
  for (int t = 0; t < 20; ++t) {
    RngStream r(9, t);
    const CMatrix x = sample_X(full, r);
    const CMatrix red = householder_reduce(x);
    REQUIRE(red.cols() == 4);
    for (int i = 0; i < red.rows(); ++i)
      for (int j = 0; j < std::min(i, red.cols()); ++j) CHECK(std::abs(red(i, j)) < 1e-14 * x.frobenius_norm());
    const CMatrix gx = gram(x), gr = gram(red);
    const double scale = x.frobenius_norm() * x.frobenius_norm();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(std::abs(gx(i, j) - gr(i, j)) < 1e-12 * scale);
  }
}

TEST_CASE("sample_X respects the mask") {
  const auto p = EnsembleParams::laguerre(2, 1, 3);
  const GaussianMask m = mask_for_params(p, 8);
  RngStream r(1, 0);
  const CMatrix x = sample_X(m, r);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      if (!m.allowed(i, j)) CHECK(x(i, j) == cplx(0, 0));
  CHECK_THROWS_AS(mask_for_params(EnsembleParams::laguerre(1.5, 0, 3), 10), ValidationError);
}

TEST_CASE("corner steps interlace") {
  for (double c : {0.0, -0.6, 1.3}) {
    const auto p = EnsembleParams::laguerre(1.7, c, 6);
    const auto alpha = alpha_sequence(p);
    for (int t = 0; t < 200; ++t) {
      RngStream r(21, t);
      std::vector<double> mu;
      for (int k = 0; k < p.n; ++k) {
        const auto lam = corner_step_laguerre(mu, alpha[k], r);
        REQUIRE(lam.size() == mu.size() + 1);
        for (size_t i = 0; i < mu.size(); ++i) {
          REQUIRE(lam[i] >= mu[i]);
          REQUIRE(mu[i] >= lam[i + 1]);
        }
        mu = lam;
      }
    }
  }
  const auto p = EnsembleParams::jacobi(0.8, -0.5, -0.3, 5);
  const auto alpha = alpha_sequence(p);
  for (int t = 0; t < 200; ++t) {
    RngStream r(22, t);
    std::vector<double> mu;
    for (int k = 0; k < p.n; ++k) {
      const auto lam = corner_step_jacobi(mu, alpha[k], p.beta() + p.n - k - 1, r);
      REQUIRE(lam.front() <= 1);
      REQUIRE(lam.back() >= 0);
      for (size_t i = 0; i < mu.size(); ++i) {
        REQUIRE(lam[i] >= mu[i]);
        REQUIRE(mu[i] >= lam[i + 1]);
      }
      mu = lam;
    }
  }
}

TEST_CASE("sampling is reproducible") {
  const auto p = EnsembleParams::jacobi(2, 0.5, 0.5, 4);
  for (auto m : {Method::matrix, Method::corner}) {
    const auto a = sample_spectra(p, m, 42, 50);
    const auto b = sample_spectra(p, m, 42, 50);
    CHECK(a == b);
    CHECK(a != sample_spectra(p, m, 43, 50));
    for (const auto& s : a) CHECK(std::is_sorted(s.rbegin(), s.rend()));
  }
}

TEST_CASE("mean trace matches the triangular construction") {
  // E tr Y^dagger Y = sum_j (alpha_j + 1) + N(N-1)/2: gamma diagonal, unit complex Gaussians above it
  const auto p = EnsembleParams::laguerre(2, 0.5, 4);
  const double expected = (1.5 + 3.5 + 5.5 + 7.5) + 6;
  for (auto m : {Method::matrix, Method::corner}) {
    const int R = 40000;
    const auto spectra = sample_spectra(p, m, 5, R);
    double s = 0, s2 = 0;
    for (const auto& sp : spectra) {
      double t = 0;
      for (double v : sp) t += v;
      s += t;
      s2 += t * t;
    }
    const double mean = s / R, se = std::sqrt((s2 / R - mean * mean) / R);
    CHECK(std::abs(mean - expected) < 4 * se);
  }
}

TEST_CASE("theta = 0 spectra stay positive") {
  const auto s = sample_spectra(EnsembleParams::theta_zero(0, 5), Method::corner, 1, 20);
  for (const auto& sp : s) CHECK(sp.back() > 0);
}
