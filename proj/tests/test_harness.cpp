#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mb/harness.hpp"
#include "mb/rng.hpp"

using namespace mb;

TEST_CASE("global rescaling") {
  const double l10[] = {10.0};
  CHECK(transform_spectrum(l10, EnsembleParams::laguerre(1, 0, 10))[0] == doctest::Approx(1));
  const double half[] = {0.5};
  CHECK(transform_spectrum(half, EnsembleParams::jacobi(2, 0, 0, 1))[0] == doctest::Approx(0.25));
  const double fifty[] = {50.0};
  CHECK(transform_spectrum(fifty, EnsembleParams::theta_zero(0, 100))[0] == doctest::Approx(0.5));
}

TEST_CASE("total variation") {
  Histogram a = Histogram::uniform(0, 1, 10), b = Histogram::uniform(0, 1, 10);
  for (double x : {0.05, 0.15, 0.15, 0.95}) a.add(x), b.add(x);
  CHECK(tv_distance(a, b) == 0);
  Histogram c = Histogram::uniform(0, 1, 10);
  for (double x : {0.55, 0.65}) c.add(x);
  CHECK(tv_distance(a, c) == doctest::Approx(1));

  // arcsine draws x = sin^2(pi u / 2) against the theta = 1 Jacobi density
  RngStream r(4, 0);
  Histogram h = Histogram::uniform(0, 1, 100);
  for (int i = 0; i < 100000; ++i) {
    const double s = std::sin(std::numbers::pi * r.uniform() / 2);
    h.add(s * s);
  }
  CHECK(tv_distance(h, jfc_density_fn(1)) < 0.02);
  double integral = 0;
  const auto d = h.densities();
  for (int i = 0; i < h.bins(); ++i) integral += d[i] * (h.edges[i + 1] - h.edges[i]);
  CHECK(integral == doctest::Approx(1));
}

TEST_CASE("two-sample KS") {
  std::vector<double> a, b, c;
  RngStream r(8, 0);
  for (int i = 0; i < 10000; ++i) {
    a.push_back(r.exponential());
    b.push_back(r.exponential() + 0.5);
    c.push_back(r.exponential());
  }
  const auto same = ks_two_sample(a, a);
  CHECK(same.d == 0);
  CHECK(same.p_value == doctest::Approx(1));
  CHECK(ks_two_sample(a, b).p_value < 1e-6);
  const auto null = ks_two_sample(a, c);
  CHECK(null.d < 0.03);
  CHECK(null.p_value > 1e-3);
  // D = 1.3581 / sqrt(n/2) sits at the 5% point of the Kolmogorov distribution
  std::vector<double> u(20000), v(20000);
  for (int i = 0; i < 20000; ++i) u[i] = i, v[i] = i + 20000 * 1.3581 / std::sqrt(10000.0) - 0.5;
  CHECK(ks_two_sample(u, v).p_value == doctest::Approx(0.05).epsilon(0.03));
}

TEST_CASE("moment estimates") {
  const double xs[] = {1, 2, 3};
  const auto m0 = moment_estimate(xs, 0);
  CHECK(m0.mean == 1);
  CHECK(m0.se == 0);
  const auto m1 = moment_estimate(xs, 1);
  CHECK(m1.mean == doctest::Approx(2));
  CHECK(m1.se == doctest::Approx(1 / std::sqrt(3.0)));  // jackknife SE of a mean = s / sqrt(n)
  const auto g = moment_estimate(std::vector<std::vector<double>>{{1, 3}, {2, 2}, {5, 1}}, 1);
  CHECK(g.mean == doctest::Approx((2 + 2 + 3) / 3.0));
}

TEST_CASE("report pass flag follows the comparison") {
  VerifyReport r;
  r.statistic = 1;
  r.threshold = 1;
  r.comparison = "<";
  r.decide();
  CHECK_FALSE(r.pass);
  r.comparison = "<=";
  r.decide();
  CHECK(r.pass);
  r.statistic = NAN;
  r.decide();
  CHECK_FALSE(r.pass);
  r.wall_time = 3;
  CHECK_FALSE(deterministic_json(r).contains("wall_time"));
  CHECK(nlohmann::json(r).contains("wall_time"));
}

TEST_CASE("run_verify is deterministic and never aborts") {
  CHECK_THROWS_AS(run_verify("no-such-suite", {1}), ValidationError);
  const auto a = run_verify("resolvent-equations", {3});
  const auto b = run_verify("resolvent-equations", {3});
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(deterministic_json(a[i]).dump() == deterministic_json(b[i]).dump());
    CHECK(a[i].pass);
  }
  VerifyConfig cfg;
  cfg.ks_replicas = 0;  // makes the KS check throw inside the suite
  const auto c = run_verify("householder-equivalence", {1}, cfg);
  bool recorded = false;
  for (const auto& r : c) recorded = recorded || (!r.pass && r.detail.contains("error"));
  CHECK(recorded);
}
