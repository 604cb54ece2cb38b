#include "mb/harness.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "mb/biortho.hpp"
#include "mb/ckernel.hpp"
#include "mb/hardedge.hpp"
#include "mb/parallel.hpp"
#include "mb/sampler.hpp"

namespace mb {

using nlohmann::json;

// ---- reports ----

void VerifyReport::decide() {
  if (!std::isfinite(statistic)) {
    pass = false;
    return;
  }
  if (comparison == "<")
    pass = statistic < threshold;
  else if (comparison == "<=")
    pass = statistic <= threshold;
  else if (comparison == ">")
    pass = statistic > threshold;
  else if (comparison == ">=")
    pass = statistic >= threshold;
  else
    throw ValidationError("VerifyReport: unknown comparison '" + comparison + "'");
}

json deterministic_json(const VerifyReport& r) {
  json j;
  j["name"] = r.name;
  j["statistic"] = r.statistic;
  j["threshold"] = r.threshold;
  j["comparison"] = r.comparison;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["replicas"] = r.replicas;
  j["detail"] = r.detail;
  return j;
}

void to_json(json& j, const VerifyReport& r) {
  j = deterministic_json(r);
  j["wall_time"] = r.wall_time;
}

// ---- statistics ----

Histogram Histogram::uniform(double lo, double hi, int bins) {
  if (!(hi > lo) || bins < 1) throw ValidationError("Histogram: need hi > lo and bins >= 1");
  Histogram h;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
  h.counts.assign(bins, 0.0);
  return h;
}

void Histogram::add(double x) {
  ++samples;
  if (!(x >= edges.front()) || !(x <= edges.back())) return;
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  int i = static_cast<int>(it - edges.begin()) - 1;
  i = std::clamp(i, 0, bins() - 1);
  counts[i] += 1;
}

void Histogram::add(std::span<const double> xs) {
  for (double x : xs) add(x);
}

std::vector<double> Histogram::densities() const {
  std::vector<double> d(counts.size());
  if (samples == 0) return d;
  for (size_t i = 0; i < d.size(); ++i) d[i] = counts[i] / (samples * (edges[i + 1] - edges[i]));
  return d;
}

double tv_distance(const Histogram& h, const DensityFn& d) {
  if (h.samples == 0) throw ValidationError("tv_distance: empty histogram");
  double s = 0, inside = 0;
  for (int i = 0; i < h.bins(); ++i) {
    const double a = std::max(h.edges[i], d.lo), b = std::min(h.edges[i + 1], d.hi);
    const double mass = b > a ? density_mass(d, a, b) : 0.0;
    const double prob = h.counts[i] / h.samples;
    inside += prob;
    s += std::abs(prob - mass);
  }
  return 0.5 * (s + (1 - inside));
}

double tv_distance(const Histogram& a, const Histogram& b) {
  if (a.edges != b.edges) throw ValidationError("tv_distance: histograms need identical edges");
  if (a.samples == 0 || b.samples == 0) throw ValidationError("tv_distance: empty histogram");
  double s = 0, ia = 0, ib = 0;
  for (int i = 0; i < a.bins(); ++i) {
    const double pa = a.counts[i] / a.samples, pb = b.counts[i] / b.samples;
    ia += pa;
    ib += pb;
    s += std::abs(pa - pb);
  }
  // out-of-range mass cannot be matched bin by bin
  return std::min(1.0, 0.5 * (s + (1 - ia) + (1 - ib)));
}

namespace {

// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  const double pi = std::numbers::pi;
  if (lambda < 1.18) {
    double s = 0;
    for (int k = 1; k < 50; ++k) {
      const double t = std::exp(-(2 * k - 1) * (2 * k - 1) * pi * pi / (8 * lambda * lambda));
      s += t;
      if (t < 1e-17 * s) break;
    }
    return std::clamp(1 - std::sqrt(2 * pi) / lambda * s, 0.0, 1.0);
  }
  double s = 0;
  for (int k = 1; k < 100; ++k) {
    const double t = 2 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    s += t;
    if (std::abs(t) < 1e-17) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = a.size(), nb = b.size();
  size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  KsResult r;
  r.d = d;
  r.p_value = kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
  return r;
}

namespace {

MomentEstimate jackknife_mean(const std::vector<double>& v) {
  const size_t n = v.size();
  if (n == 0) throw ValidationError("moment_estimate: empty sample");
  double s = 0;
  for (double x : v) s += x;
  MomentEstimate m;
  m.mean = s / n;
  if (n < 2) return m;
  double ss = 0;
  for (double x : v) {
    const double loo = (s - x) / (n - 1);
    ss += (loo - m.mean) * (loo - m.mean);
  }
  m.se = std::sqrt((n - 1.0) / n * ss);
  return m;
}

}  // namespace

MomentEstimate moment_estimate(std::span<const double> sample, double p) {
  std::vector<double> v(sample.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = p == 0 ? 1.0 : std::pow(sample[i], p);
  return jackknife_mean(v);
}

MomentEstimate moment_estimate(const std::vector<std::vector<double>>& groups, double p) {
  std::vector<double> v;
  for (const auto& g : groups) {
    if (g.empty()) throw ValidationError("moment_estimate: empty group");
    double s = 0;
    for (double x : g) s += p == 0 ? 1.0 : std::pow(x, p);
    v.push_back(s / g.size());
  }
  return jackknife_mean(v);
}

std::vector<double> transform_spectrum(std::span<const double> spectrum, const EnsembleParams& p) {
  p.validate();
  std::vector<double> out(spectrum.size());
  const double n = p.n;
  for (size_t i = 0; i < out.size(); ++i) {
    const double l = spectrum[i];
    switch (p.family) {
      case Family::LaguerreThetaZero: out[i] = l / n; break;
      case Family::Jacobi: out[i] = std::pow(l, p.theta); break;
      default: out[i] = std::pow(l / (n * p.theta), p.theta); break;
    }
  }
  return out;
}

const VerifyConfig& verify_config() {
  static const VerifyConfig cfg;
  return cfg;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"householder-equivalence", "corner-process",  "global-density-laguerre",
                                          "global-density-jacobi",   "theta0-limit",    "resolvent-equations",
                                          "kernel-oracle",           "biorthogonality", "hard-edge",
                                          "char-poly"};
  return s;
}

// ---- suites ----

namespace {

constexpr std::uint64_t kSecondSide = 1ull << 32;

using Clock = std::chrono::steady_clock;
using Reports = std::vector<VerifyReport>;

VerifyReport make_report(const std::string& name, double statistic, double threshold, const std::string& cmp,
                         std::uint64_t seed, int replicas, json detail = json::object()) {
  VerifyReport r;
  r.name = name;
  r.statistic = statistic;
  r.threshold = threshold;
  r.comparison = cmp;
  r.seed = seed;
  r.replicas = replicas;
  r.detail = std::move(detail);
  r.decide();
  return r;
}

// Runs fn, timing it; an exception becomes one failed report under `name`.
void guarded(Reports& out, const std::string& name, std::uint64_t seed, const std::function<Reports()>& fn) {
  const auto t0 = Clock::now();
  Reports rs;
  try {
    rs = fn();
  } catch (const std::exception& e) {
    VerifyReport r;
    r.name = name;
    r.statistic = std::numeric_limits<double>::quiet_NaN();
    r.seed = seed;
    r.detail["error"] = e.what();
    r.pass = false;
    rs = {r};
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  for (auto& r : rs) {
    r.wall_time = dt / rs.size();
    out.push_back(std::move(r));
  }
}

VerifyReport seed_fraction(const std::string& name, const Reports& per_seed, double need) {
  int ok = 0;
  json seeds = json::array();
  for (const auto& r : per_seed) {
    ok += r.pass ? 1 : 0;
    seeds.push_back({{"seed", r.seed}, {"pass", r.pass}, {"statistic", r.statistic}});
  }
  return make_report(name, per_seed.empty() ? 0.0 : double(ok) / per_seed.size(), need, ">=", 0,
                     per_seed.empty() ? 0 : per_seed.front().replicas, {{"seeds", seeds}});
}

double lambda_max(const std::vector<double>& s) { return s.front(); }

Reports householder_suite(const std::vector<std::uint64_t>& seeds, const VerifyConfig& cfg) {
  Reports out, per_seed;
  const auto p = EnsembleParams::laguerre(1, 0, 4);
  const GaussianMask mask = mask_for_params(p, 4);
  const auto alpha = alpha_sequence(p);
  const int R = cfg.ks_replicas;
  for (auto seed : seeds) {
    guarded(per_seed, "householder-equivalence/ks-lambda-max", seed, [&] {
      std::vector<double> xs(R), ys(R);
      parallel_for(R, [&](int r) {
        RngStream rx(seed, r);
        xs[r] = lambda_max(hermitian_eigenvalues(gram(sample_X(mask, rx))));
        RngStream ry(seed, kSecondSide + r);
        ys[r] = lambda_max(gram_spectrum(sample_Y(alpha, ry)));
      });
      const auto ks = ks_two_sample(xs, ys);
      return Reports{make_report("householder-equivalence/ks-lambda-max", ks.p_value, cfg.ks_alpha, ">=", seed, R,
                                 {{"D", ks.d}, {"params", p}, {"rows", mask.rows}, {"mask_alpha", mask.alpha}})};
    });
  }
  out.insert(out.end(), per_seed.begin(), per_seed.end());
  out.push_back(seed_fraction("householder-equivalence/seed-fraction", per_seed, cfg.ks_seed_fraction));
  const std::uint64_t s0 = seeds.empty() ? 0 : seeds.front();
  guarded(out, "householder-equivalence/gram-invariance", s0, [&] {
    GaussianMask full{5, {4, 3, 2}};
    double worst = 0;
    for (int t = 0; t < cfg.gram_trials; ++t) {
      RngStream rng(s0, 2 * kSecondSide + t);
      const CMatrix x = sample_X(full, rng);
      const CMatrix r = householder_reduce(x);
      const CMatrix gx = gram(x), gr = gram(r);
      const double nx = x.frobenius_norm();
      for (int n = 1; n <= 3; ++n) {
        double diff = 0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) diff += std::norm(gx(i, j) - gr(i, j));
        worst = std::max(worst, std::sqrt(diff) / (nx * nx));
      }
    }
    return Reports{make_report("householder-equivalence/gram-invariance", worst, cfg.gram_invariance, "<", s0,
                               cfg.gram_trials, {{"rows", 5}, {"cols", 3}})};
  });
  return out;
}

Reports corner_suite(const std::vector<std::uint64_t>& seeds, const VerifyConfig& cfg) {
  Reports out;
  const std::vector<std::pair<std::string, EnsembleParams>> cases{
      {"laguerre", EnsembleParams::laguerre(1, 0, 4)}, {"jacobi", EnsembleParams::jacobi(2, 0, 0, 3)}};
  const int R = cfg.ks_replicas;
  for (const auto& [tag, p] : cases) {
    Reports per_seed;
    const std::string name = "corner-process/" + tag + "/ks-lambda-max";
    for (auto seed : seeds) {
      guarded(per_seed, name, seed, [&] {
        const auto a = sample_spectra(p, Method::matrix, seed, R, 0);
        const auto b = sample_spectra(p, Method::corner, seed, R, kSecondSide);
        std::vector<double> xa(R), xb(R);
        for (int r = 0; r < R; ++r) xa[r] = lambda_max(a[r]), xb[r] = lambda_max(b[r]);
        const auto ks = ks_two_sample(xa, xb);
        return Reports{make_report(name, ks.p_value, cfg.ks_alpha, ">=", seed, R, {{"D", ks.d}, {"params", p}})};
      });
    }
    out.insert(out.end(), per_seed.begin(), per_seed.end());
    out.push_back(seed_fraction("corner-process/" + tag + "/seed-fraction", per_seed, cfg.ks_seed_fraction));
    const std::uint64_t s0 = seeds.empty() ? 0 : seeds.front();
    guarded(out, "corner-process/" + tag + "/interlacing", s0, [&] {
      const auto alpha = alpha_sequence(p);
      int violations = 0;
      const int trials = 1000;
      for (int t = 0; t < trials; ++t) {
        RngStream rng(s0, 2 * kSecondSide + t);
        std::vector<double> mu;
        for (int k = 0; k < p.n; ++k) {
          auto lam = p.is_jacobi() ? corner_step_jacobi(mu, alpha[k], p.beta() + p.n - k - 1, rng)
                                   : corner_step_laguerre(mu, alpha[k], rng);
          for (size_t i = 0; i < mu.size(); ++i)
            if (!(lam[i] >= mu[i] && mu[i] >= lam[i + 1])) ++violations;
          mu = std::move(lam);
        }
      }
      return Reports{make_report("corner-process/" + tag + "/interlacing", violations, 0, "<=", s0, trials,
                                 {{"params", p}})};
    });
  }
  return out;
}

struct GlobalCase {
  std::string tag;
  EnsembleParams p;
  DensityFn density;
  std::vector<std::pair<unsigned, double>> moments;  // (p, exact)
};

Reports global_suite(const GlobalCase& gc, const std::vector<std::uint64_t>& seeds, const VerifyConfig& cfg) {
  Reports out;
  const int R = cfg.global_replicas;
  for (auto seed : seeds) {
    guarded(out, gc.tag + "/tv", seed, [&] {
      const auto spectra = sample_spectra(gc.p, Method::matrix, seed, R);
      std::vector<std::vector<double>> xs;
      Histogram h = Histogram::uniform(gc.density.lo, gc.density.hi, cfg.histogram_bins);
      for (const auto& s : spectra) {
        xs.push_back(transform_spectrum(s, gc.p));
        h.add(xs.back());
      }
      Reports rs;
      rs.push_back(make_report(gc.tag + "/tv", tv_distance(h, gc.density), cfg.tv_max, "<", seed, R,
                               {{"params", gc.p}, {"bins", cfg.histogram_bins}}));
      for (const auto& [pw, exact] : gc.moments) {
        const auto m = moment_estimate(xs, pw);
        const double band = std::max(cfg.moment_se_band * m.se, cfg.moment_rel_band * exact);
        rs.push_back(make_report(gc.tag + "/moment-" + std::to_string(pw), std::abs(m.mean - exact), band, "<=", seed,
                                 R, {{"estimate", m.mean}, {"se", m.se}, {"exact", exact}, {"params", gc.p}}));
      }
      return rs;
    });
  }
  return out;
}

Reports resolvent_suite(const std::vector<std::uint64_t>& seeds, const VerifyConfig& cfg) {
  Reports out;
  for (auto seed : seeds) {
    for (int th = 1; th <= 3; ++th) {
      for (int fam = 0; fam < 2; ++fam) {
        const std::string name =
            std::string("resolvent-equations/") + (fam ? "jacobi" : "laguerre") + "/theta-" + std::to_string(th);
        guarded(out, name, seed, [&] {
          const double hi = fam ? 1.0 : fc_support(th);
          RngStream rng(seed, 3 * kSecondSide + 10 * th + fam);
          double worst = 0;
          json pts = json::array();
          for (int i = 0; i < cfg.resolvent_points; ++i) {
            const double re = -0.5 * hi + 2 * hi * rng.uniform();
            const double im = (0.1 + 0.9 * rng.uniform()) * hi * (rng.uniform() < 0.5 ? -1 : 1);
            const cplx z(re, im);
            const cplx r = fam ? resolvent_residual_jacobi(th, z) : resolvent_residual_laguerre(th, z);
            worst = std::max(worst, std::abs(r));
            pts.push_back({re, im});
          }
          return Reports{make_report(name, worst, cfg.resolvent_residual, "<", seed, cfg.resolvent_points,
                                     {{"theta", th}, {"points", pts}})};
        });
      }
    }
  }
  return out;
}

// integral over the family's domain
double integrate_domain(const EnsembleParams& p, const std::function<double(double)>& f) {
  if (p.is_jacobi()) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([&](double t) { return (t <= 0 || t >= 1) ? 0.0 : f(t); }, 0.0, 1.0, 1e-12);
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double split = 4.0 * p.n * std::max(1.0, p.theta) + 10;
  const double a = ts.integrate([&](double t) { return t <= 0 ? 0.0 : f(t); }, 0.0, split, 1e-12);
  const double b = es.integrate(f, split, std::numeric_limits<double>::infinity(), 1e-12);
  return a + b;
}

Reports kernel_suite(const VerifyConfig& cfg) {
  Reports out;
  struct Case {
    std::string tag;
    EnsembleParams p;
    std::vector<double> grid;
  };
  const std::vector<Case> cases{{"laguerre", EnsembleParams::laguerre(2, 0.5, 4), {0.5, 2.0, 5.0}},
                                {"jacobi", EnsembleParams::jacobi(2, 0, 1, 4), {0.2, 0.5, 0.8}}};
  for (const auto& cs : cases) {
    const std::string base = "kernel-oracle/" + cs.tag;
    guarded(out, base, 0, [&] {
      const FiniteKernel k(cs.p);
      const KernelOracle oracle(cs.p);
      double e_oracle = 0, e_quad = 0, e_proj = 0;
      for (double x : cs.grid)
        for (double y : cs.grid) {
          const double s = k(x, y);
          const double o = oracle(x, y);
          const double q = cs.p.is_jacobi() ? kernel_jacobi_quadrature(cs.p, x, y) : kernel_laguerre_quadrature(cs.p, x, y);
          e_oracle = std::max(e_oracle, std::abs(s - o) / std::abs(o));
          e_quad = std::max(e_quad, std::abs(q - s) / std::abs(s));
          const double proj = integrate_domain(cs.p, [&](double t) { return k(x, t) * k(t, y); });
          e_proj = std::max(e_proj, std::abs(proj - s) / std::abs(s));
        }
      const double trace = integrate_domain(cs.p, [&](double t) { return k(t, t); });
      const json d{{"params", cs.p}, {"grid", cs.grid}, {"oracle_condition", oracle.condition()}};
      return Reports{
          make_report(base + "/series-vs-bimoment", e_oracle, cfg.kernel_relative, "<", 0, 0, d),
          make_report(base + "/quadrature-vs-series", e_quad, cfg.kernel_relative, "<", 0, 0, d),
          make_report(base + "/projection", e_proj, cfg.projection_relative, "<", 0, 0, d),
          make_report(base + "/trace", std::abs(trace - cs.p.n) / cs.p.n, cfg.trace_relative, "<", 0, 0,
                      {{"params", cs.p}, {"trace", trace}}),
      };
    });
  }
  return out;
}

Reports biortho_suite(const VerifyConfig& cfg) {
  Reports out;
  const int kmax = cfg.biortho_kmax;
  guarded(out, "biorthogonality/exact", 0, [&] {
    const std::vector<EnsembleParams> ps{EnsembleParams::laguerre(2, 0, 1), EnsembleParams::laguerre(1, 0, 1),
                                         EnsembleParams::laguerre(3, 1, 1), EnsembleParams::jacobi(2, 0, 1, 1),
                                         EnsembleParams::jacobi(1, 0, 0, 1)};
    double worst = 0;
    int checks = 0;
    for (const auto& p : ps)
      for (int k = 1; k <= kmax; ++k)
        for (int m = 0; m < k; ++m) {
          if (!biortho_exact_path(p, m, k)) throw NumericalError("expected the integer path");
          worst = std::max(worst, std::abs(biortho_residual(p, k, m)));
          ++checks;
        }
    return Reports{make_report("biorthogonality/exact", worst, 0, "<=", 0, checks, {{"params", ps}, {"kmax", kmax}})};
  });
  guarded(out, "biorthogonality/fractional", 0, [&] {
    const std::vector<EnsembleParams> ps{EnsembleParams::laguerre(1.5, 0.25, 1), EnsembleParams::laguerre(0.5, 0, 1),
                                         EnsembleParams::jacobi(1.5, 0.25, 0.5, 1),
                                         EnsembleParams::jacobi(0.7, -0.3, 1.2, 1)};
    double worst = 0;
    for (const auto& p : ps)
      for (int k = 1; k <= kmax; ++k)
        for (int m = 0; m < k; ++m) worst = std::max(worst, std::abs(biortho_residual(p, k, m)));
    return Reports{make_report("biorthogonality/fractional", worst, cfg.biortho_fractional, "<", 0, 0,
                               {{"params", ps}, {"kmax", kmax}})};
  });
  guarded(out, "biorthogonality/h-positive", 0, [&] {
    const std::vector<EnsembleParams> ps{EnsembleParams::laguerre(2, 0, 1), EnsembleParams::laguerre(1.5, 0.25, 1),
                                         EnsembleParams::jacobi(2, 0, 1, 1), EnsembleParams::jacobi(1.5, 0.25, 0.5, 1)};
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& p : ps)
      for (int k = 0; k <= kmax; ++k) lo = std::min(lo, biortho_residual(p, k, k));
    return Reports{make_report("biorthogonality/h-positive", lo, 0, ">", 0, 0, {{"params", ps}})};
  });
  guarded(out, "biorthogonality/hypergeometric-ode", 0, [&] {
    double worst = 0;
    for (int th = 1; th <= 3; ++th)
      for (double c : {0.0, 0.5})
        for (int j = 0; j <= 8; ++j) {
          worst = std::max(worst, hypergeom_check(EnsembleParams::laguerre(th, c, 1), j));
          worst = std::max(worst, hypergeom_check(EnsembleParams::jacobi(th, c, 1.0, 1), j));
        }
    return Reports{make_report("biorthogonality/hypergeometric-ode", worst, cfg.hypergeom_residual, "<", 0, 0)};
  });
  return out;
}

// J_0/J_1 hard-edge kernel from the standard library's cylindrical Bessel functions.
double classical_bessel_kernel(double x, double y) {
  const double sx = std::sqrt(x), sy = std::sqrt(y);
  const double j0x = std::cyl_bessel_j(0.0, 2 * sx), j1x = std::cyl_bessel_j(1.0, 2 * sx);
  const double j0y = std::cyl_bessel_j(0.0, 2 * sy), j1y = std::cyl_bessel_j(1.0, 2 * sy);
  return (sx * j1x * j0y - sy * j0x * j1y) / (x - y);
}

Reports hard_edge_suite(const VerifyConfig& cfg) {
  Reports out;
  guarded(out, "hard-edge/series-vs-contour", 0, [&] {
    double worst = 0;
    const std::vector<std::pair<double, double>> pts{{0.5, 1.5}, {1.2, 0.7}};
    for (double th : {0.5, 1.0, 2.0, 3.0})
      for (double c : {0.0, 0.5, 2.0})
        for (const auto& [x, y] : pts) {
          const double a = borodin_kernel(c, th, x, y), b = borodin_kernel_contour(c, th, x, y);
          const double sc = std::sqrt(borodin_kernel(c, th, x, x) * borodin_kernel(c, th, y, y));
          worst = std::max(worst, std::abs(a - b) / sc);
        }
    return Reports{make_report("hard-edge/series-vs-contour", worst, cfg.bk_cross, "<", 0, 0,
                               {{"theta", {0.5, 1, 2, 3}}, {"c", {0, 0.5, 2}}, {"points", pts},
                                {"error", "relative to sqrt(K(x,x) K(y,y))"}})};
  });
  guarded(out, "hard-edge/bessel-reduction", 0, [&] {
    double worst = 0;
    for (auto [x, y] : std::vector<std::pair<double, double>>{{1, 2}, {0.5, 1.5}, {3, 0.2}}) {
      const double ref = classical_bessel_kernel(x, y);
      worst = std::max(worst, std::abs(borodin_kernel(0, 1, x, y) - ref) / std::abs(ref));
    }
    return Reports{make_report("hard-edge/bessel-reduction", worst, cfg.bessel_reduction, "<", 0, 0)};
  });
  guarded(out, "hard-edge/kz-identity", 0, [&] {
    double worst = 0;
    for (int th = 1; th <= 3; ++th)
      for (double c : {0.0, 0.5})
        for (auto [x, y] : std::vector<std::pair<double, double>>{{0.3, 0.8}, {0.9, 1.6}}) {
          const double t = 1.0 / th;
          const double lhs = std::pow(x, t - 1) * borodin_kernel(c, th, th * std::pow(x, t), th * std::pow(y, t));
          const double rhs = kz_kernel(kz_nu_for(c, th), y, x);
          worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    return Reports{make_report("hard-edge/kz-identity", worst, cfg.identity, "<", 0, 0)};
  });
  guarded(out, "hard-edge/theta-inversion", 0, [&] {
    double worst = 0;
    for (auto [th, al] : std::vector<std::pair<double, double>>{{2, 0.5}, {3, 0}, {0.5, 0.2}})
      for (auto [x, y] : std::vector<std::pair<double, double>>{{0.8, 1.7}, {1.5, 0.4}}) {
        const double alp = (al + 1) / th - 1;
        const double lhs = std::pow(x, 1 / th - 1) / th * borodin_kernel(al, th, std::pow(x, 1 / th), std::pow(y, 1 / th));
        const double rhs = std::pow(x / y, alp) * borodin_kernel(alp, 1 / th, y, x);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      }
    return Reports{make_report("hard-edge/theta-inversion", worst, cfg.identity, "<", 0, 0)};
  });
  const std::vector<int> ns{25, 50, 100};
  const std::vector<std::pair<double, double>> pts{{0.5, 1.5}, {1.0, 1.0}, {2.0, 0.7}};
  struct Conv {
    std::string tag;
    EnsembleParams p;
    bool final_check;
  };
  for (const auto& cv : std::vector<Conv>{{"laguerre-theta1-c0", EnsembleParams::laguerre(1, 0, 2), true},
                                          {"laguerre-theta2-c1", EnsembleParams::laguerre(2, 1, 2), false},
                                          {"jacobi-theta1-c0", EnsembleParams::jacobi(1, 0, 0, 2), true}}) {
    guarded(out, "hard-edge/convergence/" + cv.tag, 0, [&] {
      VerifyReport r = hard_edge_convergence(cv.p, ns, pts);
      r.name = "hard-edge/convergence/" + cv.tag + "/monotone";
      Reports rs{r};
      if (cv.final_check)
        rs.push_back(make_report("hard-edge/convergence/" + cv.tag + "/final-error", r.detail["final_error"].get<double>(),
                                 cfg.hard_edge_final, "<", 0, 0, r.detail));
      return rs;
    });
  }
  return out;
}

Reports charpoly_suite(const std::vector<std::uint64_t>& seeds, const VerifyConfig& cfg) {
  Reports out;
  struct Case {
    std::string tag;
    EnsembleParams p;
    double x;
  };
  const std::vector<Case> cases{{"laguerre-n3-theta2", EnsembleParams::laguerre(2, 0, 3), 5.0},
                                {"laguerre-n1-theta1", EnsembleParams::laguerre(1, 0, 1), 2.5},
                                {"jacobi-n2-theta1", EnsembleParams::jacobi(1, 0, 0, 2), 0.3}};
  for (auto seed : seeds)
    for (const auto& cs : cases) {
      const std::string name = "char-poly/" + cs.tag;
      guarded(out, name, seed, [&] {
        const auto mc = char_poly_mc(cs.p, cs.x, cfg.charpoly_replicas, seed);
        const double q = family_q(cs.p, cs.p.n).eval(cs.x);
        return Reports{make_report(name, std::abs(mc.mean - q) / mc.se, cfg.charpoly_se_band, "<=", seed,
                                   cfg.charpoly_replicas,
                                   {{"params", cs.p}, {"x", cs.x}, {"mean", mc.mean}, {"se", mc.se}, {"q_N", q}})};
      });
    }
  return out;
}

}  // namespace

std::vector<VerifyReport> run_verify(const std::string& suite, const std::vector<std::uint64_t>& seeds,
                                     const VerifyConfig& cfg) {
  if (seeds.empty()) throw ValidationError("run_verify: need at least one seed");
  if (suite == "all") {
    Reports all;
    for (const auto& s : verify_suites()) {
      auto r = run_verify(s, seeds, cfg);
      all.insert(all.end(), r.begin(), r.end());
    }
    return all;
  }
  if (suite == "householder-equivalence") return householder_suite(seeds, cfg);
  if (suite == "corner-process") return corner_suite(seeds, cfg);
  if (suite == "global-density-laguerre") {
    const GlobalCase gc{"global-density-laguerre", EnsembleParams::laguerre(2, 0, cfg.global_n), fc_density_fn(2),
                        {{1, fc_moment(2, 1)}, {2, fc_moment(2, 2)}, {3, fc_moment(2, 3)}}};
    return global_suite(gc, seeds, cfg);
  }
  if (suite == "global-density-jacobi") {
    const GlobalCase gc{"global-density-jacobi", EnsembleParams::jacobi(2, 0, 0, cfg.global_n), jfc_density_fn(2),
                        {{1, jfc_moment(2, 1)}}};
    Reports out = global_suite(gc, seeds, cfg);
    guarded(out, "global-density-jacobi/arcsine-value", 0, [&] {
      const double v = jfc_density(1, 0.5);
      return Reports{make_report("global-density-jacobi/arcsine-value", std::abs(v - 2 / std::numbers::pi),
                                 cfg.arcsine_value, "<", 0, 0, {{"value", v}})};
    });
    return out;
  }
  if (suite == "theta0-limit") {
    Reports out;
    guarded(out, "theta0-limit/mass", 0, [&] {
      const double m = density_mass(theta0_density_fn(), 0, std::numbers::e);
      return Reports{make_report("theta0-limit/mass", std::abs(m - 1), cfg.theta0_mass, "<", 0, 0, {{"mass", m}})};
    });
    const GlobalCase gc{"theta0-limit", EnsembleParams::theta_zero(0, cfg.global_n), theta0_density_fn(), {}};
    const Reports mc = global_suite(gc, seeds, cfg);
    out.insert(out.end(), mc.begin(), mc.end());
    return out;
  }
  if (suite == "resolvent-equations") return resolvent_suite(seeds, cfg);
  if (suite == "kernel-oracle") return kernel_suite(cfg);
  if (suite == "biorthogonality") return biortho_suite(cfg);
  if (suite == "hard-edge") return hard_edge_suite(cfg);
  if (suite == "char-poly") return charpoly_suite(seeds, cfg);
  throw ValidationError("run_verify: unknown suite '" + suite + "'");
}

}  // namespace mb
