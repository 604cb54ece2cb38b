#include "mb/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "mb/parallel.hpp"

namespace mb {

void GaussianMask::validate() const {
  const int n = cols();
  if (n < 1) throw ValidationError("mask: no columns");
  if (rows < n) throw ValidationError("mask: need M >= N");
  int prev = 0;
  for (int k = 0; k < n; ++k) {
    if (alpha[k] < 0) throw ValidationError("mask: alpha must be nonnegative integers");
    const int bound = k + 1 + alpha[k];
    if (bound < prev) throw ValidationError("mask: column bounds k+alpha_k must be nondecreasing");
    prev = bound;
  }
  if (prev > rows) throw ValidationError("mask: N + alpha_N exceeds M");
}

GaussianMask mask_for_params(const EnsembleParams& p, int rows) {
  p.validate();
  if (p.family == Family::Jacobi) throw ValidationError("mask: Laguerre families only");
  const double c = p.c, th = p.theta;
  if (c < 0 || c != std::floor(c) || th != std::floor(th))
    throw ValidationError("mask: theta and c must be nonnegative integers");
  GaussianMask m;
  m.rows = rows;
  m.alpha.resize(p.n);
  for (int k = 0; k < p.n; ++k) m.alpha[k] = static_cast<int>(th * k + c);
  try {
    m.validate();
    return m;
  } catch (const ValidationError&) {
  }
  std::reverse(m.alpha.begin(), m.alpha.end());
  m.validate();
  return m;
}

CMatrix sample_Y(std::span<const double> alpha, RngStream& rng) {
  const int n = static_cast<int>(alpha.size());
  for (double a : alpha)
    if (!(a > -1)) throw ValidationError("sample_Y: alpha must be > -1");
  CMatrix y(n, n);
  for (int i = 0; i < n; ++i) {
    y(i, i) = std::sqrt(rng.gamma(alpha[i] + 1));
    for (int j = i + 1; j < n; ++j) y(i, j) = rng.complex_normal();
  }
  return y;
}

CMatrix sample_X(const GaussianMask& mask, RngStream& rng) {
  mask.validate();
  CMatrix x(mask.rows, mask.cols());
  for (int i = 0; i < mask.rows; ++i)
    for (int k = 0; k < mask.cols(); ++k)
      if (mask.allowed(i, k)) x(i, k) = rng.complex_normal();
  return x;
}

CMatrix householder_reduce(const CMatrix& xin) {
  const int m = xin.rows(), n = xin.cols();
  if (m < n) throw ValidationError("householder_reduce: need M >= N");
  CMatrix x = xin;
  std::vector<cplx> w(m);
  for (int l = 0; l < n; ++l) {
    double tail = 0;  // sum_{j>l} |x_jl|^2
    for (int j = l + 1; j < m; ++j) tail += std::norm(x(j, l));
    const double ax0 = std::abs(x(l, l));
    if (tail == 0 && ax0 == 0) {
      // zero column: u = e_1, U = I - 2 e_1 e_1^dagger negates the row
      for (int k = l; k < n; ++k) x(l, k) = -x(l, k);
      continue;
    }
    if (ax0 != 0) {
      // phase rotation of row l so the pivot is real nonnegative
      const cplx ph = std::conj(x(l, l)) / ax0;
      for (int k = l; k < n; ++k) x(l, k) *= ph;
      x(l, l) = ax0;
    }
    if (tail == 0) continue;
    const double nrm = std::sqrt(ax0 * ax0 + tail);
    // w = x - |x| e_1 with the stable first component
    w[l] = -tail / (ax0 + nrm);
    for (int j = l + 1; j < m; ++j) w[j] = x(j, l);
    double wn2 = std::norm(w[l]) + tail;
    for (int k = l; k < n; ++k) {
      cplx s = 0;
      for (int j = l; j < m; ++j) s += std::conj(w[j]) * x(j, k);
      s *= 2.0 / wn2;
      for (int j = l; j < m; ++j) x(j, k) -= s * w[j];
    }
    x(l, l) = nrm;
    for (int j = l + 1; j < m; ++j) x(j, l) = 0;
  }
  CMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) r(i, k) = x(i, k);
  return r;
}

namespace {

// Root of an increasing function on (lo, hi); f(lo+) < 0 < f(hi-).
template <class F>
double bisect_root(const F& f, double lo, double hi) {
  for (int it = 0; it < 4000; ++it) {
    double mid;
    if (lo > 0 && hi > 4 * lo)
      mid = std::sqrt(lo * hi);
    else if (lo == 0 && hi > 1e-300)
      mid = 0.5 * hi;
    else
      mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) return mid;
    if (f(mid) < 0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * hi) return 0.5 * (lo + hi);
  }
  throw NumericalError("secular equation: bisection did not converge in [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
}

void check_descending(std::span<const double> mu, double lo, double hi, const char* who) {
  for (size_t k = 0; k < mu.size(); ++k) {
    if (!(mu[k] > lo && mu[k] < hi)) throw ValidationError(std::string(who) + ": mu outside domain");
    if (k > 0 && !(mu[k] < mu[k - 1])) throw ValidationError(std::string(who) + ": mu not strictly descending");
  }
}

}  // namespace

std::vector<double> corner_step_laguerre(std::span<const double> mu, double alpha_n, RngStream& rng) {
  if (!(alpha_n > -1)) throw ValidationError("corner_step_laguerre: alpha_n must be > -1");
  check_descending(mu, 0.0, INFINITY, "corner_step_laguerre");
  const int m = static_cast<int>(mu.size());
  std::vector<double> z(m);
  double zsum = 0;
  for (int k = 0; k < m; ++k) zsum += (z[k] = rng.exponential());
  const double zn = rng.gamma(alpha_n + 1);
  if (m == 0) return {zn};
  auto f = [&](double lam) {
    double s = 1.0 - zn / lam;
    for (int k = 0; k < m; ++k) s += z[k] / (mu[k] - lam);
    return s;
  };
  std::vector<double> out(m + 1);
  out[0] = bisect_root(f, mu[0], mu[0] + zn + zsum);
  for (int k = 1; k < m; ++k) out[k] = bisect_root(f, mu[k], mu[k - 1]);
  out[m] = bisect_root(f, 0.0, mu[m - 1]);
  return out;
}

std::vector<double> corner_step_jacobi(std::span<const double> mu, double alpha_n, double beta_n,
                                       RngStream& rng) {
  if (!(alpha_n > -1) || !(beta_n > -1)) throw ValidationError("corner_step_jacobi: exponents must be > -1");
  check_descending(mu, 0.0, 1.0, "corner_step_jacobi");
  const int m = static_cast<int>(mu.size());
  std::vector<double> mt(m), b(m);
  for (int k = 0; k < m; ++k) mt[k] = mu[k] / (1 - mu[k]);
  for (int k = 0; k < m; ++k) b[k] = (1 + mt[k]) * rng.exponential();
  const double eta2 = rng.gamma(alpha_n + 1);
  const double zeta2 = rng.gamma(beta_n + 1);
  const double a = eta2 / zeta2;
  double bsum = 0;
  for (double& v : b) bsum += (v /= zeta2);
  auto to_unit = [](double t) { return t / (1 + t); };
  if (m == 0) return {to_unit(a)};
  auto g = [&](double t) {
    double s = t - a;
    for (int k = 0; k < m; ++k) s += b[k] * t / (mt[k] - t);
    return s;
  };
  double hi = mt[0] + a + bsum + std::sqrt(bsum * mt[0]);
  while (!(g(hi) > 0)) hi = mt[0] + 2 * (hi - mt[0]);
  std::vector<double> out(m + 1);
  out[0] = to_unit(bisect_root(g, mt[0], hi));
  for (int k = 1; k < m; ++k) out[k] = to_unit(bisect_root(g, mt[k], mt[k - 1]));
  out[m] = to_unit(bisect_root(g, 0.0, mt[m - 1]));
  return out;
}

namespace {

std::vector<double> jacobi_matrix_spectrum(const EnsembleParams& p, RngStream& rng) {
  const int n = p.n;
  const auto alpha = alpha_sequence(p);
  const auto beta = beta_sequence(p.beta(), n);
  CMatrix y = sample_Y(alpha, rng);
  CMatrix z = sample_Y(beta, rng);
  // Q = Y Z^{-1}; eigenvalues mu of Q^dagger Q give lambda = mu / (1 + mu)
  CMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = y(i, j);
      for (int k = 0; k < j; ++k) s -= q(i, k) * z(k, j);
      q(i, j) = s / z(j, j);
    }
  auto mu = gram_spectrum(q);
  for (double& v : mu) v = v / (1 + v);
  return mu;
}

}  // namespace

std::vector<double> sample_spectrum(const EnsembleParams& p, Method method, RngStream& rng) {
  p.validate();
  const auto alpha = alpha_sequence(p);
  if (method == Method::matrix) {
    if (p.family == Family::Jacobi) return jacobi_matrix_spectrum(p, rng);
    return gram_spectrum(sample_Y(alpha, rng));
  }
  std::vector<double> mu;
  for (int k = 1; k <= p.n; ++k) {
    if (p.family == Family::Jacobi)
      mu = corner_step_jacobi(mu, alpha[k - 1], p.beta() + p.n - k, rng);
    else
      mu = corner_step_laguerre(mu, alpha[k - 1], rng);
  }
  return mu;
}

std::vector<std::vector<double>> sample_spectra(const EnsembleParams& p, Method method,
                                                std::uint64_t seed, int replicas,
                                                std::uint64_t first_id) {
  if (replicas < 0) throw ValidationError("replicas must be >= 0");
  std::vector<std::vector<double>> out(replicas);
  parallel_for(replicas, [&](int r) {
    RngStream rng(seed, first_id + r);
    out[r] = sample_spectrum(p, method, rng);
  });
  return out;
}

}  // namespace mb
