#include "mb/biortho.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

#include "mb/sampler.hpp"

namespace mb {

using boost::multiprecision::cpp_int;
using Quad = boost::multiprecision::cpp_bin_float_quad;

namespace {

double log_choose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

// log (a)_p = lgamma(a + p) - lgamma(a)
double log_poch(double a, double p) { return std::lgamma(a + p) - std::lgamma(a); }

bool is_nonneg_int(double v) { return v >= 0 && v == std::floor(v) && v < 1e6; }

// Neumaier sum after sorting by magnitude.
double compensated_sum(std::vector<double> v) {
  std::sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  double s = 0, comp = 0;
  for (double x : v) {
    const double t = s + x;
    comp += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return s + comp;
}

PolyCoeffs finish(std::vector<double> log_abs, std::vector<int> sign) {
  PolyCoeffs q;
  const int j = static_cast<int>(log_abs.size()) - 1;
  log_abs[j] = 0;
  sign[j] = 1;
  q.coeff.resize(j + 1);
  for (int l = 0; l <= j; ++l) q.coeff[l] = sign[l] * std::exp(log_abs[l]);
  q.coeff[j] = 1.0;
  q.log_abs = std::move(log_abs);
  q.sign = std::move(sign);
  return q;
}

cpp_int rising(cpp_int a, long p) {
  cpp_int r = 1;
  for (long i = 0; i < p; ++i) r *= a + i;
  return r;
}

cpp_int choose(long n, long k) {
  cpp_int r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double PolyCoeffs::eval(double x) const {
  if (x == 0) return coeff.empty() ? 0.0 : coeff[0];
  std::vector<double> terms(coeff.size());
  const double lx = std::log(std::abs(x));
  for (size_t l = 0; l < coeff.size(); ++l) {
    if (coeff[l] == 0) continue;
    const int s = sign[l] * ((x < 0 && (l % 2)) ? -1 : 1);
    terms[l] = s * std::exp(log_abs[l] + l * lx);
  }
  return compensated_sum(std::move(terms));
}

PolyCoeffs laguerre_q(double theta, double c, int j) {
  if (!(theta > 0)) throw ValidationError("laguerre_q: theta must be > 0");
  if (!(c > -1)) throw ValidationError("laguerre_q: c must be > -1");
  if (j < 0) throw ValidationError("laguerre_q: j must be >= 0");
  std::vector<double> la(j + 1);
  std::vector<int> sg(j + 1);
  const double top = std::lgamma(theta * j + c + 1);
  for (int l = 0; l <= j; ++l) {
    la[l] = top + log_choose(j, l) - std::lgamma(theta * l + c + 1);
    sg[l] = ((j + l) % 2) ? -1 : 1;
  }
  return finish(std::move(la), std::move(sg));
}

PolyCoeffs jacobi_q(double theta, double c1, double c2, int j) {
  if (!(theta > 0)) throw ValidationError("jacobi_q: theta must be > 0");
  if (!(c1 > -1) || !(c2 > -1)) throw ValidationError("jacobi_q: exponents must be > -1");
  if (j < 0) throw ValidationError("jacobi_q: j must be >= 0");
  const double delta = 1 + c1 + c2 + j;
  std::vector<double> la(j + 1);
  std::vector<int> sg(j + 1);
  const double top = log_poch(1 + c1, theta * j) - log_poch(delta, theta * j);
  for (int l = 0; l <= j; ++l) {
    la[l] = top + log_choose(j, l) + log_poch(delta, theta * l) - log_poch(1 + c1, theta * l);
    sg[l] = ((j + l) % 2) ? -1 : 1;
  }
  return finish(std::move(la), std::move(sg));
}

PolyCoeffs family_q(const EnsembleParams& p, int j) {
  switch (p.family) {
    case Family::Laguerre: return laguerre_q(p.theta, p.c, j);
    case Family::Jacobi: return jacobi_q(p.theta, p.c1, p.c2, j);
    default: throw ValidationError("biorthogonal polynomials need theta > 0");
  }
}

double log_bimoment(const EnsembleParams& p, int j, int k) {
  p.validate();
  if (j < 0 || k < 0) throw ValidationError("bimoment: negative index");
  if (p.family == Family::Jacobi) {
    const double a = p.c1 + j + p.theta * k + 1, b = p.c2 + 1;
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  }
  return std::lgamma(p.c + j + p.theta * k + 1);
}

double bimoment(const EnsembleParams& p, int j, int k) { return std::exp(log_bimoment(p, j, k)); }

bool biortho_exact_path(const EnsembleParams& p, int m, int k) {
  if (m >= k || !is_nonneg_int(p.theta) || p.theta == 0) return false;
  if (p.family == Family::Jacobi) return is_nonneg_int(p.c1) && is_nonneg_int(p.c2);
  return p.family == Family::Laguerre && is_nonneg_int(p.c);
}

double biortho_residual(const EnsembleParams& p, int k, int m) {
  p.validate();
  if (k < 0 || m < 0 || m > k) throw ValidationError("biortho_residual: need 0 <= m <= k");
  if (biortho_exact_path(p, m, k)) {
    // Each summand, up to a common positive factor, is (-1)^l binom(k,l) P(l)
    // with P a polynomial in l of degree < k.
    const long th = static_cast<long>(p.theta);
    cpp_int sum = 0, biggest = 0;
    for (long l = 0; l <= k; ++l) {
      cpp_int t;
      if (p.family == Family::Jacobi) {
        const long c1 = static_cast<long>(p.c1), c2 = static_cast<long>(p.c2);
        t = choose(k, l) * rising(1 + c1 + th * l, m) * rising(c1 + c2 + m + 2 + th * l, k - m - 1);
      } else {
        const long c = static_cast<long>(p.c);
        t = choose(k, l) * rising(th * l + c + 1, m);
      }
      if (t > biggest) biggest = t;
      sum += (l % 2) ? -t : t;
    }
    if (sum == 0) return 0.0;
    return static_cast<double>(Quad(sum) / Quad(biggest));
  }
  const PolyCoeffs q = family_q(p, k);
  std::vector<double> logs(k + 1);
  double mx = -INFINITY;
  for (int l = 0; l <= k; ++l) mx = std::max(mx, logs[l] = q.log_abs[l] + log_bimoment(p, m, l));
  if (m == k) {
    std::vector<double> t(k + 1);
    for (int l = 0; l <= k; ++l) t[l] = q.sign[l] * std::exp(logs[l] - mx);
    return compensated_sum(std::move(t)) * std::exp(mx);
  }
  std::vector<double> t(k + 1);
  for (int l = 0; l <= k; ++l) t[l] = q.sign[l] * std::exp(logs[l] - mx);
  return compensated_sum(std::move(t));
}

double hypergeom_check(const EnsembleParams& p, int j) {
  p.validate();
  if (!is_nonneg_int(p.theta) || p.theta < 1) throw ValidationError("hypergeom_check: theta must be a positive integer");
  if (j < 0) throw ValidationError("hypergeom_check: j must be >= 0");
  const int th = static_cast<int>(p.theta);
  std::vector<double> a{-double(j)}, b;
  std::vector<double> f;  // coefficients of f(t) in t
  const PolyCoeffs q = family_q(p, j);
  if (p.family == Family::Jacobi) {
    const double delta = 1 + p.c1 + p.c2 + j;
    for (int n = 0; n < th; ++n) a.push_back((delta + n) / th);
    for (int n = 1; n <= th; ++n) b.push_back((p.c1 + n) / th);
    f = q.coeff;
  } else {
    for (int n = 1; n <= th; ++n) b.push_back((p.c + n) / th);
    f.resize(j + 1);
    // f(t) = q_j(theta^theta t)
    for (int l = 0; l <= j; ++l) f[l] = q.sign[l] * std::exp(q.log_abs[l] + l * th * std::log(double(th)));
  }
  // t prod(D + a_n) f  versus  D prod(D + b_n - 1) f, with D t^l = l t^l
  std::vector<double> lhs(j + 2, 0.0), rhs(j + 1, 0.0);
  for (int l = 0; l <= j; ++l) {
    double pa = f[l], pb = f[l] * l;
    for (double an : a) pa *= l + an;
    for (double bn : b) pb *= l + bn - 1;
    lhs[l + 1] = pa;
    rhs[l] = pb;
  }
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.05 * (i + 1);
    std::vector<double> terms;
    double scale = 0, tp = 1;
    for (int l = 0; l <= j + 1; ++l) {
      const double d = lhs[l] - (l <= j ? rhs[l] : 0.0);
      terms.push_back(d * tp);
      scale += (std::abs(lhs[l]) + (l <= j ? std::abs(rhs[l]) : 0.0)) * tp;
      tp *= t;
    }
    if (scale == 0) continue;
    worst = std::max(worst, std::abs(compensated_sum(terms)) / scale);
  }
  return worst;
}

McEstimate char_poly_mc(const EnsembleParams& p, double x, int replicas, std::uint64_t seed) {
  if (replicas < 2) throw ValidationError("char_poly_mc: need at least 2 replicas");
  const auto spectra = sample_spectra(p, Method::matrix, seed, replicas);
  double s = 0, s2 = 0;
  for (const auto& sp : spectra) {
    double v = 1;
    for (double l : sp) v *= x - std::pow(l, p.theta);
    s += v;
    s2 += v * v;
  }
  McEstimate r;
  r.mean = s / replicas;
  const double var = (s2 - replicas * r.mean * r.mean) / (replicas - 1);
  r.se = std::sqrt(std::max(var, 0.0) / replicas);
  return r;
}

struct KernelOracle::Impl {
  int n = 0;
  std::vector<Quad> binv;  // row-major (k, j)
};

KernelOracle::KernelOracle(const EnsembleParams& p) : p_(p), impl_(std::make_unique<Impl>()) {
  p.validate();
  if (p.family == Family::LaguerreThetaZero) throw ValidationError("kernel_oracle: theta must be > 0");
  const int n = p.n;
  if (n > 12) throw NumericalError("kernel_oracle: N > 12 refused (bimoment matrix too ill-conditioned)");
  std::vector<Quad> b(n * n), inv(n * n, Quad(0));
  const Quad th(p.theta);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (p.family == Family::Jacobi) {
        const Quad a = Quad(p.c1) + j + th * k + 1, bb = Quad(p.c2) + 1;
        b[j * n + k] = exp(lgamma(a) + lgamma(bb) - lgamma(a + bb));
      } else {
        b[j * n + k] = exp(lgamma(Quad(p.c) + j + th * k + 1));
      }
    }
  // row then column equilibration
  std::vector<Quad> rs(n), cs(n);
  for (int j = 0; j < n; ++j) {
    Quad m = 0;
    for (int k = 0; k < n; ++k) m = std::max(m, Quad(abs(b[j * n + k])));
    rs[j] = 1 / m;
  }
  for (int k = 0; k < n; ++k) {
    Quad m = 0;
    for (int j = 0; j < n; ++j) m = std::max(m, Quad(abs(b[j * n + k] * rs[j])));
    cs[k] = 1 / m;
  }
  std::vector<Quad> e(n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) e[j * n + k] = b[j * n + k] * rs[j] * cs[k];
  auto norm1 = [n](const std::vector<Quad>& m) {
    Quad best = 0;
    for (int k = 0; k < n; ++k) {
      Quad s = 0;
      for (int j = 0; j < n; ++j) s += abs(m[j * n + k]);
      best = std::max(best, s);
    }
    return best;
  };
  // Gauss-Jordan with partial pivoting
  std::vector<Quad> a = e;
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (abs(a[r * n + col]) > abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0) throw NumericalError("kernel_oracle: singular bimoment matrix");
    if (piv != col)
      for (int k = 0; k < n; ++k) {
        std::swap(a[piv * n + k], a[col * n + k]);
        std::swap(inv[piv * n + k], inv[col * n + k]);
      }
    const Quad d = a[col * n + col];
    for (int k = 0; k < n; ++k) {
      a[col * n + k] /= d;
      inv[col * n + k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Quad f = a[r * n + col];
      if (f == 0) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  cond_ = static_cast<double>(norm1(e) * norm1(inv));
  if (!(cond_ <= 1e24)) {
    std::ostringstream os;
    os << "kernel_oracle: condition estimate " << cond_ << " exceeds 1e24 (N = " << n << ")";
    throw NumericalError(os.str());
  }
  // B^{-1} = C E^{-1} R, stored as (k, j)
  impl_->n = n;
  impl_->binv.resize(n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) impl_->binv[k * n + j] = cs[k] * inv[k * n + j] * rs[j];
}

KernelOracle::~KernelOracle() = default;
KernelOracle::KernelOracle(KernelOracle&&) noexcept = default;

double KernelOracle::operator()(double x, double y) const {
  const int n = impl_->n;
  if (!(x > 0) || !(y > 0)) throw ValidationError("kernel_oracle: x, y must be > 0");
  if (p_.family == Family::Jacobi && !(x < 1 && y < 1)) throw ValidationError("kernel_oracle: x, y must be < 1");
  const Quad qx(x), qy(y);
  const Quad yt = pow(qy, Quad(p_.theta));
  Quad s = 0, yk = 1;
  for (int k = 0; k < n; ++k) {
    Quad inner = 0, xj = 1;
    for (int j = 0; j < n; ++j) {
      inner += impl_->binv[k * n + j] * xj;
      xj *= qx;
    }
    s += inner * yk;
    yk *= yt;
  }
  Quad logw;
  if (p_.family == Family::Jacobi)
    logw = Quad(p_.c1) * log(qx * qy) + Quad(p_.c2) * log((1 - qx) * (1 - qy));
  else
    logw = Quad(p_.c) * log(qx * qy) - qx - qy;
  return static_cast<double>(s * exp(logw / 2));
}

}  // namespace mb
