#include "mb/ckernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "mb/densities.hpp"
#include "mb/parallel.hpp"
#include "mb/special.hpp"
#include "mp_real.hpp"

namespace mb {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2e = std::numbers::log2e;

bool is_integer(double v) { return v == std::floor(v); }

std::vector<double> kernel_alphas(const EnsembleParams& p, bool& perturbed) {
  std::vector<double> a = alpha_sequence(p.theta, p.alpha_base(), p.n);
  perturbed = false;
  if (p.n > 1 && p.theta < 1e-8) {
    // Coincident exponents: spread them to c + 1e-6 j, which stays above -1.
    for (int j = 0; j < p.n; ++j) a[j] = p.alpha_base() + 1e-6 * j;
    perturbed = true;
    log_warning("kernel: coincident exponents perturbed by multiples of 1e-6");
  }
  return a;
}

struct Scratch {
  double log2_result;
  double log2_max_term;
};

}  // namespace

struct FiniteKernel::Impl {
  EnsembleParams p;
  std::vector<double> alpha;
  bool perturbed = false;
  int n = 0;
  bool jacobi = false;
  double a = 0;        // c2 + N - 1 (Jacobi)
  double margin = 0;   // extra coefficient bits over the evaluation precision

  mutable std::mutex mu;
  mutable long coef_prec = 0;
  mutable std::vector<MpReal> d;      // n x n, row l, column r
  mutable std::vector<double> log2d;  // log2 |D_lr|

  void build(long prec) const;
  void ensure(long prec) const {
    std::lock_guard lk(mu);
    if (coef_prec < prec + static_cast<long>(margin)) build(prec + static_cast<long>(margin));
  }
  double log2_prefactor(double x, double y) const;
  double log2_term(int l, int r, double lx2, double ly2, double l1x2) const {
    double t = log2d[l * n + r] + alpha[l] * ly2 + r * lx2;
    if (jacobi) t += (n - 1 - r) * l1x2;
    return t;
  }
  double max_term(double x, double y) const;
  double eval(double x, double y, long prec, Scratch& s) const;
  double value(double x, double y) const;
};

void FiniteKernel::Impl::build(long cp) const {
  const mpfr_rnd_t rn = MPFR_RNDN;
  // Falling-factorial coefficients of F(j) = prod_k (-j - 1 - alpha_k):
  // multiplying by (-j - g) maps f_r to -f_{r-1} - (r + g) f_r.
  std::vector<MpReal> f(n + 1, MpReal(cp));
  mpfr_set_ui(f[0], 1, rn);
  MpReal t(cp), u(cp);
  for (int k = 0; k < n; ++k) {
    for (int r = k + 1; r >= 0; --r) {
      // f_r <- -f_{r-1} - (r + 1 + alpha_k) f_r
      mpfr_set_d(t, alpha[k], rn);
      mpfr_add_si(t, t, r + 1, rn);
      mpfr_mul(t, t, f[r], rn);
      if (r > 0) mpfr_add(t, t, f[r - 1], rn);
      mpfr_neg(f[r], t, rn);
    }
  }
  std::vector<MpReal> dd(static_cast<size_t>(n) * n, MpReal(cp));
  std::vector<double> ld(static_cast<size_t>(n) * n, kNegInf);
  MpReal prev(cp), amp(cp), al(cp), ak(cp), g(cp);
  for (int l = 0; l < n; ++l) {
    mpfr_set_d(al, alpha[l], rn);
    // A_l = 1 / (Gamma(alpha_l + 1) prod_{k != l} (alpha_l - alpha_k)), times
    // Gamma(alpha_l + c2 + N + 1) for Jacobi
    mpfr_add_ui(g, al, 1, rn);
    mpfr_gamma(amp, g, rn);
    for (int k = 0; k < n; ++k) {
      if (k == l) continue;
      mpfr_set_d(ak, alpha[k], rn);
      mpfr_sub(t, al, ak, rn);
      mpfr_mul(amp, amp, t, rn);
    }
    mpfr_ui_div(amp, 1, amp, rn);
    if (jacobi) {
      mpfr_set_d(t, p.c2, rn);
      mpfr_add(t, t, al, rn);
      mpfr_add_ui(t, t, n + 1, rn);
      mpfr_gamma(t, t, rn);
      mpfr_mul(amp, amp, t, rn);
    }
    // P_l(j) = F(j) / (-j - 1 - alpha_l): p_r = -(f_r + p_{r-1}) / (r + 1 + alpha_l)
    mpfr_set_zero(prev.get(), 1);
    for (int r = 0; r < n; ++r) {
      MpReal& out = dd[l * n + r];
      mpfr_add(t, f[r], prev, rn);
      mpfr_add_si(u, al, r + 1, rn);
      mpfr_div(t, t, u, rn);
      mpfr_neg(t, t, rn);
      mpfr_set(prev.get(), t.get(), rn);
      // D_lr = A_l (-1)^r p_r  [/ Gamma(a + 1 - r)]
      mpfr_mul(out, amp, t, rn);
      if (r % 2) mpfr_neg(out, out, rn);
      if (jacobi) {
        const double arg = a + 1 - r;
        if (arg <= 0 && is_integer(arg)) {
          mpfr_set_zero(out.get(), 1);
        } else {
          mpfr_set_d(u, arg, rn);
          mpfr_gamma(u, u, rn);
          mpfr_div(out, out, u, rn);
        }
      }
      ld[l * n + r] = out.log2_abs();
    }
  }
  d = std::move(dd);
  log2d = std::move(ld);
  coef_prec = cp;
}

double FiniteKernel::Impl::log2_prefactor(double x, double y) const {
  const double lx2 = std::log2(x), ly2 = std::log2(y);
  if (jacobi) return 0.5 * p.c1 * (lx2 - ly2) + 0.5 * p.c2 * (std::log2(1 - x) + std::log2(1 - y));
  return 0.5 * p.c * (lx2 - ly2) - 0.5 * (x + y) * kLog2e;
}

double FiniteKernel::Impl::max_term(double x, double y) const {
  const double lx2 = std::log2(x), ly2 = std::log2(y), l1x2 = jacobi ? std::log2(1 - x) : 0.0;
  double m = kNegInf;
  for (int l = 0; l < n; ++l)
    for (int r = 0; r < n; ++r) m = std::max(m, log2_term(l, r, lx2, ly2, l1x2));
  return m;
}

double FiniteKernel::Impl::eval(double x, double y, long prec, Scratch& s) const {
  const mpfr_rnd_t rn = MPFR_RNDN;
  const double lx2 = std::log2(x), ly2 = std::log2(y), l1x2 = jacobi ? std::log2(1 - x) : 0.0;
  const double mt = max_term(x, y);
  const double skip = mt - prec - 16;
  // b_r = x^r (1-x)^{N-1-r}  (Laguerre: x^r)
  std::vector<MpReal> b(n, MpReal(prec));
  MpReal mx(x, prec), ly(prec), t(prec), sum(prec), total(prec), ya(prec);
  if (jacobi) {
    MpReal omx(prec), q(prec);
    mpfr_ui_sub(omx, 1, mx, rn);
    mpfr_div(q, mx, omx, rn);
    mpfr_pow_si(b[0], omx, n - 1, rn);
    for (int r = 1; r < n; ++r) mpfr_mul(b[r], b[r - 1], q, rn);
  } else {
    mpfr_set_ui(b[0], 1, rn);
    for (int r = 1; r < n; ++r) mpfr_mul(b[r], b[r - 1], mx, rn);
  }
  mpfr_set_d(ly, y, rn);
  mpfr_log(ly, ly, rn);
  mpfr_set_zero(total.get(), 1);
  for (int l = 0; l < n; ++l) {
    mpfr_set_zero(sum.get(), 1);
    bool any = false;
    for (int r = 0; r < n; ++r) {
      if (log2_term(l, r, lx2, ly2, l1x2) < skip) continue;
      mpfr_mul(t, d[l * n + r], b[r], rn);
      mpfr_add(sum, sum, t, rn);
      any = true;
    }
    if (!any) continue;
    mpfr_mul_d(ya, ly, alpha[l], rn);
    mpfr_exp(ya, ya, rn);
    mpfr_mul(t, sum, ya, rn);
    mpfr_add(total, total, t, rn);
  }
  // prefactor
  MpReal lp(prec), lyy(prec);
  mpfr_log(lp, mx, rn);
  mpfr_set_d(lyy, y, rn);
  mpfr_log(lyy, lyy, rn);
  mpfr_sub(lp, lp, lyy, rn);
  if (jacobi) {
    mpfr_mul_d(lp, lp, 0.5 * p.c1, rn);
    MpReal o(prec);
    mpfr_ui_sub(o, 1, mx, rn);
    mpfr_log(o, o, rn);
    mpfr_mul_d(o, o, 0.5 * p.c2, rn);
    mpfr_add(lp, lp, o, rn);
    mpfr_set_d(o, 1 - y, rn);
    mpfr_log(o, o, rn);
    mpfr_mul_d(o, o, 0.5 * p.c2, rn);
    mpfr_add(lp, lp, o, rn);
  } else {
    mpfr_mul_d(lp, lp, 0.5 * p.c, rn);
    MpReal o(x, prec);
    mpfr_add_d(o, o, y, rn);
    mpfr_mul_d(o, o, 0.5, rn);
    mpfr_sub(lp, lp, o, rn);
  }
  mpfr_exp(lp, lp, rn);
  mpfr_mul(total, total, lp, rn);
  s.log2_max_term = mt + log2_prefactor(x, y);
  s.log2_result = total.log2_abs();
  return total.to_double();
}

double FiniteKernel::Impl::value(double x, double y) const {
  if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y))
    throw ValidationError("kernel: x and y must be positive and finite");
  if (jacobi && !(x < 1 && y < 1)) throw ValidationError("kernel: x and y must lie in (0, 1)");
  ensure(96);
  long prec = std::max<long>(96, static_cast<long>(std::ceil(max_term(x, y) + log2_prefactor(x, y))) + 96);
  for (int attempt = 0; attempt < 4; ++attempt) {
    ensure(prec);
    Scratch s{};
    const double v = eval(x, y, prec, s);
    // bits lost to cancellation: log2 of largest summand over the result
    const double lost = s.log2_max_term - s.log2_result;
    if (v == 0 || !std::isfinite(s.log2_result)) return v;
    if (prec - lost >= 64) return v;
    prec = static_cast<long>(std::ceil(lost)) + 96;
  }
  throw NumericalError("kernel: precision escalation did not settle");
}

FiniteKernel::FiniteKernel(const EnsembleParams& p) : impl_(std::make_unique<Impl>()) {
  p.validate();
  auto& im = *impl_;
  im.p = p;
  im.n = p.n;
  im.jacobi = p.family == Family::Jacobi;
  im.alpha = kernel_alphas(p, im.perturbed);
  im.a = p.c2 + p.n - 1;
  const double amax = *std::max_element(im.alpha.begin(), im.alpha.end());
  im.margin = 64 + 2.0 * p.n + p.n * std::log2(std::max(amax, 0.0) + p.n + 2);
}

FiniteKernel::~FiniteKernel() = default;
FiniteKernel::FiniteKernel(FiniteKernel&&) noexcept = default;

const EnsembleParams& FiniteKernel::params() const { return impl_->p; }
const std::vector<double>& FiniteKernel::alphas() const { return impl_->alpha; }
bool FiniteKernel::perturbed() const { return impl_->perturbed; }

double FiniteKernel::operator()(double x, double y) const { return impl_->value(x, y); }

long FiniteKernel::precision_bits(double x, double y) const {
  impl_->ensure(96);
  return std::max<long>(96, static_cast<long>(std::ceil(impl_->max_term(x, y) + impl_->log2_prefactor(x, y))) + 96);
}

KernelValue FiniteKernel::evaluate(double x, double y) const {
  KernelValue kv;
  kv.value = (*this)(x, y);
  const auto& p = impl_->p;
  if (p.family == Family::Jacobi && !is_integer(p.c2)) {
    kv.experimental = true;
    kv.error_estimate = std::abs(kv.value - kernel_jacobi_quadrature(p, x, y));
  }
  return kv;
}

double FiniteKernel::two_level(int n1, double x, int n2, double y) const {
  const auto& im = *impl_;
  if (im.p.family == Family::Jacobi) throw ValidationError("two_level: Laguerre family only");
  if (n1 < 1 || n2 < 1 || n1 > im.n || n2 > im.n) throw ValidationError("two_level: levels must lie in [1, N]");
  if (!(x > 0) || !(y > 0)) throw ValidationError("two_level: x and y must be positive");
  const mpfr_rnd_t rn = MPFR_RNDN;
  const auto& al = im.alpha;
  double amax = 0;
  for (double v : al) amax = std::max(amax, std::abs(v));
  const long prec = 160 + static_cast<long>(std::ceil(3 * x * kLog2e)) + 24L * im.n +
                    static_cast<long>(std::ceil(amax * (std::abs(std::log2(x)) + std::abs(std::log2(y)))));
  MpReal mx(x, prec), lx(prec), ly(prec), t(prec), u(prec), s(prec), term(prec), big(prec);
  mpfr_log(lx, mx, rn);
  mpfr_set_d(ly, y, rn);
  mpfr_log(ly, ly, rn);
  mpfr_set_zero(s.get(), 1);
  for (int l = 0; l < n2; ++l) {
    // B_l y^{alpha_l}
    MpReal bl(prec);
    mpfr_set_d(t, al[l] + 1, rn);
    mpfr_gamma(bl, t, rn);
    for (int k = 0; k < n2; ++k) {
      if (k == l) continue;
      mpfr_set_d(t, al[l], rn);
      mpfr_sub_d(t, t, al[k], rn);
      mpfr_mul(bl, bl, t, rn);
    }
    mpfr_mul_d(t, ly, al[l], rn);
    mpfr_exp(t, t, rn);
    mpfr_div(bl, t, bl, rn);
    // T_l(x) = sum_m (-x)^m / m! R_l(m)
    MpReal tl(prec), pw(prec);
    mpfr_set_zero(tl.get(), 1);
    mpfr_set_ui(pw, 1, rn);  // (-x)^m / m!
    mpfr_set_zero(big.get(), 1);
    int quiet = 0, m = 0;
    for (;; ++m) {
      if (m > 2000) throw NumericalError("two_level: series truncation cap of 2000 terms exceeded");
      mpfr_set(term.get(), pw.get(), rn);
      for (int k = 0; k < n1; ++k) {
        if (k == l) continue;
        mpfr_set_d(t, -m - 1 - al[k], rn);
        mpfr_mul(term, term, t, rn);
      }
      if (l >= n1) {
        mpfr_set_d(t, -m - 1 - al[l], rn);
        mpfr_div(term, term, t, rn);
      }
      mpfr_add(tl, tl, term, rn);
      mpfr_abs(t.get(), term.get(), rn);
      if (mpfr_cmp(t.get(), big.get()) > 0) mpfr_set(big.get(), t.get(), rn);
      if (m > x + 4 && term.log2_abs() < big.log2_abs() - prec) {
        if (++quiet >= 4) break;
      } else {
        quiet = 0;
      }
      mpfr_mul_d(pw, pw, -x / (m + 1), rn);
    }
    if (l >= n1) {
      // residue of the pole at z = alpha_l: x^{-alpha_l-1} Gamma(alpha_l+1) prod_{k<n1} (alpha_l - alpha_k)
      mpfr_set_d(t, al[l] + 1, rn);
      mpfr_gamma(u, t, rn);
      for (int k = 0; k < n1; ++k) mpfr_mul_d(u, u, al[l] - al[k], rn);
      mpfr_mul_d(t, lx, -al[l] - 1, rn);
      mpfr_exp(t, t, rn);
      mpfr_mul(u, u, t, rn);
      mpfr_add(tl, tl, u, rn);
    }
    mpfr_mul(t, bl, tl, rn);
    mpfr_add(s, s, t, rn);
  }
  if (n1 < n2 && x < y) {
    for (int l = n1; l < n2; ++l) {
      mpfr_mul_d(t, lx, -al[l] - 1, rn);
      mpfr_mul_d(u, ly, al[l], rn);
      mpfr_add(t, t, u, rn);
      mpfr_exp(t, t, rn);
      for (int k = n1; k < n2; ++k)
        if (k != l) mpfr_div_d(t, t, al[l] - al[k], rn);
      mpfr_sub(s, s, t, rn);
    }
  }
  // (x/y)^{c/2} e^{(x-y)/2}
  mpfr_sub(t, lx, ly, rn);
  mpfr_mul_d(t, t, 0.5 * im.p.c, rn);
  mpfr_add_d(t, t, 0.5 * (x - y), rn);
  mpfr_exp(t, t, rn);
  mpfr_mul(s, s, t, rn);
  return s.to_double();
}

double kernel_laguerre_series(const EnsembleParams& p, double x, double y) {
  if (p.family == Family::Jacobi) throw ValidationError("kernel_laguerre_series: Laguerre family expected");
  return FiniteKernel(p)(x, y);
}

KernelValue kernel_jacobi(const EnsembleParams& p, double x, double y) {
  if (p.family != Family::Jacobi) throw ValidationError("kernel_jacobi: Jacobi family expected");
  return FiniteKernel(p).evaluate(x, y);
}

namespace {

double contour_kernel(const EnsembleParams& p, double x, double y, const QuadratureOptions& opt) {
  p.validate();
  const bool jac = p.family == Family::Jacobi;
  if (!(x > 0) || !(y > 0)) throw ValidationError("kernel quadrature: x and y must be positive");
  if (jac && !(x < 1 && y < 1)) throw ValidationError("kernel quadrature: x and y must lie in (0, 1)");
  const std::vector<double> al = alpha_sequence(p.theta, p.alpha_base(), p.n);
  const double a1 = *std::min_element(al.begin(), al.end());
  const double an = *std::max_element(al.begin(), al.end());
  if (a1 <= -1 + 1e-6) throw NumericalError("kernel quadrature: alpha_1 too close to -1 to separate the contours");
  const int n = p.n;
  const double g = p.theta > 0 ? std::min(p.theta, a1 + 1) / 2 : (a1 + 1) / 2;
  const double h = std::max(p.theta * n / 4, g);
  const double shift = p.c2 + n + 1;
  const double lx = std::log(x), ly = std::log(y);
  auto log_fz = [&](cplx z) {
    cplx v = (-z - 1.0) * lx + log_gamma(z + 1.0);
    for (double a : al) v += std::log(z - a);
    if (jac) v -= log_gamma(z + shift);
    return v;
  };
  auto log_fw = [&](cplx w) {
    cplx v = w * ly - log_gamma(w + 1.0);
    for (double a : al) v -= std::log(w - a);
    if (jac) v += log_gamma(w + shift);
    return v;
  };
  const ContourSpec wc = rectangle_contour(cplx(a1 - g, -h), cplx(an + g, h), opt.step * opt.scale, opt.order);
  const cplx z0 = 0.5 * (-1 + a1 - g);
  const ContourSpec zc =
      ray_contour(z0, 0.75 * std::numbers::pi, 0.25, opt, [&](cplx z) { return log_fz(z).real(); });
  const cplx i2 = double_contour_sum(zc, wc, log_fz, log_fw);
  double lpref;
  if (jac)
    lpref = 0.5 * p.c1 * (lx - ly) - 0.5 * p.c2 * (std::log1p(-x) - std::log1p(-y));
  else
    lpref = 0.5 * p.c * (lx - ly) + 0.5 * (x - y);
  const double four_pi2 = 4 * std::numbers::pi * std::numbers::pi;
  return (-std::exp(lpref) * i2 / four_pi2).real();
}

}  // namespace

double kernel_laguerre_quadrature(const EnsembleParams& p, double x, double y, const QuadratureOptions& opt) {
  if (p.family == Family::Jacobi) throw ValidationError("kernel_laguerre_quadrature: Laguerre family expected");
  return contour_kernel(p, x, y, opt);
}

double kernel_jacobi_quadrature(const EnsembleParams& p, double x, double y, const QuadratureOptions& opt) {
  if (p.family != Family::Jacobi) throw ValidationError("kernel_jacobi_quadrature: Jacobi family expected");
  return contour_kernel(p, x, y, opt);
}

std::pair<double, double> global_support(const EnsembleParams& p) {
  switch (p.family) {
    case Family::Jacobi: return {0.0, 1.0};
    case Family::LaguerreThetaZero: return {0.0, std::numbers::e};
    default: return {0.0, fc_support(p.theta)};
  }
}

double global_density_estimate(const FiniteKernel& k, double x) {
  const auto& p = k.params();
  if (!(x > 0)) throw ValidationError("global_density_estimate: x must be positive");
  const double n = p.n;
  switch (p.family) {
    case Family::LaguerreThetaZero: return k(n * x, n * x);
    case Family::Jacobi: {
      if (!(x < 1)) throw ValidationError("global_density_estimate: x must lie in (0, 1)");
      const double lam = std::pow(x, 1 / p.theta);
      if (!(lam < 1)) return 0.0;
      return std::pow(x, 1 / p.theta - 1) * k(lam, lam) / (n * p.theta);
    }
    default: {
      const double lam = n * p.theta * std::pow(x, 1 / p.theta);
      return std::pow(x, 1 / p.theta - 1) * k(lam, lam);
    }
  }
}

}  // namespace mb
