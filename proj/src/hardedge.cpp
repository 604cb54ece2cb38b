#include "mb/hardedge.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "mb/ckernel.hpp"
#include "mb/special.hpp"
#include "mp_real.hpp"

namespace mb {

namespace {

constexpr double kPi = std::numbers::pi;

// sign of 1/Gamma(z); 0 at the poles
int rgamma_sign(double z) {
  if (z > 0) return 1;
  if (z == std::floor(z)) return 0;
  return (static_cast<long long>(std::floor(z)) % 2 != 0) ? -1 : 1;
}

double wright_mpfr(double a, double b, double x, int terms, double log2_max) {
  const mpfr_rnd_t rn = MPFR_RNDN;
  const long prec = 64 + static_cast<long>(std::ceil(std::max(0.0, log2_max))) + 16;
  MpReal pw(prec), sum(prec), t(prec), g(prec);
  mpfr_set_ui(pw, 1, rn);  // (-x)^j / j!
  for (int j = 0; j < terms; ++j) {
    const double z = a + j * b;
    if (rgamma_sign(z) != 0) {
      mpfr_set_d(g, z, rn);
      mpfr_gamma(g, g, rn);
      mpfr_div(t, pw, g, rn);
      mpfr_add(sum, sum, t, rn);
    }
    mpfr_mul_d(pw, pw, -x, rn);
    mpfr_div_ui(pw, pw, j + 1, rn);
  }
  return sum.to_double();
}

}  // namespace

double wright_bessel(double a, double b, double x) {
  if (!(b > 0)) throw ValidationError("wright_bessel: b must be > 0");
  if (!std::isfinite(a) || !std::isfinite(x)) throw ValidationError("wright_bessel: non-finite argument");
  if (std::abs(x) > 1e6) throw ValidationError("wright_bessel: |x| > 1e6 not supported");
  if (x == 0) return rgamma_sign(a) == 0 ? 0.0 : 1.0 / std::tgamma(a);
  const double lx = std::log(std::abs(x));
  const double log_cut = std::log(1e-17), log_floor = std::log(1e-30);
  double logmax = -std::numeric_limits<double>::infinity(), prev = logmax;
  double s = 0, comp = 0;
  int quiet = 0, j = 0;
  for (;; ++j) {
    if (j > 2000000) throw NumericalError("wright_bessel: series did not terminate");
    const double z = a + j * b;
    const int sg = rgamma_sign(z);
    double lt = -std::numeric_limits<double>::infinity();
    if (sg != 0) {
      lt = j * lx - std::lgamma(j + 1.0) - std::lgamma(z);
      const double term = sg * ((x > 0 && (j % 2)) ? -1.0 : 1.0) * std::exp(lt);
      const double tt = s + term;
      comp += std::abs(s) >= std::abs(term) ? (s - tt) + term : (term - tt) + s;
      s = tt;
      logmax = std::max(logmax, lt);
    }
    // stop once past the peak and below the cutoff for a few terms; the absolute
    // floor matters when the alternating terms cancel down to a small result
    if (lt < std::min(logmax + log_cut, log_floor) && lt <= prev) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    if (sg != 0) prev = lt;
  }
  if (x > 0 && logmax > std::log(100.0)) return wright_mpfr(a, b, x, j + 1, logmax * std::numbers::log2e);
  return s + comp;
}

double borodin_kernel(double c, double theta, double x, double y) {
  if (!(c > -1)) throw ValidationError("borodin_kernel: c must be > -1");
  if (!(theta > 0)) throw ValidationError("borodin_kernel: theta must be > 0");
  if (!(x > 0) || !(y > 0)) throw ValidationError("borodin_kernel: x and y must be positive");
  const double a1 = (c + 1) / theta, b1 = 1 / theta;
  auto f = [&](double u) {
    if (u <= 0) return 0.0;
    return wright_bessel(a1, b1, x * u) * wright_bessel(c + 1, theta, std::pow(y * u, theta)) * std::pow(u, c);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0;
  const double v = ts.integrate(f, 0.0, 1.0, 1e-13, &err);
  return theta * std::pow(x, c) * v;
}

namespace {

// Loop around the nonnegative integers, extended to the right until the integrand
// has decayed below cutoff.
ContourSpec integer_loop(double w0, double h0, const QuadratureOptions& opt,
                         const std::function<double(cplx)>& log_abs_g) {
  const double eps = 0.5;
  double right = 40, mx = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 40; ++k) mx = std::max(mx, log_abs_g(cplx(k, eps)));
  while (log_abs_g(cplx(right, eps)) > mx + std::log(opt.cutoff)) {
    for (int k = static_cast<int>(right); k <= 2 * right; ++k) mx = std::max(mx, log_abs_g(cplx(k, eps)));
    right *= 2;
    if (right > 2000) throw NumericalError("contour: w-integrand has not decayed by Re w = 2000");
  }
  return hankel_rectangle(w0, eps, right, h0, opt);
}

double two_contour(double z0, double angle, const QuadratureOptions& opt, const std::function<cplx(cplx)>& log_fz,
                   const std::function<cplx(cplx)>& log_fw) {
  const double w0 = z0 / 2;
  const double h0 = std::min(0.25, 0.5 * std::abs(z0 - w0));
  const ContourSpec zc = ray_contour(z0, angle, h0, opt, [&](cplx z) { return log_fz(z).real(); });
  const ContourSpec wc = integer_loop(w0, h0, opt, [&](cplx w) { return log_fw(w).real(); });
  return double_contour_sum(zc, wc, log_fz, log_fw).real() * (-1.0 / (4 * kPi * kPi));
}

}  // namespace

double borodin_kernel_contour(double c, double theta, double x, double y, const QuadratureOptions& opt) {
  if (!(c > -1)) throw ValidationError("borodin_kernel_contour: c must be > -1");
  if (!(theta > 0)) throw ValidationError("borodin_kernel_contour: theta must be > 0");
  if (!(x > 0) || !(y > 0)) throw ValidationError("borodin_kernel_contour: x and y must be positive");
  const double lx = std::log(x), ly = std::log(y);
  const cplx log_mpi(std::log(kPi), kPi);  // log(-pi)
  auto log_fz = [&](cplx z) {
    return (-theta * z - 1.0) * lx + log_gamma(theta * z + c + 1.0) + log_mpi - log_gamma(-z);
  };
  auto log_fw = [&](cplx w) { return theta * w * ly + log_gamma(-w) - log_mpi - log_gamma(theta * w + c + 1.0); };
  const double z0 = -std::min(0.5, (c + 1) / (2 * theta));
  const double angle = theta >= 2 ? kPi / 2 : 0.75 * kPi;
  return theta * two_contour(z0, angle, opt, log_fz, log_fw);
}

double kz_kernel(const std::vector<double>& nu, double x, double y, const QuadratureOptions& opt) {
  if (nu.empty()) throw ValidationError("kz_kernel: need at least one nu");
  for (double v : nu)
    if (!(v > -1)) throw ValidationError("kz_kernel: nu_j must be > -1");
  if (!(x > 0) || !(y > 0)) throw ValidationError("kz_kernel: x and y must be positive");
  const double lx = std::log(x), ly = std::log(y);
  const cplx log_mpi(std::log(kPi), kPi);
  auto log_fz = [&](cplx z) {
    cplx v = -(z + 1.0) * ly + log_mpi - log_gamma(-z);
    for (double n : nu) v += log_gamma(z + 1.0 + n);
    return v;
  };
  auto log_fw = [&](cplx w) {
    cplx v = w * lx + log_gamma(-w) - log_mpi;
    for (double n : nu) v -= log_gamma(w + 1.0 + n);
    return v;
  };
  const double numin = std::min(0.0, *std::min_element(nu.begin(), nu.end()));
  const double z0 = -std::min(0.5, (1 + numin) / 2);
  const double angle = nu.size() >= 2 ? kPi / 2 : 0.75 * kPi;
  return two_contour(z0, angle, opt, log_fz, log_fw);
}

std::vector<double> kz_nu_for(double c, int theta) {
  if (theta < 1) throw ValidationError("kz_nu_for: theta must be a positive integer");
  std::vector<double> nu(theta);
  for (int j = 1; j <= theta; ++j) nu[j - 1] = c / theta - 1 + double(j) / theta;
  return nu;
}

namespace {

double hard_edge_scale(const EnsembleParams& p) {
  const double n = p.n;
  if (p.family == Family::Jacobi) return std::pow(n, -1 - 1 / p.theta);
  return std::pow(n, -1 / p.theta);
}

double scaled(const FiniteKernel& k, double s, double c, double x, double y) {
  return std::pow(x / y, c / 2) * s * k(s * x, s * y);
}

}  // namespace

double hard_edge_scaled_kernel(const EnsembleParams& p, double x, double y) {
  p.validate();
  if (!(p.theta > 0)) throw ValidationError("hard_edge_scaled_kernel: theta must be > 0");
  return scaled(FiniteKernel(p), hard_edge_scale(p), p.alpha_base(), x, y);
}

VerifyReport hard_edge_convergence(const EnsembleParams& p, const std::vector<int>& n_list,
                                   const std::vector<std::pair<double, double>>& points) {
  const auto t0 = std::chrono::steady_clock::now();
  p.validate();
  if (!(p.theta > 0)) throw ValidationError("hard_edge_convergence: theta must be > 0");
  if (n_list.size() < 2) throw ValidationError("hard_edge_convergence: need at least two N values");
  if (points.empty()) throw ValidationError("hard_edge_convergence: need at least one point");
  const double c = p.alpha_base();
  std::vector<double> limit, scale;
  for (const auto& [x, y] : points) {
    limit.push_back(borodin_kernel(c, p.theta, x, y));
    scale.push_back(std::sqrt(borodin_kernel(c, p.theta, x, x) * borodin_kernel(c, p.theta, y, y)));
  }
  std::vector<double> errs;
  for (int n : n_list) {
    EnsembleParams q = p;
    q.n = n;
    const FiniteKernel k(q);
    const double s = hard_edge_scale(q);
    double e = 0;
    for (size_t i = 0; i < points.size(); ++i) {
      const auto [x, y] = points[i];
      e = std::max(e, std::abs(scaled(k, s, c, x, y) - limit[i]) / scale[i]);
    }
    errs.push_back(e);
  }
  double ratio = 0;
  for (size_t i = 1; i < errs.size(); ++i) ratio = std::max(ratio, errs[i] / errs[i - 1]);
  VerifyReport r;
  r.name = "hard-edge-convergence/" + family_name(p.family);
  r.statistic = ratio;
  r.threshold = 1.0;
  r.comparison = "<";
  r.detail["params"] = p;
  r.detail["n_list"] = n_list;
  r.detail["errors"] = errs;
  r.detail["final_error"] = errs.back();
  r.detail["points"] = points;
  r.decide();
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace mb
