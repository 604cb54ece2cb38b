#include "mb/densities.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mb/params.hpp"

namespace mb {

namespace {

constexpr double kPi = std::numbers::pi;

double log_fc_support(double th) { return (1 + th) * std::log1p(th) - th * std::log(th); }

void check_theta(double th) {
  if (!(th > 0) || !std::isfinite(th)) throw ValidationError("theta must be finite and > 0");
}

// Angle pair with psi = pi/(theta+1) - phi; whichever is smaller is the accurate one.
struct Angles {
  double phi, psi;
  bool phi_small() const { return phi <= psi; }
};

Angles from_phi(double th, double phi) { return {phi, kPi / (th + 1) - phi}; }
Angles from_psi(double th, double psi) { return {kPi / (th + 1) - psi, psi}; }

// log of the Jacobi-scale parametrisation x(phi) = x_FC(phi) / L
double log_xj(double th, const Angles& a) {
  if (a.phi_small())
    return (th + 1) * log_sinc((th + 1) * a.phi) - log_sinc(a.phi) - th * log_sinc(th * a.phi);
  const double b = kPi / (th + 1);
  return -log_fc_support(th) + (th + 1) * std::log(std::sin((th + 1) * a.psi)) -
         std::log(std::sin(b - a.psi)) - th * std::log(std::sin(b + th * a.psi));
}

struct Sines {
  double s1, st, st1, c1;  // sin phi, sin(theta phi), sin((theta+1) phi), cos phi
};

Sines sines(double th, const Angles& a) {
  if (a.phi_small())
    return {std::sin(a.phi), std::sin(th * a.phi), std::sin((th + 1) * a.phi), std::cos(a.phi)};
  const double b = kPi / (th + 1);
  return {std::sin(b - a.psi), std::sin(b + th * a.psi), std::sin((th + 1) * a.psi), std::cos(b - a.psi)};
}

// Solve x(phi) = xs for the angle, given xs and xsc = 1 - xs.
Angles invert(double th, double xs, double xsc) {
  const double b = kPi / (th + 1);
  const double lxs = std::log(xs);
  const bool use_complement = xsc <= 0.5;
  // > 0 when x(angles) exceeds the target
  auto excess = [&](const Angles& a) {
    const double l = log_xj(th, a);
    if (use_complement) return xsc - (-std::expm1(l));
    return l - lxs;
  };
  const double mid = 0.5 * b;
  const bool on_phi = excess(from_phi(th, mid)) <= 0;
  // x decreases in phi, increases in psi; search the small variable in (0, mid]
  auto make = [&](double t) { return on_phi ? from_phi(th, t) : from_psi(th, t); };
  double lo = 1e-305, hi = mid;
  for (int it = 0; it < 200; ++it) {
    const double t = (hi > 4 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (!(t > lo && t < hi)) break;
    const double e = excess(make(t));
    const bool t_too_small = on_phi ? (e > 0) : (e < 0);
    if (t_too_small)
      lo = t;
    else
      hi = t;
    if (hi - lo <= 2e-16 * hi) break;
  }
  return make(0.5 * (lo + hi));
}

double jfc_one_minus_r(double th, const Angles& a, const Sines& s) {
  const double r = th * s.st1 / ((1 + th) * s.st);
  if (!(a.phi_small() && (th + 1) * a.phi < 1)) return 1 - r;
  // (1+th) sin(th phi) - th sin((th+1) phi) as a power series in phi
  const double phi = a.phi, p2 = phi * phi;
  double pw = phi, fact = 1, sum = 0;
  double tp = th, t1p = th + 1;  // th^{2k+1}, (th+1)^{2k+1}
  for (int k = 1; k < 40; ++k) {
    pw *= p2;
    fact *= (2 * k) * (2 * k + 1);
    tp *= th * th;
    t1p *= (th + 1) * (th + 1);
    const double term = ((k % 2) ? -1.0 : 1.0) * pw / fact * ((1 + th) * tp - th * t1p);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum / ((1 + th) * s.st);
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

}  // namespace

double fc_support(double theta) {
  check_theta(theta);
  return std::exp(log_fc_support(theta));
}

double fc_phi_from_x(double theta, double x) {
  const double L = fc_support(theta);
  if (!(x > 0 && x < L)) throw std::domain_error("fc_phi_from_x: x outside (0, L)");
  return invert(theta, x / L, (L - x) / L).phi;
}

double fc_x_from_phi(double theta, double phi) { return fc_support(theta) * jfc_x_from_phi(theta, phi); }

double fc_density(double theta, double x) {
  const double L = fc_support(theta);
  if (!(x > 0 && x < L)) return 0.0;
  const Angles a = invert(theta, x / L, (L - x) / L);
  const Sines s = sines(theta, a);
  return std::exp((theta - 1) * std::log(s.st) + 2 * std::log(s.s1) - theta * std::log(s.st1)) / kPi;
}

double fc_moment(double theta, unsigned k) {
  check_theta(theta);
  if (theta == std::floor(theta) && theta <= 1e6) {
    using boost::multiprecision::cpp_int;
    const unsigned long th = static_cast<unsigned long>(theta);
    const unsigned long n = (th + 1) * k;
    cpp_int b = 1;
    for (unsigned long i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return static_cast<double>(cpp_int(b / (th * k + 1)));
  }
  return std::exp(log_binomial((theta + 1) * k, k)) / (theta * k + 1);
}

double fc_small_x(double theta, double x) {
  check_theta(theta);
  if (!(x > 0)) throw std::domain_error("fc_small_x: x must be > 0");
  const double e = theta / (theta + 1);
  return std::sin(kPi / (theta + 1)) / (kPi * std::pow(theta, e)) * std::pow(x, -e);
}

double jfc_phi_from_x(double theta, double x) {
  check_theta(theta);
  if (!(x > 0 && x < 1)) throw std::domain_error("jfc_phi_from_x: x outside (0, 1)");
  return invert(theta, x, 1 - x).phi;
}

double jfc_x_from_phi(double theta, double phi) {
  check_theta(theta);
  const double b = kPi / (theta + 1);
  if (!(phi > 0 && phi < b)) throw std::domain_error("phi outside (0, pi/(theta+1))");
  const Angles a = phi <= 0.5 * b ? from_phi(theta, phi) : from_psi(theta, b - phi);
  return std::exp(log_xj(theta, a));
}

double jfc_density(double theta, double x) { return jfc_density(theta, x, 1 - x); }

double jfc_density(double theta, double x, double xc) {
  check_theta(theta);
  if (!(x > 0 && xc > 0)) return 0.0;
  const Angles a = invert(theta, x, xc);
  const Sines s = sines(theta, a);
  const double r = theta * s.st1 / ((1 + theta) * s.st);
  const double omr = jfc_one_minus_r(theta, a, s);
  const double sh = a.phi_small() ? std::sin(0.5 * a.phi) : std::sin(0.5 * (kPi / (theta + 1) - a.psi));
  const double d = omr * omr + 4 * r * sh * sh;  // |1 - v|^2
  return r * s.s1 / (theta * d * kPi * x);
}

double jfc_moment(double theta, unsigned p) {
  check_theta(theta);
  if (p == 0) return 1.0;
  return std::exp(log_binomial((1 + theta) * p, p) - p * log_fc_support(theta));
}

double theta0_density(double x) {
  if (!(x > 0)) throw std::domain_error("theta0_density: x must be > 0");
  if (x >= std::numbers::e) return 0.0;
  const cplx w = lambert_w(cplx(-1.0 / x, 0.0), WApproach::above_cut);
  return -std::imag(1.0 / (kPi * x * w));
}

double theta0_density_log(double s) {
  if (s <= -1) return 0.0;
  cplx w;
  if (s > 30)
    w = lambert_w_from_log(cplx(s, kPi));
  else
    w = lambert_w(cplx(-std::exp(s), 0.0), WApproach::above_cut);
  return -std::imag(1.0 / (kPi * w));
}

SaddleRoots saddle_roots_laguerre(double theta, double x) {
  const double L = fc_support(theta);
  if (!(x > 0 && x < L)) throw std::domain_error("saddle_roots_laguerre: real-root regime (x outside (0, L))");
  const Angles a = invert(theta, x / L, (L - x) / L);
  const Sines s = sines(theta, a);
  const cplx up = (s.st1 / s.st) * cplx(s.c1, s.s1);
  return {up, std::conj(up), a.phi};
}

SaddleRoots saddle_roots_jacobi(double theta, double x) {
  check_theta(theta);
  if (!(x > 0 && x < 1)) throw std::domain_error("saddle_roots_jacobi: real-root regime (x outside (0, 1))");
  const Angles a = invert(theta, x, 1 - x);
  const Sines s = sines(theta, a);
  const double r = theta * s.st1 / ((1 + theta) * s.st);
  const double omr = jfc_one_minus_r(theta, a, s);
  const double sh = a.phi_small() ? std::sin(0.5 * a.phi) : std::sin(0.5 * (kPi / (theta + 1) - a.psi));
  const cplx v = r * cplx(s.c1, s.s1);
  const cplx one_minus_v(omr + 2 * r * sh * sh, -r * s.s1);
  const cplx up = v / (theta * one_minus_v);
  return {up, std::conj(up), a.phi};
}

cplx saddle_root_theta0(double x) {
  if (!(x > 0 && x < std::numbers::e)) throw std::domain_error("saddle_root_theta0: x outside (0, e)");
  return -1.0 / lambert_w(cplx(-1.0 / x, 0.0), WApproach::above_cut);
}

DensityFn fc_density_fn(double theta) {
  DensityFn d;
  d.lo = 0;
  d.hi = fc_support(theta);
  d.rho = [theta](double x, double) { return fc_density(theta, x); };
  d.left_power = theta + 1;
  return d;
}

DensityFn jfc_density_fn(double theta) {
  check_theta(theta);
  DensityFn d;
  d.lo = 0;
  d.hi = 1;
  d.rho = [theta](double x, double xc) { return jfc_density(theta, x, xc); };
  d.left_power = theta + 1;
  return d;
}

DensityFn theta0_density_fn() {
  DensityFn d;
  d.lo = 0;
  d.hi = std::numbers::e;
  d.rho = [](double x, double) { return x > 0 ? theta0_density(x) : 0.0; };
  d.rho_log = theta0_density_log;
  return d;
}

double integrate_density(const DensityFn& d, const std::function<double(double)>& w, double a, double b,
                         double tol) {
  a = std::max(a, d.lo);
  b = std::min(b, d.hi);
  if (!(b > a)) return 0.0;
  if (d.rho_log) {
    const double s1 = -std::log(b);
    auto g = [&](double s) { return d.rho_log(s) * w(std::exp(-s)); };
    if (a <= 0) {
      thread_local boost::math::quadrature::exp_sinh<double> es;
      return es.integrate(g, s1, std::numeric_limits<double>::infinity(), tol);
    }
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(g, s1, -std::log(a), tol);
  }
  const double p = (a <= d.lo) ? d.left_power : 1.0;
  const bool to_top = b >= d.hi;
  const double len = b - a;
  auto f = [&](double t, double tc) {
    const double om = tc > 0 ? tc : 1 - t;  // 1 - t
    const double tp = std::pow(t, p);
    const double x = a + len * tp;
    const double xc = to_top ? len * (-std::expm1(p * std::log1p(-om))) : d.hi - x;
    if (!(x > d.lo) || !(xc > 0)) return 0.0;
    const double jac = p == 1 ? len : len * p * std::pow(t, p - 1);
    return d.rho(x, xc) * w(x) * jac;
  };
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, 0.0, 1.0, tol);
}

double density_mass(const DensityFn& d, double a, double b) {
  return integrate_density(d, [](double) { return 1.0; }, a, b);
}

cplx resolvent_from_density(const DensityFn& d, cplx z) {
  if (z.imag() == 0 && z.real() >= d.lo && z.real() <= d.hi)
    throw ValidationError("resolvent_from_density: z lies on the support");
  const double re = integrate_density(d, [z](double x) { return std::real(1.0 / (z - x)); }, d.lo, d.hi, 1e-14);
  const double im = integrate_density(d, [z](double x) { return std::imag(1.0 / (z - x)); }, d.lo, d.hi, 1e-14);
  return {re, im};
}

cplx resolvent_residual_laguerre(double theta, cplx z) {
  const cplx zg = z * resolvent_from_density(fc_density_fn(theta), z);
  return z * (zg - 1.0) - std::pow(zg, theta + 1);
}

cplx resolvent_residual_jacobi(double theta, cplx z) {
  const cplx zg = z * resolvent_from_density(jfc_density_fn(theta), z);
  return z * (zg - 1.0) * std::pow(zg + 1.0 / theta, theta) - std::pow(zg, theta + 1);
}

cplx jfc_resolvent_theta_inf(cplx z) {
  if (z.imag() == 0 && z.real() >= 0 && z.real() <= 1)
    throw ValidationError("jfc_resolvent_theta_inf: z lies on [0, 1]");
  return 1.0 / (z * (1.0 + lambert_w(-1.0 / (z * std::numbers::e))));
}

}  // namespace mb
