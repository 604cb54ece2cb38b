#include "mb/special.hpp"

#include <cmath>
#include <numbers>

#include "mb/params.hpp"

namespace mb {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
}  // namespace

cplx log_sin_pi(cplx z) {
  if (std::abs(z.imag()) < 15) return std::log(std::sin(kPi * z));
  if (z.imag() < 0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
  const cplx i(0, 1);
  return cplx(std::log(0.5), kPi / 2) - i * kPi * z + std::log(1.0 - std::exp(2.0 * i * kPi * z));
}

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  z -= 1.0;
  cplx a = kLanczos[0];
  for (int k = 1; k < 9; ++k) a += kLanczos[k] / (z + double(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double log_sinc(double t) {
  if (std::abs(t) < 0.5) {
    // sinc(t) - 1 = sum_{k>=1} (-1)^k t^{2k} / (2k+1)!
    const double t2 = t * t;
    double term = 1.0, s = 0.0;
    for (int k = 1; k < 30; ++k) {
      term *= -t2 / ((2 * k) * (2 * k + 1));
      s += term;
      if (std::abs(term) < 1e-18 * std::abs(s)) break;
    }
    return std::log1p(s);
  }
  return std::log(std::sin(t) / t);
}

cplx lambert_w_from_log(cplx log_t) {
  // Newton on g(w) = w + log w - log t.
  cplx w = log_t - std::log(log_t);
  for (int it = 0; it < 100; ++it) {
    const cplx g = w + std::log(w) - log_t;
    const cplx dw = g / (1.0 + 1.0 / w);
    w -= dw;
    if (std::abs(dw) <= 1e-15 * std::abs(w)) return w;
  }
  if (std::abs(w + std::log(w) - log_t) <= 1e-14 * std::abs(log_t)) return w;
  throw NumericalError("lambert_w: log-form Newton did not converge");
}

cplx lambert_w(cplx t, WApproach approach) {
  if (approach == WApproach::above_cut && t.imag() == 0) t = cplx(t.real(), +0.0);
  if (t == cplx(0)) return 0.0;
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
    throw ValidationError("lambert_w: non-finite argument");
  const double e = std::numbers::e;
  const cplx p = std::sqrt(2.0 * (e * t + 1.0));
  cplx w;
  if (std::abs(p) < 1e-3) {
    // branch-point series in p
    return -1.0 + p * (1.0 + p * (-1.0 / 3 + p * (11.0 / 72 + p * (-43.0 / 540 + p * (769.0 / 17280 + p * (-221.0 / 8505))))));
  } else if (std::abs(p) < 1.3) {
    w = -1.0 + p * (1.0 + p * (-1.0 / 3 + p * (11.0 / 72 + p * (-43.0 / 540))));
  } else if (std::abs(t) >= 5) {
    if (std::abs(t) > 1e3) return lambert_w_from_log(std::log(t));
    const cplx l1 = std::log(t), l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  } else if (std::abs(1.0 + t) >= 0.5) {
    w = std::log(1.0 + t);
  } else {
    w = cplx(-0.3, std::signbit(t.imag()) ? -1.3 : 1.3);
  }
  double fa = 0;
  for (int it = 0; it < 100; ++it) {
    const cplx ew = std::exp(w);
    const cplx f = w * ew - t;
    fa = std::abs(f);
    if (fa <= 4e-16 * (std::abs(t) + std::abs(w * ew))) return w;
    const cplx wp1 = w + 1.0;
    const cplx dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= dw;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) return w;
  }
  if (fa <= 1e-14 * std::abs(t)) return w;
  throw NumericalError("lambert_w: Halley iteration did not converge");
}

}  // namespace mb
