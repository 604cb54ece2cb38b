#include "mb/params.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mb {

std::string family_name(Family f) {
  switch (f) {
    case Family::Laguerre: return "laguerre";
    case Family::Jacobi: return "jacobi";
    case Family::LaguerreThetaZero: return "theta0";
  }
  return "unknown";
}

Family family_from_name(const std::string& s) {
  if (s == "laguerre") return Family::Laguerre;
  if (s == "jacobi") return Family::Jacobi;
  if (s == "theta0" || s == "laguerre-theta0") return Family::LaguerreThetaZero;
  throw ValidationError("unknown family '" + s + "'");
}

EnsembleParams EnsembleParams::laguerre(double theta, double c, int n) {
  EnsembleParams p;
  p.family = Family::Laguerre;
  p.theta = theta;
  p.c = c;
  p.n = n;
  p.validate();
  return p;
}

EnsembleParams EnsembleParams::jacobi(double theta, double c1, double c2, int n) {
  EnsembleParams p;
  p.family = Family::Jacobi;
  p.theta = theta;
  p.c1 = c1;
  p.c2 = c2;
  p.n = n;
  p.validate();
  return p;
}

EnsembleParams EnsembleParams::theta_zero(double c, int n) {
  EnsembleParams p;
  p.family = Family::LaguerreThetaZero;
  p.theta = 0.0;
  p.c = c;
  p.n = n;
  p.validate();
  return p;
}

void EnsembleParams::validate() const {
  if (!std::isfinite(theta) || theta < 0) throw ValidationError("theta must be finite and >= 0");
  if (n < 1) throw ValidationError("n must be >= 1");
  if ((family == Family::LaguerreThetaZero) != (theta == 0.0))
    throw ValidationError("family theta0 is required exactly when theta = 0");
  if (family == Family::Jacobi) {
    if (!(c1 > -1) || !(c2 > -1)) throw ValidationError("Jacobi exponents c1, c2 must be > -1");
    if (!std::isfinite(c1) || !std::isfinite(c2)) throw ValidationError("non-finite exponent");
  } else {
    if (!(c > -1) || !std::isfinite(c)) throw ValidationError("exponent c must be > -1");
  }
}

std::vector<double> alpha_sequence(double theta, double c, int n) {
  if (!(c > -1)) throw ValidationError("alpha_sequence: c must be > -1");
  if (n < 1) throw ValidationError("alpha_sequence: n must be >= 1");
  if (!(theta >= 0)) throw ValidationError("alpha_sequence: theta must be >= 0");
  std::vector<double> a(n);
  for (int j = 0; j < n; ++j) a[j] = theta * j + c;
  return a;
}

std::vector<double> alpha_sequence(const EnsembleParams& p) {
  return alpha_sequence(p.theta, p.alpha_base(), p.n);
}

std::vector<double> beta_sequence(double beta, int n) {
  if (!(beta > -1)) throw ValidationError("beta_sequence: beta must be > -1");
  if (n < 1) throw ValidationError("beta_sequence: n must be >= 1");
  std::vector<double> b(n);
  for (int k = 1; k <= n; ++k) b[k - 1] = beta + n - k;
  return b;
}

namespace {

std::vector<double> sorted_desc(std::span<const double> s) {
  std::vector<double> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

double log_factorial_product(int n) {
  double s = 0;
  for (int l = 1; l < n; ++l) s += std::lgamma(l + 1.0);
  return s;
}

// Shared pairwise part: sum_{j<k} log(l_j - l_k) + log(l_j^theta - l_k^theta),
// with log l_j - log l_k standing in for the second factor when theta = 0.
LogDensity pair_terms(const std::vector<double>& v, double theta) {
  LogDensity r;
  for (size_t j = 0; j < v.size(); ++j)
    for (size_t k = j + 1; k < v.size(); ++k) {
      if (!(v[j] > v[k])) {
        r.value = -std::numeric_limits<double>::infinity();
        r.degenerate = true;
        return r;
      }
      const double lr = std::log(v[j] / v[k]);
      r.value += std::log(v[j] - v[k]);
      if (theta == 0)
        r.value += std::log(lr);
      else
        r.value += theta * std::log(v[k]) + std::log(std::expm1(theta * lr));
    }
  return r;
}

void check_size(const EnsembleParams& p, std::span<const double> s) {
  if (static_cast<int>(s.size()) != p.n)
    throw ValidationError("spectrum length does not match n");
}

}  // namespace

LogDensity log_pdf_laguerre(const EnsembleParams& p, std::span<const double> spectrum) {
  if (p.family != Family::Laguerre) throw ValidationError("log_pdf_laguerre: wrong family");
  check_size(p, spectrum);
  auto v = sorted_desc(spectrum);
  for (double x : v)
    if (!(x >= 0)) throw std::domain_error("log_pdf_laguerre: negative eigenvalue");
  LogDensity r = pair_terms(v, p.theta);
  if (r.degenerate) return r;
  for (double x : v) r.value += p.c * std::log(x) - x;
  const int n = p.n;
  double logC = 0.5 * n * (n - 1) * std::log(p.theta) + log_factorial_product(n);
  for (int l = 1; l <= n; ++l) logC += std::lgamma(p.theta * (l - 1) + p.c + 1);
  r.value -= logC;
  return r;
}

LogDensity log_pdf_jacobi(const EnsembleParams& p, std::span<const double> spectrum) {
  if (p.family != Family::Jacobi) throw ValidationError("log_pdf_jacobi: wrong family");
  check_size(p, spectrum);
  auto v = sorted_desc(spectrum);
  for (double x : v)
    if (!(x >= 0 && x <= 1)) throw std::domain_error("log_pdf_jacobi: eigenvalue outside [0,1]");
  LogDensity r = pair_terms(v, p.theta);
  if (r.degenerate) return r;
  const int n = p.n;
  const double beta = p.beta();
  const auto bs = beta_sequence(beta, n);
  // beta_n of the top level equals beta
  for (double x : v) r.value += p.c1 * std::log(x) + bs[n - 1] * std::log1p(-x);
  double logC = 0.5 * n * (n - 1) * std::log(p.theta) + log_factorial_product(n);
  for (int l = 1; l <= n; ++l) {
    const double a = p.theta * (l - 1) + p.c1;
    logC += std::lgamma(a + 1) + std::lgamma(bs[l - 1] + 1) - std::lgamma(a + beta + n + 1);
  }
  r.value -= logC;
  return r;
}

LogDensity log_pdf_theta0(const EnsembleParams& p, std::span<const double> spectrum) {
  if (p.family != Family::LaguerreThetaZero) throw ValidationError("log_pdf_theta0: wrong family");
  check_size(p, spectrum);
  auto v = sorted_desc(spectrum);
  for (double x : v)
    if (!(x >= 0)) throw std::domain_error("log_pdf_theta0: negative eigenvalue");
  LogDensity r = pair_terms(v, 0.0);
  if (r.degenerate) return r;
  for (double x : v) r.value += p.c * std::log(x) - x;
  r.value -= p.n * std::lgamma(p.c + 1) + log_factorial_product(p.n);
  return r;
}

LogDensity log_pdf(const EnsembleParams& p, std::span<const double> spectrum) {
  switch (p.family) {
    case Family::Laguerre: return log_pdf_laguerre(p, spectrum);
    case Family::Jacobi: return log_pdf_jacobi(p, spectrum);
    case Family::LaguerreThetaZero: return log_pdf_theta0(p, spectrum);
  }
  throw ValidationError("unknown family");
}

void to_json(nlohmann::json& j, const EnsembleParams& p) {
  j = nlohmann::json{{"family", family_name(p.family)}, {"theta", p.theta}, {"n", p.n}};
  if (p.family == Family::Jacobi) {
    j["c1"] = p.c1;
    j["c2"] = p.c2;
    j["beta"] = p.beta();
  } else {
    j["c"] = p.c;
  }
}

void from_json(const nlohmann::json& j, EnsembleParams& p) {
  p.family = family_from_name(j.at("family").get<std::string>());
  p.theta = j.at("theta").get<double>();
  p.n = j.at("n").get<int>();
  if (p.family == Family::Jacobi) {
    p.c1 = j.at("c1").get<double>();
    p.c2 = j.contains("c2") ? j.at("c2").get<double>() : j.at("beta").get<double>();
  } else {
    p.c = j.at("c").get<double>();
  }
  p.validate();
}

}  // namespace mb
