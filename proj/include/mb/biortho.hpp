#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mb/params.hpp"

namespace mb {

// Monomial coefficients of a monic polynomial, with a (sign, log|.|) copy.
struct PolyCoeffs {
  std::vector<double> coeff;
  std::vector<double> log_abs;
  std::vector<int> sign;

  int degree() const { return static_cast<int>(coeff.size()) - 1; }
  double eval(double x) const;
};

PolyCoeffs laguerre_q(double theta, double c, int j);
PolyCoeffs jacobi_q(double theta, double c1, double c2, int j);
// q_j for the family of p (theta0 is rejected).
PolyCoeffs family_q(const EnsembleParams& p, int j);

// I_{jk} = int x^j (x^theta)^k w(x) dx
double log_bimoment(const EnsembleParams& p, int j, int k);
double bimoment(const EnsembleParams& p, int j, int k);

// sum_l coeff_l(q_k) I_{m,l}. For m < k returns the sum divided by its largest
// summand (exact integer arithmetic when theta and the exponents are
// nonnegative integers); for m == k returns the unnormalised sum h_k.
double biortho_residual(const EnsembleParams& p, int k, int m);
// true when biortho_residual(p, k, m) takes the exact integer path
bool biortho_exact_path(const EnsembleParams& p, int m, int k);

// Largest normalised residual of the hypergeometric differential equation
// applied to the rescaled q_j at 20 points. Integer theta only.
double hypergeom_check(const EnsembleParams& p, int j);

struct McEstimate {
  double mean = 0, se = 0;
};
// Monte Carlo average of prod_l (x - lambda_l^theta).
McEstimate char_poly_mc(const EnsembleParams& p, double x, int replicas, std::uint64_t seed);

// K_N(x,y) = e^{-(V(x)+V(y))/2} sum_{j,k} x^j (y^theta)^k (B^{-1})_{kj}, solved in
// 113-bit floating point. Refuses N > 12 or a condition estimate above 1e24.
class KernelOracle {
 public:
  explicit KernelOracle(const EnsembleParams& p);
  ~KernelOracle();
  KernelOracle(KernelOracle&&) noexcept;
  double operator()(double x, double y) const;
  double condition() const { return cond_; }

 private:
  struct Impl;
  EnsembleParams p_;
  std::unique_ptr<Impl> impl_;
  double cond_ = 0;
};

}  // namespace mb
