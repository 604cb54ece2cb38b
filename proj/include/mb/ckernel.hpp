#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "mb/params.hpp"
#include "mb/quad.hpp"

namespace mb {

struct KernelValue {
  double value = 0;
  bool experimental = false;  // non-integer c2 Jacobi
  double error_estimate = 0;  // absolute; only set on the experimental path
};

// Finite-N correlation kernel from the residue expansion of the double contour
// integral, evaluated in MPFR arithmetic with precision chosen per point from the
// largest summand. Coefficients are built once and cached. Thread-safe.
//
// Laguerre:  K(x,y) = (x/y)^{c/2} e^{-(x+y)/2} sum_{l,r} D_{lr} y^{alpha_l} x^r
// Jacobi:    K(x,y) = (x/y)^{c1/2} ((1-x)(1-y))^{c2/2}
//                       sum_{l,r} D_{lr} y^{alpha_l} x^r (1-x)^{N-1-r}
class FiniteKernel {
 public:
  explicit FiniteKernel(const EnsembleParams& p);
  ~FiniteKernel();
  FiniteKernel(FiniteKernel&&) noexcept;

  const EnsembleParams& params() const;
  // alpha sequence actually used (after any perturbation)
  const std::vector<double>& alphas() const;
  // true when coincident exponents were spread apart (theta = 0)
  bool perturbed() const;

  double operator()(double x, double y) const;
  KernelValue evaluate(double x, double y) const;
  // Two-level kernel K(n1, x; n2, y) of the Laguerre corner process, 1 <= n1, n2 <= N.
  double two_level(int n1, double x, int n2, double y) const;
  // working precision (bits) the evaluation at (x, y) uses
  long precision_bits(double x, double y) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double kernel_laguerre_series(const EnsembleParams& p, double x, double y);
KernelValue kernel_jacobi(const EnsembleParams& p, double x, double y);

// Same kernels from Gauss-Legendre quadrature on the contours themselves: a rectangle
// around the alpha poles for w and two rays at 3pi/4 through a point between -1 and the
// rectangle for z. Double precision; intended for small N.
double kernel_laguerre_quadrature(const EnsembleParams& p, double x, double y,
                                  const QuadratureOptions& opt = {});
double kernel_jacobi_quadrature(const EnsembleParams& p, double x, double y,
                                const QuadratureOptions& opt = {});

// Support of the globally rescaled variable: [0, L] Laguerre, [0, 1] Jacobi, [0, e] theta = 0.
std::pair<double, double> global_support(const EnsembleParams& p);
// Scaled kernel diagonal approximating the global density of the rescaled variable.
double global_density_estimate(const FiniteKernel& k, double x);

}  // namespace mb
