#pragma once

#include <utility>
#include <vector>

#include "mb/params.hpp"
#include "mb/quad.hpp"
#include "mb/report.hpp"

namespace mb {

// J_{a,b}(x) = sum_j (-x)^j / (j! Gamma(a + j b)), b > 0. Switches to MPFR when
// the alternating terms would cancel by more than two digits.
double wright_bessel(double a, double b, double x);

// K^{(c,theta)}(x,y) = theta x^c int_0^1 J_{(c+1)/theta,1/theta}(xu) J_{c+1,theta}((yu)^theta) u^c du
double borodin_kernel(double c, double theta, double x, double y);

// The same kernel from the double contour integral: z on a vertical line (theta >= 2)
// or on rays at 3pi/4 (theta < 2) through -min(1/2, (c+1)/(2 theta)), w on a loop
// around the nonnegative integers.
double borodin_kernel_contour(double c, double theta, double x, double y, const QuadratureOptions& opt = {});

// K_{nu_1..nu_M}(x,y) with nu_0 = 0 implicit; nu holds nu_1..nu_M.
double kz_kernel(const std::vector<double>& nu, double x, double y, const QuadratureOptions& opt = {});
// nu_j = c/theta - 1 + j/theta, j = 1..theta
std::vector<double> kz_nu_for(double c, int theta);

// Finite-N kernel at hard-edge scale, aligned with the limit kernel:
// Laguerre (x/y)^{c/2} s K(s x, s y) with s = N^{-1/theta};
// Jacobi (x/y)^{c1/2} s K(s x, s y) with s = N^{-1-1/theta}.
double hard_edge_scaled_kernel(const EnsembleParams& p, double x, double y);

// e_N = max over points of |scaled K_N - K^{(c,theta)}| / sqrt(K^{(c,theta)}(x,x) K^{(c,theta)}(y,y)).
// The report statistic is max_k e_{N_{k+1}} / e_{N_k} against threshold 1 (strict
// decrease); the errors themselves are in detail.
VerifyReport hard_edge_convergence(const EnsembleParams& p, const std::vector<int>& n_list,
                                   const std::vector<std::pair<double, double>>& points);

}  // namespace mb
