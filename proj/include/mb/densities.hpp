#pragma once

#include <complex>
#include <functional>

#include "mb/special.hpp"

namespace mb {

// ---- Fuss-Catalan (Laguerre global density) ----
double fc_support(double theta);  // L = (1+theta)^{1+theta} / theta^theta
double fc_phi_from_x(double theta, double x);
double fc_x_from_phi(double theta, double phi);
double fc_density(double theta, double x);
double fc_moment(double theta, unsigned k);
double fc_small_x(double theta, double x);

// ---- Jacobi counterpart on (0,1) ----
double jfc_phi_from_x(double theta, double x);
double jfc_x_from_phi(double theta, double phi);
double jfc_density(double theta, double x);
// Same density with 1 - x supplied separately (accurate near x = 1).
double jfc_density(double theta, double x, double one_minus_x);
double jfc_moment(double theta, unsigned p);

// ---- theta = 0 limit on (0, e) ----
double theta0_density(double x);
// rho(e^{-s}) e^{-s}: the density in s = -log x
double theta0_density_log(double s);

struct SaddleRoots {
  cplx u_plus, u_minus;
  double phi;
};
SaddleRoots saddle_roots_laguerre(double theta, double x);
SaddleRoots saddle_roots_jacobi(double theta, double x);
// u e^{1/u} = x, upper root
cplx saddle_root_theta0(double x);

// A density on [lo, hi] for quadrature. rho(x, hi - x); left_power p integrates in
// t with x = lo + (hi-lo) t^p to tame an integrable singularity at lo. If rho_log is
// set, integrals run in s = -log x (lo must be 0).
struct DensityFn {
  double lo = 0, hi = 1;
  std::function<double(double, double)> rho;
  double left_power = 1.0;
  std::function<double(double)> rho_log;
};

DensityFn fc_density_fn(double theta);
DensityFn jfc_density_fn(double theta);
DensityFn theta0_density_fn();

// int_a^b rho(x) w(x) dx, with [a,b] inside [lo, hi].
double integrate_density(const DensityFn& d, const std::function<double(double)>& w, double a, double b,
                         double tol = 1e-13);
double density_mass(const DensityFn& d, double a, double b);

// G(z) = int rho(x) / (z - x) dx
cplx resolvent_from_density(const DensityFn& d, cplx z);
cplx resolvent_residual_laguerre(double theta, cplx z);
cplx resolvent_residual_jacobi(double theta, cplx z);
cplx jfc_resolvent_theta_inf(cplx z);

}  // namespace mb
