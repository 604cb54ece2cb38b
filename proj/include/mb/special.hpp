#pragma once

#include <complex>

namespace mb {

using cplx = std::complex<double>;

// log Gamma(z) on the principal sheet up to multiples of 2*pi*i; exp() of it is Gamma(z).
cplx log_gamma(cplx z);
// log(sin(pi z)), safe for large |Im z|.
cplx log_sin_pi(cplx z);

// log(sin(t)/t) for |t| < pi.
double log_sinc(double t);

enum class WApproach { principal, above_cut };

// Principal branch of Lambert W. With above_cut, real t < -1/e is taken as t + i0.
cplx lambert_w(cplx t, WApproach approach = WApproach::principal);
// Principal W(t) given log t (for |t| beyond double range).
cplx lambert_w_from_log(cplx log_t);

}  // namespace mb
