#pragma once

#include <mpfr.h>

#include <cmath>
#include <utility>

namespace mb {

// Owning wrapper around mpfr_t. Arithmetic goes through the raw mpfr_* calls.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  MpReal(double d, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
  MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(MpReal o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  operator mpfr_ptr() { return v_; }
  operator mpfr_srcptr() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // log2 |v|, -inf for zero
  double log2_abs() const {
    if (mpfr_zero_p(v_)) return -1.0 / 0.0;
    long e;
    const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return static_cast<double>(e) + std::log2(m < 0 ? -m : m);
  }

 private:
  mpfr_t v_;
};

}  // namespace mb
