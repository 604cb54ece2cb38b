#include "mb/mb.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>
#include <vector>

#include "mb/biortho.hpp"
#include "mb/ckernel.hpp"
#include "mb/densities.hpp"
#include "mb/hardedge.hpp"
#include "mb/harness.hpp"
#include "mb/sampler.hpp"

#ifndef MB_GIT_DESCRIBE
#define MB_GIT_DESCRIBE "unknown"
#endif

struct mb_spectra {
  std::vector<std::vector<double>> rows;
};

struct mb_kernel {
  explicit mb_kernel(const mb::EnsembleParams& p) : k(p) {}
  mb::FiniteKernel k;
};

namespace {

thread_local std::string g_last_error;

template <class F>
mb_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return MB_OK;
  } catch (const mb::NumericalError& e) {
    g_last_error = e.what();
    return MB_ERR_NUMERICAL;
  } catch (const std::invalid_argument& e) {  // ValidationError and json/stoi errors
    g_last_error = e.what();
    return MB_ERR_VALIDATION;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return MB_ERR_VALIDATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MB_ERR_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (!ptr) throw mb::ValidationError(std::string(what) + " must not be NULL");
}

mb::EnsembleParams convert(const mb_params* p) {
  require(p, "params");
  mb::EnsembleParams q;
  switch (p->family) {
    case MB_FAMILY_LAGUERRE: q = mb::EnsembleParams::laguerre(p->theta, p->c, p->n); break;
    case MB_FAMILY_JACOBI: q = mb::EnsembleParams::jacobi(p->theta, p->c1, p->c2, p->n); break;
    case MB_FAMILY_THETA_ZERO: q = mb::EnsembleParams::theta_zero(p->c, p->n); break;
    default: throw mb::ValidationError("unknown family");
  }
  q.validate();
  return q;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mb::DensityFn density_for(const mb_params* p) {
  require(p, "params");
  switch (p->family) {
    case MB_FAMILY_LAGUERRE:
      if (!(p->theta > 0)) throw mb::ValidationError("theta must be > 0");
      return mb::fc_density_fn(p->theta);
    case MB_FAMILY_JACOBI:
      if (!(p->theta > 0)) throw mb::ValidationError("theta must be > 0");
      return mb::jfc_density_fn(p->theta);
    case MB_FAMILY_THETA_ZERO: return mb::theta0_density_fn();
  }
  throw mb::ValidationError("unknown family");
}

}  // namespace

extern "C" {

const char* mb_version(void) { return MB_VERSION_STRING; }
const char* mb_git_describe(void) { return MB_GIT_DESCRIBE; }
const char* mb_last_error(void) { return g_last_error.c_str(); }
void mb_string_free(char* s) { std::free(s); }

mb_status mb_params_validate(const mb_params* p) {
  return guard([&] { convert(p); });
}

mb_status mb_params_to_json(const mb_params* p, char** json) {
  return guard([&] {
    require(json, "json");
    *json = dup_string(nlohmann::json(convert(p)).dump());
  });
}

mb_status mb_params_from_json(const char* json, mb_params* out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    const auto q = nlohmann::json::parse(json).get<mb::EnsembleParams>();
    mb_params r{};
    r.theta = q.theta;
    r.n = q.n;
    switch (q.family) {
      case mb::Family::Laguerre: r.family = MB_FAMILY_LAGUERRE; r.c = q.c; break;
      case mb::Family::Jacobi: r.family = MB_FAMILY_JACOBI; r.c1 = q.c1; r.c2 = q.c2; break;
      case mb::Family::LaguerreThetaZero: r.family = MB_FAMILY_THETA_ZERO; r.c = q.c; break;
    }
    *out = r;
  });
}

mb_status mb_sample(const mb_params* p, mb_method method, uint64_t seed, int replicas, uint64_t first_id,
                    mb_spectra** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    if (method != MB_METHOD_MATRIX && method != MB_METHOD_CORNER) throw mb::ValidationError("unknown method");
    auto s = std::make_unique<mb_spectra>();
    s->rows = mb::sample_spectra(convert(p), method == MB_METHOD_MATRIX ? mb::Method::matrix : mb::Method::corner,
                                 seed, replicas, first_id);
    *out = s.release();
  });
}

int mb_spectra_count(const mb_spectra* s) { return s ? static_cast<int>(s->rows.size()) : 0; }
int mb_spectra_size(const mb_spectra* s) {
  return (s && !s->rows.empty()) ? static_cast<int>(s->rows.front().size()) : 0;
}
const double* mb_spectra_row(const mb_spectra* s, int i) {
  if (!s || i < 0 || i >= static_cast<int>(s->rows.size())) return nullptr;
  return s->rows[i].data();
}
void mb_spectra_free(mb_spectra* s) { delete s; }

mb_status mb_transform_spectrum(const mb_params* p, const double* in, int len, double* out) {
  return guard([&] {
    if (len < 0) throw mb::ValidationError("len must be >= 0");
    if (len == 0) return;
    require(in, "in");
    require(out, "out");
    const auto t = mb::transform_spectrum(std::span<const double>(in, len), convert(p));
    std::copy(t.begin(), t.end(), out);
  });
}

mb_status mb_density_support(const mb_params* p, double* lo, double* hi) {
  return guard([&] {
    require(lo, "lo");
    require(hi, "hi");
    const auto d = density_for(p);
    *lo = d.lo;
    *hi = d.hi;
  });
}

mb_status mb_density(const mb_params* p, double x, double* out) {
  return guard([&] {
    require(out, "out");
    density_for(p);  // validates family and theta
    switch (p->family) {
      case MB_FAMILY_LAGUERRE: *out = mb::fc_density(p->theta, x); break;
      case MB_FAMILY_JACOBI: *out = mb::jfc_density(p->theta, x); break;
      default: *out = mb::theta0_density(x); break;
    }
  });
}

mb_status mb_moment(const mb_params* p, unsigned k, double* out) {
  return guard([&] {
    require(out, "out");
    const auto d = density_for(p);
    switch (p->family) {
      case MB_FAMILY_LAGUERRE: *out = mb::fc_moment(p->theta, k); break;
      case MB_FAMILY_JACOBI: *out = mb::jfc_moment(p->theta, k); break;
      default:  // no closed form; quadrature against the density
        *out = mb::integrate_density(d, [k](double x) { return std::pow(x, k); }, d.lo, d.hi);
        break;
    }
  });
}

mb_status mb_kernel_create(const mb_params* p, mb_kernel** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    *out = new mb_kernel(convert(p));
  });
}

mb_status mb_kernel_eval(const mb_kernel* k, double x, double y, double* value, double* error_estimate,
                         int* experimental) {
  return guard([&] {
    require(k, "kernel");
    require(value, "value");
    const auto v = k->k.evaluate(x, y);
    *value = v.value;
    if (error_estimate) *error_estimate = v.error_estimate;
    if (experimental) *experimental = v.experimental ? 1 : 0;
  });
}

mb_status mb_kernel_two_level(const mb_kernel* k, int n1, double x, int n2, double y, double* out) {
  return guard([&] {
    require(k, "kernel");
    require(out, "out");
    *out = k->k.two_level(n1, x, n2, y);
  });
}

mb_status mb_kernel_density(const mb_kernel* k, double x, double* out) {
  return guard([&] {
    require(k, "kernel");
    require(out, "out");
    *out = mb::global_density_estimate(k->k, x);
  });
}

void mb_kernel_free(mb_kernel* k) { delete k; }

mb_status mb_kernel_quadrature(const mb_params* p, double x, double y, double* out) {
  return guard([&] {
    require(out, "out");
    const auto q = convert(p);
    *out = q.is_jacobi() ? mb::kernel_jacobi_quadrature(q, x, y) : mb::kernel_laguerre_quadrature(q, x, y);
  });
}

mb_status mb_q_eval(const mb_params* p, int j, double x, double* out) {
  return guard([&] {
    require(out, "out");
    *out = mb::family_q(convert(p), j).eval(x);
  });
}

mb_status mb_wright_bessel(double a, double b, double x, double* out) {
  return guard([&] {
    require(out, "out");
    *out = mb::wright_bessel(a, b, x);
  });
}

mb_status mb_hard_edge_kernel(double c, double theta, double x, double y, double* out) {
  return guard([&] {
    require(out, "out");
    *out = mb::borodin_kernel(c, theta, x, y);
  });
}

mb_status mb_hard_edge_kernel_contour(double c, double theta, double x, double y, double* out) {
  return guard([&] {
    require(out, "out");
    *out = mb::borodin_kernel_contour(c, theta, x, y);
  });
}

mb_status mb_hard_edge_scaled(const mb_params* p, double x, double y, double* out) {
  return guard([&] {
    require(out, "out");
    *out = mb::hard_edge_scaled_kernel(convert(p), x, y);
  });
}

mb_status mb_hard_edge_convergence(const mb_params* p, const int* n_list, int n_count, const double* xs,
                                   const double* ys, int n_points, char** report_json, int* pass) {
  return guard([&] {
    require(report_json, "report_json");
    if (n_count < 0 || n_points < 0) throw mb::ValidationError("counts must be >= 0");
    if (n_count > 0) require(n_list, "n_list");
    if (n_points > 0) require(xs, "xs"), require(ys, "ys");
    std::vector<int> ns(n_list, n_list + n_count);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < n_points; ++i) pts.emplace_back(xs[i], ys[i]);
    const auto r = mb::hard_edge_convergence(convert(p), ns, pts);
    *report_json = dup_string(nlohmann::json(r).dump());
    if (pass) *pass = r.pass ? 1 : 0;
  });
}

int mb_verify_suite_count(void) { return static_cast<int>(mb::verify_suites().size()); }

const char* mb_verify_suite_name(int i) {
  const auto& s = mb::verify_suites();
  if (i < 0 || i >= static_cast<int>(s.size())) return nullptr;
  return s[i].c_str();
}

mb_status mb_verify(const char* suite, const uint64_t* seeds, int n_seeds, char** reports_json, int* n_failed) {
  return guard([&] {
    require(suite, "suite");
    require(reports_json, "reports_json");
    if (n_seeds < 1) throw mb::ValidationError("need at least one seed");
    require(seeds, "seeds");
    const std::string name(suite);
    const auto& known = mb::verify_suites();
    if (name != "all" && std::find(known.begin(), known.end(), name) == known.end())
      throw mb::ValidationError("unknown suite '" + name + "'");
    const auto reports = mb::run_verify(name, std::vector<std::uint64_t>(seeds, seeds + n_seeds));
    int failed = 0;
    for (const auto& r : reports) failed += r.pass ? 0 : 1;
    *reports_json = dup_string(nlohmann::json(reports).dump(2));
    if (n_failed) *n_failed = failed;
  });
}

}  // extern "C"
