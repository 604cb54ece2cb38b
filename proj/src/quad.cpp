#include "mb/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "mb/params.hpp"

namespace mb {

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  if (order < 1 || order > 200) throw ValidationError("gauss_legendre: order out of range");
  std::lock_guard lk(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<double, double>> r(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    r[i] = {-x, w};
    r[n - 1 - i] = {x, w};
  }
  if (n % 2 == 1) r[n / 2].first = 0.0;
  return cache.emplace(order, std::move(r)).first->second;
}

namespace {

void add_panel(std::vector<ContourNode>& out, cplx a, cplx b, int order) {
  const auto& gl = gauss_legendre(order);
  const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (const auto& [x, w] : gl) out.push_back({mid + half * x, half * w});
}

void add_uniform_segment(std::vector<ContourNode>& out, cplx a, cplx b, double h, int order) {
  const int panels = std::max(2, static_cast<int>(std::ceil(std::abs(b - a) / h)));
  for (int k = 0; k < panels; ++k)
    add_panel(out, a + (b - a) * (double(k) / panels), a + (b - a) * (double(k + 1) / panels), order);
}

}  // namespace

void add_graded_segment(std::vector<ContourNode>& out, cplx a, cplx dir, double length, double h0,
                        double hmax, int order) {
  double t = 0, h = std::min(h0, hmax);
  while (t < length) {
    const double t1 = std::min(length, t + h);
    add_panel(out, a + dir * t, a + dir * t1, order);
    t = t1;
    h = std::min(hmax, 1.5 * h);
  }
}

ContourSpec rectangle_contour(cplx ll, cplx ur, double h, int order) {
  ContourSpec c;
  c.kind = ContourSpec::Kind::closed_rectangle;
  const cplx lr(ur.real(), ll.imag()), ul(ll.real(), ur.imag());
  c.corners = {ll, lr, ur, ul};
  c.anchor = 0.5 * (ll + ur);
  add_uniform_segment(c.nodes, ll, lr, h, order);
  add_uniform_segment(c.nodes, lr, ur, h, order);
  add_uniform_segment(c.nodes, ur, ul, h, order);
  add_uniform_segment(c.nodes, ul, ll, h, order);
  return c;
}

ContourSpec ray_contour(cplx anchor, double angle, double h0, const QuadratureOptions& opt,
                        const std::function<double(cplx)>& log_abs_f) {
  ContourSpec c;
  c.kind = std::abs(angle - std::numbers::pi / 2) < 1e-12 ? ContourSpec::Kind::vertical_line
                                                          : ContourSpec::Kind::hankel_rays;
  c.anchor = anchor;
  const double hmax = opt.step * opt.scale;
  h0 *= opt.scale;
  const double log_cut = std::log(opt.cutoff);
  for (int side = -1; side <= 1; side += 2) {
    const cplx dir = std::polar(1.0, side * angle);
    std::vector<ContourNode> ray;
    double t = 0, h = std::min(h0, hmax), maxlog = -std::numeric_limits<double>::infinity();
    int quiet = 0;
    while (true) {
      const double t1 = t + h;
      const size_t start = ray.size();
      add_panel(ray, anchor + dir * t, anchor + dir * t1, opt.order);
      double panel_max = -std::numeric_limits<double>::infinity();
      for (size_t k = start; k < ray.size(); ++k) {
        const double v = log_abs_f(ray[k].z) + std::log(std::abs(ray[k].w));
        if (std::isfinite(v)) panel_max = std::max(panel_max, v);
      }
      maxlog = std::max(maxlog, panel_max);
      quiet = (panel_max < maxlog + log_cut) ? quiet + 1 : 0;
      t = t1;
      h = std::min(hmax, 1.5 * h);
      if (quiet >= 3) break;
      if (t > opt.max_length)
        throw NumericalError("ray contour: integrand has not decayed by length " +
                             std::to_string(opt.max_length) + " (angle " + std::to_string(angle) + ")");
    }
    if (side < 0) {
      // lower ray traversed inward
      std::reverse(ray.begin(), ray.end());
      for (auto& nd : ray) nd.w = -nd.w;
      c.nodes.insert(c.nodes.begin(), ray.begin(), ray.end());
    } else {
      c.nodes.insert(c.nodes.end(), ray.begin(), ray.end());
    }
  }
  return c;
}

ContourSpec hankel_rectangle(double w0, double eps, double right, double h0, const QuadratureOptions& opt) {
  ContourSpec c;
  c.kind = ContourSpec::Kind::hankel_rectangle;
  c.anchor = w0;
  const double hmax = opt.step * opt.scale;
  h0 *= opt.scale;
  const cplx top(w0, eps), bot(w0, -eps);
  c.corners = {cplx(right, eps), top, bot, cplx(right, -eps)};
  std::vector<ContourNode> upper;
  add_graded_segment(upper, top, 1.0, right - w0, h0, hmax, opt.order);
  std::reverse(upper.begin(), upper.end());
  for (auto& nd : upper) nd.w = -nd.w;
  c.nodes = upper;
  add_uniform_segment(c.nodes, top, bot, std::min(h0, hmax), opt.order);
  add_graded_segment(c.nodes, bot, 1.0, right - w0, h0, hmax, opt.order);
  return c;
}

cplx double_contour_sum(const ContourSpec& zc, const ContourSpec& wc, const std::function<cplx(cplx)>& log_f,
                        const std::function<cplx(cplx)>& log_g) {
  auto scaled = [](const ContourSpec& c, const std::function<cplx(cplx)>& lf, double& mx) {
    std::vector<cplx> lv(c.nodes.size());
    mx = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < lv.size(); ++i) {
      lv[i] = lf(c.nodes[i].z);
      if (std::isfinite(lv[i].real())) mx = std::max(mx, lv[i].real());
    }
    std::vector<cplx> a(lv.size());
    for (size_t i = 0; i < lv.size(); ++i)
      a[i] = std::isfinite(lv[i].real()) ? c.nodes[i].w * std::exp(lv[i] - mx) : cplx(0);
    return a;
  };
  double mz, mw;
  const auto a = scaled(zc, log_f, mz);
  const auto b = scaled(wc, log_g, mw);
  cplx s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cplx(0)) continue;
    const cplx zi = zc.nodes[i].z;
    cplx t = 0;
    for (size_t j = 0; j < b.size(); ++j) t += b[j] / (zi - wc.nodes[j].z);
    s += a[i] * t;
  }
  return s * std::exp(mz + mw);
}

}  // namespace mb
