#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace mb {

using cplx = std::complex<double>;

// Gauss-Legendre rule on [-1, 1] (nodes, weights), cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

struct ContourNode {
  cplx z;  // point
  cplx w;  // weight, includes dz
};

struct ContourSpec {
  enum class Kind { closed_rectangle, vertical_line, hankel_rays, hankel_rectangle };
  Kind kind = Kind::closed_rectangle;
  cplx anchor;
  std::vector<cplx> corners;
  std::vector<ContourNode> nodes;
};

struct QuadratureOptions {
  int order = 16;          // Gauss-Legendre nodes per panel
  double step = 0.5;       // largest panel length
  double cutoff = 1e-17;   // ray truncation, relative to the largest |integrand|
  double max_length = 600; // longest ray before giving up
  double scale = 1.0;      // multiplies every panel length (node-doubling checks use 0.5)
};

// Panels of length growing geometrically from h0 to hmax, from a along unit direction dir.
void add_graded_segment(std::vector<ContourNode>& out, cplx a, cplx dir, double length, double h0,
                        double hmax, int order);

// Counterclockwise rectangle.
ContourSpec rectangle_contour(cplx lower_left, cplx upper_right, double h, int order);

// Rays anchor + t e^{+-i angle}, t >= 0, oriented from the lower ray (inward) to the upper
// ray (outward). Each ray is extended until log|f| stays below max + log(cutoff).
ContourSpec ray_contour(cplx anchor, double angle, double h0, const QuadratureOptions& opt,
                        const std::function<double(cplx)>& log_abs_f);

// Counterclockwise loop around [w0, right]: top side leftward, vertical side at Re w = w0,
// bottom side rightward, at Im w = +-eps.
ContourSpec hankel_rectangle(double w0, double eps, double right, double h0, const QuadratureOptions& opt);

// sum_{i,j} wz_i F(z_i) ww_j G(w_j) / (z_i - w_j) with F = exp(log_f), G = exp(log_g).
cplx double_contour_sum(const ContourSpec& zc, const ContourSpec& wc,
                        const std::function<cplx(cplx)>& log_f, const std::function<cplx(cplx)>& log_g);

}  // namespace mb
