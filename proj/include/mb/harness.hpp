#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mb/densities.hpp"
#include "mb/params.hpp"
#include "mb/report.hpp"

namespace mb {

struct Histogram {
  std::vector<double> edges;
  std::vector<double> counts;
  std::size_t samples = 0;  // all samples added, including those outside the range

  static Histogram uniform(double lo, double hi, int bins);
  void add(double x);
  void add(std::span<const double> xs);
  int bins() const { return static_cast<int>(counts.size()); }
  // counts / (samples * width); integrates to the in-range fraction
  std::vector<double> densities() const;
};

// 1/2 sum |bin probability - analytic bin mass|, plus half the probability that
// fell outside the histogram range.
double tv_distance(const Histogram& h, const DensityFn& d);
// Same for two histograms on identical edges.
double tv_distance(const Histogram& a, const Histogram& b);

struct KsResult {
  double d = 0;
  double p_value = 1;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct MomentEstimate {
  double mean = 0;
  double se = 0;
};
// Mean of x^p with jackknife standard error, one observation per element.
MomentEstimate moment_estimate(std::span<const double> sample, double p);
// Per-group means of x^p, jackknifed over groups (e.g. one group per spectrum).
MomentEstimate moment_estimate(const std::vector<std::vector<double>>& groups, double p);

// Global rescaling: Laguerre (lambda/(N theta))^theta, Jacobi lambda^theta, theta = 0 lambda/N.
std::vector<double> transform_spectrum(std::span<const double> spectrum, const EnsembleParams& p);

// Every threshold and size used by the verification suites.
struct VerifyConfig {
  // householder-equivalence and corner-process
  int ks_replicas = 10000;
  double ks_alpha = 0.01;           // per-seed p-value floor
  double ks_seed_fraction = 0.8;    // share of seeds that must pass
  double gram_invariance = 1e-12;   // relative, householder_reduce
  int gram_trials = 200;
  // global densities
  int global_n = 200;
  int global_replicas = 100;
  int histogram_bins = 100;
  double tv_max = 0.05;
  double moment_se_band = 3.0;
  double moment_rel_band = 0.05;
  double theta0_mass = 1e-8;
  double arcsine_value = 1e-10;
  // resolvents
  int resolvent_points = 20;
  double resolvent_residual = 1e-6;
  // finite-N kernels
  double kernel_relative = 1e-6;
  double projection_relative = 1e-6;
  double trace_relative = 1e-6;
  // biorthogonality
  int biortho_kmax = 10;
  double biortho_fractional = 1e-8;
  double hypergeom_residual = 1e-9;
  // hard edge
  double bk_cross = 1e-6;
  double bessel_reduction = 1e-8;
  double identity = 1e-6;
  double hard_edge_final = 0.05;
  // characteristic polynomial
  int charpoly_replicas = 100000;
  double charpoly_se_band = 3.0;
};
const VerifyConfig& verify_config();

const std::vector<std::string>& verify_suites();
// Runs one suite (or "all") over the given seeds. Failures and exceptions inside a
// check become failed reports; the batch always completes.
std::vector<VerifyReport> run_verify(const std::string& suite, const std::vector<std::uint64_t>& seeds,
                                     const VerifyConfig& cfg = verify_config());

}  // namespace mb
