#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mb/eigensolve.hpp"
#include "mb/params.hpp"
#include "mb/rng.hpp"

namespace mb {

// Zero pattern of the rectangular Gaussian realisation: column k (0-based)
// has nonzero rows 0..k+alpha[k].
struct GaussianMask {
  int rows = 0;
  std::vector<int> alpha;

  int cols() const { return static_cast<int>(alpha.size()); }
  bool allowed(int row, int col) const { return row <= col + alpha[col]; }
  // Throws unless 1+a_1 <= 2+a_2 <= ... <= N+a_N <= M with a_k >= 0.
  void validate() const;
};

// Mask for integer theta, c >= 0 with M rows. The column order of the alpha
// values is ascending when that satisfies the nesting condition, otherwise
// descending; the eigenvalue law depends only on the multiset.
GaussianMask mask_for_params(const EnsembleParams& p, int rows);

CMatrix sample_Y(std::span<const double> alpha, RngStream& rng);
CMatrix sample_X(const GaussianMask& mask, RngStream& rng);
CMatrix householder_reduce(const CMatrix& x);

std::vector<double> corner_step_laguerre(std::span<const double> mu, double alpha_n, RngStream& rng);
std::vector<double> corner_step_jacobi(std::span<const double> mu, double alpha_n, double beta_n,
                                       RngStream& rng);

enum class Method { matrix, corner };

std::vector<double> sample_spectrum(const EnsembleParams& p, Method method, RngStream& rng);

// Replica r uses stream id first_id + r.
std::vector<std::vector<double>> sample_spectra(const EnsembleParams& p, Method method,
                                                std::uint64_t seed, int replicas,
                                                std::uint64_t first_id = 0);

}  // namespace mb
