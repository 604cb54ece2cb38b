#pragma once

#include <complex>
#include <vector>

namespace mb {

using cplx = std::complex<double>;

// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cplx& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  static CMatrix identity(int n);
  CMatrix adjoint() const;
  CMatrix operator*(const CMatrix& b) const;
  double frobenius_norm() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

// Y^dagger Y
CMatrix gram(const CMatrix& y);

// Eigenvalues of a Hermitian matrix, descending. Rejects non-Hermitian input.
std::vector<double> hermitian_eigenvalues(const CMatrix& a);
// Eigenvalues of a real symmetric tridiagonal matrix (diagonal d, off-diagonal e of size n-1), descending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e);
// Eigenvalues of Y^dagger Y, descending, clipped at 0.
std::vector<double> gram_spectrum(const CMatrix& y);

}  // namespace mb
