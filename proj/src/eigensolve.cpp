#include "mb/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mb/params.hpp"

namespace mb {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::operator*(const CMatrix& b) const {
  if (cols_ != b.rows_) throw ValidationError("matrix product: shape mismatch");
  CMatrix r(rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const cplx a = (*this)(i, k);
      if (a == cplx(0)) continue;
      for (int j = 0; j < b.cols_; ++j) r(i, j) += a * b(k, j);
    }
  return r;
}

double CMatrix::frobenius_norm() const {
  double s = 0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix gram(const CMatrix& y) {
  const int m = y.rows(), n = y.cols();
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cplx s = 0;
      for (int k = 0; k < m; ++k) s += std::conj(y(k, i)) * y(k, j);
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  for (int i = 0; i < n; ++i) g(i, i) = g(i, i).real();
  return g;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  long sweeps = 0;
  const long max_sweeps = 30L * n;
  for (int l = 0; l < n; ++l) {
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) + dd == dd) break;
      }
      if (m != l) {
        if (++sweeps > max_sweeps)
          throw NumericalError("tridiagonal QL: no convergence after 30*n sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1, c = 1, p = 0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& in) {
  const int n = in.rows();
  if (in.cols() != n) throw ValidationError("hermitian_eigenvalues: matrix not square");
  const double norm = in.frobenius_norm();
  if (!std::isfinite(norm)) throw ValidationError("hermitian_eigenvalues: non-finite entries");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (std::abs(in(i, j) - std::conj(in(j, i))) > 1e-12 * norm)
        throw ValidationError("hermitian_eigenvalues: matrix is not Hermitian");
  if (n == 0) return {};

  CMatrix a = in;
  std::vector<double> d(n), e(n, 0.0);
  std::vector<cplx> v(n), p(n);
  // Householder reduction to tridiagonal form; the complex subdiagonal is
  // replaced by its modulus (diagonal unitary similarity).
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;
    double xn2 = 0;
    for (int i = 0; i < m; ++i) xn2 += std::norm(a(k + 1 + i, k));
    const double xn = std::sqrt(xn2);
    if (xn == 0) {
      e[k] = 0;
      continue;
    }
    const cplx x0 = a(k + 1, k);
    const double ax0 = std::abs(x0);
    const cplx phase = ax0 == 0 ? cplx(1) : x0 / ax0;
    for (int i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] += phase * xn;
    const double tau = 1.0 / (xn * (xn + ax0));  // 2 / |v|^2
    cplx vp = 0;
    for (int i = 0; i < m; ++i) {
      cplx s = 0;
      for (int j = 0; j < m; ++j) s += a(k + 1 + i, k + 1 + j) * v[j];
      p[i] = tau * s;
      vp += std::conj(v[i]) * p[i];
    }
    const double kk = 0.5 * tau * vp.real();
    for (int i = 0; i < m; ++i) p[i] -= kk * v[i];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        a(k + 1 + i, k + 1 + j) -= v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]);
    e[k] = xn;
  }
  if (n >= 2) e[n - 2] = std::abs(a(n - 1, n - 2));
  for (int i = 0; i < n; ++i) d[i] = a(i, i).real();
  return tridiagonal_eigenvalues(std::move(d), std::move(e));
}

std::vector<double> gram_spectrum(const CMatrix& y) {
  const double yn = y.frobenius_norm();
  auto ev = hermitian_eigenvalues(gram(y));
  for (double& x : ev) {
    if (x < 0) {
      if (x < -1e-10 * yn * yn) throw NumericalError("gram_spectrum: negative eigenvalue beyond roundoff");
      x = 0;
    }
  }
  return ev;
}

}  // namespace mb
