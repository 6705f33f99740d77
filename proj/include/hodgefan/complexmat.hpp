#ifndef HODGEFAN_COMPLEXMAT_HPP
#define HODGEFAN_COMPLEXMAT_HPP

#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace hodgefan {

using cd = std::complex<double>;

/// Dense column-ordered complex matrix, sized for the small blocks that
/// appear in the fan calculus and the per-slice oscillator model.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cd& operator()(int i, int j) { return a_[static_cast<size_t>(j) * rows_ + i]; }
  const cd& operator()(int i, int j) const { return a_[static_cast<size_t>(j) * rows_ + i]; }

  CMatrix adjoint() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  CMatrix operator*(const CMatrix& o) const {
    assert(cols_ == o.rows_);
    CMatrix m(rows_, o.cols_);
    for (int j = 0; j < o.cols_; ++j)
      for (int k = 0; k < cols_; ++k) {
        const cd b = o(k, j);
        if (b == cd(0.0)) continue;
        for (int i = 0; i < rows_; ++i) m(i, j) += (*this)(i, k) * b;
      }
    return m;
  }

  std::vector<cd> apply(const std::vector<cd>& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    std::vector<cd> y(rows_);
    for (int j = 0; j < cols_; ++j) {
      if (x[j] == cd(0.0)) continue;
      for (int i = 0; i < rows_; ++i) y[i] += (*this)(i, j) * x[j];
    }
    return y;
  }

  CMatrix operator+(const CMatrix& o) const {
    CMatrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
  }

  CMatrix operator-(const CMatrix& o) const {
    CMatrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
  }

  CMatrix operator*(cd s) const {
    CMatrix m = *this;
    for (auto& v : m.a_) v *= s;
    return m;
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& v : a_) r = std::max(r, std::abs(v));
    return r;
  }

  double frobenius() const {
    double r = 0.0;
    for (const auto& v : a_) r += std::norm(v);
    return std::sqrt(r);
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cd> a_;
};

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  CMatrix vectors;                  // columns are unit eigenvectors
};

/// Cyclic-Jacobi diagonalization of a complex hermitian matrix.
/// Intended for small blocks; iterates sweeps until the off-diagonal mass
/// drops below 1e-15 of the matrix scale.
inline HermitianEig hermitian_eig(CMatrix a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("hermitian_eig: matrix not square");
  CMatrix v = CMatrix::identity(n);
  const double scale = std::max(a.max_abs(), 1.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) < 1e-15 * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cd apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cd phase = apq / std::abs(apq);
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Two-sided rotation R with R(p,p)=c, R(p,q)=s*phase, R(q,p)=-s*conj(phase), R(q,q)=c.
        for (int i = 0; i < n; ++i) {
          const cd aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * std::conj(phase) * aiq;
          a(i, q) = s * phase * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const cd apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * phase * aqj;
          a(q, j) = s * std::conj(phase) * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const cd vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * std::conj(phase) * viq;
          v(i, q) = s * phase * vip + c * viq;
        }
      }
    }
  }

  // Sort ascending, permuting eigenvector columns to match.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a(order[j], order[j]).real() < a(order[i], order[i]).real()) std::swap(order[i], order[j]);

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.vectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

/// f(A) for hermitian A via eigendecomposition.
template <typename Fn>
CMatrix hermitian_function(const CMatrix& a, Fn&& f) {
  const auto eig = hermitian_eig(a);
  const int n = a.rows();
  CMatrix d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = f(eig.eigenvalues[i]);
  return eig.vectors * d * eig.vectors.adjoint();
}

/// Moore-Penrose pseudo-inverse of a hermitian matrix; eigenvalues below
/// cutoff (relative to the largest) are treated as zero.
inline CMatrix hermitian_pinv(const CMatrix& a, double rel_cutoff = 1e-10) {
  const auto eig = hermitian_eig(a);
  double top = 0.0;
  for (double e : eig.eigenvalues) top = std::max(top, std::abs(e));
  const double cut = top * rel_cutoff;
  const int n = a.rows();
  CMatrix d(n, n);
  for (int i = 0; i < n; ++i)
    d(i, i) = std::abs(eig.eigenvalues[i]) > cut ? 1.0 / eig.eigenvalues[i] : 0.0;
  return eig.vectors * d * eig.vectors.adjoint();
}

}  // namespace hodgefan

#endif
