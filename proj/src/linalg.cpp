#include "atto/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace atto {

double CVector::norm() const {
  double s = 0.0;
  for (const Cx& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

CVector& CVector::operator*=(Cx s) {
  for (Cx& x : data_) x *= s;
  return *this;
}

CVector& CVector::operator+=(const CVector& o) {
  for (int i = 0; i < dim(); ++i) data_[static_cast<size_t>(i)] += o[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& o) {
  for (int i = 0; i < dim(); ++i) data_[static_cast<size_t>(i)] -= o[i];
  return *this;
}

Cx inner(const CVector& u, const CVector& v) {
  Cx s = 0.0;
  for (int i = 0; i < u.dim(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

CVector operator*(Cx s, const CVector& v) {
  CVector r = v;
  r *= s;
  return r;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Cx>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<size_t>(rows_ * cols_));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw Error(ErrorCode::Dimension, "ragged initializer");
    for (const Cx& x : r) data_.push_back(x);
  }
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::zero(int rows, int cols) { return CMatrix(rows, cols); }

CMatrix CMatrix::diagonal(const std::vector<Cx>& d) {
  const int n = static_cast<int>(d.size());
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<size_t>(i)];
  return m;
}

CVector CMatrix::col(int j) const {
  CVector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

CVector CMatrix::row(int i) const {
  CVector v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

void CMatrix::set_col(int j, const CVector& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Cx CMatrix::trace() const {
  Cx s = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double CMatrix::norm_fro() const {
  double s = 0.0;
  for (const Cx& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double CMatrix::norm_max() const {
  double s = 0.0;
  for (const Cx& x : data_) s = std::max(s, std::abs(x));
  return s;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Cx s) {
  for (Cx& x : data_) x *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::Dimension, "matmul shape mismatch");
  CMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Cx aik = a(i, k);
      if (aik == Cx(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CMatrix operator*(Cx s, CMatrix a) { return a *= s; }

CVector operator*(const CMatrix& a, const CVector& v) {
  if (a.cols() != v.dim()) throw Error(ErrorCode::Dimension, "matvec shape mismatch");
  CVector r(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Cx s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

LuFactors::LuFactors(CMatrix a, double pivot_floor) : lu_(std::move(a)) {
  if (!lu_.square()) throw Error(ErrorCode::Dimension, "LU requires a square matrix");
  const int n = lu_.rows();
  perm_.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm_[static_cast<size_t>(i)] = i;

  double scale = lu_.norm_max();
  if (scale == 0.0) scale = 1.0;
  const double floor = pivot_floor > 0.0 ? pivot_floor : 1e-300;

  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double m = std::abs(lu_(i, k));
      if (m > best) {
        best = m;
        p = i;
      }
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[static_cast<size_t>(k)], perm_[static_cast<size_t>(p)]);
    }
    if (std::abs(lu_(k, k)) < 1e-14 * scale) near_singular_ = true;
    if (std::abs(lu_(k, k)) < floor) lu_(k, k) = Cx(floor, 0.0);
    const Cx inv_piv = 1.0 / lu_(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Cx f = lu_(i, k) * inv_piv;
      lu_(i, k) = f;
      if (f == Cx(0.0)) continue;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

CVector LuFactors::solve(CVector b) const {
  const int n = lu_.rows();
  CVector x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm_[static_cast<size_t>(i)]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

CMatrix LuFactors::solve(CMatrix b) const {
  CMatrix x(b.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) x.set_col(j, solve(b.col(j)));
  return x;
}

CMatrix inverse(const CMatrix& a) {
  LuFactors lu(a);
  return lu.solve(CMatrix::identity(a.rows()));
}

CMatrix solve_upper_right(const CMatrix& b, const CMatrix& u) {
  // x u = b, u upper triangular: forward substitution over columns.
  const int n = u.rows();
  CMatrix x(b.rows(), n);
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < n; ++j) {
      Cx s = b(i, j);
      for (int k = 0; k < j; ++k) s -= x(i, k) * u(k, j);
      x(i, j) = s / u(j, j);
    }
  }
  return x;
}

}  // namespace atto
