#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "atto/error.hpp"

namespace atto {

using Cx = std::complex<double>;

/// Dense complex vector. Inner products are linear in the first argument,
/// conjugate-linear in the second.
class CVector {
 public:
  CVector() = default;
  explicit CVector(int dim) : data_(static_cast<size_t>(dim)) {}
  CVector(std::initializer_list<Cx> xs) : data_(xs) {}

  int dim() const { return static_cast<int>(data_.size()); }
  Cx& operator[](int i) { return data_[static_cast<size_t>(i)]; }
  const Cx& operator[](int i) const { return data_[static_cast<size_t>(i)]; }

  const std::vector<Cx>& entries() const { return data_; }
  std::vector<Cx>& entries() { return data_; }

  double norm() const;
  CVector& operator*=(Cx s);
  CVector& operator+=(const CVector& o);
  CVector& operator-=(const CVector& o);

 private:
  std::vector<Cx> data_;
};

Cx inner(const CVector& u, const CVector& v);
CVector operator*(Cx s, const CVector& v);
CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);

/// Dense row-major complex matrix for small problems (n <= ~16).
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols)) {}
  CMatrix(std::initializer_list<std::initializer_list<Cx>> rows);

  static CMatrix identity(int n);
  static CMatrix zero(int rows, int cols);
  static CMatrix diagonal(const std::vector<Cx>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Cx& operator()(int i, int j) { return data_[static_cast<size_t>(i * cols_ + j)]; }
  const Cx& operator()(int i, int j) const { return data_[static_cast<size_t>(i * cols_ + j)]; }

  CVector col(int j) const;
  CVector row(int i) const;
  void set_col(int j, const CVector& v);

  CMatrix transpose() const;
  CMatrix conj() const;
  CMatrix adjoint() const;

  Cx trace() const;
  double norm_fro() const;
  double norm_max() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Cx s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Cx s, CMatrix a);
CVector operator*(const CMatrix& a, const CVector& v);

/// LU factorization with partial pivoting; tiny pivots are bumped to a
/// floor so nearly singular solves (inverse iteration) stay finite.
class LuFactors {
 public:
  explicit LuFactors(CMatrix a, double pivot_floor = 0.0);

  CVector solve(CVector b) const;
  CMatrix solve(CMatrix b) const;
  bool near_singular() const { return near_singular_; }

 private:
  CMatrix lu_;
  std::vector<int> perm_;
  bool near_singular_ = false;
};

CMatrix inverse(const CMatrix& a);

/// Solve x * U = b for x with U upper triangular (right division).
CMatrix solve_upper_right(const CMatrix& b, const CMatrix& u);

}  // namespace atto
