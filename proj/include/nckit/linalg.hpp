#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nckit/simd.hpp"

namespace nckit {

using cplx = std::complex<double>;

// Dense row-major real matrix.
class RMat {
public:
  RMat() = default;
  RMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0.0) {}

  static RMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }
  double* row(int i) { return a_.data() + std::size_t(i) * cols_; }
  const double* row(int i) const { return a_.data() + std::size_t(i) * cols_; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

RMat mul(const RMat& a, const RMat& b);
RMat transpose(const RMat& a);
RMat schur(const RMat& a, const RMat& b); // entrywise product
RMat add_scaled(const RMat& a, double s, const RMat& b); // a + s*b
double max_abs(const RMat& a);

// Dense row-major complex matrix.
class CMat {
public:
  CMat() = default;
  CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static CMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cplx& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }
  cplx* row(int i) { return a_.data() + std::size_t(i) * cols_; }
  const cplx* row(int i) const { return a_.data() + std::size_t(i) * cols_; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cplx s);

private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(cplx s, CMat a);

CMat mul(const CMat& a, const CMat& b);
CMat adjoint(const CMat& a);
CMat hermitian_part(const CMat& a); // (a + a*)/2
cplx tr(const CMat& a);
cplx tau(const CMat& a); // normalized trace tr(a)/dim, square matrices
double max_abs(const CMat& a);
double fro_norm(const CMat& a);
bool is_hermitian(const CMat& a, double tol);

} // namespace nckit
