#include "nckit/linalg.hpp"

#include <cassert>
#include <cmath>

namespace nckit {

RMat RMat::identity(int n) {
  RMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RMat mul(const RMat& a, const RMat& b) {
  assert(a.cols() == b.rows());
  RMat c(a.rows(), b.cols());
  const std::size_t n = std::size_t(b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) simd::axpy(aik, b.row(k), ci, n);
    }
  }
  return c;
}

RMat transpose(const RMat& a) {
  RMat t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

RMat schur(const RMat& a, const RMat& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  RMat c(a.rows(), a.cols());
  simd::ew_mul(a.data(), b.data(), c.data(), a.size());
  return c;
}

RMat add_scaled(const RMat& a, double s, const RMat& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  RMat c = a;
  simd::axpy(s, b.data(), c.data(), c.size());
  return c;
}

double max_abs(const RMat& a) { return simd::max_abs(a.data(), a.size()); }

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat& CMat::operator+=(const CMat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  simd::zaxpy(1.0, o.data(), data(), size());
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  simd::zaxpy(-1.0, o.data(), data(), size());
  return *this;
}

CMat& CMat::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(cplx s, CMat a) { return a *= s; }

CMat mul(const CMat& a, const CMat& b) {
  assert(a.cols() == b.rows());
  CMat c(a.rows(), b.cols());
  const std::size_t n = std::size_t(b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    cplx* ci = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik != cplx(0.0, 0.0)) simd::zaxpy(aik, b.row(k), ci, n);
    }
  }
  return c;
}

CMat adjoint(const CMat& a) {
  CMat t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

CMat hermitian_part(const CMat& a) {
  assert(a.rows() == a.cols());
  CMat h(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

cplx tr(const CMat& a) {
  assert(a.rows() == a.cols());
  cplx s = 0.0;
  for (int i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

cplx tau(const CMat& a) { return tr(a) / double(a.rows()); }

double max_abs(const CMat& a) {
  return simd::max_abs(reinterpret_cast<const double*>(a.data()), 2 * a.size());
}

double fro_norm(const CMat& a) {
  const cplx s = simd::zdotc(a.data(), a.data(), a.size());
  return std::sqrt(std::max(0.0, s.real()));
}

bool is_hermitian(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

} // namespace nckit
