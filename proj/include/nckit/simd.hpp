#pragma once

#include <complex>
#include <cstddef>

// Data-parallel kernels behind the dense linear algebra layer.
//
// Every kernel has a scalar reference implementation (namespace simd::scalar)
// and, on x86-64, an AVX2+FMA variant (namespace simd::avx2). The top-level
// entry points dispatch through function pointers resolved once at startup
// from CPU capabilities; setting NCKIT_SIMD=scalar in the environment forces
// the reference path. Scalar and vector variants may differ by rounding of
// reassociated sums only; equivalence is pinned by tests/test_simd.cpp.

namespace nckit::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

Isa active_isa();
const char* isa_name();

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);
// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);
// Givens rotation on two rows: (x, y) <- (c*x - s*y, s*x + c*y)
void rot(double* x, double* y, double c, double s, std::size_t n);
// out[i] = a[i] * b[i]  (Schur product row)
void ew_mul(const double* a, const double* b, double* out, std::size_t n);
// max_i |a[i]|
double max_abs(const double* a, std::size_t n);
// y[i] += a * x[i], complex
void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
// sum_i conj(a[i]) * b[i]
cplx zdotc(const cplx* a, const cplx* b, std::size_t n);

namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void rot(double* x, double* y, double c, double s, std::size_t n);
void ew_mul(const double* a, const double* b, double* out, std::size_t n);
double max_abs(const double* a, std::size_t n);
void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
cplx zdotc(const cplx* a, const cplx* b, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define NCKIT_HAVE_AVX2_LANE 1
bool avx2_supported();
namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void rot(double* x, double* y, double c, double s, std::size_t n);
void ew_mul(const double* a, const double* b, double* out, std::size_t n);
double max_abs(const double* a, std::size_t n);
void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
cplx zdotc(const cplx* a, const cplx* b, std::size_t n);
} // namespace avx2
#endif

} // namespace nckit::simd
