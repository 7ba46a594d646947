#include "nckit/simd.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#if defined(NCKIT_HAVE_AVX2_LANE)
#include <immintrin.h>
#endif

namespace nckit::simd {

namespace scalar {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void rot(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i], yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void ew_mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    ys[2 * i] += ar * xr - ai * xi;
    ys[2 * i + 1] += ar * xi + ai * xr;
  }
}

cplx zdotc(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  const double* as = reinterpret_cast<const double*>(a);
  const double* bs = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = as[2 * i], ai = as[2 * i + 1];
    const double br = bs[2 * i], bi = bs[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

} // namespace scalar

#if defined(NCKIT_HAVE_AVX2_LANE)

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace avx2 {

__attribute__((target("avx2,fma")))
void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma")))
double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  acc0 = _mm256_add_pd(acc0, acc1);
  double lanes[4];
  _mm256_storeu_pd(lanes, acc0);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

__attribute__((target("avx2,fma")))
void rot(double* x, double* y, double c, double s, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, vx, _mm256_mul_pd(vs, vy)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, vx, _mm256_mul_pd(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i], yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

__attribute__((target("avx2,fma")))
void ew_mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

__attribute__((target("avx2,fma")))
double max_abs(const double* a, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vm = _mm256_max_pd(vm, _mm256_andnot_pd(signmask, _mm256_loadu_pd(a + i)));
  double lanes[4];
  _mm256_storeu_pd(lanes, vm);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

__attribute__((target("avx2,fma")))
void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d var = _mm256_set1_pd(a.real());
  const __m256d vai = _mm256_set1_pd(a.imag());
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  // two complex values per 256-bit lane, interleaved (re, im)
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(xs + 2 * i);
    const __m256d vxs = _mm256_permute_pd(vx, 0x5); // (im0, re0, im1, re1)
    const __m256d prod = _mm256_fmaddsub_pd(var, vx, _mm256_mul_pd(vai, vxs));
    _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(_mm256_loadu_pd(ys + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    ys[2 * i] += a.real() * xr - a.imag() * xi;
    ys[2 * i + 1] += a.real() * xi + a.imag() * xr;
  }
}

__attribute__((target("avx2,fma")))
cplx zdotc(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd(); // (ar*br, ai*bi, ...)
  __m256d acc_im = _mm256_setzero_pd(); // (ai*br, ar*bi, ...)
  const double* as = reinterpret_cast<const double*>(a);
  const double* bs = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(as + 2 * i);
    const __m256d vb = _mm256_loadu_pd(bs + 2 * i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), vb, acc_im);
  }
  double lr[4], li[4];
  _mm256_storeu_pd(lr, acc_re);
  _mm256_storeu_pd(li, acc_im);
  double re = lr[0] + lr[1] + lr[2] + lr[3];
  double im = (li[1] + li[3]) - (li[0] + li[2]);
  for (; i < n; ++i) {
    const double ar = as[2 * i], ai = as[2 * i + 1];
    const double br = bs[2 * i], bi = bs[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

} // namespace avx2

#endif // NCKIT_HAVE_AVX2_LANE

namespace {

struct Dispatch {
  Isa isa;
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*rot)(double*, double*, double, double, std::size_t);
  void (*ew_mul)(const double*, const double*, double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*zaxpy)(cplx, const cplx*, cplx*, std::size_t);
  cplx (*zdotc)(const cplx*, const cplx*, std::size_t);
};

Dispatch resolve() {
  Dispatch d{Isa::scalar,    scalar::axpy,    scalar::dot,  scalar::rot,
             scalar::ew_mul, scalar::max_abs, scalar::zaxpy, scalar::zdotc};
  const char* env = std::getenv("NCKIT_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return d;
#if defined(NCKIT_HAVE_AVX2_LANE)
  if (avx2_supported()) {
    d = {Isa::avx2,       avx2::axpy,    avx2::dot,  avx2::rot,
         avx2::ew_mul,    avx2::max_abs, avx2::zaxpy, avx2::zdotc};
  }
#endif
  return d;
}

const Dispatch& table() {
  static const Dispatch d = resolve();
  return d;
}

} // namespace

Isa active_isa() { return table().isa; }

const char* isa_name() { return table().isa == Isa::avx2 ? "avx2" : "scalar"; }

void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }
double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
void rot(double* x, double* y, double c, double s, std::size_t n) { table().rot(x, y, c, s, n); }
void ew_mul(const double* a, const double* b, double* out, std::size_t n) {
  table().ew_mul(a, b, out, n);
}
double max_abs(const double* a, std::size_t n) { return table().max_abs(a, n); }
void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) { table().zaxpy(a, x, y, n); }
cplx zdotc(const cplx* a, const cplx* b, std::size_t n) { return table().zdotc(a, b, n); }

} // namespace nckit::simd
