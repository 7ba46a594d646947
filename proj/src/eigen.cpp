#include "nckit/eigen.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nckit {

namespace {

// Householder reduction of symmetric a (destroyed) to tridiagonal (d, e).
// With accumulate, a is replaced by the orthogonal Q of A = Q T Q^T.
void tridiagonalize(RMat& a, std::vector<double>& d, std::vector<double>& e, bool accumulate) {
  const int n = a.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          if (accumulate) a(j, i) = a(i, j) / h;
          g = simd::dot(a.row(j), a.row(i), std::size_t(j) + 1);
          for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a(i, j);
          e[j] = g = e[j] - hh * f;
          simd::axpy(-f, e.data(), a.row(j), std::size_t(j) + 1);
          simd::axpy(-g, a.row(i), a.row(j), std::size_t(j) + 1);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  if (!accumulate) {
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
    return;
  }
  for (int i = 0; i < n; ++i) {
    const int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k) g += a(i, k) * a(k, j);
        for (int k = 0; k <= l; ++k) a(k, j) -= g * a(k, i);
      }
    }
    d[i] = a(i, i);
    a(i, i) = 1.0;
    for (int j = 0; j <= l; ++j) a(j, i) = a(i, j) = 0.0;
  }
}

// Implicit-shift QL on tridiagonal (d, e). If v is non-null its ROWS are
// rotated along; on entry v rows must hold Q^T so that rows end up as
// eigenvectors.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, RMat* v) {
  const int n = int(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  // deflation needs an absolute floor at the rounding noise of the whole
  // matrix, else near-zero clusters inside a large-norm matrix stall
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::fabs(d[i]) + std::fabs(e[i]));
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * (dd + anorm)) break;
      }
      if (m != l) {
        if (iter++ == 64) throw std::runtime_error("eig: QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (v != nullptr) simd::rot(v->row(i), v->row(i + 1), c, s, std::size_t(v->cols()));
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void sort_ascending(std::vector<double>& d, RMat* v) {
  const int n = int(d.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
  std::vector<double> ds(n);
  for (int i = 0; i < n; ++i) ds[i] = d[idx[i]];
  d = std::move(ds);
  if (v != nullptr) {
    RMat vs(n, v->cols());
    for (int i = 0; i < n; ++i)
      std::copy(v->row(idx[i]), v->row(idx[i]) + v->cols(), vs.row(i));
    *v = std::move(vs);
  }
}

RMat real_embedding(const CMat& x) {
  const int d = x.rows();
  RMat e(2 * d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = x(i, j).real(), im = x(i, j).imag();
      e(i, j) = re;
      e(i + d, j + d) = re;
      e(i, j + d) = -im;
      e(i + d, j) = im;
    }
  return e;
}

} // namespace

SymEig eig_sym(const RMat& a) {
  assert(a.rows() == a.cols());
  const int n = a.rows();
  SymEig out;
  if (n == 0) return out;
  RMat work = a;
  std::vector<double> d, e;
  tridiagonalize(work, d, e, true);
  RMat v = transpose(work); // rows of v = columns of Q
  ql_implicit(d, e, &v);
  sort_ascending(d, &v);
  out.values = std::move(d);
  out.vectors = std::move(v);
  return out;
}

std::vector<double> eigvals_sym(const RMat& a) {
  assert(a.rows() == a.cols());
  if (a.rows() == 0) return {};
  RMat work = a;
  std::vector<double> d, e;
  tridiagonalize(work, d, e, false);
  ql_implicit(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> eigvals_herm(const CMat& x) {
  assert(x.rows() == x.cols());
  const std::vector<double> both = eigvals_sym(real_embedding(x));
  std::vector<double> vals(x.rows());
  for (int k = 0; k < x.rows(); ++k) vals[k] = 0.5 * (both[2 * k] + both[2 * k + 1]);
  return vals;
}

HermEig eig_herm(const CMat& x) {
  assert(x.rows() == x.cols());
  const int d = x.rows();
  HermEig out;
  out.vectors = CMat(d, d);
  if (d == 0) return out;
  SymEig es = eig_sym(real_embedding(x));
  double anorm = 0.0;
  for (double v : es.values) anorm = std::max(anorm, std::fabs(v));
  const double ctol = std::max(1e-300, 1e-12 * anorm);

  // every eigenvalue of x shows up twice in the embedding; pair index k owns
  // embedding rows 2k and 2k+1
  std::vector<double> pairval(d);
  for (int k = 0; k < d; ++k) pairval[k] = 0.5 * (es.values[2 * k] + es.values[2 * k + 1]);

  out.values.reserve(d);
  int filled = 0;
  int k0 = 0;
  while (k0 < d) {
    int k1 = k0 + 1;
    while (k1 < d && pairval[k1] - pairval[k1 - 1] <= ctol) ++k1;
    const int m = k1 - k0;       // cluster of m pairs, real dimension 2m
    const int count = 2 * m;
    // candidate complex vectors z = u + iv from the real rows (u | v)
    std::vector<std::vector<cplx>> cand(count, std::vector<cplx>(d));
    for (int j = 0; j < count; ++j) {
      const double* r = es.vectors.row(2 * k0 + j);
      for (int i = 0; i < d; ++i) cand[j][i] = cplx(r[i], r[i + d]);
    }
    std::vector<double> norm2(count);
    for (int j = 0; j < count; ++j)
      norm2[j] = simd::zdotc(cand[j].data(), cand[j].data(), d).real();
    for (int pick = 0; pick < m; ++pick) {
      int best = 0;
      for (int j = 1; j < count; ++j)
        if (norm2[j] > norm2[best]) best = j;
      const double nrm = std::sqrt(std::max(norm2[best], 0.0));
      if (nrm < 1e-150) throw std::runtime_error("eig_herm: degenerate cluster extraction failed");
      const double inv = 1.0 / nrm;
      for (int i = 0; i < d; ++i) cand[best][i] *= inv;
      out.values.push_back(pairval[k0 + pick]);
      cplx* w = out.vectors.row(filled);
      for (int i = 0; i < d; ++i) w[i] = std::conj(cand[best][i]);
      ++filled;
      norm2[best] = -1.0;
      for (int j = 0; j < count; ++j) {
        if (norm2[j] < 0.0) continue;
        const cplx proj = simd::zdotc(cand[best].data(), cand[j].data(), d);
        simd::zaxpy(-proj, cand[best].data(), cand[j].data(), d);
        norm2[j] = simd::zdotc(cand[j].data(), cand[j].data(), d).real();
      }
    }
    k0 = k1;
  }
  assert(filled == d);
  return out;
}

CMat herm_fn(const CMat& x, const std::function<double(double)>& f) {
  HermEig e = eig_herm(x);
  const int d = x.rows();
  CMat scaled = e.vectors;
  for (int k = 0; k < d; ++k) {
    const double fk = f(e.values[k]);
    cplx* r = scaled.row(k);
    for (int i = 0; i < d; ++i) r[i] *= fk;
  }
  return mul(adjoint(e.vectors), scaled);
}

CMat expm_herm(const CMat& x) {
  return herm_fn(x, [](double t) { return std::exp(t); });
}

double opnorm_herm(const CMat& x) {
  const std::vector<double> v = eigvals_herm(x);
  double m = 0.0;
  for (double t : v) m = std::max(m, std::fabs(t));
  return m;
}

std::vector<double> sing_vals(const CMat& x) {
  const CMat g = mul(adjoint(x), x);
  std::vector<double> ev = eigvals_herm(g);
  for (double& t : ev) t = std::sqrt(std::max(0.0, t));
  return ev;
}

double opnorm(const CMat& x) {
  const std::vector<double> s = sing_vals(x);
  return s.empty() ? 0.0 : s.back();
}

} // namespace nckit
