#include "nckit/star_algebra.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "nckit/gromov.hpp"

namespace nckit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kCoeffTruncation = 1e-13;

FiniteGroup abelian_power(int n, int m) {
  // Z_n^m, mixed radix, first coordinate most significant
  std::size_t order = 1;
  for (int i = 0; i < m; ++i) order *= std::size_t(n);
  const int N = int(order);
  std::vector<int> table(std::size_t(N) * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      int x = a, y = b, enc = 0, base = 1;
      for (int i = 0; i < m; ++i) {
        enc += ((x % n + y % n) % n) * base;
        x /= n;
        y /= n;
        base *= n;
      }
      table[std::size_t(a) * N + b] = enc;
    }
  return make_group(N, std::move(table));
}

} // namespace

StarAlgebra left_regular_algebra(const FiniteGroup& g, const LengthFunction& psi) {
  const CnCertificate cn = check_cn_length(g, psi);
  if (!cn.is_cn)
    throw std::invalid_argument("left_regular_algebra: psi is not conditionally negative");
  StarAlgebra a;
  a.dim = g.order;
  a.label = "group";
  a.index = g;
  a.psi = psi.psi;
  a.basis.resize(g.order);
  for (int x = 0; x < g.order; ++x) {
    Monomial w;
    w.perm.resize(g.order);
    w.phase.assign(g.order, cplx(1.0, 0.0));
    for (int h = 0; h < g.order; ++h) w.perm[h] = g.mul(x, h);
    a.basis[x] = std::move(w);
  }
  return a;
}

StarAlgebra heisenberg_weyl_algebra(int n) {
  if (n < 2) throw std::invalid_argument("heisenberg_weyl_algebra: n must be >= 2");
  StarAlgebra a;
  a.dim = n;
  a.label = "heisenberg-weyl";
  a.index = abelian_power(n, 2); // (b, c) encoded b*n + c
  a.psi.assign(std::size_t(n) * n, 0.0);
  a.basis.resize(std::size_t(n) * n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      const int g = b * n + c;
      a.psi[g] = 2.0 - (b == 0 ? 1.0 : 0.0) - (c == 0 ? 1.0 : 0.0);
      Monomial w;
      w.perm.resize(n);
      w.phase.resize(n);
      // (v_c u_b) delta_j = e^{2 pi i b j / n} delta_{j+c}
      for (int j = 0; j < n; ++j) {
        w.perm[j] = (j + c) % n;
        const double ang = kTwoPi * double(b) * double(j) / double(n);
        w.phase[j] = cplx(std::cos(ang), std::sin(ang));
      }
      a.basis[g] = std::move(w);
    }
  return a;
}

StarAlgebra walsh_algebra(int n, int m) {
  if (n < 2 || m < 1) throw std::invalid_argument("walsh_algebra: need n >= 2, m >= 1");
  double sz = 1.0;
  for (int i = 0; i < m; ++i) sz *= n;
  if (sz > 4096.0) throw std::length_error("walsh_algebra: n^m exceeds 4096");
  const int d = int(sz);

  StarAlgebra a;
  a.dim = d;
  a.label = "walsh";
  a.diagonal = true;
  a.index = abelian_power(n, m);
  a.psi.assign(d, 0.0);
  a.basis.resize(d);
  for (int g = 0; g < d; ++g) {
    int x = g, support = 0;
    for (int i = 0; i < m; ++i) {
      if (x % n != 0) ++support;
      x /= n;
    }
    a.psi[g] = double(support);
    Monomial w;
    w.perm.resize(d);
    w.phase.resize(d);
    for (int y = 0; y < d; ++y) {
      w.perm[y] = y;
      int xg = g, yy = y;
      long phase_num = 0;
      for (int i = 0; i < m; ++i) {
        phase_num += long(xg % n) * long(yy % n);
        xg /= n;
        yy /= n;
      }
      const double ang = kTwoPi * double(phase_num % n) / double(n);
      w.phase[y] = cplx(std::cos(ang), std::sin(ang));
    }
    a.basis[g] = std::move(w);
  }
  return a;
}

CMat basis_matrix(const StarAlgebra& a, int g) {
  CMat w(a.dim, a.dim);
  const Monomial& m = a.basis[g];
  for (int j = 0; j < a.dim; ++j) w(m.perm[j], j) = m.phase[j];
  return w;
}

std::vector<cplx> fourier_coeffs(const StarAlgebra& a, const CMat& x) {
  const int d = a.dim;
  std::vector<cplx> c(a.basis_size());
  for (int g = 0; g < a.basis_size(); ++g) {
    const Monomial& w = a.basis[g];
    cplx s = 0.0;
    for (int j = 0; j < d; ++j) s += std::conj(w.phase[j]) * x(w.perm[j], j);
    c[g] = s / double(d);
  }
  return c;
}

CMat from_coeffs(const StarAlgebra& a, const std::vector<cplx>& coeffs) {
  CMat x(a.dim, a.dim);
  for (int g = 0; g < a.basis_size(); ++g) {
    const cplx c = coeffs[g];
    if (c == cplx(0.0, 0.0)) continue;
    const Monomial& w = a.basis[g];
    for (int j = 0; j < a.dim; ++j) x(w.perm[j], j) += c * w.phase[j];
  }
  return x;
}

namespace {

CMat multiplier_apply(const StarAlgebra& a, const CMat& x,
                      const std::function<double(double)>& factor) {
  std::vector<cplx> c = fourier_coeffs(a, x);
  for (int g = 0; g < a.basis_size(); ++g) {
    if (std::abs(c[g]) < kCoeffTruncation) c[g] = 0.0;
    c[g] *= factor(a.psi[g]);
  }
  return from_coeffs(a, c);
}

} // namespace

CMat semigroup_apply(const StarAlgebra& a, const CMat& x, double t) {
  if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be >= 0");
  return multiplier_apply(a, x, [t](double p) { return std::exp(-t * p); });
}

CMat generator_apply(const StarAlgebra& a, const CMat& x) {
  return multiplier_apply(a, x, [](double p) { return p; });
}

CMat fixed_point_project(const StarAlgebra& a, const CMat& x) {
  return multiplier_apply(a, x, [](double p) { return p == 0.0 ? 1.0 : 0.0; });
}

CMat alg_mul(const StarAlgebra& a, const CMat& x, const CMat& y) {
  if (!a.diagonal) return mul(x, y);
  CMat z(a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i) z(i, i) = x(i, i) * y(i, i);
  return z;
}

GammaPair gamma_forms(const StarAlgebra& a, const CMat& x, const CMat& y) {
  const auto gamma = [&](const CMat& u, const CMat& v) {
    const CMat us = adjoint(u);
    CMat g = alg_mul(a, generator_apply(a, us), v);
    g += alg_mul(a, us, generator_apply(a, v));
    g -= generator_apply(a, alg_mul(a, us, v));
    g *= 0.5;
    return g;
  };
  GammaPair out;
  out.gamma = gamma(x, y);
  const CMat ax = generator_apply(a, x);
  const CMat ay = generator_apply(a, y);
  CMat g2 = gamma(ax, y);
  g2 += gamma(x, ay);
  g2 -= generator_apply(a, out.gamma);
  g2 *= 0.5;
  out.gamma2 = std::move(g2);
  return out;
}

CMat gamma_gromov(const StarAlgebra& a, const CMat& x, const CMat& y, int pow) {
  const std::vector<cplx> cx = fourier_coeffs(a, x);
  const std::vector<cplx> cy = fourier_coeffs(a, y);
  CMat out(a.dim, a.dim);
  std::vector<int> inv_perm(a.dim);
  for (int g = 0; g < a.basis_size(); ++g) {
    if (std::abs(cx[g]) < kCoeffTruncation) continue;
    const Monomial& wg = a.basis[g];
    for (int i = 0; i < a.dim; ++i) inv_perm[wg.perm[i]] = i;
    for (int h = 0; h < a.basis_size(); ++h) {
      if (std::abs(cy[h]) < kCoeffTruncation) continue;
      double k = a.k_form(g, h);
      if (pow == 2) k *= k;
      if (k == 0.0) continue;
      const cplx weight = std::conj(cx[g]) * cy[h] * k;
      const Monomial& wh = a.basis[h];
      // (w_g* w_h)[i, j] != 0 iff perm_g[i] = perm_h[j]
      for (int j = 0; j < a.dim; ++j) {
        const int row = inv_perm[wh.perm[j]];
        out(row, j) += weight * std::conj(wg.phase[row]) * wh.phase[j];
      }
    }
  }
  return out;
}

GammaPair gamma_forms_generator(const std::function<CMat(const CMat&)>& gen, const CMat& x,
                                const CMat& y) {
  const auto gamma = [&](const CMat& u, const CMat& v) {
    const CMat us = adjoint(u);
    CMat g = mul(gen(us), v);
    g += mul(us, gen(v));
    g -= gen(mul(us, v));
    g *= 0.5;
    return g;
  };
  GammaPair out;
  out.gamma = gamma(x, y);
  CMat g2 = gamma(gen(x), y);
  g2 += gamma(x, gen(y));
  g2 -= gen(out.gamma);
  g2 *= 0.5;
  out.gamma2 = std::move(g2);
  return out;
}

std::vector<double> element_eigs(const StarAlgebra& a, const CMat& x) {
  if (!is_hermitian(x, 1e-10 * (1.0 + max_abs(x))))
    throw std::invalid_argument("element_eigs: element is not self-adjoint");
  if (a.diagonal) {
    std::vector<double> v(a.dim);
    for (int i = 0; i < a.dim; ++i) v[i] = x(i, i).real();
    std::sort(v.begin(), v.end());
    return v;
  }
  return eigvals_herm(x);
}

CMat func_calculus(const StarAlgebra& a, const CMat& x, const std::function<double(double)>& f) {
  if (!is_hermitian(x, 1e-10 * (1.0 + max_abs(x))))
    throw std::invalid_argument("func_calculus: element is not self-adjoint");
  if (a.diagonal) {
    CMat y(a.dim, a.dim);
    for (int i = 0; i < a.dim; ++i) y(i, i) = f(x(i, i).real());
    return y;
  }
  return herm_fn(x, f);
}

double prob_tail(const StarAlgebra& a, const CMat& x, double t) {
  const std::vector<double> eigs = element_eigs(a, x);
  std::size_t count = 0;
  for (double v : eigs)
    if (v >= t) ++count;
  return double(count) / double(a.dim);
}

double pnorm(const StarAlgebra& a, const CMat& x, double p) {
  if (p < 1.0) throw std::invalid_argument("pnorm: p must be >= 1");
  std::vector<double> sv;
  if (a.diagonal) {
    sv.resize(a.dim);
    for (int i = 0; i < a.dim; ++i) sv[i] = std::abs(x(i, i));
  } else {
    sv = sing_vals(x);
  }
  double s = 0.0;
  for (double v : sv) s += std::pow(v, p);
  return std::pow(s / double(a.dim), 1.0 / p);
}

double elem_opnorm(const StarAlgebra& a, const CMat& x) {
  if (a.diagonal) {
    double m = 0.0;
    for (int i = 0; i < a.dim; ++i) m = std::max(m, std::abs(x(i, i)));
    return m;
  }
  if (is_hermitian(x, 1e-12 * (1.0 + max_abs(x)))) return opnorm_herm(x);
  return opnorm(x);
}

CpCheck cp_choi_check(const StarAlgebra& a, double t) {
  if (t < 0.0) throw std::invalid_argument("cp_choi_check: t must be >= 0");
  const int d = a.dim;
  const int dd = d * d;
  CMat choi(dd, dd);
  // T(e_ij) = (1/d) sum_g phi_g conj(w_g[i,j]) w_g gives
  // Choi = (1/d) sum_g phi_g conj(w_g) (x) w_g, supported on monomial slots.
  for (int g = 0; g < a.basis_size(); ++g) {
    const Monomial& w = a.basis[g];
    const double phi = std::exp(-t * a.psi[g]) / double(d);
    for (int j = 0; j < d; ++j) {
      const cplx cj = std::conj(w.phase[j]) * phi;
      for (int l = 0; l < d; ++l)
        choi(w.perm[j] * d + w.perm[l], j * d + l) += cj * w.phase[l];
    }
  }
  CpCheck res;
  const std::vector<double> eigs = eigvals_herm(hermitian_part(choi));
  res.min_choi_eig = eigs.front();
  res.is_cp = res.min_choi_eig >= -1e-9 * (1.0 + max_abs(choi));
  return res;
}

DecayCheck semigroup_decay_check(const StarAlgebra& a, double alpha, const CMat& x,
                                 const std::vector<double>& t_grid) {
  DecayCheck res;
  res.min_margin = std::numeric_limits<double>::infinity();
  const CMat gxx = gamma_forms(a, x, x).gamma;
  for (double t : t_grid) {
    const CMat tx = semigroup_apply(a, x, t);
    const CMat lhs = semigroup_apply(a, gxx, t);
    const CMat rhs = gamma_forms(a, tx, tx).gamma;
    CMat slack = std::exp(-2.0 * alpha * t) * lhs;
    slack -= rhs;
    const std::vector<double> eigs =
        a.diagonal ? element_eigs(a, hermitian_part(slack)) : eigvals_herm(hermitian_part(slack));
    res.min_margin = std::min(res.min_margin, eigs.front());
  }
  return res;
}

namespace {

// F M F* (inverse = false) or F* M F (inverse = true), where F is the
// unitary DFT on the leading coordinate, F = F_n (x) I_{d/n}.
CMat dft_conjugate_first(const CMat& m, int n, bool inverse = false) {
  const int d = m.rows();
  const int blk = d / n;
  const double s = 1.0 / std::sqrt(double(n));
  const double sign = inverse ? 1.0 : -1.0;
  CMat fm(d, d);
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a) {
      const double ang = sign * kTwoPi * double(x) * double(a) / double(n);
      const cplx f = s * cplx(std::cos(ang), std::sin(ang));
      for (int r = 0; r < blk; ++r)
        simd::zaxpy(f, m.row(a * blk + r), fm.row(x * blk + r), std::size_t(d));
    }
  CMat out(d, d);
  for (int row = 0; row < d; ++row)
    for (int xp = 0; xp < n; ++xp)
      for (int aa = 0; aa < n; ++aa) {
        const double ang = -sign * kTwoPi * double(xp) * double(aa) / double(n);
        const cplx f = s * cplx(std::cos(ang), std::sin(ang));
        const cplx* src = fm.row(row) + aa * blk;
        cplx* dst = out.row(row) + xp * blk;
        simd::zaxpy(f, src, dst, std::size_t(blk));
      }
  return out;
}

double offblock_mass(const CMat& m, int nblocks) {
  const int d = m.rows();
  const int blk = d / nblocks;
  double mx = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i / blk != j / blk) mx = std::max(mx, std::abs(m(i, j)));
  return mx;
}

int span_rank(const std::vector<CMat>& mats, double rel_tol) {
  const int k = int(mats.size());
  CMat gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      gram(i, j) = simd::zdotc(mats[i].data(), mats[j].data(), mats[i].size());
  const std::vector<double> eigs = eigvals_herm(hermitian_part(gram));
  const double lam_max = eigs.empty() ? 0.0 : eigs.back();
  int rank = 0;
  for (double v : eigs)
    if (v > rel_tol * lam_max) ++rank;
  return rank;
}

} // namespace

HeisenbergDecomposition heisenberg_decompose(int n) {
  if (n < 2 || n > 8) throw std::invalid_argument("heisenberg_decompose: need 2 <= n <= 8");
  const FiniteGroup h = build_heisenberg(n);
  const LengthFunction psi = heisenberg_length(n);
  const StarAlgebra alg = left_regular_algebra(h, psi);
  const int d = h.order;
  const int blk = n * n;

  HeisenbergDecomposition out;

  // transformed generators, one (b, c) pair per block-span generator
  std::vector<std::vector<CMat>> block_span(n);
  double off = 0.0;
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      const int g = (0 * n + b) * n + c;
      const CMat t = dft_conjugate_first(basis_matrix(alg, g), n);
      off = std::max(off, offblock_mass(t, n));
      for (int x = 0; x < n; ++x) {
        CMat bx(blk, blk);
        for (int r = 0; r < blk; ++r)
          for (int s = 0; s < blk; ++s) bx(r, s) = t(x * blk + r, x * blk + s);
        block_span[x].push_back(std::move(bx));
      }
    }
  // elements with a != 0 only contribute scalar phases per block; the spans
  // above are complete. Verify block-diagonality on the a-generators too.
  for (int a = 1; a < n; ++a) {
    const int g = (a * n + 0) * n + 0;
    off = std::max(off, offblock_mass(dft_conjugate_first(basis_matrix(alg, g), n), n));
  }
  out.offblock_residual = off;

  out.block_dims.resize(n);
  int total = 0;
  for (int x = 0; x < n; ++x) {
    out.block_dims[x] = span_rank(block_span[x], 1e-10);
    total += out.block_dims[x];
  }
  out.dims_ok = (total == d) && (out.block_dims[0] == blk);

  // block 0 commutative
  double comm = 0.0;
  for (std::size_t i = 0; i < block_span[0].size(); ++i)
    for (std::size_t j = i + 1; j < block_span[0].size(); ++j) {
      const CMat c = mul(block_span[0][i], block_span[0][j]) - mul(block_span[0][j], block_span[0][i]);
      comm = std::max(comm, max_abs(c));
    }
  out.m0_commutative = comm <= 1e-9;

  // block 1: trivial center via the commutator Gram nullity
  {
    const auto& bs = block_span[1];
    const int k = int(bs.size());
    CMat gram(k, k);
    std::vector<std::vector<CMat>> comms(k);
    for (int i = 0; i < k; ++i) {
      comms[i].reserve(k);
      for (int j = 0; j < k; ++j)
        comms[i].push_back(mul(bs[i], bs[j]) - mul(bs[j], bs[i]));
    }
    for (int i = 0; i < k; ++i)
      for (int ip = 0; ip < k; ++ip) {
        cplx s = 0.0;
        for (int j = 0; j < k; ++j)
          s += simd::zdotc(comms[i][j].data(), comms[ip][j].data(), comms[i][j].size());
        gram(i, ip) = s;
      }
    const std::vector<double> eigs = eigvals_herm(hermitian_part(gram));
    const double lam_max = eigs.empty() ? 0.0 : eigs.back();
    int nullity = 0;
    for (double v : eigs)
      if (v <= 1e-10 * lam_max) ++nullity;
    out.m1_full_matrix = (out.block_dims[1] == blk) && (nullity == 1);
  }

  // semigroup invariance: project a random element to each block, apply T_1,
  // and measure mass leaking outside the block
  Rng rng = Rng::stream(0x9c0ffee1u, 17);
  CMat y = random_selfadjoint(alg, rng);
  const CMat ty = dft_conjugate_first(y, n); // block-diagonal picture of y
  double margin = 0.0;
  for (int x = 0; x < n; ++x) {
    CMat yx_blocks(d, d);
    for (int r = 0; r < blk; ++r)
      for (int s = 0; s < blk; ++s) yx_blocks(x * blk + r, x * blk + s) = ty(x * blk + r, x * blk + s);
    // back to the group picture: y_x = F* (q_x ty q_x) F
    const CMat fyx = dft_conjugate_first(yx_blocks, n, true);
    const CMat tyx = semigroup_apply(alg, fyx, 1.0);
    const CMat back = dft_conjugate_first(tyx, n);
    // mass outside block x
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i / blk != x || j / blk != x) margin = std::max(margin, std::abs(back(i, j)));
  }
  out.invariance_margin = margin;
  return out;
}

WalshGradientCheck walsh_gradient_check(int m, int samples, std::uint64_t seed) {
  if (m < 1 || m > 12) throw std::invalid_argument("walsh_gradient_check: need 1 <= m <= 12");
  const StarAlgebra a = walsh_algebra(2, m);
  const int d = a.dim;
  WalshGradientCheck out;
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, std::uint64_t(s));
    CMat f(d, d);
    for (int y = 0; y < d; ++y) f(y, y) = rng.gaussian();
    const CMat gamma = gamma_forms(a, f, f).gamma;
    for (int y = 0; y < d; ++y) {
      double grad2 = 0.0;
      for (int j = 0; j < m; ++j) {
        const int flipped = y ^ (1 << (m - 1 - j));
        const double dj = 0.5 * (f(y, y).real() - f(flipped, flipped).real());
        grad2 += dj * dj;
      }
      out.max_residual = std::max(out.max_residual, std::abs(gamma(y, y) - grad2));
    }
  }
  return out;
}

CMat random_selfadjoint(const StarAlgebra& a, Rng& rng, bool normalize) {
  std::vector<cplx> c(a.basis_size());
  for (auto& v : c) v = rng.cgaussian();
  const CMat z = from_coeffs(a, c);
  CMat x = hermitian_part(z);
  if (normalize) {
    const double nrm = elem_opnorm(a, x);
    if (nrm > 0.0) x *= cplx(1.0 / nrm, 0.0);
  }
  return x;
}

CMat random_element(const StarAlgebra& a, Rng& rng) {
  std::vector<cplx> c(a.basis_size());
  for (auto& v : c) v = rng.cgaussian();
  return from_coeffs(a, c);
}

} // namespace nckit
