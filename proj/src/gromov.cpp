#include "nckit/gromov.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "nckit/eigen.hpp"

namespace nckit {

double tol_psd(const RMat& k) { return 1e-9 * (1.0 + max_abs(k)); }

GromovForm gromov_form(const FiniteGroup& g, const LengthFunction& psi) {
  validate_length(g, psi);
  const int n = g.order;
  GromovForm form;
  form.labels = g.labels;
  form.K = RMat(n, n);
  for (int a = 0; a < n; ++a) {
    const int ai = g.inv(a);
    for (int b = 0; b < n; ++b)
      form.K(a, b) = 0.5 * (psi(a) + psi(b) - psi(g.mul(ai, b)));
  }
  return form;
}

GromovForm gromov_form(const FreeWordArena& arena) {
  const auto& ball = arena.ball();
  const int n = int(ball.size());
  GromovForm form;
  form.labels.reserve(n);
  for (const Word& w : ball) form.labels.push_back(arena.label(w));
  form.K = RMat(n, n);
  std::vector<Word> invs(n);
  for (int a = 0; a < n; ++a) invs[a] = inv_word(ball[a]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      form.K(a, b) =
          0.5 * (arena.psi(ball[a]) + arena.psi(ball[b]) - arena.psi(mul_words(invs[a], ball[b])));
  return form;
}

AlphaCertificate sharp_alpha(const GromovForm& form) {
  const RMat& k = form.K;
  const int n = k.rows();
  const double tol = tol_psd(k);
  AlphaCertificate cert;

  SymEig es = eig_sym(k);
  if (!es.values.empty() && es.values.front() < -tol)
    throw std::invalid_argument("sharp_alpha: K is not PSD (psi not conditionally negative)");
  const double lam_max = es.values.empty() ? 0.0 : es.values.back();
  const double rank_tol = 1e-10 * lam_max;

  std::vector<int> range;
  for (int i = 0; i < n; ++i)
    if (es.values[i] > rank_tol) range.push_back(i);
  cert.rank_K = int(range.size());
  if (cert.rank_K == 0) {
    cert.alpha_star = std::numeric_limits<double>::infinity();
    return cert;
  }

  // whiten: columns u_i = v_i / sqrt(lambda_i), pencil becomes U^T (KoK) U
  const int r = cert.rank_K;
  RMat u(r, n);
  for (int p = 0; p < r; ++p) {
    const double inv_sqrt = 1.0 / std::sqrt(es.values[range[p]]);
    const double* v = es.vectors.row(range[p]);
    for (int j = 0; j < n; ++j) u(p, j) = inv_sqrt * v[j];
  }
  const RMat s = schur(k, k);
  const RMat su = mul(u, s); // r x n
  RMat pencil(r, r);
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) pencil(p, q) = simd::dot(su.row(p), u.row(q), std::size_t(n));
  // symmetrize roundoff
  for (int p = 0; p < r; ++p)
    for (int q = p + 1; q < r; ++q) {
      const double m = 0.5 * (pencil(p, q) + pencil(q, p));
      pencil(p, q) = pencil(q, p) = m;
    }

  SymEig pe = eig_sym(pencil);
  cert.alpha_star = pe.values.front();
  cert.witness_vector.assign(n, 0.0);
  for (int p = 0; p < r; ++p)
    simd::axpy(pe.vectors(0, p), u.row(p), cert.witness_vector.data(), std::size_t(n));
  double nrm = std::sqrt(simd::dot(cert.witness_vector.data(), cert.witness_vector.data(), n));
  if (nrm > 0.0)
    for (double& v : cert.witness_vector) v /= nrm;

  const RMat slack = add_scaled(s, -cert.alpha_star, k);
  cert.witness_min_eig = eigvals_sym(slack).front();
  return cert;
}

Gamma2Check gamma2_criterion_check(const GromovForm& form, double alpha) {
  const RMat slack = add_scaled(schur(form.K, form.K), -alpha, form.K);
  Gamma2Check res;
  res.min_pencil_eig = slack.rows() == 0 ? 0.0 : eigvals_sym(slack).front();
  res.holds = res.min_pencil_eig >= -tol_psd(form.K);
  return res;
}

GromovForm tensor_sum_form(const std::vector<const GromovForm*>& forms) {
  if (forms.empty()) throw std::invalid_argument("tensor_sum_form: empty list");
  std::size_t total = 1;
  for (const GromovForm* f : forms) total *= std::size_t(f->K.rows());
  if (total > 4096) throw std::length_error("tensor_sum_form: product dimension exceeds 4096");
  const int m = int(forms.size());
  const int n = int(total);

  std::vector<int> dims(m);
  for (int i = 0; i < m; ++i) dims[i] = forms[i]->K.rows();
  const auto decode = [&](int x, std::vector<int>& parts) {
    for (int i = m - 1; i >= 0; --i) {
      parts[i] = x % dims[i];
      x /= dims[i];
    }
  };

  GromovForm out;
  out.K = RMat(n, n);
  out.labels.resize(n);
  std::vector<int> xa(m), xb(m);
  for (int a = 0; a < n; ++a) {
    decode(a, xa);
    std::string lab;
    for (int i = 0; i < m; ++i) lab += (i == 0 ? "" : "|") + forms[i]->labels[xa[i]];
    out.labels[a] = lab;
    for (int b = 0; b < n; ++b) {
      decode(b, xb);
      double sum = 0.0;
      for (int i = 0; i < m; ++i) sum += forms[i]->K(xa[i], xb[i]);
      out.K(a, b) = sum;
    }
  }
  return out;
}

namespace {

CnCertificate cn_from_form(const GromovForm& form) {
  CnCertificate cert;
  cert.min_eig = form.K.rows() == 0 ? 0.0 : eigvals_sym(form.K).front();
  cert.is_cn = cert.min_eig >= -tol_psd(form.K);
  return cert;
}

} // namespace

CnCertificate check_cn_length(const FiniteGroup& g, const LengthFunction& psi) {
  return cn_from_form(gromov_form(g, psi));
}

CnCertificate check_cn_length(const FreeWordArena& arena) {
  return cn_from_form(gromov_form(arena));
}

ResidualCertificate haagerup_gram_certificate(const FreeWordArena& arena) {
  const GromovForm form = gromov_form(arena);
  const auto& ball = arena.ball();
  const int n = int(ball.size());

  // prefix coordinates: the ball is prefix-closed, index words by position
  std::vector<std::vector<std::pair<int, double>>> v(n); // sparse rows of V
  // locate each proper prefix by scanning the ball once per word; ball is
  // sorted by (length, lex), so a small map is enough
  const auto find_word = [&](const Word& w) -> int {
    for (int i = 0; i < n; ++i)
      if (ball[i] == w) return i;
    return -1;
  };
  for (int g = 0; g < n; ++g) {
    const Word& w = ball[g];
    for (std::size_t i = 1; i <= w.size(); ++i) {
      const Word prefix(w.begin(), w.begin() + i);
      const int idx = find_word(prefix);
      if (idx < 0) throw std::logic_error("haagerup: ball not prefix-closed");
      v[g].push_back({idx, std::sqrt(2.0 * (double(i) - 1.0))});
    }
  }

  ResidualCertificate cert;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      double gram = 0.0;
      // sparse dot over shared prefix coordinates
      for (const auto& [ig, cg] : v[g])
        for (const auto& [ih, ch] : v[h])
          if (ig == ih) gram += cg * ch;
      const double kk = form.K(g, h);
      cert.max_abs_residual = std::max(cert.max_abs_residual, std::fabs(kk * kk - kk - gram));
    }
  return cert;
}

ResidualCertificate cocycle_zn_certificate(int n) {
  if (n < 2) throw std::invalid_argument("cocycle_zn_certificate: n must be >= 2");
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<std::vector<double>> b(n, std::vector<double>(2 * n, 0.0));
  const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const double ang = two_pi * double(k) * double(j) / double(n);
      b[k][2 * j] = (std::cos(ang) - 1.0) * inv_sqrt_n;
      b[k][2 * j + 1] = std::sin(ang) * inv_sqrt_n;
    }
  ResidualCertificate cert;
  cert.diag_value = simd::dot(b[1].data(), b[1].data(), 2 * std::size_t(n));
  for (int k = 0; k < n; ++k)
    for (int h = 0; h < n; ++h) {
      const double ip = simd::dot(b[k].data(), b[h].data(), 2 * std::size_t(n));
      const double expected = (k == 0 || h == 0) ? 0.0 : 1.0 + (k == h ? 1.0 : 0.0);
      cert.max_abs_residual = std::max(cert.max_abs_residual, std::fabs(ip - expected));
    }
  return cert;
}

void write_gromov_csv(std::ostream& os, const GromovForm& form) {
  const int n = form.K.rows();
  for (int j = 0; j < n; ++j) {
    if (j) os << ',';
    os << form.labels[j];
  }
  os << "\n";
  char buf[40];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) os << ',';
      std::snprintf(buf, sizeof buf, "%.12g", form.K(i, j));
      os << buf;
    }
    os << "\n";
  }
}

} // namespace nckit
