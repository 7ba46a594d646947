#include "nckit/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nckit {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

std::vector<double> density_eigs(const CMat& rho) {
  const double scale = 1.0 + max_abs(rho);
  if (!is_hermitian(rho, 1e-10 * scale))
    throw std::invalid_argument("density: not self-adjoint");
  std::vector<double> eigs = eigvals_herm(rho);
  if (eigs.front() < -1e-10 * scale)
    throw std::invalid_argument("density: indefinite");
  for (double& v : eigs) v = std::max(v, 0.0);
  return eigs;
}

} // namespace

double entropy(const CMat& rho) {
  const std::vector<double> eigs = density_eigs(rho);
  double t = 0.0;
  for (double v : eigs) t += v;
  t /= double(eigs.size());
  if (t <= 0.0) throw std::invalid_argument("entropy: zero trace");
  double s = 0.0;
  for (double v : eigs) s += xlogx(v / t);
  return s * t / double(eigs.size());
}

void validate_density(const CMat& rho) {
  density_eigs(rho);
  if (std::abs(tau(rho).real() - 1.0) > 1e-10 || std::abs(tau(rho).imag()) > 1e-10)
    throw std::invalid_argument("density: tau(rho) != 1");
}

GibbsDuality gibbs_duality_check(const CMat& sigma, int random_rhos, std::uint64_t seed) {
  const double scale = 1.0 + max_abs(sigma);
  if (!is_hermitian(sigma, 1e-10 * scale))
    throw std::invalid_argument("gibbs_duality_check: sigma must be self-adjoint");
  const int d = sigma.rows();
  GibbsDuality out;

  const std::vector<double> seig = eigvals_herm(sigma);
  double z = 0.0;
  for (double v : seig) z += std::exp(v);
  z /= double(d);
  out.lhs = std::log(z);

  const auto value_at = [&](const CMat& rho) {
    const double lin = tau(mul(rho, sigma)).real();
    double ent = 0.0;
    for (double v : density_eigs(rho)) ent += xlogx(v);
    ent /= double(d);
    return lin - ent;
  };

  // the Gibbs maximizer rho* = e^sigma / tau(e^sigma)
  CMat gibbs = expm_herm(sigma);
  gibbs *= cplx(1.0 / z, 0.0);
  out.equality_gap = std::fabs(out.lhs - value_at(gibbs));

  out.feasible_below = true;
  out.sup_estimate = out.lhs - out.equality_gap;
  for (int i = 0; i < random_rhos; ++i) {
    Rng rng = Rng::stream(seed, std::uint64_t(i));
    CMat g(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) g(r, c) = rng.cgaussian();
    CMat rho = mul(adjoint(g), g);
    rho *= cplx(1.0 / tau(rho).real(), 0.0);
    const double v = value_at(rho);
    out.sup_estimate = std::max(out.sup_estimate, v);
    if (v > out.lhs + 1e-9 * (1.0 + std::fabs(out.lhs))) out.feasible_below = false;
  }
  return out;
}

CMat block_conditional_expectation(const CMat& rho, const std::vector<int>& block_sizes) {
  int total = 0;
  for (int b : block_sizes) {
    if (b <= 0) throw std::invalid_argument("block_conditional_expectation: bad block");
    total += b;
  }
  if (total != rho.rows())
    throw std::invalid_argument("block_conditional_expectation: partition does not cover dim");
  CMat out(rho.rows(), rho.cols());
  int off = 0;
  for (int b : block_sizes) {
    cplx t = 0.0;
    for (int i = 0; i < b; ++i) t += rho(off + i, off + i);
    t /= double(b);
    for (int i = 0; i < b; ++i) out(off + i, off + i) = t;
    off += b;
  }
  return out;
}

MonotonicityCheck entropy_monotonicity_check(const CMat& rho, const std::vector<int>& block_sizes) {
  MonotonicityCheck out;
  out.ent_rho = entropy(rho);
  out.ent_erho = entropy(block_conditional_expectation(rho, block_sizes));
  out.holds = out.ent_erho <= out.ent_rho + 1e-10;
  return out;
}

LipschitzElement lipschitz_normalize(const StarAlgebra& a, const CMat& x) {
  const CMat gamma = gamma_forms(a, x, x).gamma;
  const double nrm = elem_opnorm(a, hermitian_part(gamma));
  if (nrm < 1e-24)
    throw std::invalid_argument("lipschitz_normalize: Gamma(x,x) = 0 (x is a fixed point)");
  LipschitzElement out;
  out.x = x;
  out.x *= cplx(1.0 / std::sqrt(nrm), 0.0);
  const CMat g2 = gamma_forms(a, out.x, out.x).gamma;
  out.gamma_norm = elem_opnorm(a, hermitian_part(g2));
  return out;
}

namespace {

// top eigenvector of a PSD Hermitian element as a rank-one projector
CMat top_eig_projector(const StarAlgebra& a, const CMat& g, double* lam_out) {
  const int d = a.dim;
  CMat p(d, d);
  if (a.diagonal) {
    int best = 0;
    for (int i = 1; i < d; ++i)
      if (g(i, i).real() > g(best, best).real()) best = i;
    *lam_out = g(best, best).real();
    p(best, best) = 1.0;
    return p;
  }
  const HermEig e = eig_herm(g);
  *lam_out = e.values.back();
  const cplx* w = e.vectors.row(d - 1); // row w with column eigenvector w^dagger
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i, j) = std::conj(w[i]) * w[j];
  return p;
}

// span projection: keep only basis components
CMat span_project(const StarAlgebra& a, const CMat& x) { return from_coeffs(a, fourier_coeffs(a, x)); }

} // namespace

W1Result w1_lower_bound(const StarAlgebra& a, const CMat& rho, int restarts, std::uint64_t seed) {
  validate_density(rho);
  const int d = a.dim;
  CMat c = rho;
  c -= fixed_point_project(a, rho);
  c = hermitian_part(c);
  W1Result best;
  best.witness = CMat(d, d);
  if (max_abs(c) < 1e-14) return best; // rho already fixed

  const auto objective = [&](const CMat& x, double* lam_out, CMat* proj_out) {
    const CMat gamma = hermitian_part(gamma_forms(a, x, x).gamma);
    double lam = 0.0;
    CMat p = top_eig_projector(a, gamma, &lam);
    if (lam_out != nullptr) *lam_out = lam;
    if (proj_out != nullptr) *proj_out = std::move(p);
    if (lam <= 1e-28) return -std::numeric_limits<double>::infinity();
    return tau(alg_mul(a, c, x)).real() / std::sqrt(lam);
  };

  for (int r = 0; r < restarts; ++r) {
    Rng rng = Rng::stream(seed, 0x77310000u + std::uint64_t(r));
    CMat x = random_selfadjoint(a, rng);
    x -= fixed_point_project(a, x);
    x = hermitian_part(x);
    double lam = 0.0;
    CMat p;
    double f = objective(x, &lam, &p);
    if (!std::isfinite(f)) continue;
    if (f < 0.0) {
      x *= cplx(-1.0, 0.0);
      f = -f;
    }
    double step = 0.5;
    for (int it = 0; it < 80 && step > 1e-12; ++it) {
      // gradient of tau(cx)/sqrt(lam): c/d / sqrt(lam) - N grad(lam) / (2 lam^{3/2})
      const double num = tau(alg_mul(a, c, x)).real();
      const CMat ax = generator_apply(a, x);
      const CMat px = alg_mul(a, p, x);
      CMat grad_lam = alg_mul(a, p, ax);
      grad_lam += generator_apply(a, px);
      grad_lam -= alg_mul(a, generator_apply(a, p), x);
      grad_lam = span_project(a, hermitian_part(grad_lam));
      CMat grad = c;
      grad *= cplx(1.0 / (double(d) * std::sqrt(lam)), 0.0);
      grad_lam *= cplx(-num / (2.0 * lam * std::sqrt(lam)), 0.0);
      grad += grad_lam;
      grad -= fixed_point_project(a, grad);
      const double gnorm = fro_norm(grad);
      if (gnorm < 1e-14) break;
      const double xnorm = std::max(fro_norm(x), 1e-12);
      CMat cand = x;
      CMat scaled = grad;
      scaled *= cplx(step * xnorm / gnorm, 0.0);
      cand += scaled;
      double lam_c = 0.0;
      CMat p_c;
      const double f_c = objective(cand, &lam_c, &p_c);
      if (f_c > f) {
        x = std::move(cand);
        f = f_c;
        lam = lam_c;
        p = std::move(p_c);
        step = std::min(step * 1.3, 4.0);
      } else {
        step *= 0.5;
      }
    }
    if (f > best.w1_lb) {
      // exact feasibility by homogeneity: scale to gamma norm 1
      CMat w = x;
      w *= cplx(1.0 / std::sqrt(lam), 0.0);
      const double gn = elem_opnorm(a, hermitian_part(gamma_forms(a, w, w).gamma));
      best.w1_lb = f;
      best.witness = std::move(w);
      best.witness_gamma_norm = gn;
    }
  }
  return best;
}

double w1_two_point_exact(double r) {
  if (std::fabs(r) > 1.0 + 1e-12)
    throw std::invalid_argument("w1_two_point_exact: |r| <= 1 required for a density");
  return std::fabs(r);
}

SubgaussianEstimate subgaussian_c_estimate(const StarAlgebra& a, int samples,
                                           const std::vector<double>& t_grid,
                                           std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("subgaussian_c_estimate: samples >= 1");
  SubgaussianEstimate out;
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, std::uint64_t(s));
    CMat x = random_selfadjoint(a, rng);
    x -= fixed_point_project(a, x);
    x = hermitian_part(x);
    LipschitzElement lip;
    try {
      lip = lipschitz_normalize(a, x);
    } catch (const std::invalid_argument&) {
      continue; // x in Fix, no direction
    }
    const std::vector<double> eigs = element_eigs(a, lip.x);
    for (double t : t_grid) {
      if (t == 0.0) continue;
      double m = 0.0;
      for (double v : eigs) m += std::exp(t * v);
      m /= double(eigs.size());
      out.c_half = std::max(out.c_half, 2.0 * std::log(m) / (t * t));
    }
  }
  out.c_full = 0.5 * out.c_half;
  return out;
}

TransportCheck transport_check(const StarAlgebra& a, const CMat& rho, double c_half, int restarts,
                               std::uint64_t seed) {
  TransportCheck out;
  out.lhs = w1_lower_bound(a, rho, restarts, seed).w1_lb;
  out.rhs = std::sqrt(2.0 * c_half * entropy(rho));
  out.pass = out.lhs <= out.rhs + 1e-9;
  return out;
}

PoincareScan poincare_ratio_scan(const StarAlgebra& a, double alpha,
                                 const std::vector<double>& p_list, int samples,
                                 std::uint64_t seed) {
  if (alpha <= 0.0) throw std::invalid_argument("poincare_ratio_scan: alpha must be positive");
  PoincareScan out;
  const int d = a.dim;
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, std::uint64_t(s));
    // self-adjoint battery
    {
      const CMat x = random_selfadjoint(a, rng);
      CMat xc = x;
      xc -= fixed_point_project(a, x);
      const CMat gamma = hermitian_part(gamma_forms(a, x, x).gamma);
      const std::vector<double> geig = element_eigs(a, gamma);
      const double lip = std::sqrt(std::max(0.0, geig.back()));
      if (lip > 1e-12) {
        for (double p : p_list) {
          const double num = pnorm(a, xc, p);
          out.max_ratio_sa = std::max(out.max_ratio_sa, num / (std::sqrt(p / alpha) * lip));
          double gp = 0.0;
          for (double v : geig) gp += std::pow(std::max(v, 0.0), p / 2.0);
          const double gam_half_p = std::pow(gp / double(d), 1.0 / p);
          if (gam_half_p > 1e-12)
            out.fitted_cprime = std::max(
                out.fitted_cprime, num / (p / std::sqrt(alpha) * gam_half_p));
        }
      }
    }
    // general battery
    {
      const CMat z = random_element(a, rng);
      CMat zc = z;
      zc -= fixed_point_project(a, z);
      const CMat g1 = hermitian_part(gamma_forms(a, z, z).gamma);
      const CMat g2 = hermitian_part(gamma_forms(a, adjoint(z), adjoint(z)).gamma);
      const double lip =
          std::sqrt(std::max(0.0, std::max(elem_opnorm(a, g1), elem_opnorm(a, g2))));
      if (lip > 1e-12)
        for (double p : p_list) {
          const double num = pnorm(a, zc, p);
          out.max_ratio_general =
              std::max(out.max_ratio_general, num / (std::sqrt(p / alpha) * lip));
        }
    }
  }
  return out;
}

ExpIntReport exp_integrability_check(const StarAlgebra& a, double alpha, int samples,
                                     std::uint64_t seed, bool self_adjoint_battery) {
  ExpIntReport out;
  const double e_const = 2.718281828459045235360287471353;
  out.c_constant = (self_adjoint_battery ? 8.0 : 32.0) * e_const;
  out.min_margin_con1 = std::numeric_limits<double>::infinity();
  out.min_margin_con2 = std::numeric_limits<double>::infinity();
  const std::vector<double> t_grid = {0.5, 1.0, 2.0, 4.0, 8.0};
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, std::uint64_t(s));
    const CMat z = self_adjoint_battery ? random_selfadjoint(a, rng) : random_element(a, rng);
    CMat zc = z;
    zc -= fixed_point_project(a, z);
    const CMat g1 = hermitian_part(gamma_forms(a, z, z).gamma);
    double gnorm = elem_opnorm(a, g1);
    if (!self_adjoint_battery) {
      const CMat g2 = hermitian_part(gamma_forms(a, adjoint(z), adjoint(z)).gamma);
      gnorm = std::max(gnorm, elem_opnorm(a, g2));
    }
    if (gnorm < 1e-14) continue;
    // |zc| spectrum: singular values in general, |eigenvalues| if self-adjoint
    std::vector<double> mods;
    if (self_adjoint_battery) {
      mods = element_eigs(a, hermitian_part(zc));
      for (double& v : mods) v = std::fabs(v);
    } else {
      if (a.diagonal) {
        mods.resize(std::size_t(a.dim));
        for (int i = 0; i < a.dim; ++i) mods[std::size_t(i)] = std::abs(zc(i, i));
      } else {
        mods = sing_vals(zc);
      }
    }
    double lhs = 0.0;
    for (double v : mods) lhs += std::exp(v);
    lhs /= double(mods.size());
    const double log_rhs = std::log(2.0) + (out.c_constant / alpha) * gnorm;
    out.min_margin_con1 = std::min(out.min_margin_con1, log_rhs - std::log(lhs));
    for (double t : t_grid) {
      std::size_t count = 0;
      for (double v : mods)
        if (v >= t) ++count;
      const double tail = double(count) / double(mods.size());
      const double bound =
          2.0 * std::exp(-alpha * t * t / (4.0 * out.c_constant * gnorm));
      out.min_margin_con2 = std::min(out.min_margin_con2, bound - tail);
    }
  }
  out.pass = out.min_margin_con1 >= -1e-9 && out.min_margin_con2 >= -1e-9;
  return out;
}

ProductMeasureReport product_measure_report(const std::vector<std::vector<double>>& spaces,
                                            const std::vector<double>& f,
                                            const std::vector<double>& t_grid) {
  if (spaces.empty()) throw std::invalid_argument("product_measure_report: no factors");
  std::size_t total = 1;
  for (const auto& p : spaces) {
    if (p.empty()) throw std::invalid_argument("product_measure_report: empty factor");
    total *= p.size();
    if (total > (std::size_t(1) << 20))
      throw std::length_error("product_measure_report: product cardinality exceeds 2^20");
  }
  if (f.size() != total) throw std::invalid_argument("product_measure_report: f size mismatch");
  const int m = int(spaces.size());

  // strides, first factor most significant
  std::vector<std::size_t> stride(m, 1);
  for (int i = m - 2; i >= 0; --i) stride[i] = stride[i + 1] * spaces[i + 1].size();

  std::vector<double> weight(total, 1.0);
  for (std::size_t x = 0; x < total; ++x) {
    std::size_t rem = x;
    for (int i = 0; i < m; ++i) {
      const std::size_t xi = rem / stride[i];
      rem %= stride[i];
      weight[x] *= spaces[i][xi];
    }
  }

  ProductMeasureReport out;
  out.gamma_sum.assign(total, 0.0);
  for (int i = 0; i < m; ++i) {
    const std::size_t n_i = spaces[i].size();
    for (std::size_t x = 0; x < total; ++x) {
      const std::size_t xi = (x / stride[i]) % n_i;
      const std::size_t base = x - xi * stride[i];
      double e1 = 0.0, e2 = 0.0;
      for (std::size_t y = 0; y < n_i; ++y) {
        const double fv = f[base + y * stride[i]];
        e1 += spaces[i][y] * fv;
        e2 += spaces[i][y] * fv * fv;
      }
      const double diff = f[x] - e1;
      out.gamma_sum[x] += 0.5 * (diff * diff + e2 - e1 * e1);
    }
  }
  for (double v : out.gamma_sum) out.gamma_sup = std::max(out.gamma_sup, v);

  double mean = 0.0;
  for (std::size_t x = 0; x < total; ++x) mean += weight[x] * f[x];
  out.mean = mean;
  out.t_grid = t_grid;
  for (double t : t_grid) {
    double tail = 0.0;
    for (std::size_t x = 0; x < total; ++x)
      if (f[x] - mean >= t) tail += weight[x];
    out.tails.push_back(tail);
    if (t > 0.0 && tail > 0.0)
      out.c_hat.push_back(-std::log(tail) * out.gamma_sup / (t * t));
    else
      out.c_hat.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

} // namespace nckit
