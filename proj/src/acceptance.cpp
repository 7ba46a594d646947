#include "nckit/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <sstream>

#include "nckit/eigen.hpp"
#include "nckit/gromov.hpp"
#include "nckit/martingale.hpp"
#include "nckit/report.hpp"
#include "nckit/scenarios.hpp"
#include "nckit/star_algebra.hpp"
#include "nckit/transport.hpp"

namespace nckit::acceptance {

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.str().empty()) detail << "; ";
      detail << "FAILED " << what;
    }
  }
  void note(const std::string& s) {
    if (!detail.str().empty()) detail << "; ";
    detail << s;
  }
};

double sqr(double x) { return x * x; }

StarAlgebra zn_model(int n) {
  const FiniteGroup g = build_cyclic(n);
  return left_regular_algebra(g, one_minus_delta(g));
}

StarAlgebra h3_model(int n) {
  const FiniteGroup g = build_heisenberg(n);
  return left_regular_algebra(g, heisenberg_length(n));
}

CMat random_gaussian_hermitian(int d, Rng& rng) {
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.cgaussian();
  return hermitian_part(g);
}

// ---- criterion bodies ----------------------------------------------------

void c1_sharp_alpha(const Options&, Check& c) {
  double max_err = 0.0;
  for (int n = 2; n <= 12; ++n) {
    const FiniteGroup g = build_cyclic(n);
    const AlphaCertificate cert = sharp_alpha(gromov_form(g, one_minus_delta(g)));
    max_err = std::max(max_err, std::fabs(cert.alpha_star - double(n + 2) / double(2 * n)));
  }
  c.require(max_err <= 1e-9, "alpha_star(Z_n) = (n+2)/(2n) within 1e-9");
  c.note("max_err=" + fmt12(max_err));
}

void c2_free_group(const Options&, Check& c) {
  const FreeWordArena f2(2, 2);
  const FreeWordArena f3(3, 1);
  for (const FreeWordArena* arena : {&f2, &f3}) {
    const ResidualCertificate rc = haagerup_gram_certificate(*arena);
    c.require(rc.max_abs_residual <= 1e-12, "haagerup residual <= 1e-12");
    const Gamma2Check crit = gamma2_criterion_check(gromov_form(*arena), 1.0);
    c.require(crit.min_pencil_eig >= -1e-9, "K o K - K min eig >= -1e-9");
    c.note("residual=" + fmt12(rc.max_abs_residual) +
           " min_eig=" + fmt12(crit.min_pencil_eig));
  }
}

void c3_cocycle(const Options&, Check& c) {
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n)
    worst = std::max(worst, cocycle_zn_certificate(n).max_abs_residual);
  c.require(worst <= 1e-12, "cocycle residual <= 1e-12 for n=2..10");
  c.note("max_residual=" + fmt12(worst));
}

void c4_heisenberg(const Options& opt, Check& c) {
  const int n_max = opt.quick ? 5 : 8;
  double worst = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    const FiniteGroup g = build_heisenberg(n);
    const GromovForm form = gromov_form(g, heisenberg_length(n));
    const Gamma2Check crit = gamma2_criterion_check(form, double(n + 2) / double(2 * n));
    c.require(crit.holds, "gamma2 criterion on H3(Z_" + std::to_string(n) + ")");
    worst = std::min(worst, crit.min_pencil_eig);
  }
  const int dec_max = opt.quick ? 3 : 4;
  for (int n = 2; n <= dec_max; ++n) {
    const HeisenbergDecomposition dec = heisenberg_decompose(n);
    c.require(dec.dims_ok, "block dims sum to n^3 for n=" + std::to_string(n));
    c.require(dec.block_dims[0] == n * n && dec.block_dims[1] == n * n,
              "blocks 0 and 1 have dim n^2");
    c.require(dec.m0_commutative, "M_0 commutative");
    c.require(dec.m1_full_matrix, "M_1 has trivial center");
    c.require(dec.offblock_residual <= 1e-9, "off-block residual <= 1e-9");
    c.require(dec.invariance_margin <= 1e-9, "semigroup invariance <= 1e-9");
  }
  c.note("min_pencil_eig=" + fmt12(worst));
}

void c5_semigroup_axioms(const Options& opt, Check& c) {
  const std::vector<double> t_grid = {0.0, 0.1, 0.5, 1.0, 2.0};
  std::vector<StarAlgebra> models;
  models.push_back(zn_model(5));
  models.push_back(h3_model(2));
  if (!opt.quick) models.push_back(h3_model(3));
  models.push_back(heisenberg_weyl_algebra(3));
  models.push_back(walsh_algebra(2, 3));

  double worst_law = 0.0, worst_choi = 0.0;
  for (const StarAlgebra& a : models) {
    Rng rng = Rng::stream(opt.seed, 50 + a.dim);
    const CMat one = CMat::identity(a.dim);
    for (int s = 0; s < 3; ++s) {
      const CMat x = random_selfadjoint(a, rng, true);
      const CMat y = random_selfadjoint(a, rng, true);
      for (double t : t_grid) {
        const CMat tx = semigroup_apply(a, x, t);
        // law
        const CMat law = semigroup_apply(a, tx, 0.5) - semigroup_apply(a, x, t + 0.5);
        worst_law = std::max(worst_law, max_abs(law));
        c.require(max_abs(law) <= 1e-9, "semigroup law");
        // unitality, trace, self-adjointness, contraction
        c.require(max_abs(semigroup_apply(a, one, t) - one) <= 1e-9, "unitality");
        c.require(std::abs(tau(tx) - tau(x)) <= 1e-9, "trace preservation");
        const cplx lhs = tau(alg_mul(a, tx, y));
        const cplx rhs = tau(alg_mul(a, x, semigroup_apply(a, y, t)));
        c.require(std::abs(lhs - rhs) <= 1e-9, "self-adjointness");
        c.require(elem_opnorm(a, tx) <= elem_opnorm(a, x) + 1e-9, "contraction");
      }
    }
    for (double t : t_grid) {
      const CpCheck cp = cp_choi_check(a, t);
      c.require(cp.is_cp, "Choi PSD, model " + a.label + " t=" + fmt12(t));
      worst_choi = std::min(worst_choi, cp.min_choi_eig);
    }
  }
  c.note("worst_law=" + fmt12(worst_law) + " min_choi_eig=" + fmt12(worst_choi));
}

void c6_dual_route(const Options& opt, Check& c) {
  const int samples = opt.quick ? 20 : 100;
  std::vector<StarAlgebra> models;
  models.push_back(zn_model(4));
  models.push_back(zn_model(6));
  models.push_back(h3_model(2));
  models.push_back(heisenberg_weyl_algebra(3));
  models.push_back(walsh_algebra(2, 2));
  double worst = 0.0;
  for (const StarAlgebra& a : models) {
    Rng rng = Rng::stream(opt.seed, 600 + a.dim + a.basis_size());
    for (int s = 0; s < samples; ++s) {
      const CMat x = random_element(a, rng);
      const CMat y = random_element(a, rng);
      const GammaPair gp = gamma_forms(a, x, y);
      worst = std::max(worst, max_abs(gp.gamma - gamma_gromov(a, x, y, 1)));
      worst = std::max(worst, max_abs(gp.gamma2 - gamma_gromov(a, x, y, 2)));
    }
  }
  c.require(worst <= 1e-9, "generator vs Gromov route within 1e-9");
  c.note("max_diff=" + fmt12(worst));
}

void c7_element_curvature(const Options& opt, Check& c) {
  const int samples = opt.quick ? 100 : 1000;
  const std::vector<double> t_grid = {0.1, 0.5, 1.0, 2.0, 3.0};
  double worst_crit = std::numeric_limits<double>::infinity();
  double worst_decay = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= 6; ++n) {
    const StarAlgebra a = heisenberg_weyl_algebra(n);
    const double alpha = double(n + 2) / double(2 * n);
    Rng rng = Rng::stream(opt.seed, 700 + n);
    for (int s = 0; s < samples; ++s) {
      const CMat x = random_selfadjoint(a, rng);
      const GammaPair gp = gamma_forms(a, x, x);
      CMat slack = gp.gamma2;
      CMat scaled = gp.gamma;
      scaled *= cplx(alpha, 0.0);
      slack -= scaled;
      const double men = eigvals_herm(hermitian_part(slack)).front();
      worst_crit = std::min(worst_crit, men);
      const DecayCheck dc = semigroup_decay_check(a, alpha, x, t_grid);
      worst_decay = std::min(worst_decay, dc.min_margin);
    }
  }
  c.require(worst_crit >= -1e-9, "Gamma2 - alpha Gamma >= -1e-9");
  c.require(worst_decay >= -1e-9, "decay margin >= -1e-9");
  c.note("min_crit=" + fmt12(worst_crit) + " min_decay=" + fmt12(worst_decay));
}

void c8_walsh_gradient(const Options& opt, Check& c) {
  const WalshGradientCheck wc = walsh_gradient_check(5, opt.quick ? 10 : 50, opt.seed + 8);
  c.require(wc.max_residual <= 1e-9, "Gamma(f,f) = |grad f|^2 within 1e-9");
  c.note("max_residual=" + fmt12(wc.max_residual));
}

std::vector<MartingaleModel> enumerable_battery(const Options& opt) {
  std::vector<MartingaleModel> models;
  {
    const int k = opt.quick ? 8 : 12;
    std::vector<CMat> as(k, CMat(1, 1));
    for (auto& a : as) a(0, 0) = 1.0 / std::sqrt(double(k));
    models.push_back(MartingaleModel::rademacher_matrix(std::move(as)));
  }
  {
    const int k = opt.quick ? 6 : 10;
    const int d = 4;
    std::vector<CMat> as;
    Rng rng = Rng::stream(opt.seed, 900);
    for (int i = 0; i < k; ++i) {
      CMat h = random_gaussian_hermitian(d, rng);
      h *= cplx(1.0 / (opnorm_herm(h) * std::sqrt(double(k))), 0.0);
      as.push_back(std::move(h));
    }
    models.push_back(MartingaleModel::rademacher_matrix(std::move(as)));
  }
  {
    const int k = opt.quick ? 8 : 12;
    const int d = 2;
    std::vector<CMat> as;
    Rng rng = Rng::stream(opt.seed, 901);
    for (int i = 0; i < k; ++i) {
      CMat h = random_gaussian_hermitian(d, rng);
      h *= cplx(1.0 / (opnorm_herm(h) * std::sqrt(double(k))), 0.0);
      as.push_back(std::move(h));
    }
    models.push_back(MartingaleModel::rademacher_matrix(std::move(as)));
  }
  {
    const int m = opt.quick ? 10 : 14;
    std::vector<double> f(std::size_t(1) << m);
    for (std::size_t y = 0; y < f.size(); ++y) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += ((y >> j) & 1) ? -1.0 : 1.0;
      f[y] = s / std::sqrt(double(m));
    }
    models.push_back(MartingaleModel::walsh_function(std::move(f), m));
  }
  {
    const int m = opt.quick ? 8 : 12;
    std::vector<double> f(std::size_t(1) << m);
    Rng rng = Rng::stream(opt.seed, 902);
    for (auto& v : f) v = rng.gaussian();
    models.push_back(MartingaleModel::walsh_function(std::move(f), m));
  }
  return models;
}

void c9_deviation_domination(const Options& opt, Check& c) {
  double min_slack = std::numeric_limits<double>::infinity();
  double worst_pgap = std::numeric_limits<double>::infinity();
  for (const MartingaleModel& model : enumerable_battery(opt)) {
    const QuadraticCharacteristics qc = model.quadratic_characteristics();
    std::vector<double> t_grid;
    for (int i = 0; i <= 12; ++i) t_grid.push_back(0.25 * double(i) * std::sqrt(qc.D2));
    const DeviationReport rep = deviation_report(model, t_grid, default_eps_grid(), 0, opt.seed);
    c.require(rep.pass, "exact tail <= fman bound, model " + model.name());
    min_slack = std::min(min_slack, rep.min_slack);
    for (double p : {2.0, 4.0, 6.0, 8.0}) {
      const double norm = exact_pnorm(model, p);
      double bound = std::numeric_limits<double>::infinity();
      for (double eps : default_eps_grid()) bound = std::min(bound, pmom_bound(p, qc.D2, qc.M, eps));
      c.require(norm <= bound, "p-norm <= pmom bound, p=" + fmt12(p));
      worst_pgap = std::min(worst_pgap, bound - norm);
    }
  }
  c.require(min_slack >= 0.0, "zero violations in tail domination");
  c.note("min_slack=" + fmt12(min_slack) + " min_pnorm_gap=" + fmt12(worst_pgap));
}

void c10_exp_moment(const Options& opt, Check& c) {
  double worst = std::numeric_limits<double>::infinity();
  for (const MartingaleModel& model : enumerable_battery(opt)) {
    const QuadraticCharacteristics qc = model.quadratic_characteristics();
    const double eps = 1.0;
    const double lmax = expin_lambda_max(qc.M, eps);
    for (int j = 1; j <= 8; ++j) {
      const ExpinCheck ec = expin_check(model, lmax * double(j) / 8.0, eps);
      c.require(ec.pass, "expin bound, model " + model.name());
      worst = std::min(worst, ec.rhs - ec.lhs);
    }
  }
  c.note("min_gap=" + fmt12(worst));
}

void c11_golden_thompson(const Options& opt, Check& c) {
  const int per_dim = opt.quick ? 200 : 2500;
  double worst_rel = std::numeric_limits<double>::infinity();
  for (int d : {2, 4, 8, 16}) {
    Rng rng = Rng::stream(opt.seed, 1100 + d);
    for (int s = 0; s < per_dim; ++s) {
      const CMat a = random_gaussian_hermitian(d, rng);
      const CMat b = random_gaussian_hermitian(d, rng);
      const GoldenThompson gt = golden_thompson_check(a, b);
      const double rel = (gt.rhs - gt.lhs) / std::fabs(gt.rhs);
      worst_rel = std::min(worst_rel, rel);
      c.require(rel >= -1e-10, "Golden-Thompson slack");
    }
  }
  // commuting pairs give equality
  double worst_eq = 0.0;
  Rng rng = Rng::stream(opt.seed, 1199);
  for (int s = 0; s < 200; ++s) {
    const int d = 2 + int(rng.next_u64() % 7);
    CMat a(d, d), b(d, d);
    for (int i = 0; i < d; ++i) {
      a(i, i) = rng.gaussian();
      b(i, i) = rng.gaussian();
    }
    const GoldenThompson gt = golden_thompson_check(a, b);
    worst_eq = std::max(worst_eq, std::fabs(gt.lhs - gt.rhs) / (1.0 + std::fabs(gt.rhs)));
  }
  c.require(worst_eq <= 1e-10, "commuting equality within 1e-10");
  c.note("min_rel_slack=" + fmt12(worst_rel) + " max_commuting_gap=" + fmt12(worst_eq));
}

void c12_entropy_duality(const Options& opt, Check& c) {
  const int n_sigma = opt.quick ? 20 : 100;
  double worst_gap = 0.0;
  {
    Rng rng = Rng::stream(opt.seed, 1200);
    for (int s = 0; s < n_sigma; ++s) {
      const int d = 2 + int(rng.next_u64() % 7);
      const CMat sigma = random_gaussian_hermitian(d, rng);
      const GibbsDuality gd = gibbs_duality_check(sigma, 20, opt.seed + s);
      c.require(gd.equality_gap <= 1e-8, "Gibbs maximizer gap <= 1e-8");
      c.require(gd.feasible_below, "random rho values below ln tau(e^sigma)");
      worst_gap = std::max(worst_gap, gd.equality_gap);
    }
  }
  {
    const int n_mono = opt.quick ? 40 : 200;
    Rng rng = Rng::stream(opt.seed, 1201);
    for (int s = 0; s < n_mono; ++s) {
      const int d = 2 + int(rng.next_u64() % 7);
      CMat g(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.cgaussian();
      CMat rho = mul(adjoint(g), g);
      rho *= cplx(1.0 / tau(rho).real(), 0.0);
      std::vector<int> blocks;
      int left = d;
      while (left > 0) {
        const int b = 1 + int(rng.next_u64() % std::uint64_t(left));
        blocks.push_back(b);
        left -= b;
      }
      c.require(entropy_monotonicity_check(rho, blocks).holds, "Ent(E rho) <= Ent(rho)");
    }
  }
  {
    double worst_proj = 0.0;
    Rng rng = Rng::stream(opt.seed, 1202);
    for (int s = 0; s < 100; ++s) {
      const int d = 2 + int(rng.next_u64() % 7);
      const int rank = 1 + int(rng.next_u64() % std::uint64_t(d - 1));
      const CMat h = random_gaussian_hermitian(d, rng);
      const HermEig eh = eig_herm(h);
      CMat proj(d, d);
      for (int k = 0; k < rank; ++k) {
        const cplx* w = eh.vectors.row(d - 1 - k);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) proj(i, j) += std::conj(w[i]) * w[j];
      }
      const double te = tau(proj).real();
      CMat rho = proj;
      rho *= cplx(1.0 / te, 0.0);
      worst_proj = std::max(worst_proj, std::fabs(entropy(rho) + std::log(te)));
    }
    c.require(worst_proj <= 1e-10, "Ent(e/tau(e)) = -ln tau(e) within 1e-10");
    c.note("max_gibbs_gap=" + fmt12(worst_gap) + " max_proj_gap=" + fmt12(worst_proj));
  }
}

struct NamedModel {
  StarAlgebra alg;
  double alpha;
};

std::vector<NamedModel> curvature_battery(const Options& opt) {
  std::vector<NamedModel> out;
  for (int n : {3, 4, 5}) out.push_back({heisenberg_weyl_algebra(n), double(n + 2) / double(2 * n)});
  out.push_back({walsh_algebra(2, opt.quick ? 5 : 8), 1.0});
  out.push_back({zn_model(8), 10.0 / 16.0});
  return out;
}

void c13_poincare(const Options& opt, Check& c) {
  const int samples = opt.quick ? 50 : 500;
  const double bound_sa = 2.0 * std::sqrt(2.0);
  const double bound_gen = 4.0 * std::sqrt(2.0);
  double max_sa = 0.0, max_gen = 0.0, worst_parseval = 0.0;
  for (const NamedModel& m : curvature_battery(opt)) {
    const PoincareScan scan =
        poincare_ratio_scan(m.alg, m.alpha, {2.0, 4.0, 8.0}, samples, opt.seed + m.alg.dim);
    max_sa = std::max(max_sa, scan.max_ratio_sa);
    max_gen = std::max(max_gen, scan.max_ratio_general);
    c.require(scan.max_ratio_sa <= bound_sa, "self-adjoint ratio <= 2 sqrt(2), " + m.alg.label);
    c.require(scan.max_ratio_general <= bound_gen, "general ratio <= 4 sqrt(2), " + m.alg.label);
    // Parseval at p = 2
    Rng rng = Rng::stream(opt.seed, 1300 + m.alg.dim);
    for (int s = 0; s < 20; ++s) {
      const CMat x = random_selfadjoint(m.alg, rng);
      CMat xc = x;
      xc -= fixed_point_project(m.alg, x);
      const double lhs = sqr(pnorm(m.alg, xc, 2.0));
      const std::vector<cplx> coeff = fourier_coeffs(m.alg, x);
      double rhs = 0.0;
      for (int g = 0; g < m.alg.basis_size(); ++g)
        if (m.alg.psi[g] > 0.0) rhs += std::norm(coeff[g]);
      worst_parseval = std::max(worst_parseval, std::fabs(lhs - rhs));
    }
  }
  c.require(worst_parseval <= 1e-10, "Parseval identity at p = 2 within 1e-10");
  c.note("max_sa=" + fmt12(max_sa) + " max_general=" + fmt12(max_gen) +
         " parseval=" + fmt12(worst_parseval));
}

void c14_exp_integrability(const Options& opt, Check& c) {
  const int samples = opt.quick ? 50 : 500;
  double worst1 = std::numeric_limits<double>::infinity();
  double worst2 = std::numeric_limits<double>::infinity();
  for (const NamedModel& m : curvature_battery(opt)) {
    const ExpIntReport rep =
        exp_integrability_check(m.alg, m.alpha, samples, opt.seed + 14 + m.alg.dim, true);
    c.require(rep.pass, "exp integrability with C = 8e, " + m.alg.label);
    worst1 = std::min(worst1, rep.min_margin_con1);
    worst2 = std::min(worst2, rep.min_margin_con2);
  }
  c.note("min_margin_moment=" + fmt12(worst1) + " min_margin_tail=" + fmt12(worst2));
}

void c15_transportation(const Options& opt, Check& c) {
  // exact two-point: W1 = |r|, and at r = 1: 1 <= sqrt(2 ln 2) with c_half = 1
  const StarAlgebra two = walsh_algebra(2, 1);
  c.require(std::fabs(w1_two_point_exact(1.0) - 1.0) == 0.0, "two-point closed form at r=1");
  c.require(1.0 <= std::sqrt(2.0 * std::log(2.0)) + 1e-9, "1 <= sqrt(2 ln 2)");
  double worst_tp = 0.0;
  for (double r : {0.25, 0.5, 0.9, 1.0}) {
    CMat rho = CMat::identity(2);
    rho(0, 0) += r; // 1 + r eps with eps = diag(1, -1)
    rho(1, 1) -= r;
    const W1Result w1 = w1_lower_bound(two, rho, 4, opt.seed + 15);
    worst_tp = std::max(worst_tp, std::fabs(w1.w1_lb - std::fabs(r)));
    c.require(w1.witness_gamma_norm <= 1.0 + 1e-9, "witness feasibility");
    const double ent = entropy(rho);
    const double closed = std::log(std::pow(1.0 + r, (1.0 + r) / 2.0) *
                                   std::pow(1.0 - r, (1.0 - r) / 2.0));
    c.require(std::fabs(ent - closed) <= 1e-9, "two-point entropy closed form");
    c.require(w1.w1_lb <= std::sqrt(2.0 * 1.0 * ent) + 1e-9, "transport bound, c_half = 1");
  }
  c.require(worst_tp <= 1e-6, "optimizer reproduces W1 = |r| within 1e-6");

  // general models: necessary-condition check with estimated c_half * 1.2
  const int densities = opt.quick ? 10 : 50;
  const std::vector<double> t_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<StarAlgebra> models;
  models.push_back(heisenberg_weyl_algebra(3));
  models.push_back(walsh_algebra(2, 2));
  models.push_back(zn_model(4));
  double min_margin = std::numeric_limits<double>::infinity();
  for (const StarAlgebra& a : models) {
    const SubgaussianEstimate est =
        subgaussian_c_estimate(a, opt.quick ? 10 : 40, t_grid, opt.seed + 151);
    const double c_half = est.c_half * 1.2;
    Rng rng = Rng::stream(opt.seed, 1500 + a.dim + a.basis_size());
    for (int s = 0; s < densities; ++s) {
      const CMat z = random_element(a, rng);
      CMat rho = alg_mul(a, adjoint(z), z);
      rho *= cplx(1.0 / tau(rho).real(), 0.0);
      const TransportCheck tc =
          transport_check(a, rho, c_half, opt.quick ? 2 : 8, opt.seed + 152 + s);
      c.require(tc.pass, "w1_lb <= sqrt(2 c_half Ent), " + a.label);
      min_margin = std::min(min_margin, tc.rhs - tc.lhs);
    }
  }
  c.note("two_point_err=" + fmt12(worst_tp) + " min_margin=" + fmt12(min_margin));
}

void c16_product_measure(const Options&, Check& c) {
  const std::vector<std::vector<double>> spaces = {{0.5, 0.5}, {0.5, 0.5}};
  // f = x + y with coordinates +1 (index 0) and -1 (index 1)
  const std::vector<double> f = {2.0, 0.0, 0.0, -2.0};
  const ProductMeasureReport rep = product_measure_report(spaces, f, {0.0, 1.0, 2.0});
  double worst = 0.0;
  for (double g : rep.gamma_sum) worst = std::max(worst, std::fabs(g - 2.0));
  c.require(worst <= 1e-12, "sum Gamma_i = 2 exactly");
  c.require(std::fabs(rep.mean) <= 1e-12, "E f = 0");
  c.require(std::fabs(rep.tails[2] - 0.25) <= 1e-12, "P(f >= 2) = 1/4");
  c.require(std::isfinite(rep.c_hat[2]), "implied c-hat emitted");
  c.note("gamma_err=" + fmt12(worst) + " c_hat(2)=" + fmt12(rep.c_hat[2]));
}

void c17_determinism(const Options& opt, Check& c) {
  namespace fs = std::filesystem;
  const std::string base = opt.out_dir + "/determinism";
  const auto run_into = [&](const std::string& dir) {
    fs::create_directories(dir);
    ScenarioConfig curvature;
    curvature.set("group", "zn");
    curvature.set("n", "6");
    curvature.set("seed", std::to_string(opt.seed));
    curvature.set("out_dir", dir + "/curv");
    run_curvature(curvature);
    ScenarioConfig deviation;
    deviation.set("model", "rademacher");
    deviation.set("k", "6");
    deviation.set("d", "2");
    deviation.set("seed", std::to_string(opt.seed));
    deviation.set("out_dir", dir + "/dev");
    run_deviation(deviation);
    ScenarioConfig transport;
    transport.set("model", "twopoint");
    transport.set("samples", "3");
    transport.set("restarts", "2");
    transport.set("seed", std::to_string(opt.seed));
    transport.set("out_dir", dir + "/tr");
    run_transport(transport);
  };
  run_into(base + "/a");
  run_into(base + "/b");
  for (const char* rel : {"curv/report.json", "curv/curvature_K.csv", "dev/report.json",
                          "dev/deviation.csv", "tr/report.json"}) {
    const std::string fa = read_file(base + "/a/" + rel);
    const std::string fb = read_file(base + "/b/" + rel);
    c.require(fa == fb, std::string("byte-identical rerun: ") + rel);
  }
  c.note("5 artifacts compared");
}

} // namespace

std::vector<CriterionResult> run_all(const Options& opt) {
  struct Entry {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(const Options&, Check&)> fn;
  };
  const std::vector<Entry> entries = {
      {1, "sharp constant reproduction on Z_n", 1.0, c1_sharp_alpha},
      {2, "free-group curvature certificates", 5.0, c2_free_group},
      {3, "Z_n cocycle identity", 1.0, c3_cocycle},
      {4, "Heisenberg criterion and decomposition", 30.0, c4_heisenberg},
      {5, "semigroup axioms and complete positivity", 30.0, c5_semigroup_axioms},
      {6, "dual-route Gamma forms", 10.0, c6_dual_route},
      {7, "element-level curvature on M_n", 60.0, c7_element_curvature},
      {8, "Walsh gradient identity", 5.0, c8_walsh_gradient},
      {9, "deviation and moment domination (exact)", 300.0, c9_deviation_domination},
      {10, "exponential moment bound (exact)", 60.0, c10_exp_moment},
      {11, "Golden-Thompson inequality", 60.0, c11_golden_thompson},
      {12, "entropy, duality, monotonicity", 30.0, c12_entropy_duality},
      {13, "Poincare constants", 120.0, c13_poincare},
      {14, "exponential integrability", 120.0, c14_exp_integrability},
      {15, "transportation inequalities", 120.0, c15_transportation},
      {16, "product-measure example", 1.0, c16_product_measure},
      {17, "byte-identical reruns", 60.0, c17_determinism},
  };
  std::vector<CriterionResult> out;
  for (const Entry& e : entries) {
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    Check chk;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.fn(opt, chk);
    } catch (const std::exception& ex) {
      chk.require(false, std::string("exception: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds >= e.budget_seconds)
      chk.require(false, "runtime budget " + fmt12(e.budget_seconds) + "s exceeded");
    r.pass = chk.pass;
    r.detail = chk.detail.str() + " [" + fmt12(sig12(r.seconds)) + "s]";
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace nckit::acceptance
