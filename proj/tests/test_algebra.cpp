#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nckit/gromov.hpp"
#include "nckit/star_algebra.hpp"

using namespace nckit;

namespace {

StarAlgebra zn_model(int n) {
  const FiniteGroup g = build_cyclic(n);
  return left_regular_algebra(g, one_minus_delta(g));
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  double s = f(a) + f(b);
  const double h = (b - a) / n;
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

} // namespace

TEST_CASE("left regular representation basics") {
  const StarAlgebra z2 = zn_model(2);
  const CMat w1 = basis_matrix(z2, 1);
  CHECK(w1(0, 1) == cplx(1, 0));
  CHECK(w1(1, 0) == cplx(1, 0));
  CHECK(w1(0, 0) == cplx(0, 0));

  const StarAlgebra z3 = zn_model(3);
  CHECK(std::abs(tau(basis_matrix(z3, 1))) <= 1e-15);
  CHECK(std::abs(tau(basis_matrix(z3, 0)) - cplx(1, 0)) <= 1e-15);

  // H3(Z_2): permutation basis is orthonormal in the normalized trace
  const FiniteGroup h = build_heisenberg(2);
  const StarAlgebra alg = left_regular_algebra(h, heisenberg_length(2));
  CHECK(alg.dim == 8);
  for (int g = 0; g < 8; ++g)
    for (int k = 0; k < 8; ++k) {
      const cplx ip = tau(mul(adjoint(basis_matrix(alg, g)), basis_matrix(alg, k)));
      CHECK(std::abs(ip - (g == k ? cplx(1, 0) : cplx(0, 0))) <= 1e-10);
    }
}

TEST_CASE("non-cn length is refused") {
  const FiniteGroup z3 = build_cyclic(3);
  LengthFunction neg;
  neg.psi = {0.0, -1.0, -1.0};
  CHECK_THROWS_AS(left_regular_algebra(z3, neg), std::invalid_argument);
}

TEST_CASE("Heisenberg-Weyl algebra") {
  const StarAlgebra a2 = heisenberg_weyl_algebra(2);
  const CMat u1 = basis_matrix(a2, 1 * 2 + 0); // (b,c) = (1,0)
  const CMat v1 = basis_matrix(a2, 0 * 2 + 1); // (b,c) = (0,1)
  CHECK(std::abs(u1(0, 0) - cplx(1, 0)) <= 1e-15);
  CHECK(std::abs(u1(1, 1) - cplx(-1, 0)) <= 1e-15);
  CHECK(std::abs(v1(1, 0) - cplx(1, 0)) <= 1e-15);
  // u v = -v u at n = 2
  CHECK(max_abs(mul(u1, v1) + mul(v1, u1)) <= 1e-15);

  const StarAlgebra a3 = heisenberg_weyl_algebra(3);
  // 9 basis elements orthonormal, spanning M_3
  for (int g = 0; g < 9; ++g)
    for (int k = 0; k < 9; ++k) {
      const cplx ip = tau(mul(adjoint(basis_matrix(a3, g)), basis_matrix(a3, k)));
      CHECK(std::abs(ip - (g == k ? cplx(1, 0) : cplx(0, 0))) <= 1e-12);
    }
  CHECK(a3.psi[0] == 0.0);       // (0,0)
  CHECK(a3.psi[1 * 3 + 0] == 1.0); // (1,0)
  CHECK(a3.psi[1 * 3 + 1] == 2.0); // (1,1)

  // spans all of M_3: reconstruct an arbitrary matrix
  Rng rng(77);
  CMat x(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = rng.cgaussian();
  const CMat back = from_coeffs(a3, fourier_coeffs(a3, x));
  CHECK(max_abs(back - x) <= 1e-9);

  // Weyl commutation u_k v_l = e^{2 pi i k l / n} v_l u_k
  const CMat u = basis_matrix(a3, 1 * 3 + 0);
  const CMat v = basis_matrix(a3, 0 * 3 + 1);
  const cplx phase = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
  CHECK(max_abs(mul(u, v) - phase * mul(v, u)) <= 1e-12);
}

TEST_CASE("Walsh algebra") {
  const StarAlgebra w1 = walsh_algebra(2, 1);
  CHECK(w1.diagonal);
  const CMat eps = basis_matrix(w1, 1);
  CHECK(std::abs(eps(0, 0) - cplx(1, 0)) <= 1e-15);
  CHECK(std::abs(eps(1, 1) - cplx(-1, 0)) <= 1e-15);
  CHECK(w1.psi[1] == 1.0);

  // T_t eps = e^{-t} eps
  const CMat te = semigroup_apply(w1, eps, 0.7);
  CHECK(max_abs(te - std::exp(-0.7) * eps) <= 1e-12);

  const StarAlgebra w31 = walsh_algebra(3, 1);
  CHECK(w31.psi == std::vector<double>{0.0, 1.0, 1.0});

  // n = 2, m = 2: K(w_B, w_C) = |B cap C|
  const StarAlgebra w22 = walsh_algebra(2, 2);
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h) {
      const int inter = ((g & h) & 1 ? 1 : 0) + ((g & h) & 2 ? 1 : 0);
      CHECK(w22.k_form(g, h) == doctest::Approx(double(inter)).epsilon(1e-15));
    }
  // and the abstract Gromov form of Z_2^2 with summed psi matches
  const FiniteGroup z2 = build_cyclic(2);
  const LengthFunction p2 = one_minus_delta(z2);
  const auto [g4, psi4] = build_direct_product({&z2, &z2}, {&p2, &p2});
  const GromovForm direct = gromov_form(g4, psi4);
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h) CHECK(w22.k_form(g, h) == doctest::Approx(direct.K(g, h)));
}

TEST_CASE("semigroup contract: identity, law, trace, adjointness, contraction") {
  for (const StarAlgebra& a : {zn_model(4), heisenberg_weyl_algebra(3), walsh_algebra(2, 3)}) {
    Rng rng(31 + a.dim);
    const CMat one = CMat::identity(a.dim);
    for (int s = 0; s < 20; ++s) {
      const CMat x = random_selfadjoint(a, rng);
      CHECK(max_abs(semigroup_apply(a, x, 0.0) - x) <= 1e-12 * (1.0 + max_abs(x)));
      const CMat ab = semigroup_apply(a, semigroup_apply(a, x, 0.4), 0.9);
      const CMat once = semigroup_apply(a, x, 1.3);
      CHECK(max_abs(ab - once) <= 1e-9);
      CHECK(std::abs(tau(semigroup_apply(a, x, 0.8)) - tau(x)) <= 1e-10);
      const CMat y = random_selfadjoint(a, rng);
      const cplx lhs = tau(alg_mul(a, semigroup_apply(a, x, 0.6), y));
      const cplx rhs = tau(alg_mul(a, x, semigroup_apply(a, y, 0.6)));
      CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
      CHECK(elem_opnorm(a, semigroup_apply(a, x, 1.0)) <= elem_opnorm(a, x) * (1.0 + 1e-9));
    }
    CHECK(max_abs(semigroup_apply(a, one, 2.0) - one) <= 1e-12);
    CHECK_THROWS_AS(semigroup_apply(a, one, -0.1), std::invalid_argument);
  }
}

TEST_CASE("gamma forms: trivial cases and the dual route") {
  const StarAlgebra w1 = walsh_algebra(2, 1);
  const CMat one = CMat::identity(2);
  CHECK(max_abs(gamma_forms(w1, one, one).gamma) <= 1e-14); // Gamma(1,1) = 0
  const CMat eps = basis_matrix(w1, 1);
  const CMat gee = gamma_forms(w1, eps, eps).gamma;
  CHECK(max_abs(gee - one) <= 1e-12); // Gamma(eps, eps) = 1

  // generator route vs Gromov closed formula on Z_4, 100 random pairs
  const StarAlgebra z4 = zn_model(4);
  Rng rng(41);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const CMat x = random_element(z4, rng);
    const CMat y = random_element(z4, rng);
    const GammaPair gp = gamma_forms(z4, x, y);
    worst = std::max(worst, max_abs(gp.gamma - gamma_gromov(z4, x, y, 1)));
    worst = std::max(worst, max_abs(gp.gamma2 - gamma_gromov(z4, x, y, 2)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("energy and centering identities") {
  for (const StarAlgebra& a : {zn_model(5), heisenberg_weyl_algebra(3)}) {
    Rng rng(53 + a.dim);
    for (int s = 0; s < 25; ++s) {
      const CMat x = random_element(a, rng);
      // tau(Gamma(x,x)) = sum_g psi(g) |x^(g)|^2
      const double lhs = tau(gamma_forms(a, x, x).gamma).real();
      const std::vector<cplx> c = fourier_coeffs(a, x);
      double rhs = 0.0;
      for (int g = 0; g < a.basis_size(); ++g) rhs += a.psi[g] * std::norm(c[g]);
      CHECK(std::fabs(lhs - rhs) <= 1e-10 * (1.0 + std::fabs(rhs)));
      // Gamma(x,x) = Gamma(x - E_Fix x, x - E_Fix x)
      CMat xc = x;
      xc -= fixed_point_project(a, x);
      CHECK(max_abs(gamma_forms(a, x, x).gamma - gamma_forms(a, xc, xc).gamma) <= 1e-10);
    }
  }
}

TEST_CASE("matrix of gamma forms is PSD") {
  const StarAlgebra a = zn_model(4);
  Rng rng(59);
  const int k = 3;
  std::vector<CMat> xs;
  for (int i = 0; i < k; ++i) xs.push_back(random_element(a, rng));
  CMat block(k * a.dim, k * a.dim);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const CMat g = gamma_forms(a, xs[i], xs[j]).gamma;
      for (int r = 0; r < a.dim; ++r)
        for (int s = 0; s < a.dim; ++s) block(i * a.dim + r, j * a.dim + s) = g(r, s);
    }
  CHECK(eigvals_herm(hermitian_part(block)).front() >= -1e-10 * (1.0 + max_abs(block)));
}

TEST_CASE("conditional expectation generator satisfies Gamma2 >= Gamma/2") {
  // pinching onto diagonal 2x2 blocks of M_4
  const auto pinch = [](const CMat& x) {
    CMat y(4, 4);
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) y(2 * b + i, 2 * b + j) = x(2 * b + i, 2 * b + j);
    return y;
  };
  const auto gen = [&](const CMat& x) {
    CMat y = x;
    y -= pinch(x);
    return y; // A = I - E
  };
  Rng rng(61);
  const int k = 3;
  std::vector<CMat> xs;
  for (int i = 0; i < k; ++i) {
    CMat g(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) g(r, c) = rng.cgaussian();
    xs.push_back(g);
  }
  CMat block(k * 4, k * 4);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const GammaPair gp = gamma_forms_generator(gen, xs[i], xs[j]);
      CMat slack = gp.gamma2;
      CMat half = gp.gamma;
      half *= cplx(0.5, 0.0);
      slack -= half;
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) block(i * 4 + r, j * 4 + s) = slack(r, s);
    }
  CHECK(eigvals_herm(hermitian_part(block)).front() >= -1e-10 * (1.0 + max_abs(block)));
}

TEST_CASE("fixed point projection") {
  const StarAlgebra m3 = heisenberg_weyl_algebra(3);
  Rng rng(67);
  const CMat x = random_element(m3, rng);
  const CMat ef = fixed_point_project(m3, x);
  // only psi = 0 mode survives: E_Fix x = tau(x) 1
  CHECK(max_abs(ef - tau(x) * CMat::identity(3)) <= 1e-12);
  CHECK(max_abs(fixed_point_project(m3, ef) - ef) <= 1e-12);

  // matches the t -> infinity limit of the semigroup
  CHECK(max_abs(semigroup_apply(m3, x, 60.0) - ef) <= 1e-12);

  // H3(Z_2) has a nontrivial fixed-point algebra: the psi = 0 center modes
  const FiniteGroup h = build_heisenberg(2);
  const StarAlgebra alg = left_regular_algebra(h, heisenberg_length(2));
  const CMat z = basis_matrix(alg, (1 * 2 + 0) * 2 + 0); // lambda(1,0,0), psi = 0
  CHECK(max_abs(fixed_point_project(alg, z) - z) <= 1e-12);
}

TEST_CASE("spectral operations") {
  const StarAlgebra m3 = heisenberg_weyl_algebra(3);
  CMat a(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  a(2, 2) = 3.0;
  CHECK(prob_tail(m3, a, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(prob_tail(m3, a, 0.0) == doctest::Approx(1.0));
  CHECK(prob_tail(m3, a, 3.5) == doctest::Approx(0.0));

  const StarAlgebra w1 = walsh_algebra(2, 1);
  CMat pm(2, 2);
  pm(0, 0) = 1.0;
  pm(1, 1) = -1.0;
  for (double p : {1.0, 2.0, 3.0, 7.5}) CHECK(pnorm(w1, pm, p) == doctest::Approx(1.0));

  // layer cake: ||a||_p^p = p * integral t^{p-1} Prob(a > t) dt by quadrature
  CMat diag(3, 3);
  diag(0, 0) = 0.5;
  diag(1, 1) = 1.0;
  diag(2, 2) = 2.0;
  const double p = 3.0;
  const auto strict_tail = [&](double t) {
    int count = 0;
    for (double v : {0.5, 1.0, 2.0})
      if (v > t) ++count;
    return double(count) / 3.0;
  };
  const auto integrand = [&](double t) { return p * std::pow(t, p - 1.0) * strict_tail(t); };
  // integrate between spectrum breakpoints, staying inside each smooth piece
  const double in = 1e-9;
  const double quad = simpson(integrand, 0.0, 0.5 - in, 4000) +
                      simpson(integrand, 0.5 + in, 1.0 - in, 4000) +
                      simpson(integrand, 1.0 + in, 2.0 - in, 4000);
  CHECK(std::fabs(std::pow(pnorm(m3, diag, p), p) - quad) <= 1e-6);

  // functional calculus: exp then log returns the element
  const CMat back = func_calculus(
      m3, func_calculus(m3, diag, [](double t) { return std::exp(t); }),
      [](double t) { return std::log(t); });
  CHECK(max_abs(back - diag) <= 1e-10);

  CMat nonsa(3, 3);
  nonsa(0, 1) = 1.0;
  CHECK_THROWS_AS(prob_tail(m3, nonsa, 0.0), std::invalid_argument);
}

TEST_CASE("Choi matrices are PSD along the semigroup") {
  CHECK(cp_choi_check(walsh_algebra(2, 2), 0.0).is_cp);
  CHECK(cp_choi_check(heisenberg_weyl_algebra(3), 0.5).is_cp);
  CHECK(cp_choi_check(zn_model(5), 1.0).is_cp);
  // min eig reported
  CHECK(cp_choi_check(zn_model(3), 0.3).min_choi_eig >= -1e-12);
}

TEST_CASE("decay margin: zero at t = 0, nonnegative at the certified alpha") {
  const StarAlgebra m4 = heisenberg_weyl_algebra(4);
  const double alpha = 6.0 / 8.0;
  Rng rng(71);
  for (int s = 0; s < 20; ++s) {
    const CMat x = random_selfadjoint(m4, rng);
    CHECK(std::fabs(semigroup_decay_check(m4, alpha, x, {0.0}).min_margin) <= 1e-12);
    CHECK(semigroup_decay_check(m4, alpha, x, {0.1, 0.5, 1.0, 2.0, 3.0}).min_margin >= -1e-9);
  }
  // sharpness probe: doubled alpha is violated on a psi = 1 mode
  CMat probe = basis_matrix(m4, 1 * 4 + 0); // (b,c) = (1,0)
  probe = hermitian_part(probe + adjoint(probe));
  const DecayCheck dc = semigroup_decay_check(m4, 2.0 * alpha, probe, {0.05, 0.1, 0.2});
  CHECK(dc.min_margin < -1e-6);
}

TEST_CASE("Heisenberg decomposition") {
  const HeisenbergDecomposition d2 = heisenberg_decompose(2);
  CHECK(d2.block_dims == std::vector<int>{4, 4});
  CHECK(d2.dims_ok);
  CHECK(d2.m0_commutative);
  CHECK(d2.m1_full_matrix);
  CHECK(d2.offblock_residual <= 1e-12);
  CHECK(d2.invariance_margin <= 1e-10);

  const HeisenbergDecomposition d3 = heisenberg_decompose(3);
  CHECK(d3.block_dims == std::vector<int>{9, 9, 9});
  CHECK(d3.dims_ok);
  CHECK(d3.m0_commutative);
  CHECK(d3.m1_full_matrix);
  CHECK(d3.invariance_margin <= 1e-9);

  CHECK_THROWS_AS(heisenberg_decompose(1), std::invalid_argument);
}

TEST_CASE("Walsh gradient identity") {
  // f = first coordinate: Gamma(f,f) = 1 pointwise
  const StarAlgebra w = walsh_algebra(2, 3);
  CMat f(8, 8);
  for (int y = 0; y < 8; ++y) f(y, y) = (y & 4) ? -1.0 : 1.0; // x_1 lives in the top bit
  const CMat g = gamma_forms(w, f, f).gamma;
  CHECK(max_abs(g - CMat::identity(8)) <= 1e-12);
  // constant f: both sides vanish
  const CMat c = cplx(2.5, 0.0) * CMat::identity(8);
  CHECK(max_abs(gamma_forms(w, c, c).gamma) <= 1e-12);
  // random f, m = 5
  CHECK(walsh_gradient_check(5, 50, 99).max_residual <= 1e-9);
}

TEST_CASE("repeated composition does not drift") {
  // coefficient truncation keeps T_{0.1}^10 and T_1 together
  const StarAlgebra a = heisenberg_weyl_algebra(4);
  Rng rng(73);
  const CMat x = random_selfadjoint(a, rng, true);
  CMat iterated = x;
  for (int i = 0; i < 10; ++i) iterated = semigroup_apply(a, iterated, 0.1);
  CHECK(max_abs(iterated - semigroup_apply(a, x, 1.0)) <= 1e-9);
}

TEST_CASE("size caps") {
  CHECK_THROWS_AS(walsh_algebra(2, 13), std::length_error); // 2^13 > 4096
  CHECK_THROWS_AS(heisenberg_weyl_algebra(1), std::invalid_argument);
  CHECK_THROWS_AS(walsh_gradient_check(13, 1, 0), std::invalid_argument);
}

TEST_CASE("element-level curvature on M_n") {
  for (int n = 2; n <= 4; ++n) {
    const StarAlgebra a = heisenberg_weyl_algebra(n);
    const double alpha = double(n + 2) / double(2 * n);
    Rng rng(83 + n);
    for (int s = 0; s < 50; ++s) {
      const CMat x = random_selfadjoint(a, rng);
      const GammaPair gp = gamma_forms(a, x, x);
      CMat slack = gp.gamma2;
      CMat scaled = gp.gamma;
      scaled *= cplx(alpha, 0.0);
      slack -= scaled;
      CHECK(eigvals_herm(hermitian_part(slack)).front() >= -1e-9);
    }
  }
}
