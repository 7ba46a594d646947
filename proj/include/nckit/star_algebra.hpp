#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nckit/eigen.hpp"
#include "nckit/group.hpp"
#include "nckit/linalg.hpp"
#include "nckit/rng.hpp"

// Concrete matrix *-algebra models carrying a Fourier-multiplier semigroup:
//
//   T_t x = sum_g e^{-t psi(g)} x^(g) w_g,   A x = sum_g psi(g) x^(g) w_g,
//
// over an orthonormal unitary basis (w_g) indexed by a finite group. All
// shipped bases are monomial matrices (one nonzero per column), which makes
// Fourier analysis O(d) per coefficient. Elements are plain dense matrices;
// the Walsh model is diagonal and every operation takes the O(d) diagonal
// path there.

namespace nckit {

// w[perm[j]][j] = phase[j], zero elsewhere.
struct Monomial {
  std::vector<int> perm;
  std::vector<cplx> phase;
};

struct StarAlgebra {
  int dim = 0;          // matrix dimension d
  std::string label;
  bool diagonal = false;
  FiniteGroup index;    // group law on basis indices
  std::vector<Monomial> basis;
  std::vector<double> psi;

  int basis_size() const { return index.order; }
  // Gromov form on basis indices
  double k_form(int g, int h) const {
    return 0.5 * (psi[g] + psi[h] - psi[index.mul(index.inv(g), h)]);
  }
};

using AlgElement = CMat;

// Left regular representation of a finite group; refuses non-cn psi.
StarAlgebra left_regular_algebra(const FiniteGroup& g, const LengthFunction& psi);

// Heisenberg-Weyl basis w_{(b,c)} = v_c u_b of M_n, psi(b,c) = 2 - d_b - d_c.
StarAlgebra heisenberg_weyl_algebra(int n);

// Characters of Z_n^m as diagonal matrices on n^m points, psi = |support|.
StarAlgebra walsh_algebra(int n, int m);

CMat basis_matrix(const StarAlgebra& a, int g);
std::vector<cplx> fourier_coeffs(const StarAlgebra& a, const CMat& x);
CMat from_coeffs(const StarAlgebra& a, const std::vector<cplx>& coeffs);

CMat semigroup_apply(const StarAlgebra& a, const CMat& x, double t);
CMat generator_apply(const StarAlgebra& a, const CMat& x);
CMat fixed_point_project(const StarAlgebra& a, const CMat& x);

// algebra product (diagonal fast path on commutative models)
CMat alg_mul(const StarAlgebra& a, const CMat& x, const CMat& y);

struct GammaPair {
  CMat gamma;
  CMat gamma2;
};

// 2 Gamma(x,y) = A(x*)y + x*A(y) - A(x*y); Gamma_2 the iterated form.
GammaPair gamma_forms(const StarAlgebra& a, const CMat& x, const CMat& y);

// Closed group-algebra formula sum conj(x^(g)) y^(h) K(g,h)^pow w_g* w_h.
CMat gamma_gromov(const StarAlgebra& a, const CMat& x, const CMat& y, int pow = 1);

// Gamma forms for an arbitrary generator (used for conditional-expectation
// semigroups where A is not a Fourier multiplier).
GammaPair gamma_forms_generator(const std::function<CMat(const CMat&)>& gen, const CMat& x,
                                const CMat& y);

// eigenvalues of a self-adjoint element (diagonal fast path aware), ascending
std::vector<double> element_eigs(const StarAlgebra& a, const CMat& x);
// functional calculus f(x) for self-adjoint x
CMat func_calculus(const StarAlgebra& a, const CMat& x, const std::function<double(double)>& f);

// tau(1_{[t, inf)}(x)) for self-adjoint x
double prob_tail(const StarAlgebra& a, const CMat& x, double t);
// ||x||_p = tau(|x|^p)^{1/p} via singular values
double pnorm(const StarAlgebra& a, const CMat& x, double p);
// operator norm (diagonal fast path aware)
double elem_opnorm(const StarAlgebra& a, const CMat& x);

struct CpCheck {
  bool is_cp = false;
  double min_choi_eig = 0.0;
};

// d^2 x d^2 Choi matrix of T_t in the computational basis.
CpCheck cp_choi_check(const StarAlgebra& a, double t);

struct DecayCheck {
  double min_margin = 0.0;
};

// min over t of min-eig( e^{-2 alpha t} T_t Gamma(x,x) - Gamma(T_t x, T_t x) ).
DecayCheck semigroup_decay_check(const StarAlgebra& a, double alpha, const CMat& x,
                                 const std::vector<double>& t_grid);

struct HeisenbergDecomposition {
  std::vector<int> block_dims;   // linear dimension of each Fourier block algebra
  bool m0_commutative = false;
  bool m1_full_matrix = false;   // dim n^2 with trivial center
  bool dims_ok = false;          // n^2 + sum(other blocks) == n^3
  double offblock_residual = 0.0;
  double invariance_margin = 0.0; // off-block mass of T_1 applied per block
};

HeisenbergDecomposition heisenberg_decompose(int n);

struct WalshGradientCheck {
  double max_residual = 0.0;
};

// Gamma(f,f) against sum_j |d_j f|^2 with d_j f(x) = (f(x) - f(x e_j)) / 2.
WalshGradientCheck walsh_gradient_check(int m, int samples, std::uint64_t seed);

// Gaussian Fourier coefficients, symmetrized (z + z*)/2.
CMat random_selfadjoint(const StarAlgebra& a, Rng& rng, bool normalize = false);
// plain Gaussian coefficients, not symmetrized
CMat random_element(const StarAlgebra& a, Rng& rng);

} // namespace nckit
