#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nckit/free_words.hpp"
#include "nckit/group.hpp"
#include "nckit/linalg.hpp"

// Gromov forms K(g,h) = (psi(g) + psi(h) - psi(g^-1 h)) / 2 and the sharp
// curvature constant: the algebraic criterion Gamma_2 >= alpha * Gamma on a
// group algebra is exactly the matrix inequality K o K >= alpha * K (Schur
// square against K), so the sharp alpha is the least generalized eigenvalue
// of the pencil (K o K, K) on range(K).

namespace nckit {

struct GromovForm {
  std::vector<std::string> labels;
  RMat K;
  double scale = 1.0;
};

// Relative PSD tolerance used across curvature checks.
double tol_psd(const RMat& k);

GromovForm gromov_form(const FiniteGroup& g, const LengthFunction& psi);
GromovForm gromov_form(const FreeWordArena& arena);

struct AlphaCertificate {
  double alpha_star = 0.0; // +infinity when K = 0
  int rank_K = 0;
  double witness_min_eig = 0.0;        // min eig of K o K - alpha_star * K
  std::vector<double> witness_vector;  // achieves the pencil minimum
};

AlphaCertificate sharp_alpha(const GromovForm& form);

struct Gamma2Check {
  bool holds = false;
  double min_pencil_eig = 0.0;
};

// min eig of K o K - alpha * K against tol_psd.
Gamma2Check gamma2_criterion_check(const GromovForm& form, double alpha);

// K = sum_i 1 x ... x K_i x ... x 1 (all-ones elsewhere), product basis.
GromovForm tensor_sum_form(const std::vector<const GromovForm*>& forms);

struct CnCertificate {
  bool is_cn = false;
  double min_eig = 0.0;
};

CnCertificate check_cn_length(const FiniteGroup& g, const LengthFunction& psi);
CnCertificate check_cn_length(const FreeWordArena& arena);

struct ResidualCertificate {
  double max_abs_residual = 0.0;
  double diag_value = 0.0;
};

// Haagerup's prefix map V(g) = sum_{g_i prefix of g} sqrt(2(i-1)) delta_{g_i};
// certifies K o K - K = Gram(V) on the ball, hence Gamma_2 >= Gamma.
ResidualCertificate haagerup_gram_certificate(const FreeWordArena& arena);

// Z_n cocycle b(k) in R^{2n} with <b(k), b(h)> = 1 + delta_{k,h} for k,h != 0.
ResidualCertificate cocycle_zn_certificate(int n);

void write_gromov_csv(std::ostream& os, const GromovForm& form);

} // namespace nckit
