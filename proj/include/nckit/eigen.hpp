#pragma once

#include <functional>
#include <vector>

#include "nckit/linalg.hpp"

// Dense symmetric / Hermitian eigensolvers.
//
// Real symmetric: Householder tridiagonalization followed by implicit-shift
// QL. Complex Hermitian H = A + iB is solved through the real embedding
// [[A, -B], [B, A]], whose spectrum is that of H with every eigenvalue
// doubled; complex eigenvectors are recovered per eigenvalue cluster by
// pivoted Gram-Schmidt over the images u + iv.
//
// Conventions: eigenvalues ascending. Eigenvectors are stored as matrix ROWS
// w_k with A = V^T diag(lambda) V (real) and X = V^dagger diag(lambda) V
// (complex); rows are orthonormal.

namespace nckit {

struct SymEig {
  std::vector<double> values;
  RMat vectors; // rows are eigenvectors
};

struct HermEig {
  std::vector<double> values;
  CMat vectors; // rows w_k, X = V^dagger diag(values) V
};

SymEig eig_sym(const RMat& a);
std::vector<double> eigvals_sym(const RMat& a);

HermEig eig_herm(const CMat& x);
std::vector<double> eigvals_herm(const CMat& x);

// V^dagger f(diag) V for Hermitian x.
CMat herm_fn(const CMat& x, const std::function<double(double)>& f);

CMat expm_herm(const CMat& x);

// Largest |eigenvalue| of Hermitian x.
double opnorm_herm(const CMat& x);
// Singular values of a general matrix (descending not guaranteed; ascending).
std::vector<double> sing_vals(const CMat& x);
// Operator norm of a general matrix.
double opnorm(const CMat& x);

} // namespace nckit
