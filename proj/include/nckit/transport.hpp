#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nckit/star_algebra.hpp"

// Entropy, the Gibbs variational duality, Wasserstein lower bounds over the
// noncommutative Lipschitz ball { x = x* : ||Gamma(x,x)||_inf <= 1 }, and the
// Poincare / exponential-integrability / transportation checkers.

namespace nckit {

// tau(rho ln(rho / tau(rho))); throws if rho is indefinite beyond tolerance.
double entropy(const CMat& rho);

void validate_density(const CMat& rho); // PSD and tau(rho) = 1

struct GibbsDuality {
  double lhs = 0.0;           // ln tau(e^sigma)
  double sup_estimate = 0.0;  // best value over the Gibbs point and random rhos
  double equality_gap = 0.0;  // |lhs - value at rho* = e^sigma / tau(e^sigma)|
  bool feasible_below = false; // every sampled rho gave value <= lhs
};

GibbsDuality gibbs_duality_check(const CMat& sigma, int random_rhos, std::uint64_t seed);

// E averages each diagonal block onto scalar * identity (trace preserving).
CMat block_conditional_expectation(const CMat& rho, const std::vector<int>& block_sizes);

struct MonotonicityCheck {
  bool holds = false;
  double ent_rho = 0.0;
  double ent_erho = 0.0;
};

MonotonicityCheck entropy_monotonicity_check(const CMat& rho, const std::vector<int>& block_sizes);

struct LipschitzElement {
  CMat x;
  double gamma_norm = 0.0; // ||Gamma(x,x)||_inf after normalization
};

// x / sqrt(||Gamma(x,x)||_inf); throws when Gamma(x,x) = 0 (x in Fix).
LipschitzElement lipschitz_normalize(const StarAlgebra& a, const CMat& x);

struct W1Result {
  double w1_lb = 0.0;
  CMat witness;
  double witness_gamma_norm = 0.0;
};

// Gradient ascent on tau((rho - E_Fix rho) x) / sqrt(||Gamma(x,x)||_inf) over
// self-adjoint x, seeded restarts; any feasible witness certifies a lower
// bound on W_1(rho, E_Fix rho).
W1Result w1_lower_bound(const StarAlgebra& a, const CMat& rho, int restarts, std::uint64_t seed);

// two-point model, rho = 1 + r eps: W_1 = |r| in closed form
double w1_two_point_exact(double r);

struct SubgaussianEstimate {
  double c_half = 0.0; // convention tau(e^{tx}) <= e^{c t^2 / 2}
  double c_full = 0.0; // convention tau(e^{tx}) <= e^{c t^2}
};

SubgaussianEstimate subgaussian_c_estimate(const StarAlgebra& a, int samples,
                                           const std::vector<double>& t_grid, std::uint64_t seed);

struct TransportCheck {
  double lhs = 0.0; // w1 lower bound
  double rhs = 0.0; // sqrt(2 c_half Ent(rho))
  bool pass = false;
};

TransportCheck transport_check(const StarAlgebra& a, const CMat& rho, double c_half, int restarts,
                               std::uint64_t seed);

struct PoincareScan {
  double max_ratio_sa = 0.0;      // vs sqrt(p/alpha) * Lipschitz norm, C = 2 sqrt(2) allowed
  double max_ratio_general = 0.0; // C = 4 sqrt(2) allowed
  double fitted_cprime = 0.0;     // vs p / sqrt(alpha) * ||Gamma^{1/2}||_p, reported only
};

PoincareScan poincare_ratio_scan(const StarAlgebra& a, double alpha,
                                 const std::vector<double>& p_list, int samples,
                                 std::uint64_t seed);

struct ExpIntReport {
  double min_margin_con1 = 0.0; // log-scale margin of the exponential moment bound
  double min_margin_con2 = 0.0; // tail-domination margin over the t grid
  double c_constant = 0.0;
  bool pass = false;
};

ExpIntReport exp_integrability_check(const StarAlgebra& a, double alpha, int samples,
                                     std::uint64_t seed, bool self_adjoint_battery = true);

struct ProductMeasureReport {
  double gamma_sup = 0.0;                 // || sum_i Gamma_i(f,f) ||_inf
  double mean = 0.0;                      // E f
  std::vector<double> gamma_sum;          // per point
  std::vector<double> t_grid;
  std::vector<double> tails;              // P(f - Ef >= t)
  std::vector<double> c_hat;              // -ln(tail) * gamma_sup / t^2 (NaN when undefined)
};

// spaces: one probability vector per factor; f on the product points
// (first factor most significant in the point index).
ProductMeasureReport product_measure_report(const std::vector<std::vector<double>>& spaces,
                                            const std::vector<double>& f,
                                            const std::vector<double>& t_grid);

} // namespace nckit
