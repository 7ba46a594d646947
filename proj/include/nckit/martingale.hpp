#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nckit/linalg.hpp"
#include "nckit/rng.hpp"

// Self-adjoint martingale models with exact (enumerable) and Monte Carlo
// tails, and the deviation / moment / exponential-moment bounds they are
// checked against:
//
//   Prob(x_n >= t) <= exp( -t^2 / (4(1+e)D^2 + 2(1+e)tM/sqrt(e))
//                          - sqrt(e) M t^3 / (2(1+e)(2 sqrt(e) D^2 + Mt)^2) )
//
// with ||d_k|| <= M and sum_k E_{k-1}(d_k^2) <= D^2.

namespace nckit {

struct QuadraticCharacteristics {
  double D2 = 0.0; // ||sum_k E_{k-1}(d_k^2)||_inf, worst case over histories
  double M = 0.0;  // sup_k ||d_k||_inf
};

class MartingaleModel {
public:
  // x_n = sum_k eps_k A_k with i.i.d. signs, A_k Hermitian.
  static MartingaleModel rademacher_matrix(std::vector<CMat> as);
  // Doob martingale of a real function on {0,1}^m filtered by coordinates.
  static MartingaleModel walsh_function(std::vector<double> f_points, int m);

  const std::string& name() const { return name_; }
  int steps() const { return steps_; }
  int dim() const { return dim_; }
  bool enumerable() const { return enumerable_; }

  QuadraticCharacteristics quadratic_characteristics() const;

  // eigenvalues of x_n for every outcome, uniform weights (enumerable only)
  std::vector<std::vector<double>> all_outcome_eigs() const;
  std::vector<double> sample_outcome_eigs(Rng& rng) const;

  // max over histories of ||E_{k-1}(d_k)||; zero for a true martingale
  double max_centering_residual() const;

private:
  MartingaleModel() = default;
  std::string name_;
  int steps_ = 0;
  int dim_ = 1;
  bool enumerable_ = false;
  // rademacher
  std::vector<CMat> as_;
  // walsh
  int m_ = 0;
  std::vector<double> f_;
  std::vector<std::vector<double>> cond_; // cond_[k] = E_k f on 2^k prefixes
};

// tail helpers over precomputed outcome eigenvalues
double tail_from_eigs(const std::vector<std::vector<double>>& eigs, double t);

double exact_tail(const MartingaleModel& model, double t);

struct McTail {
  double estimate = 0.0;
  double std_err = 0.0;
};

McTail mc_tail(const MartingaleModel& model, double t, int trials, std::uint64_t seed);

double exact_pnorm(const MartingaleModel& model, double p);
// tau(e^{lambda x_n}), exact
double exact_exp_moment(const MartingaleModel& model, double lambda);

// 32 log-spaced points in (0.01, 1]
std::vector<double> default_eps_grid();

double fman_bound(double t, double D2, double M, double eps);
double fman_bound_best(double t, double D2, double M);
// eq. (pmes) moment bound with D = sqrt(D2)
double pmom_bound(double p, double D2, double M, double eps);

// admissible upper end sqrt(eps) / (M (1 + eps)); +inf when M = 0
double expin_lambda_max(double M, double eps);

struct ExpinCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

ExpinCheck expin_check(const MartingaleModel& model, double lambda, double eps);

struct GoldenThompson {
  double lhs = 0.0;  // tau(e^{a+b})
  double rhs = 0.0;  // Re tau(e^a e^b)
  double imag_residual = 0.0;
  bool pass = false;
};

GoldenThompson golden_thompson_check(const CMat& a, const CMat& b);

struct DeviationRow {
  double t = 0.0, eps = 0.0, bound = 0.0, tail = 0.0, std_err = 0.0, slack = 0.0;
};

struct DeviationReport {
  std::string model;
  int steps = 0;
  int dim = 0;
  double D2 = 0.0;
  double M = 0.0;
  bool exact = false;
  std::vector<DeviationRow> rows;
  double min_slack = 0.0;
  bool pass = false;
};

DeviationReport deviation_report(const MartingaleModel& model, const std::vector<double>& t_grid,
                                 const std::vector<double>& eps_grid, int mc_trials,
                                 std::uint64_t seed);

} // namespace nckit
