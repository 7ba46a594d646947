#include "nckit/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nckit/eigen.hpp"

namespace nckit {

namespace {

constexpr std::int64_t kMaxOutcomes = std::int64_t(1) << 20;
constexpr int kMaxExactDim = 8;

std::vector<double> outcome_eigs_rademacher(const std::vector<CMat>& as, std::uint64_t mask) {
  const int d = as.empty() ? 1 : as[0].rows();
  CMat x(d, d);
  for (std::size_t k = 0; k < as.size(); ++k) {
    const double sign = (mask >> k) & 1 ? 1.0 : -1.0;
    simd::zaxpy(sign, as[k].data(), x.data(), x.size());
  }
  return eigvals_herm(x);
}

} // namespace

MartingaleModel MartingaleModel::rademacher_matrix(std::vector<CMat> as) {
  if (as.empty()) throw std::invalid_argument("rademacher_matrix: need at least one step");
  const int d = as[0].rows();
  for (const CMat& a : as) {
    if (a.rows() != d || a.cols() != d)
      throw std::invalid_argument("rademacher_matrix: mismatched dimensions");
    if (!is_hermitian(a, 1e-12 * (1.0 + max_abs(a))))
      throw std::invalid_argument("rademacher_matrix: steps must be Hermitian");
  }
  MartingaleModel m;
  m.name_ = "rademacher";
  m.steps_ = int(as.size());
  m.dim_ = d;
  m.enumerable_ = (m.steps_ <= 20) && ((std::int64_t(1) << m.steps_) <= kMaxOutcomes) &&
                  d <= kMaxExactDim;
  m.as_ = std::move(as);
  return m;
}

MartingaleModel MartingaleModel::walsh_function(std::vector<double> f_points, int m) {
  if (m < 1 || m > 20) throw std::invalid_argument("walsh_function: need 1 <= m <= 20");
  if (f_points.size() != (std::size_t(1) << m))
    throw std::invalid_argument("walsh_function: need 2^m point values");
  MartingaleModel model;
  model.name_ = "walsh";
  model.steps_ = m;
  model.dim_ = 1;
  model.enumerable_ = true;
  model.m_ = m;
  model.f_ = std::move(f_points);
  // cond_[k][p] = E_k f on the fiber over the k-bit prefix p
  model.cond_.resize(m + 1);
  model.cond_[m] = model.f_;
  for (int k = m - 1; k >= 0; --k) {
    model.cond_[k].resize(std::size_t(1) << k);
    for (std::size_t p = 0; p < model.cond_[k].size(); ++p)
      model.cond_[k][p] = 0.5 * (model.cond_[k + 1][2 * p] + model.cond_[k + 1][2 * p + 1]);
  }
  return model;
}

QuadraticCharacteristics MartingaleModel::quadratic_characteristics() const {
  QuadraticCharacteristics qc;
  if (name_ == "rademacher") {
    // E_{k-1}(d_k^2) = A_k^2 deterministically
    CMat sum(dim_, dim_);
    for (const CMat& a : as_) {
      sum += mul(a, a);
      qc.M = std::max(qc.M, opnorm_herm(a));
    }
    qc.D2 = opnorm_herm(sum);
    return qc;
  }
  // walsh: d_k on k-bit prefixes, E_{k-1}(d_k^2) on (k-1)-bit prefixes
  const std::size_t leaves = std::size_t(1) << m_;
  std::vector<double> acc(leaves, 0.0);
  for (int k = 1; k <= m_; ++k) {
    const std::size_t np = std::size_t(1) << (k - 1);
    for (std::size_t p = 0; p < np; ++p) {
      const double d0 = cond_[k][2 * p] - cond_[k - 1][p];
      const double d1 = cond_[k][2 * p + 1] - cond_[k - 1][p];
      qc.M = std::max(qc.M, std::max(std::fabs(d0), std::fabs(d1)));
      const double e = 0.5 * (d0 * d0 + d1 * d1);
      const std::size_t span = leaves >> (k - 1);
      for (std::size_t leaf = p * span; leaf < (p + 1) * span; ++leaf) acc[leaf] += e;
    }
  }
  qc.D2 = *std::max_element(acc.begin(), acc.end());
  return qc;
}

std::vector<std::vector<double>> MartingaleModel::all_outcome_eigs() const {
  if (!enumerable_) throw std::invalid_argument("exact path requires an enumerable model");
  std::vector<std::vector<double>> out;
  if (name_ == "rademacher") {
    const std::int64_t n = std::int64_t(1) << steps_;
    out.reserve(std::size_t(n));
    for (std::int64_t mask = 0; mask < n; ++mask)
      out.push_back(outcome_eigs_rademacher(as_, std::uint64_t(mask)));
    return out;
  }
  const double mean = cond_[0][0];
  out.reserve(f_.size());
  for (double v : f_) out.push_back({v - mean});
  return out;
}

std::vector<double> MartingaleModel::sample_outcome_eigs(Rng& rng) const {
  if (name_ == "rademacher") return outcome_eigs_rademacher(as_, rng.next_u64());
  const std::size_t leaf = std::size_t(rng.next_u64() & ((std::uint64_t(1) << m_) - 1));
  return {f_[leaf] - cond_[0][0]};
}

double MartingaleModel::max_centering_residual() const {
  if (name_ == "rademacher") return 0.0; // E_{k-1}(eps_k A_k) = 0 identically
  double r = 0.0;
  for (int k = 1; k <= m_; ++k)
    for (std::size_t p = 0; p < (std::size_t(1) << (k - 1)); ++p) {
      const double d0 = cond_[k][2 * p] - cond_[k - 1][p];
      const double d1 = cond_[k][2 * p + 1] - cond_[k - 1][p];
      r = std::max(r, std::fabs(0.5 * (d0 + d1)));
    }
  return r;
}

double tail_from_eigs(const std::vector<std::vector<double>>& eigs, double t) {
  if (eigs.empty()) return 0.0;
  double sum = 0.0, comp = 0.0;
  for (const auto& e : eigs) {
    std::size_t count = 0;
    for (double v : e)
      if (v >= t) ++count;
    // Kahan accumulation keeps the reduction order-independent in spirit
    const double term = double(count) / double(e.size()) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum / double(eigs.size());
}

double exact_tail(const MartingaleModel& model, double t) {
  return tail_from_eigs(model.all_outcome_eigs(), t);
}

McTail mc_tail(const MartingaleModel& model, double t, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("mc_tail: trials must be >= 1");
  const std::size_t nt = std::size_t(trials);
  std::vector<double> w(nt, 0.0);
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, std::uint64_t(i));
    const std::vector<double> eigs = model.sample_outcome_eigs(rng);
    std::size_t count = 0;
    for (double v : eigs)
      if (v >= t) ++count;
    w[std::size_t(i)] = double(count) / double(eigs.size());
  }
  McTail out;
  double sum = 0.0;
  for (double v : w) sum += v;
  out.estimate = sum / double(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (double v : w) ss += (v - out.estimate) * (v - out.estimate);
    out.std_err = std::sqrt(ss / (double(trials) * double(trials - 1)));
  }
  return out;
}

double exact_pnorm(const MartingaleModel& model, double p) {
  if (p < 1.0) throw std::invalid_argument("exact_pnorm: p must be >= 1");
  const auto eigs = model.all_outcome_eigs();
  double sum = 0.0;
  for (const auto& e : eigs) {
    double s = 0.0;
    for (double v : e) s += std::pow(std::fabs(v), p);
    sum += s / double(e.size());
  }
  return std::pow(sum / double(eigs.size()), 1.0 / p);
}

double exact_exp_moment(const MartingaleModel& model, double lambda) {
  const auto eigs = model.all_outcome_eigs();
  double sum = 0.0;
  for (const auto& e : eigs) {
    double s = 0.0;
    for (double v : e) s += std::exp(lambda * v);
    sum += s / double(e.size());
  }
  return sum / double(eigs.size());
}

std::vector<double> default_eps_grid() {
  std::vector<double> grid(32);
  const double lo = std::log(0.01), hi = std::log(1.0);
  for (int i = 0; i < 32; ++i) grid[i] = std::exp(lo + (hi - lo) * double(i + 1) / 32.0);
  grid.back() = 1.0;
  return grid;
}

double fman_bound(double t, double D2, double M, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("fman_bound: eps in (0, 1]");
  if (t < 0.0 || D2 < 0.0 || M < 0.0) throw std::invalid_argument("fman_bound: negative input");
  if (t == 0.0) return 1.0;
  const double se = std::sqrt(eps);
  const double denom1 = 4.0 * (1.0 + eps) * D2 + 2.0 * (1.0 + eps) * t * M / se;
  double expo = 0.0;
  if (denom1 == 0.0) return 0.0; // D2 = M = 0: x vanishes identically
  expo += t * t / denom1;
  const double base = 2.0 * se * D2 + M * t;
  if (M > 0.0) expo += se * M * t * t * t / (2.0 * (1.0 + eps) * base * base);
  return std::exp(-expo);
}

double fman_bound_best(double t, double D2, double M) {
  double best = 1.0;
  for (double eps : default_eps_grid()) best = std::min(best, fman_bound(t, D2, M, eps));
  return best;
}

double pmom_bound(double p, double D2, double M, double eps) {
  if (p < 2.0) throw std::invalid_argument("pmom_bound: p must be >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("pmom_bound: eps in (0, 1]");
  const double d = std::sqrt(D2);
  return std::pow(2.0, 1.5) * std::sqrt(1.0 + eps) * std::sqrt(p) * d +
         std::pow(2.0, 2.5) * ((1.0 + eps) / std::sqrt(eps)) * p * M;
}

double expin_lambda_max(double M, double eps) {
  if (M == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(eps) / (M * (1.0 + eps));
}

ExpinCheck expin_check(const MartingaleModel& model, double lambda, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("expin_check: eps in (0, 1]");
  const QuadraticCharacteristics qc = model.quadratic_characteristics();
  if (lambda < 0.0 || lambda > expin_lambda_max(qc.M, eps) * (1.0 + 1e-12))
    throw std::invalid_argument("expin_check: lambda outside admissible range");
  ExpinCheck out;
  out.lhs = exact_exp_moment(model, lambda);
  out.rhs = std::exp((1.0 + eps) * lambda * lambda * qc.D2);
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

GoldenThompson golden_thompson_check(const CMat& a, const CMat& b) {
  const double tol_a = 1e-12 * (1.0 + max_abs(a));
  const double tol_b = 1e-12 * (1.0 + max_abs(b));
  if (!is_hermitian(a, tol_a) || !is_hermitian(b, tol_b))
    throw std::invalid_argument("golden_thompson_check: inputs must be Hermitian");
  GoldenThompson out;
  CMat apb = a;
  apb += b;
  double lhs = 0.0;
  for (double v : eigvals_herm(apb)) lhs += std::exp(v);
  out.lhs = lhs / double(a.rows());
  const cplx rhs = tau(mul(expm_herm(a), expm_herm(b)));
  out.rhs = rhs.real();
  out.imag_residual = std::fabs(rhs.imag());
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-10);
  return out;
}

DeviationReport deviation_report(const MartingaleModel& model, const std::vector<double>& t_grid,
                                 const std::vector<double>& eps_grid, int mc_trials,
                                 std::uint64_t seed) {
  DeviationReport rep;
  rep.model = model.name();
  rep.steps = model.steps();
  rep.dim = model.dim();
  const QuadraticCharacteristics qc = model.quadratic_characteristics();
  rep.D2 = qc.D2;
  rep.M = qc.M;
  rep.exact = model.enumerable();
  rep.min_slack = std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> eigs;
  if (rep.exact) eigs = model.all_outcome_eigs();

  rep.pass = true;
  for (double t : t_grid) {
    double tail = 0.0, std_err = 0.0;
    if (rep.exact) {
      tail = tail_from_eigs(eigs, t);
    } else {
      const McTail mc = mc_tail(model, t, mc_trials, seed);
      tail = mc.estimate;
      std_err = mc.std_err;
    }
    for (double eps : eps_grid) {
      DeviationRow row;
      row.t = t;
      row.eps = eps;
      row.bound = fman_bound(t, qc.D2, qc.M, eps);
      row.tail = tail;
      row.std_err = std_err;
      row.slack = row.bound - row.tail;
      rep.min_slack = std::min(rep.min_slack, row.slack);
      const double floor = rep.exact ? -1e-12 : -3.0 * std_err;
      if (row.slack < floor) rep.pass = false;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

} // namespace nckit
