#include "nckit/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

#include "nckit/acceptance.hpp"
#include "nckit/eigen.hpp"
#include "nckit/gromov.hpp"
#include "nckit/martingale.hpp"
#include "nckit/star_algebra.hpp"
#include "nckit/transport.hpp"

namespace nckit {

namespace {

std::string out_path(const ScenarioConfig& cfg, const std::string& name) {
  const std::string dir = cfg.get_str("out_dir", ".");
  std::filesystem::create_directories(dir);
  return dir + "/" + name;
}

json base_report(const ScenarioConfig& cfg, const std::string& command) {
  json j = json::object();
  j["command"] = command;
  j["seed"] = cfg.get_int("seed", 0);
  // echo everything that affects the numbers; the output location does not
  json echo = cfg.echo();
  echo.erase("out_dir");
  j["config"] = echo;
  return j;
}

StarAlgebra model_from_config(const ScenarioConfig& cfg, double* alpha_out) {
  const std::string model = cfg.get_str("model", "mn");
  const long n = cfg.get_int("n", 3);
  const long m = cfg.get_int("m", 4);
  if (model == "mn") {
    if (alpha_out != nullptr) *alpha_out = double(n + 2) / double(2 * n);
    return heisenberg_weyl_algebra(int(n));
  }
  if (model == "walsh") {
    if (alpha_out != nullptr) *alpha_out = 1.0; // n = 2 factor constant
    return walsh_algebra(2, int(m));
  }
  if (model == "zn") {
    if (alpha_out != nullptr) *alpha_out = double(n + 2) / double(2 * n);
    const FiniteGroup g = build_cyclic(int(n));
    return left_regular_algebra(g, one_minus_delta(g));
  }
  if (model == "twopoint") {
    if (alpha_out != nullptr) *alpha_out = 1.0;
    return walsh_algebra(2, 1);
  }
  throw std::runtime_error("unknown model: " + model);
}

} // namespace

int run_curvature(const ScenarioConfig& cfg) {
  const std::string group = cfg.get_str("group", "zn");
  json rep = base_report(cfg, "curvature");
  GromovForm form;
  const auto maybe_export = [&cfg](const FiniteGroup& g) {
    const std::string path = cfg.get_str("export_table", "");
    if (path.empty()) return;
    std::ostringstream os;
    write_group_table(os, g);
    write_file(path, os.str());
  };
  if (group == "zn") {
    const long n = cfg.get_int("n", 6);
    if (n < 1) throw std::runtime_error("curvature: n must be >= 1");
    const FiniteGroup g = build_cyclic(int(n));
    maybe_export(g);
    form = gromov_form(g, one_minus_delta(g));
    if (n >= 2) {
      const ResidualCertificate cc = cocycle_zn_certificate(int(n));
      rep["cocycle_residual"] = json_num(cc.max_abs_residual);
      rep["cocycle_diag"] = json_num(cc.diag_value);
    }
  } else if (group == "heisenberg") {
    const long n = cfg.get_int("n", 3);
    if (n < 2) throw std::runtime_error("curvature: heisenberg needs n >= 2");
    const FiniteGroup g = build_heisenberg(int(n));
    maybe_export(g);
    form = gromov_form(g, heisenberg_length(int(n)));
  } else if (group == "free") {
    const long gens = cfg.get_int("gens", 2);
    const long radius = cfg.get_int("radius", 2);
    const long cap = cfg.get_int("cap", 20000);
    const FreeWordArena arena(int(gens), int(radius), cap);
    form = gromov_form(arena);
    const ResidualCertificate hc = haagerup_gram_certificate(arena);
    rep["haagerup_residual"] = json_num(hc.max_abs_residual);
  } else if (group == "table") {
    const std::string file = cfg.get_str("file", "");
    if (file.empty()) throw std::runtime_error("curvature: group=table requires file=");
    std::istringstream is(read_file(file));
    const FiniteGroup g = read_group_table(is);
    form = gromov_form(g, one_minus_delta(g));
  } else {
    throw std::runtime_error("curvature: unknown group: " + group);
  }

  const double min_eig_k = form.K.rows() ? eigvals_sym(form.K).front() : 0.0;
  rep["dim"] = form.K.rows();
  rep["is_cn"] = min_eig_k >= -tol_psd(form.K);
  rep["min_eig_K"] = json_num(min_eig_k);

  const AlphaCertificate cert = sharp_alpha(form);
  rep["alpha_star"] = json_num(cert.alpha_star);
  rep["rank"] = cert.rank_K;
  rep["min_eig"] = json_num(cert.witness_min_eig);

  bool pass = rep["is_cn"].get<bool>();
  if (std::isfinite(cert.alpha_star)) {
    const Gamma2Check below = gamma2_criterion_check(form, cert.alpha_star - 1e-6);
    const Gamma2Check above = gamma2_criterion_check(form, cert.alpha_star + 1e-6);
    rep["criterion_below_holds"] = below.holds;
    rep["criterion_above_holds"] = above.holds;
    pass = pass && below.holds && !above.holds;
  }
  rep["pass"] = pass;

  std::ostringstream csv;
  write_gromov_csv(csv, form);
  write_file(out_path(cfg, "curvature_K.csv"), csv.str());
  write_json(out_path(cfg, "report.json"), rep);
  return pass ? 0 : 1;
}

int run_decompose(const ScenarioConfig& cfg) {
  const long n = cfg.get_int("n", 3);
  const HeisenbergDecomposition dec = heisenberg_decompose(int(n));
  json rep = base_report(cfg, "decompose");
  rep["n"] = n;
  rep["block_dims"] = dec.block_dims;
  rep["m0_commutative"] = dec.m0_commutative;
  rep["m1_full_matrix"] = dec.m1_full_matrix;
  rep["dims_ok"] = dec.dims_ok;
  rep["offblock_residual"] = json_num(dec.offblock_residual);
  rep["invariance_margin"] = json_num(dec.invariance_margin);
  const bool pass = dec.m0_commutative && dec.m1_full_matrix && dec.dims_ok &&
                    dec.offblock_residual <= 1e-9 && dec.invariance_margin <= 1e-9;
  rep["pass"] = pass;
  write_json(out_path(cfg, "report.json"), rep);
  return pass ? 0 : 1;
}

int run_deviation(const ScenarioConfig& cfg) {
  const std::string model_name = cfg.get_str("model", "rademacher");
  const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 0));

  MartingaleModel model = [&] {
    if (model_name == "rademacher") {
      const long k = cfg.get_int("k", 10);
      const long d = cfg.get_int("d", 4);
      if (k < 1 || k > 20 || d < 1 || d > 64)
        throw std::runtime_error("deviation: need 1 <= k <= 20, 1 <= d <= 64");
      std::vector<CMat> as;
      Rng rng = Rng::stream(seed, 0xA5u);
      for (long i = 0; i < k; ++i) {
        CMat g{int(d), int(d)};
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) g(r, c) = rng.cgaussian();
        CMat h = hermitian_part(g);
        const double nrm = opnorm_herm(h);
        h *= cplx(1.0 / (nrm * std::sqrt(double(k))), 0.0);
        as.push_back(std::move(h));
      }
      return MartingaleModel::rademacher_matrix(std::move(as));
    }
    if (model_name == "walsh") {
      const long m = cfg.get_int("m", 10);
      if (m < 1 || m > 20) throw std::runtime_error("deviation: need 1 <= m <= 20");
      const std::string fkind = cfg.get_str("f", "linear");
      const std::size_t pts = std::size_t(1) << m;
      std::vector<double> f(pts, 0.0);
      if (fkind == "linear") {
        for (std::size_t y = 0; y < pts; ++y) {
          double s = 0.0;
          for (long j = 0; j < m; ++j) s += ((y >> j) & 1) ? -1.0 : 1.0;
          f[y] = s / std::sqrt(double(m));
        }
      } else if (fkind == "random") {
        Rng rng = Rng::stream(seed, 0xF0u);
        for (auto& v : f) v = rng.gaussian();
      } else {
        throw std::runtime_error("deviation: unknown f kind: " + fkind);
      }
      return MartingaleModel::walsh_function(std::move(f), int(m));
    }
    throw std::runtime_error("deviation: unknown model: " + model_name);
  }();

  const QuadraticCharacteristics qc = model.quadratic_characteristics();
  std::vector<double> t_grid;
  const double t_max = cfg.get_num("t_max", 3.0);
  const long t_steps = cfg.get_int("t_steps", 12);
  for (long i = 0; i <= t_steps; ++i)
    t_grid.push_back(t_max * std::sqrt(std::max(qc.D2, 1e-300)) * double(i) / double(t_steps));
  const int trials = int(cfg.get_int("trials", 20000));

  const DeviationReport rep = deviation_report(model, t_grid, default_eps_grid(), trials, seed);

  std::string csv = "t,eps,bound,tail,std_err,slack\n";
  for (const DeviationRow& r : rep.rows)
    csv += csv_line(std::vector<double>{r.t, r.eps, r.bound, r.tail, r.std_err, r.slack});
  write_file(out_path(cfg, "deviation.csv"), csv);

  json j = base_report(cfg, "deviation");
  j["model"] = rep.model;
  j["K"] = rep.steps;
  j["d"] = rep.dim;
  j["D2"] = json_num(rep.D2);
  j["M"] = json_num(rep.M);
  j["exact"] = rep.exact;
  j["min_slack"] = json_num(rep.min_slack);
  j["pass"] = rep.pass;
  write_json(out_path(cfg, "report.json"), j);
  return rep.pass ? 0 : 1;
}

int run_poincare(const ScenarioConfig& cfg) {
  double alpha = 0.0;
  const StarAlgebra alg = model_from_config(cfg, &alpha);
  alpha = cfg.get_num("alpha", alpha);
  std::vector<double> p_list;
  {
    std::istringstream ss(cfg.get_str("p", "2,4,8"));
    std::string tok;
    while (std::getline(ss, tok, ',')) p_list.push_back(std::strtod(tok.c_str(), nullptr));
  }
  const int samples = int(cfg.get_int("samples", 500));
  const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 0));

  const PoincareScan scan = poincare_ratio_scan(alg, alpha, p_list, samples, seed);
  const double bound_sa = 2.0 * std::sqrt(2.0);
  const double bound_general = 4.0 * std::sqrt(2.0);
  const bool pass = scan.max_ratio_sa <= bound_sa && scan.max_ratio_general <= bound_general;

  json j = base_report(cfg, "poincare");
  j["model"] = alg.label;
  j["model_descriptor"] = algebra_descriptor(alg);
  j["alpha"] = json_num(alpha);
  j["p"] = cfg.get_str("p", "2,4,8");
  j["samples"] = samples;
  j["max_ratio_sa"] = json_num(scan.max_ratio_sa);
  j["max_ratio_general"] = json_num(scan.max_ratio_general);
  j["bound_sa"] = json_num(bound_sa);
  j["bound_general"] = json_num(bound_general);
  j["fitted_cprime"] = json_num(scan.fitted_cprime);
  j["pass"] = pass;
  write_json(out_path(cfg, "report.json"), j);
  return pass ? 0 : 1;
}

int run_transport(const ScenarioConfig& cfg) {
  double alpha = 0.0;
  const StarAlgebra alg = model_from_config(cfg, &alpha);
  const std::uint64_t seed = std::uint64_t(cfg.get_int("seed", 0));
  const int samples = int(cfg.get_int("samples", 50));
  const int restarts = int(cfg.get_int("restarts", 8));
  const double safety = cfg.get_num("c_safety", 1.2);

  const std::vector<double> t_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  const SubgaussianEstimate cest =
      subgaussian_c_estimate(alg, int(cfg.get_int("c_samples", 40)), t_grid, seed + 1);
  const double c_half = cfg.get_num("c_half", cest.c_half * safety);

  json rows = json::array();
  bool pass = true;
  double min_margin = std::numeric_limits<double>::infinity();
  CMat tight_witness;
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, 0xD0 + std::uint64_t(s));
    const CMat z = random_element(alg, rng);
    CMat rho = alg_mul(alg, adjoint(z), z);
    rho *= cplx(1.0 / tau(rho).real(), 0.0);
    const W1Result w1 = w1_lower_bound(alg, rho, restarts, seed + 2 + s);
    const double rhs = std::sqrt(2.0 * c_half * entropy(rho));
    const bool row_pass = w1.w1_lb <= rhs + 1e-9;
    pass = pass && row_pass;
    if (rhs - w1.w1_lb < min_margin) {
      min_margin = rhs - w1.w1_lb;
      tight_witness = w1.witness;
    }
    json row = json::object();
    row["w1_lb"] = json_num(w1.w1_lb);
    row["rhs"] = json_num(rhs);
    row["ent"] = json_num(entropy(rho));
    row["witness_gamma_norm"] = json_num(w1.witness_gamma_norm);
    row["pass"] = row_pass;
    rows.push_back(row);
  }

  json j = base_report(cfg, "transport");
  j["model"] = alg.label;
  j["model_descriptor"] = algebra_descriptor(alg);
  if (tight_witness.rows() > 0) j["tight_witness"] = element_json(tight_witness);
  j["alpha"] = json_num(alpha);
  j["c_half"] = json_num(c_half);
  j["c_half_estimate"] = json_num(cest.c_half);
  j["c_full_estimate"] = json_num(cest.c_full);
  j["samples"] = samples;
  j["restarts"] = restarts;
  j["min_margin"] = json_num(min_margin);
  j["rows"] = rows;
  j["pass"] = pass;
  write_json(out_path(cfg, "report.json"), j);
  return pass ? 0 : 1;
}

int run_suite(const ScenarioConfig& cfg) {
  acceptance::Options opt;
  opt.quick = cfg.get_int("quick", 0) != 0;
  opt.seed = std::uint64_t(cfg.get_int("seed", 0));
  opt.out_dir = cfg.get_str("out_dir", ".");
  std::filesystem::create_directories(opt.out_dir);
  const std::vector<acceptance::CriterionResult> results = acceptance::run_all(opt);

  bool all = true;
  json rows = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ": " << r.title << "  (" << r.detail
              << ")\n";
    json row = json::object();
    row["id"] = r.id;
    row["title"] = r.title;
    row["pass"] = r.pass;
    row["detail"] = r.detail;
    rows.push_back(row);
  }
  std::cout << (all ? "suite: all criteria passed" : "suite: FAILURES present") << "\n";

  json j = base_report(cfg, "suite");
  j["quick"] = opt.quick;
  j["criteria"] = rows;
  j["pass"] = all;
  write_json(opt.out_dir + "/suite_report.json", j);
  return all ? 0 : 1;
}

} // namespace nckit
