#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nckit/report.hpp"
#include "nckit/scenarios.hpp"

// nckit: numerical toolkit for curvature constants, multiplier semigroups,
// martingale deviation bounds and transportation inequalities on matrix
// *-algebras.
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 configuration
// error.

namespace {

struct CommonFlags {
  std::string config_file;
  std::string out_dir = ".";
  long seed = 0;
  bool quick = false;
  double tol = 1e-9;
};

void add_common(CLI::App* cmd, CommonFlags& cf) {
  cmd->add_option("--config", cf.config_file, "flat key = value config file");
  cmd->add_option("--out-dir", cf.out_dir, "directory for report.json and CSV tables");
  cmd->add_option("--seed", cf.seed, "master seed; all randomness derives from it");
  cmd->add_flag("--quick", cf.quick, "reduced batteries");
  cmd->add_option("--tol", cf.tol, "base tolerance echoed into reports");
}

nckit::ScenarioConfig build_config(const CommonFlags& cf,
                                   const std::vector<std::pair<std::string, std::string>>& extra) {
  nckit::ScenarioConfig cfg;
  if (!cf.config_file.empty()) cfg = nckit::ScenarioConfig::from_file(cf.config_file);
  // flags override file entries
  cfg.set("out_dir", cf.out_dir);
  cfg.set("seed", std::to_string(cf.seed));
  cfg.set("quick", cf.quick ? "1" : "0");
  cfg.set("tol", nckit::fmt12(cf.tol));
  for (const auto& [k, v] : extra) cfg.set(k, v);
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncommutative curvature and concentration toolkit"};
  app.require_subcommand(1);

  CommonFlags cf;

  // curvature
  auto* curvature = app.add_subcommand("curvature", "Gromov form, sharp alpha, certificates");
  std::string group = "zn";
  long n = 6, gens = 2, radius = 2;
  std::string table_file, export_table;
  curvature->add_option("--group", group, "zn | heisenberg | free | table");
  curvature->add_option("--n", n, "group size parameter");
  curvature->add_option("--gens", gens, "free group generators");
  curvature->add_option("--radius", radius, "free ball radius");
  curvature->add_option("--file", table_file, "group table file for --group table");
  curvature->add_option("--export-table", export_table, "write the group table as plain text");
  add_common(curvature, cf);

  // decompose
  auto* decompose = app.add_subcommand("decompose", "Heisenberg Fourier-block decomposition");
  long dec_n = 3;
  decompose->add_option("--n", dec_n, "Heisenberg parameter (2..8)");
  add_common(decompose, cf);

  // deviation
  auto* deviation = app.add_subcommand("deviation", "martingale tails vs deviation bound");
  std::string dev_model = "rademacher", dev_f = "linear";
  long dev_k = 10, dev_d = 4, dev_m = 10, trials = 20000;
  deviation->add_option("--model", dev_model, "rademacher | walsh");
  deviation->add_option("--k", dev_k, "rademacher steps");
  deviation->add_option("--d", dev_d, "matrix dimension");
  deviation->add_option("--m", dev_m, "walsh coordinates");
  deviation->add_option("--f", dev_f, "walsh function: linear | random");
  deviation->add_option("--trials", trials, "Monte Carlo trials for non-enumerable models");
  add_common(deviation, cf);

  // poincare
  auto* poincare = app.add_subcommand("poincare", "Poincare ratio scan");
  std::string poi_model = "mn", poi_p = "2,4,8";
  long poi_n = 4, poi_m = 4, samples = 500;
  poincare->add_option("--model", poi_model, "mn | walsh | zn | twopoint");
  poincare->add_option("--n", poi_n, "model size");
  poincare->add_option("--m", poi_m, "walsh coordinates");
  poincare->add_option("--p", poi_p, "comma-separated p list");
  poincare->add_option("--samples", samples, "random elements per battery");
  add_common(poincare, cf);

  // transport
  auto* transport = app.add_subcommand("transport", "Wasserstein vs entropy checks");
  std::string tr_model = "mn";
  long tr_n = 3, tr_m = 2, tr_samples = 50, restarts = 8;
  transport->add_option("--model", tr_model, "mn | walsh | zn | twopoint");
  transport->add_option("--n", tr_n, "model size");
  transport->add_option("--m", tr_m, "walsh coordinates");
  transport->add_option("--samples", tr_samples, "random densities");
  transport->add_option("--restarts", restarts, "gradient-ascent restarts");
  add_common(transport, cf);

  // suite
  auto* suite = app.add_subcommand("suite", "full acceptance matrix");
  add_common(suite, cf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (curvature->parsed()) {
      return nckit::run_curvature(build_config(cf, {{"group", group},
                                                    {"n", std::to_string(n)},
                                                    {"gens", std::to_string(gens)},
                                                    {"radius", std::to_string(radius)},
                                                    {"file", table_file},
                                                    {"export_table", export_table}}));
    }
    if (decompose->parsed())
      return nckit::run_decompose(build_config(cf, {{"n", std::to_string(dec_n)}}));
    if (deviation->parsed()) {
      return nckit::run_deviation(build_config(cf, {{"model", dev_model},
                                                    {"k", std::to_string(dev_k)},
                                                    {"d", std::to_string(dev_d)},
                                                    {"m", std::to_string(dev_m)},
                                                    {"f", dev_f},
                                                    {"trials", std::to_string(trials)}}));
    }
    if (poincare->parsed()) {
      return nckit::run_poincare(build_config(cf, {{"model", poi_model},
                                                   {"n", std::to_string(poi_n)},
                                                   {"m", std::to_string(poi_m)},
                                                   {"p", poi_p},
                                                   {"samples", std::to_string(samples)}}));
    }
    if (transport->parsed()) {
      return nckit::run_transport(build_config(cf, {{"model", tr_model},
                                                    {"n", std::to_string(tr_n)},
                                                    {"m", std::to_string(tr_m)},
                                                    {"samples", std::to_string(tr_samples)},
                                                    {"restarts", std::to_string(restarts)}}));
    }
    if (suite->parsed()) return nckit::run_suite(build_config(cf, {}));
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "configuration error (budget cap): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
