#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "nckit/report.hpp"
#include "nckit/scenarios.hpp"

using namespace nckit;

namespace {

std::string temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("nckit_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

} // namespace

TEST_CASE("float formatting") {
  CHECK(fmt12(0.5) == "0.5");
  CHECK(fmt12(1.0 / 3.0) == "0.333333333333");
  CHECK(fmt12(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(sig12(1.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(json_num(std::numeric_limits<double>::infinity()) == json("inf"));
  CHECK(csv_line(std::vector<double>{1.0, 0.25}) == "1,0.25\n");
}

TEST_CASE("config parsing and overrides") {
  const std::string dir = temp_dir("cfg");
  write_file(dir + "/a.cfg", "# comment\nmodel = walsh\n n = 4 \n\nseed=9\n");
  ScenarioConfig cfg = ScenarioConfig::from_file(dir + "/a.cfg");
  CHECK(cfg.get_str("model", "") == "walsh");
  CHECK(cfg.get_int("n", 0) == 4);
  CHECK(cfg.get_int("seed", 0) == 9);
  cfg.set("n", "7"); // flag override
  CHECK(cfg.get_int("n", 0) == 7);
  CHECK(cfg.get_num("missing", 2.5) == 2.5);
  CHECK(cfg.echo()["model"] == "walsh");

  write_file(dir + "/bad.cfg", "just a line without equals\n");
  CHECK_THROWS(ScenarioConfig::from_file(dir + "/bad.cfg"));
}

TEST_CASE("curvature scenario: trivial group reports alpha = inf") {
  const std::string dir = temp_dir("curv_trivial");
  ScenarioConfig cfg;
  cfg.set("group", "zn");
  cfg.set("n", "1");
  cfg.set("out_dir", dir);
  CHECK(run_curvature(cfg) == 0);
  const json rep = json::parse(read_file(dir + "/report.json"));
  CHECK(rep["alpha_star"] == json("inf"));
  CHECK(rep["is_cn"] == json(true));
}

TEST_CASE("curvature scenario: Z_6 value and byte-identical rerun") {
  const std::string d1 = temp_dir("curv_a");
  const std::string d2 = temp_dir("curv_b");
  for (const std::string& d : {d1, d2}) {
    ScenarioConfig cfg;
    cfg.set("group", "zn");
    cfg.set("n", "6");
    cfg.set("seed", "3");
    cfg.set("out_dir", d);
    CHECK(run_curvature(cfg) == 0);
  }
  CHECK(read_file(d1 + "/report.json") == read_file(d2 + "/report.json"));
  CHECK(read_file(d1 + "/curvature_K.csv") == read_file(d2 + "/curvature_K.csv"));
  const json rep = json::parse(read_file(d1 + "/report.json"));
  CHECK(rep["alpha_star"].get<double>() == doctest::Approx(8.0 / 12.0).epsilon(1e-9));
  CHECK(rep["cocycle_residual"].get<double>() <= 1e-12);
}

TEST_CASE("free-group curvature scenario emits the Haagerup residual") {
  const std::string dir = temp_dir("curv_free");
  ScenarioConfig cfg;
  cfg.set("group", "free");
  cfg.set("gens", "2");
  cfg.set("radius", "2");
  cfg.set("out_dir", dir);
  CHECK(run_curvature(cfg) == 0);
  const json rep = json::parse(read_file(dir + "/report.json"));
  CHECK(rep["haagerup_residual"].get<double>() <= 1e-12);
}

TEST_CASE("deviation scenario writes CSV with the contract columns") {
  const std::string dir = temp_dir("dev");
  ScenarioConfig cfg;
  cfg.set("model", "rademacher");
  cfg.set("k", "6");
  cfg.set("d", "2");
  cfg.set("seed", "7");
  cfg.set("out_dir", dir);
  CHECK(run_deviation(cfg) == 0);
  const std::string csv = read_file(dir + "/deviation.csv");
  CHECK(csv.substr(0, 33) == "t,eps,bound,tail,std_err,slack\n0,");
  const json rep = json::parse(read_file(dir + "/report.json"));
  CHECK(rep["min_slack"].get<double>() >= 0.0);
  CHECK(rep["exact"] == json(true));
  CHECK(rep["pass"] == json(true));
}

TEST_CASE("group table import path") {
  const std::string dir = temp_dir("table");
  // Z_3 table in the plain-text format
  write_file(dir + "/z3.txt", "3\n0 1 2\n1 2 0\n2 0 1\n");
  ScenarioConfig cfg;
  cfg.set("group", "table");
  cfg.set("file", dir + "/z3.txt");
  cfg.set("out_dir", dir);
  CHECK(run_curvature(cfg) == 0);
  const json rep = json::parse(read_file(dir + "/report.json"));
  CHECK(rep["alpha_star"].get<double>() == doctest::Approx(5.0 / 6.0).epsilon(1e-9));
}

TEST_CASE("table export/import round trip through the scenario runner") {
  const std::string dir = temp_dir("roundtrip");
  ScenarioConfig exp;
  exp.set("group", "heisenberg");
  exp.set("n", "2");
  exp.set("export_table", dir + "/h2.txt");
  exp.set("out_dir", dir + "/a");
  CHECK(run_curvature(exp) == 0);
  ScenarioConfig imp;
  imp.set("group", "table");
  imp.set("file", dir + "/h2.txt");
  imp.set("out_dir", dir + "/b");
  CHECK(run_curvature(imp) == 0);
  const json rep = json::parse(read_file(dir + "/b/report.json"));
  CHECK(rep["dim"] == json(8));
  // imported tables default to psi = 1 - delta: alpha = (N+2)/(2N) at N = 8
  CHECK(rep["alpha_star"].get<double>() == doctest::Approx(10.0 / 16.0).epsilon(1e-9));
}

TEST_CASE("decompose scenario") {
  const std::string dir = temp_dir("dec");
  ScenarioConfig cfg;
  cfg.set("n", "2");
  cfg.set("out_dir", dir);
  CHECK(run_decompose(cfg) == 0);
  const json rep = json::parse(read_file(dir + "/report.json"));
  CHECK(rep["block_dims"] == json::array({4, 4}));
  CHECK(rep["pass"] == json(true));
}

TEST_CASE("configuration errors surface as exceptions") {
  ScenarioConfig cfg;
  cfg.set("group", "nope");
  CHECK_THROWS(run_curvature(cfg));
}

TEST_CASE("element serialization round trip") {
  Rng rng(91);
  CMat x(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = rng.cgaussian();
  const json j = element_json(x);
  const CMat back = element_from_json(j);
  CHECK(max_abs(back - x) <= 1e-11 * (1.0 + max_abs(x))); // %.12g rounding
  CHECK(j.size() == 9); // flat row-major [re, im] pairs
  CHECK(j[0].size() == 2);
}

TEST_CASE("algebra descriptor") {
  const StarAlgebra a = walsh_algebra(2, 2);
  const json d = algebra_descriptor(a);
  CHECK(d["model"] == json("walsh"));
  CHECK(d["params"]["dim"] == json(4));
  CHECK(d["params"]["diagonal"] == json(true));
  CHECK(d["multipliers"].size() == 4);
  CHECK(d["multipliers"][0] == json(0.0));
}

TEST_CASE("transport scenario embeds descriptor and witness") {
  const std::string dir = temp_dir("tr");
  ScenarioConfig cfg;
  cfg.set("model", "twopoint");
  cfg.set("samples", "3");
  cfg.set("restarts", "2");
  cfg.set("seed", "5");
  cfg.set("out_dir", dir);
  CHECK(run_transport(cfg) == 0);
  const json rep = json::parse(read_file(dir + "/report.json"));
  CHECK(rep["model_descriptor"]["params"]["dim"] == json(2));
  CHECK(rep["rows"].size() == 3);
  CHECK(rep.contains("tight_witness"));
  const CMat w = element_from_json(rep["tight_witness"]);
  CHECK(w.rows() == 2);
}
