#include "nckit/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nckit {

std::string fmt12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json json_num(double v) {
  if (!std::isfinite(v)) return json(fmt12(v));
  return json(sig12(v));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << content;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_json(const std::string& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string csv_line(const std::vector<double>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += fmt12(cells[i]);
  }
  line += '\n';
  return line;
}

json element_json(const CMat& x) {
  json pairs = json::array();
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      pairs.push_back(json::array({json_num(x(i, j).real()), json_num(x(i, j).imag())}));
  return pairs;
}

CMat element_from_json(const json& j) {
  const int d = int(std::llround(std::sqrt(double(j.size()))));
  if (std::size_t(d) * d != j.size())
    throw std::invalid_argument("element_from_json: not a square row-major pair list");
  CMat x(d, d);
  for (int i = 0; i < d; ++i)
    for (int c = 0; c < d; ++c) {
      const json& p = j[std::size_t(i) * d + c];
      x(i, c) = cplx(p[0].get<double>(), p[1].get<double>());
    }
  return x;
}

json algebra_descriptor(const StarAlgebra& a) {
  json d = json::object();
  d["model"] = a.label;
  json params = json::object();
  params["dim"] = a.dim;
  params["basis_size"] = a.basis_size();
  params["diagonal"] = a.diagonal;
  d["params"] = params;
  json mult = json::array();
  for (double p : a.psi) mult.push_back(json_num(p));
  d["multipliers"] = mult;
  return d;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

} // namespace

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  ScenarioConfig cfg;
  std::string line;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value, got: " + t);
    cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : items_)
    if (k == key) {
      v = value;
      return;
    }
  items_.push_back({key, value});
}

bool ScenarioConfig::has(const std::string& key) const {
  for (const auto& [k, v] : items_)
    if (k == key) return true;
  return false;
}

std::string ScenarioConfig::get_str(const std::string& key, const std::string& fallback) const {
  for (const auto& [k, v] : items_)
    if (k == key) return v;
  return fallback;
}

double ScenarioConfig::get_num(const std::string& key, double fallback) const {
  for (const auto& [k, v] : items_)
    if (k == key) return std::strtod(v.c_str(), nullptr);
  return fallback;
}

long ScenarioConfig::get_int(const std::string& key, long fallback) const {
  for (const auto& [k, v] : items_)
    if (k == key) return std::strtol(v.c_str(), nullptr, 10);
  return fallback;
}

json ScenarioConfig::echo() const {
  json j = json::object();
  for (const auto& [k, v] : items_) j[k] = v;
  return j;
}

} // namespace nckit
