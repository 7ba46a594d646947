#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nckit/star_algebra.hpp"

// Report plumbing: every float is rounded through %.12g before serialization
// so reports are readable and reruns with the same config and seed are
// byte-identical. Infinities serialize as the strings "inf" / "-inf".

namespace nckit {

using json = nlohmann::ordered_json;

std::string fmt12(double v);
// value after a %.12g round trip
double sig12(double v);
// number or "inf"/"-inf"/"nan" strings
json json_num(double v);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
void write_json(const std::string& path, const json& j);

std::string csv_line(const std::vector<std::string>& cells);
std::string csv_line(const std::vector<double>& cells);

// algebra elements as row-major arrays of [re, im] pairs
json element_json(const CMat& x);
CMat element_from_json(const json& j);
// {model, params, multipliers}
json algebra_descriptor(const StarAlgebra& a);

// Flat key = value config (# comments); flags override file entries.
class ScenarioConfig {
public:
  ScenarioConfig() = default;
  static ScenarioConfig from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get_str(const std::string& key, const std::string& fallback) const;
  double get_num(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;

  json echo() const; // embedded into every report

private:
  std::vector<std::pair<std::string, std::string>> items_;
};

} // namespace nckit
