#pragma once

#include <cstdint>
#include <string>
#include <vector>

// The acceptance matrix: one entry per shipped guarantee, each runs at its
// stated tolerance and budget and reports PASS/FAIL independently.

namespace nckit::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  bool quick = false;      // reduced batteries for smoke runs
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

std::vector<CriterionResult> run_all(const Options& opt);

} // namespace nckit::acceptance
