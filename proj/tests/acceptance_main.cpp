#include <cstring>
#include <iostream>
#include <string>

#include "nckit/acceptance.hpp"

// Runs the full acceptance matrix and prints one PASS/FAIL line per
// criterion. Exit code 0 iff every criterion passes.

int main(int argc, char** argv) {
  nckit::acceptance::Options opt;
  opt.out_dir = "acceptance_out";
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
    else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      opt.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "--out-dir") == 0 && i + 1 < argc)
      opt.out_dir = argv[++i];
    else {
      std::cerr << "usage: acceptance [--quick] [--seed S] [--out-dir DIR]\n";
      return 2;
    }
  }

  const auto results = nckit::acceptance::run_all(opt);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << "  — "
              << r.detail << "\n";
  }
  std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILURES present") << "\n";
  return all ? 0 : 1;
}
