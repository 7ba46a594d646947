#pragma once

#include <complex>
#include <cstdint>

// Seeded random streams. Every consumer derives an independent stream from
// (master seed, stream id), so results do not depend on evaluation order and
// reruns with the same seed are bit-identical. The generator is splitmix64;
// gaussians come from Box-Muller on the raw bits (std::normal_distribution is
// not reproducible across standard libraries).

namespace nckit {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t master, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform();      // [0, 1)
  double gaussian();     // N(0, 1)
  std::complex<double> cgaussian(); // independent N(0,1) real and imaginary parts

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace nckit
