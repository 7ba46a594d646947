#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Truncated free groups. A word is a freely reduced letter sequence; letter
// 2i is generator a_{i+1}, letter 2i+1 its inverse. The ball of radius r is
// enumerated breadth-first, lexicographically within each length, and serves
// as the basis for Gromov forms; the word-length function is evaluated on
// demand for products, so only ball(r) is ever materialized.

namespace nckit {

using Word = std::vector<std::int8_t>;

Word reduce_word(const Word& w);
Word mul_words(const Word& a, const Word& b);
Word inv_word(const Word& w);

class FreeWordArena {
public:
  // cap bounds |ball(2r)| (the largest set psi must be evaluable on)
  FreeWordArena(int generators, int radius, std::int64_t cap = 20000);

  int generators() const { return k_; }
  int radius() const { return r_; }
  const std::vector<Word>& ball() const { return ball_; }
  // psi = reduced word length
  double psi(const Word& w) const { return double(w.size()); }
  std::string label(const Word& w) const;

  // number of reduced words of length <= r over k generators
  static std::int64_t ball_count(int k, int r);

private:
  int k_;
  int r_;
  std::vector<Word> ball_;
};

} // namespace nckit
