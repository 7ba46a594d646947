#include "nckit/free_words.hpp"

#include <stdexcept>

namespace nckit {

Word reduce_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (std::int8_t l : w) {
    if (!out.empty() && (out.back() ^ 1) == l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word mul_words(const Word& a, const Word& b) {
  Word cat = a;
  cat.insert(cat.end(), b.begin(), b.end());
  return reduce_word(cat);
}

Word inv_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l ^= 1;
  return out;
}

std::int64_t FreeWordArena::ball_count(int k, int r) {
  // 1 + 2k + 2k(2k-1) + ... + 2k(2k-1)^{r-1}
  std::int64_t total = 1, layer = 2 * std::int64_t(k);
  for (int len = 1; len <= r; ++len) {
    total += layer;
    if (total > (std::int64_t(1) << 40)) return total; // saturate, caller caps anyway
    layer *= 2 * std::int64_t(k) - 1;
  }
  return total;
}

FreeWordArena::FreeWordArena(int generators, int radius, std::int64_t cap)
    : k_(generators), r_(radius) {
  if (k_ < 1) throw std::invalid_argument("free_ball: need at least one generator");
  if (r_ < 0) throw std::invalid_argument("free_ball: radius must be >= 0");
  if (ball_count(k_, 2 * r_) > cap)
    throw std::length_error("free_ball: |ball(2r)| exceeds cap");

  ball_.push_back({}); // identity
  std::size_t layer_begin = 0;
  for (int len = 1; len <= r_; ++len) {
    const std::size_t layer_end = ball_.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (std::int8_t l = 0; l < std::int8_t(2 * k_); ++l) {
        const Word& w = ball_[i];
        if (!w.empty() && (w.back() ^ 1) == l) continue; // would cancel
        Word next = w;
        next.push_back(l);
        ball_.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
}

std::string FreeWordArena::label(const Word& w) const {
  if (w.empty()) return "e";
  std::string s;
  for (std::int8_t l : w) {
    s += char('a' + (l >> 1));
    if (l & 1) s += '~';
  }
  return s;
}

} // namespace nckit
