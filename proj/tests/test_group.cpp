#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "nckit/free_words.hpp"
#include "nckit/group.hpp"

using namespace nckit;

TEST_CASE("cyclic groups") {
  const FiniteGroup g1 = build_cyclic(1);
  CHECK(g1.order == 1);
  CHECK(g1.identity == 0);

  const FiniteGroup g3 = build_cyclic(3);
  CHECK(g3.mul(1, 2) == 0);
  CHECK(g3.inv(1) == 2);

  // axiom certificate is part of construction; n = 5 passes
  CHECK_NOTHROW(build_cyclic(5));
  CHECK_THROWS_AS(build_cyclic(0), std::invalid_argument);
}

TEST_CASE("bad tables are refused") {
  // constant table: no identity
  std::vector<int> t = {0, 0, 0, 0};
  CHECK_THROWS_AS(make_group(2, t), std::invalid_argument);
  // non-associative magma with identity: modify one entry of Z_3 x ... use a
  // 5-element table: identity row/col correct, interior broken
  const FiniteGroup g5 = build_cyclic(5);
  std::vector<int> bad = g5.mul_table;
  bad[std::size_t(1) * 5 + 2] = 4; // 1*2 := 4 breaks associativity
  CHECK_THROWS_AS(make_group(5, bad), std::invalid_argument);
}

TEST_CASE("heisenberg group") {
  const FiniteGroup h2 = build_heisenberg(2);
  CHECK(h2.order == 8);
  const auto enc = [](int n, int a, int b, int c) { return (a * n + b) * n + c; };
  // (0,1,0)(0,0,1) = (1,1,1) but (0,0,1)(0,1,0) = (0,1,1): nonabelian
  CHECK(h2.mul(enc(2, 0, 1, 0), enc(2, 0, 0, 1)) == enc(2, 1, 1, 1));
  CHECK(h2.mul(enc(2, 0, 0, 1), enc(2, 0, 1, 0)) == enc(2, 0, 1, 1));
  CHECK(h2.mul(enc(2, 0, 1, 0), enc(2, 0, 0, 1)) != h2.mul(enc(2, 0, 0, 1), enc(2, 0, 1, 0)));

  const FiniteGroup h3 = build_heisenberg(3);
  CHECK(h3.order == 27);
  CHECK(h3.identity == 0);
  // center = {(a,0,0)}: exactly 3 central elements
  int central = 0;
  for (int x = 0; x < 27; ++x) {
    bool commutes = true;
    for (int y = 0; y < 27 && commutes; ++y) commutes = h3.mul(x, y) == h3.mul(y, x);
    if (commutes) ++central;
  }
  CHECK(central == 3);
}

TEST_CASE("direct products sum lengths") {
  const FiniteGroup z2 = build_cyclic(2);
  const LengthFunction psi2 = one_minus_delta(z2);
  const auto [g, psi] = build_direct_product({&z2, &z2}, {&psi2, &psi2});
  CHECK(g.order == 4);
  // psi(1,1) = 2 under the most-significant-first encoding (1,1) -> 3
  CHECK(psi(3) == 2.0);
  CHECK(psi(0) == 0.0);
  validate_length(g, psi);

  const FiniteGroup z3 = build_cyclic(3);
  const LengthFunction psi3 = one_minus_delta(z3);
  const auto [g9, psi9] = build_direct_product({&z3, &z3}, {&psi3, &psi3});
  CHECK(g9.order == 9);
  CHECK(psi9(0) == 0.0);

  // single factor acts as identity
  const auto [gs, psis] = build_direct_product({&z3}, {&psi3});
  CHECK(gs.order == 3);
  for (int i = 0; i < 3; ++i) CHECK(psis(i) == psi3(i));

  CHECK_THROWS_AS(build_direct_product({}, {}), std::invalid_argument);
}

TEST_CASE("length validation") {
  const FiniteGroup z3 = build_cyclic(3);
  LengthFunction bad;
  bad.psi = {0.0, 1.0, 2.0}; // psi(1) != psi(2) = psi(1^-1)
  CHECK_THROWS_AS(validate_length(z3, bad), std::invalid_argument);
  LengthFunction bad2;
  bad2.psi = {1.0, 1.0, 1.0}; // psi(e) != 0
  CHECK_THROWS_AS(validate_length(z3, bad2), std::invalid_argument);
}

TEST_CASE("group table round trip") {
  const FiniteGroup h2 = build_heisenberg(2);
  std::ostringstream os;
  write_group_table(os, h2);
  std::istringstream is(os.str());
  const FiniteGroup back = read_group_table(is);
  CHECK(back.order == h2.order);
  CHECK(back.mul_table == h2.mul_table);
  CHECK(back.identity == h2.identity);

  std::istringstream badhdr("0\n");
  CHECK_THROWS(read_group_table(badhdr));
}

TEST_CASE("free word reduction") {
  // a a~ b reduces to b
  const Word w = {0, 1, 2};
  const Word r = reduce_word(w);
  CHECK(r == Word{2});
  CHECK(reduce_word(r) == r); // idempotent
  // inverse reverses and flips
  CHECK(inv_word(Word{0, 2}) == Word{3, 1});
  CHECK(mul_words(Word{0, 2}, inv_word(Word{0, 2})).empty());
}

TEST_CASE("free ball enumeration") {
  const FreeWordArena a21(2, 1);
  CHECK(a21.ball().size() == 5);
  CHECK(a21.label(a21.ball()[0]) == "e");
  CHECK(a21.label(a21.ball()[1]) == "a");
  CHECK(a21.label(a21.ball()[2]) == "a~");
  CHECK(a21.label(a21.ball()[3]) == "b");
  CHECK(a21.label(a21.ball()[4]) == "b~");

  const FreeWordArena a22(2, 2);
  CHECK(a22.ball().size() == 17); // 1 + 4 + 12

  // ball count formula |ball(r)| = 1 + 2k((2k-1)^r - 1)/(2k-2), k >= 2
  for (int k = 2; k <= 4; ++k)
    for (int r = 0; r <= 4; ++r) {
      const std::int64_t expect =
          1 + 2 * std::int64_t(k) *
                  (std::int64_t(std::pow(2 * k - 1, r)) - 1) / (2 * std::int64_t(k) - 2);
      CHECK(FreeWordArena::ball_count(k, r) == expect);
    }
  // k = 1: 2r + 1 words
  const FreeWordArena a13(1, 3);
  CHECK(a13.ball().size() == 7);

  CHECK_THROWS_AS(FreeWordArena(2, 9), std::length_error); // |ball(18)| >> cap
}

TEST_CASE("free ball idempotent reduction property") {
  const FreeWordArena a(3, 2);
  for (const Word& u : a.ball())
    for (const Word& v : a.ball()) {
      const Word p = mul_words(u, v);
      CHECK(reduce_word(p) == p);
      CHECK(a.psi(p) <= a.psi(u) + a.psi(v));
    }
}
