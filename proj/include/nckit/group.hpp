#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Finite groups as dense index tables. Elements are 0-based indices, the
// multiplication table is materialized (products are table lookups in all
// downstream loops). Group axioms are verified at construction: exhaustively
// for order <= 512, on random triples above.

namespace nckit {

struct FiniteGroup {
  int order = 0;
  int identity = 0;
  std::vector<int> mul_table; // order x order, row-major
  std::vector<int> inv_table;
  std::vector<std::string> labels;

  int mul(int a, int b) const { return mul_table[std::size_t(a) * order + b]; }
  int inv(int a) const { return inv_table[a]; }
};

// Wraps raw tables, derives inverses and identity, verifies the axioms.
FiniteGroup make_group(int order, std::vector<int> mul_table,
                       std::vector<std::string> labels = {});

// Z_n with mul(i, j) = (i + j) mod n.
FiniteGroup build_cyclic(int n);

// H_3(Z_n): triples (a, b, c) with (a,b,c)(a',b',c') = (a+a'+bc', b+b', c+c').
// Element index encodes a*n^2 + b*n + c.
FiniteGroup build_heisenberg(int n);

struct LengthFunction {
  std::vector<double> psi; // one value per group element
  double scale = 1.0;

  double operator()(int g) const { return psi[g]; }
};

// psi(g) = 1 - delta_{g,e}.
LengthFunction one_minus_delta(const FiniteGroup& g);

// psi(a,b,c) = 2 - delta_{b,0} - delta_{c,0} on build_heisenberg(n).
LengthFunction heisenberg_length(int n);

// Componentwise product group with summed lengths.
std::pair<FiniteGroup, LengthFunction> build_direct_product(
    const std::vector<const FiniteGroup*>& gs, const std::vector<const LengthFunction*>& psis);

// Checks psi(e) = 0 and psi(g) = psi(g^-1); throws on violation.
void validate_length(const FiniteGroup& g, const LengthFunction& psi);

// Plain-text table format: first line N, then N rows of N indices.
void write_group_table(std::ostream& os, const FiniteGroup& g);
FiniteGroup read_group_table(std::istream& is);

} // namespace nckit
