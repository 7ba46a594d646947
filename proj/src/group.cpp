#include "nckit/group.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "nckit/rng.hpp"

namespace nckit {

namespace {

void verify_axioms(const FiniteGroup& g) {
  const int n = g.order;
  for (int a = 0; a < n; ++a) {
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a)
      throw std::invalid_argument("group: identity law fails");
    if (g.mul(a, g.inv(a)) != g.identity || g.mul(g.inv(a), a) != g.identity)
      throw std::invalid_argument("group: inverse law fails");
  }
  if (n <= 512) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int ab = g.mul(a, b);
        for (int c = 0; c < n; ++c)
          if (g.mul(ab, c) != g.mul(a, g.mul(b, c)))
            throw std::invalid_argument("group: associativity fails");
      }
  } else {
    Rng rng(0x6a5f3c21u);
    for (int t = 0; t < 4096; ++t) {
      const int a = int(rng.next_u64() % n);
      const int b = int(rng.next_u64() % n);
      const int c = int(rng.next_u64() % n);
      if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
        throw std::invalid_argument("group: associativity fails");
    }
  }
}

} // namespace

FiniteGroup make_group(int order, std::vector<int> mul_table, std::vector<std::string> labels) {
  if (order <= 0) throw std::invalid_argument("group: order must be positive");
  if (mul_table.size() != std::size_t(order) * order)
    throw std::invalid_argument("group: table size mismatch");
  for (int v : mul_table)
    if (v < 0 || v >= order) throw std::invalid_argument("group: index out of range");

  FiniteGroup g;
  g.order = order;
  g.mul_table = std::move(mul_table);

  // identity: the unique e with e*a = a for all a
  int id = -1;
  for (int e = 0; e < order && id < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < order && ok; ++a) ok = g.mul_table[std::size_t(e) * order + a] == a;
    if (ok) id = e;
  }
  if (id < 0) throw std::invalid_argument("group: no identity element");
  g.identity = id;

  g.inv_table.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b)
      if (g.mul_table[std::size_t(a) * order + b] == id) {
        g.inv_table[a] = b;
        break;
      }
    if (g.inv_table[a] < 0) throw std::invalid_argument("group: missing inverse");
  }

  if (labels.empty()) {
    g.labels.resize(order);
    for (int a = 0; a < order; ++a) g.labels[a] = std::to_string(a);
  } else {
    if (int(labels.size()) != order) throw std::invalid_argument("group: label count mismatch");
    g.labels = std::move(labels);
  }

  verify_axioms(g);
  return g;
}

FiniteGroup build_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("build_cyclic: n must be >= 1");
  std::vector<int> table(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[std::size_t(i) * n + j] = (i + j) % n;
  return make_group(n, std::move(table));
}

FiniteGroup build_heisenberg(int n) {
  if (n < 2) throw std::invalid_argument("build_heisenberg: n must be >= 2");
  const int order = n * n * n;
  const auto enc = [n](int a, int b, int c) { return (a * n + b) * n + c; };
  std::vector<int> table(std::size_t(order) * order);
  std::vector<std::string> labels(order);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int x = enc(a, b, c);
        labels[x] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
        for (int a2 = 0; a2 < n; ++a2)
          for (int b2 = 0; b2 < n; ++b2)
            for (int c2 = 0; c2 < n; ++c2) {
              const int y = enc(a2, b2, c2);
              table[std::size_t(x) * order + y] =
                  enc((a + a2 + b * c2) % n, (b + b2) % n, (c + c2) % n);
            }
      }
  return make_group(order, std::move(table), std::move(labels));
}

LengthFunction one_minus_delta(const FiniteGroup& g) {
  LengthFunction psi;
  psi.psi.assign(g.order, 1.0);
  psi.psi[g.identity] = 0.0;
  return psi;
}

LengthFunction heisenberg_length(int n) {
  LengthFunction psi;
  psi.psi.assign(std::size_t(n) * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        psi.psi[(std::size_t(a) * n + b) * n + c] = 2.0 - (b == 0 ? 1.0 : 0.0) - (c == 0 ? 1.0 : 0.0);
  return psi;
}

std::pair<FiniteGroup, LengthFunction> build_direct_product(
    const std::vector<const FiniteGroup*>& gs, const std::vector<const LengthFunction*>& psis) {
  if (gs.empty() || gs.size() != psis.size())
    throw std::invalid_argument("build_direct_product: empty or mismatched factor lists");
  std::size_t order = 1;
  for (const FiniteGroup* g : gs) order *= std::size_t(g->order);
  if (order > (1u << 22)) throw std::invalid_argument("build_direct_product: product too large");
  const int m = int(gs.size());
  const int n = int(order);

  // mixed-radix encoding, first factor most significant
  const auto decode = [&](int x, std::vector<int>& parts) {
    for (int i = m - 1; i >= 0; --i) {
      parts[i] = x % gs[i]->order;
      x /= gs[i]->order;
    }
  };
  std::vector<int> table(std::size_t(n) * n);
  std::vector<std::string> labels(n);
  std::vector<int> xa(m), xb(m);
  LengthFunction psi;
  psi.psi.assign(n, 0.0);
  for (int a = 0; a < n; ++a) {
    decode(a, xa);
    std::string lab;
    double p = 0.0;
    for (int i = 0; i < m; ++i) {
      lab += (i == 0 ? "" : "|") + gs[i]->labels[xa[i]];
      p += (*psis[i])(xa[i]);
    }
    labels[a] = lab;
    psi.psi[a] = p;
    for (int b = 0; b < n; ++b) {
      decode(b, xb);
      int enc = 0;
      for (int i = 0; i < m; ++i) enc = enc * gs[i]->order + gs[i]->mul(xa[i], xb[i]);
      table[std::size_t(a) * n + b] = enc;
    }
  }
  FiniteGroup g = make_group(n, std::move(table), std::move(labels));
  return {std::move(g), std::move(psi)};
}

void validate_length(const FiniteGroup& g, const LengthFunction& psi) {
  if (int(psi.psi.size()) != g.order)
    throw std::invalid_argument("length: size mismatch with group order");
  if (psi.psi[g.identity] != 0.0)
    throw std::invalid_argument("length: psi(e) must be 0");
  for (int a = 0; a < g.order; ++a)
    if (psi.psi[a] != psi.psi[g.inv(a)])
      throw std::invalid_argument("length: psi(g) != psi(g^-1)");
}

void write_group_table(std::ostream& os, const FiniteGroup& g) {
  os << g.order << "\n";
  for (int i = 0; i < g.order; ++i) {
    for (int j = 0; j < g.order; ++j) {
      if (j) os << ' ';
      os << g.mul(i, j);
    }
    os << "\n";
  }
}

FiniteGroup read_group_table(std::istream& is) {
  int n = 0;
  if (!(is >> n) || n <= 0) throw std::invalid_argument("group table: bad order line");
  std::vector<int> table(std::size_t(n) * n);
  for (auto& v : table)
    if (!(is >> v)) throw std::invalid_argument("group table: truncated table");
  return make_group(n, std::move(table));
}

} // namespace nckit
