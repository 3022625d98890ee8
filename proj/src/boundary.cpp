#include "takagi/boundary.hpp"

#include "takagi/omega.hpp"

#include <stdexcept>
#include <string>

namespace takagi {

GeneratorTables make_tables(const GroupSpec& g, const GenSet& s, std::size_t mask_budget) {
  if (g.order > mask_budget)
    throw std::invalid_argument("boundary: group order " + std::to_string(g.order) +
                                " exceeds mask budget " + std::to_string(mask_budget));
  GeneratorTables t;
  t.order = g.order;
  t.fwd.resize(s.gens.size());
  t.bwd.resize(s.gens.size());
  for (std::size_t si = 0; si < s.gens.size(); ++si) {
    const Element& gen = s.gens[si];
    Element ng = neg(g, gen);
    auto& f = t.fwd[si];
    auto& b = t.bwd[si];
    f.resize(g.order);
    b.resize(g.order);
    for (unsigned long long i = 0; i < g.order; ++i) {
      Element e = element_of(g, i);
      f[i] = static_cast<std::uint32_t>(index_of(g, add(g, e, gen)));
      b[i] = static_cast<std::uint32_t>(index_of(g, add(g, e, ng)));
    }
  }
  return t;
}

long long boundary_count(const GeneratorTables& t, const SubsetMask& a) {
  long long total = 0;
  const auto& words = a.words();
  for (std::size_t si = 0; si < t.fwd.size(); ++si) {
    const auto& f = t.fwd[si];
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      std::uint64_t w = words[wi];
      while (w) {
        std::size_t i = wi * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
        w &= w - 1;
        if (!a.test(f[i])) ++total;
      }
    }
  }
  return total;
}

long long boundary_delta_add(const GeneratorTables& t, const SubsetMask& a, std::size_t g) {
  long long d = 0;
  for (std::size_t si = 0; si < t.fwd.size(); ++si) {
    if (!a.test(t.fwd[si][g])) ++d;  // new escaping pair (g, s)
    if (a.test(t.bwd[si][g])) --d;   // pair (g - s, s) no longer escapes
  }
  return d;
}

long long boundary_delta_remove(const GeneratorTables& t, const SubsetMask& a, std::size_t g) {
  long long d = 0;
  for (std::size_t si = 0; si < t.fwd.size(); ++si) {
    if (!a.test(t.fwd[si][g])) --d;
    if (a.test(t.bwd[si][g])) ++d;
  }
  return d;
}

LexTheoremReport lex_theorem_check(long m, int r, std::size_t mask_budget) {
  GroupSpec g = homocyclic(m, r);
  GeneratorTables tables = make_tables(g, standard_gens(g), mask_budget);

  LexTheoremReport rep;
  rep.m = m;
  rep.r = r;
  rep.checked = g.order + 1;

  SubsetMask a(g.order);
  long long running = 0;
  for (unsigned long long n = 0; n <= g.order; ++n) {
    Int expect = omega_scaled_madic(m, Int(n), r);
    if (Int(running) != expect) rep.mismatches.push_back(n);
    if (n < g.order) {
      running += boundary_delta_add(tables, a, n);
      a.set(n);
    }
  }
  rep.pass = rep.mismatches.empty();
  return rep;
}

}  // namespace takagi
