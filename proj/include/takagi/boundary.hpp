#pragma once

#include "takagi/group.hpp"
#include "takagi/subset_mask.hpp"

#include <cstdint>
#include <vector>

namespace takagi {

inline constexpr std::size_t kDefaultMaskBudget = 1u << 22;

// Precomputed index permutations for a generating set: fwd[s][i] is the index
// of element_of(i) + gens[s], bwd[s][i] of element_of(i) - gens[s].
struct GeneratorTables {
  std::vector<std::vector<std::uint32_t>> fwd;
  std::vector<std::vector<std::uint32_t>> bwd;
  std::size_t order = 0;
  std::size_t gen_count() const { return fwd.size(); }
};

GeneratorTables make_tables(const GroupSpec& g, const GenSet& s,
                            std::size_t mask_budget = kDefaultMaskBudget);

// Number of pairs (a, s) with a in A, s a generator, a + s not in A.
long long boundary_count(const GeneratorTables& t, const SubsetMask& a);

// Change in boundary_count when adding index g (must not be in A) or removing
// it (must be in A).  Removing immediately after adding negates exactly.
long long boundary_delta_add(const GeneratorTables& t, const SubsetMask& a, std::size_t g);
long long boundary_delta_remove(const GeneratorTables& t, const SubsetMask& a, std::size_t g);

struct LexTheoremReport {
  long m = 0;
  int r = 0;
  unsigned long long checked = 0;
  std::vector<unsigned long long> mismatches;
  bool pass = false;
};

// For every n in [0, m^r], the boundary of the n-element initial segment of
// C_m^r under the standard generators must equal m^r * omega_m(n / m^r).
LexTheoremReport lex_theorem_check(long m, int r, std::size_t mask_budget = kDefaultMaskBudget);

}  // namespace takagi
