#pragma once

#include "takagi/boundary.hpp"
#include "takagi/fclass.hpp"
#include "takagi/group.hpp"
#include "takagi/subset_mask.hpp"

#include <optional>
#include <vector>

namespace takagi {

inline constexpr unsigned long long kDefaultEnumBudget = 1000000000ull;

struct SearchResult {
  std::vector<long> group;  // moduli
  std::vector<Element> gens;
  unsigned long long n = 0;
  long long min_boundary = 0;
  SubsetMask witness;
  long long lex_boundary = 0;
  bool exhaustive = false;
  double bound_e_m = 0.0;  // (e/m) * n * ln(|G|/n) with m = group exponent; 0 at n in {0, |G|}
};

// Exact minimum directed boundary over all n-subsets.  Enumerates in the
// one-swap order with O(|S|) updates, split across threads by contiguous
// rank ranges; the witness is the lex-smallest minimizing mask, so the result
// does not depend on the thread count.  Throws when C(|G|, n) exceeds budget.
SearchResult min_boundary_exhaustive(const GroupSpec& g, const GenSet& s, unsigned long long n,
                                     unsigned long long budget = kDefaultEnumBudget,
                                     int threads = 0,
                                     std::size_t mask_budget = kDefaultMaskBudget);

// Serial reference: ascending lexicographic enumeration with a full recount
// per subset.  Same minimum and witness; kept independent for testing and
// benchmarking.
SearchResult min_boundary_exhaustive_reference(const GroupSpec& g, const GenSet& s,
                                               unsigned long long n,
                                               unsigned long long budget = kDefaultEnumBudget,
                                               std::size_t mask_budget = kDefaultMaskBudget);

// Seeded local search: swap one element in/out, accept strict improvements,
// restart on stagnation.  The first start is the lex segment, so the result
// never exceeds the segment's boundary; later starts are random n-subsets.
// budget counts move evaluations.  Deterministic for a fixed seed.
SearchResult min_boundary_heuristic(const GroupSpec& g, const GenSet& s, unsigned long long n,
                                    unsigned long long budget, unsigned long long seed,
                                    std::size_t mask_budget = kDefaultMaskBudget);

struct Main1Report {
  bool pass = false;
  std::size_t checked = 0;
  double min_ratio = 0.0;  // min over results of min_boundary / bound (bound > 0 only)
  std::size_t worst_index = 0;
};

// Every result must satisfy min_boundary >= (e/m) |A| ln(|G|/|A|) - 1e-9,
// with m the group exponent unless m_override > 0.
Main1Report verify_main1(const std::vector<SearchResult>& results, long m_override = 0);

struct IsoperReport {
  bool pass = false;
  std::size_t checked = 0;
  std::size_t equalities = 0;   // exact path only
  double min_margin = 0.0;      // min of min_boundary - bound
  bool exact_path = false;
  std::string membership_note;  // the assumption this check rests on
};

// Checks min_boundary >= (1/m) |G| f(|A| / |G|) for every result, exactly when
// f is exactly evaluable (otherwise float with 1e-9 slack).  Valid only under
// the caller's promise that f belongs to the degree-m class; the report
// records that assumption.
IsoperReport verify_isoper(const std::vector<SearchResult>& results, const FunctionSpec& f,
                           long m);

struct ViolationResult {
  bool found = false;
  unsigned long long n = 0;
  SearchResult result;  // valid when found
};

// First n in n_list whose exhaustive minimum beats the lex segment on C_m^r
// with standard generators.  Requires m >= 5 (no violations exist below).
ViolationResult find_lex_violation(long m, int r, const std::vector<unsigned long long>& n_list,
                                   unsigned long long budget = kDefaultEnumBudget,
                                   int threads = 0,
                                   std::size_t mask_budget = kDefaultMaskBudget);

}  // namespace takagi
