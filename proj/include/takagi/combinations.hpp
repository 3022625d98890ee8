#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace takagi {

// Binomial coefficients C(i, j) for i <= n, saturated at cap so that
// oversized counts compare correctly against budgets without overflow.
class BinomTable {
 public:
  BinomTable(unsigned n, unsigned k, unsigned long long cap = 1ull << 62);
  unsigned long long operator()(unsigned i, unsigned j) const {
    if (j > i || j > k_) return 0;
    return c_[i][j];
  }
  unsigned long long cap() const { return cap_; }

 private:
  unsigned k_;
  unsigned long long cap_;
  std::vector<std::vector<unsigned long long>> c_;
};

// One-swap ("revolving door") enumeration of k-subsets of [0, n), defined by
//   G(n, k) = G(n-1, k) followed by {n-1} + reverse(G(n-1, k-1)),
// with G(n, 0) = [{}] and G(n, n) = [{0..n-1}].  Successive subsets differ by
// removing one element and inserting another, which pairs with O(|S|)
// boundary updates.  Ranks allow contiguous splitting across workers.

// Subset at a given rank, as ascending indices.
std::vector<unsigned> rd_unrank(const BinomTable& b, unsigned n, unsigned k,
                                unsigned long long rank);

// Rank of a subset given as ascending indices.
unsigned long long rd_rank(const BinomTable& b, unsigned n, unsigned k,
                           const std::vector<unsigned>& comb);

// The swap taking rank `rank` to rank+1: first = element removed,
// second = element inserted.  Requires rank + 1 < C(n, k).
std::pair<unsigned, unsigned> rd_step(const BinomTable& b, unsigned n, unsigned k,
                                      unsigned long long rank);

// Ascending lexicographic successor of a k-combination of [0, n); returns
// false at the last combination.  Used by the serial reference search.
bool next_combination(std::vector<unsigned>& comb, unsigned n);

}  // namespace takagi
