#include "takagi/combinations.hpp"

#include <algorithm>
#include <stdexcept>

namespace takagi {

BinomTable::BinomTable(unsigned n, unsigned k, unsigned long long cap) : k_(k), cap_(cap) {
  c_.assign(n + 1, std::vector<unsigned long long>(k + 1, 0));
  for (unsigned i = 0; i <= n; ++i) {
    c_[i][0] = 1;
    for (unsigned j = 1; j <= std::min(i, k); ++j) {
      unsigned long long v = c_[i - 1][j - 1] + (j <= i - 1 ? c_[i - 1][j] : 0);
      c_[i][j] = std::min(v, cap_);
    }
  }
}

std::vector<unsigned> rd_unrank(const BinomTable& b, unsigned n, unsigned k,
                                unsigned long long rank) {
  std::vector<unsigned> comb;
  comb.reserve(k);
  while (k > 0) {
    if (k == n) {
      for (unsigned i = n; i-- > 0;) comb.push_back(i);
      break;
    }
    unsigned long long f = b(n - 1, k);
    if (rank < f) {
      --n;
      continue;
    }
    unsigned long long inner = b(n - 1, k - 1) - 1 - (rank - f);
    comb.push_back(n - 1);
    rank = inner;
    --n;
    --k;
  }
  std::reverse(comb.begin(), comb.end());
  return comb;
}

unsigned long long rd_rank(const BinomTable& b, unsigned n, unsigned k,
                           const std::vector<unsigned>& comb) {
  unsigned long long acc = 0;
  long long sign = 1;
  auto it = comb.rbegin();
  while (k > 0) {
    if (it != comb.rend() && *it == n - 1) {
      unsigned long long a = b(n - 1, k) + b(n - 1, k - 1) - 1;
      acc = sign > 0 ? acc + a : acc - a;
      sign = -sign;
      --k;
      ++it;
    }
    --n;
  }
  return acc;
}

std::pair<unsigned, unsigned> rd_step(const BinomTable& b, unsigned n, unsigned k,
                                      unsigned long long rank) {
  bool forward = true;
  while (true) {
    if (k == 0 || k > n) throw std::invalid_argument("rd_step: rank out of range");
    unsigned long long f = b(n - 1, k);
    if (forward) {
      if (rank + 1 < f) {
        --n;
        continue;
      }
      if (rank + 1 == f) return {k >= 2 ? k - 2 : n - 2, n - 1};
      rank = b(n - 1, k - 1) - 1 - (rank - f);
      --n;
      --k;
      forward = false;
    } else {
      if (rank < f) {
        --n;
        continue;
      }
      if (rank == f) return {n - 1, k >= 2 ? k - 2 : n - 2};
      rank = b(n - 1, k - 1) - 1 - (rank - f);
      --n;
      --k;
      forward = true;
    }
  }
}

bool next_combination(std::vector<unsigned>& comb, unsigned n) {
  unsigned k = static_cast<unsigned>(comb.size());
  for (unsigned i = k; i-- > 0;) {
    if (comb[i] < n - (k - i)) {
      ++comb[i];
      for (unsigned j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace takagi
