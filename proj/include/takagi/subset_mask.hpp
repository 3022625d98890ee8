#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace takagi {

// Fixed-universe bitset with a maintained popcount.  Index 0 is the least
// significant bit of the first word; hex serialization prints the bitset as
// one big integer (most significant digit first, LSB = index 0).
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t universe)
      : n_(universe), words_((universe + 63) / 64, 0), count_(0) {}

  std::size_t universe() const { return n_; }
  std::size_t count() const { return count_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i) {
    std::uint64_t& w = words_[i >> 6];
    std::uint64_t bit = 1ull << (i & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }

  void reset(std::size_t i) {
    std::uint64_t& w = words_[i >> 6];
    std::uint64_t bit = 1ull << (i & 63);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }

  // complement within the universe
  void flip_all() {
    for (auto& w : words_) w = ~w;
    trim();
    count_ = n_ - count_;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        out.push_back(wi * 64 + static_cast<std::size_t>(__builtin_ctzll(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  std::string to_hex() const {
    std::size_t digits = (n_ + 3) / 4;
    if (digits == 0) digits = 1;
    std::string s(digits, '0');
    static const char* hexd = "0123456789abcdef";
    for (std::size_t d = 0; d < digits; ++d) {
      std::size_t bit = d * 4;
      unsigned v = 0;
      for (unsigned b = 0; b < 4; ++b) {
        std::size_t i = bit + b;
        if (i < n_ && test(i)) v |= 1u << b;
      }
      s[digits - 1 - d] = hexd[v];
    }
    return s;
  }

  static SubsetMask from_hex(std::string_view hex, std::size_t universe) {
    SubsetMask m(universe);
    std::size_t digits = hex.size();
    for (std::size_t d = 0; d < digits; ++d) {
      char c = hex[digits - 1 - d];
      unsigned v = 0;
      if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a') + 10;
      else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A') + 10;
      else throw std::invalid_argument("mask: bad hex digit");
      for (unsigned b = 0; b < 4; ++b) {
        if (v & (1u << b)) {
          std::size_t i = d * 4 + b;
          if (i >= universe) throw std::invalid_argument("mask: bit beyond universe");
          m.set(i);
        }
      }
    }
    return m;
  }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  // Total order on same-universe masks: at the lowest index where they
  // differ, the mask containing that index sorts first.  The initial segment
  // {0..k-1} is therefore the smallest k-element mask.
  static bool lex_less(const SubsetMask& a, const SubsetMask& b) {
    for (std::size_t wi = 0; wi < a.words_.size(); ++wi) {
      std::uint64_t d = a.words_[wi] ^ b.words_[wi];
      if (d) {
        std::uint64_t low = d & (~d + 1);
        return a.words_[wi] & low;
      }
    }
    return false;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void trim() {
    if (n_ % 64 && !words_.empty()) words_.back() &= (~0ull >> (64 - (n_ % 64)));
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

}  // namespace takagi
