#pragma once

#include "takagi/subset_mask.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace takagi {

// Finite abelian group C_{m1} x ... x C_{mk} given by its moduli.
struct GroupSpec {
  std::vector<long> moduli;          // each >= 2
  unsigned long long order = 1;      // product of moduli
  unsigned long long exponent = 1;   // lcm of moduli
};

// Throws std::invalid_argument on an empty list, a modulus < 2, or an order
// beyond max_order.
GroupSpec make_group(std::vector<long> moduli, unsigned long long max_order = 1ull << 62);

GroupSpec homocyclic(long m, int r, unsigned long long max_order = 1ull << 62);

// Element = reduced coordinate vector, coords[i] in [0, moduli[i]).
using Element = std::vector<long>;

Element make_element(const GroupSpec& g, const std::vector<long long>& coords);
Element add(const GroupSpec& g, const Element& a, const Element& b);
Element neg(const GroupSpec& g, const Element& a);

// Mixed-radix codec: coords[0] is the least significant digit, so
// index = c0 + c1*m1 + c2*m1*m2 + ...
unsigned long long index_of(const GroupSpec& g, const Element& e);
Element element_of(const GroupSpec& g, unsigned long long index);

std::string element_str(const Element& e);

// Ordered list of distinct nonzero generators.
struct GenSet {
  std::vector<Element> gens;
};

GenSet make_genset(const GroupSpec& g, std::vector<Element> gens);
GenSet negate_genset(const GroupSpec& g, const GenSet& s);

// e_1 .. e_k, one unit per coordinate, listed in coordinate order.
GenSet standard_gens(const GroupSpec& g);

// Closure of {0} under adding generators covers the whole group?
bool is_generating(const GroupSpec& g, const GenSet& s);

// The n smallest indices under the codec.
SubsetMask lex_segment(const GroupSpec& g, unsigned long long n);

// On C_m^r: elements whose first k coordinates are all < t.
SubsetMask box_set(long m, int r, int k, long t);

// Parsers for the CLI literals "3,3" (moduli) and "1,0;0,1" (generators).
std::vector<long> parse_moduli(const std::string& s);
GenSet parse_gens(const GroupSpec& g, const std::string& s);

}  // namespace takagi
