#include "takagi/group.hpp"

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace takagi {

GroupSpec make_group(std::vector<long> moduli, unsigned long long max_order) {
  if (moduli.empty()) throw std::invalid_argument("group: modulus list is empty");
  GroupSpec g;
  g.order = 1;
  g.exponent = 1;
  for (long m : moduli) {
    if (m < 2) throw std::invalid_argument("group: every modulus must be >= 2");
    if (g.order > max_order / static_cast<unsigned long long>(m))
      throw std::invalid_argument("group: order exceeds budget " + std::to_string(max_order));
    g.order *= static_cast<unsigned long long>(m);
    g.exponent = std::lcm(g.exponent, static_cast<unsigned long long>(m));
  }
  g.moduli = std::move(moduli);
  return g;
}

GroupSpec homocyclic(long m, int r, unsigned long long max_order) {
  if (r < 1) throw std::invalid_argument("group: rank must be >= 1");
  return make_group(std::vector<long>(static_cast<std::size_t>(r), m), max_order);
}

Element make_element(const GroupSpec& g, const std::vector<long long>& coords) {
  if (coords.size() != g.moduli.size())
    throw std::invalid_argument("element: expected " + std::to_string(g.moduli.size()) +
                                " coordinates, got " + std::to_string(coords.size()));
  Element e(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    long long m = g.moduli[i];
    e[i] = static_cast<long>(((coords[i] % m) + m) % m);
  }
  return e;
}

Element add(const GroupSpec& g, const Element& a, const Element& b) {
  Element e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    long s = a[i] + b[i];
    if (s >= g.moduli[i]) s -= g.moduli[i];
    e[i] = s;
  }
  return e;
}

Element neg(const GroupSpec& g, const Element& a) {
  Element e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] == 0 ? 0 : g.moduli[i] - a[i];
  return e;
}

unsigned long long index_of(const GroupSpec& g, const Element& e) {
  if (e.size() != g.moduli.size()) throw std::invalid_argument("element: wrong arity");
  unsigned long long idx = 0;
  unsigned long long base = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] >= g.moduli[i]) throw std::invalid_argument("element: coordinate out of range");
    idx += base * static_cast<unsigned long long>(e[i]);
    base *= static_cast<unsigned long long>(g.moduli[i]);
  }
  return idx;
}

Element element_of(const GroupSpec& g, unsigned long long index) {
  if (index >= g.order) throw std::invalid_argument("element: index out of range");
  Element e(g.moduli.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto m = static_cast<unsigned long long>(g.moduli[i]);
    e[i] = static_cast<long>(index % m);
    index /= m;
  }
  return e;
}

std::string element_str(const Element& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  return s;
}

GenSet make_genset(const GroupSpec& g, std::vector<Element> gens) {
  if (gens.empty()) throw std::invalid_argument("genset: empty generator list");
  std::set<Element> seen;
  for (const auto& e : gens) {
    if (e.size() != g.moduli.size()) throw std::invalid_argument("genset: wrong arity");
    bool zero = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] >= g.moduli[i]) throw std::invalid_argument("genset: coordinate out of range");
      if (e[i] != 0) zero = false;
    }
    if (zero) throw std::invalid_argument("genset: zero generator");
    if (!seen.insert(e).second) throw std::invalid_argument("genset: duplicate generator");
  }
  return GenSet{std::move(gens)};
}

GenSet negate_genset(const GroupSpec& g, const GenSet& s) {
  std::vector<Element> gens;
  gens.reserve(s.gens.size());
  for (const auto& e : s.gens) gens.push_back(neg(g, e));
  return make_genset(g, std::move(gens));
}

GenSet standard_gens(const GroupSpec& g) {
  std::vector<Element> gens;
  gens.reserve(g.moduli.size());
  for (std::size_t i = 0; i < g.moduli.size(); ++i) {
    Element e(g.moduli.size(), 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return GenSet{std::move(gens)};
}

bool is_generating(const GroupSpec& g, const GenSet& s) {
  SubsetMask seen(g.order);
  std::vector<unsigned long long> stack;
  seen.set(0);
  stack.push_back(0);
  while (!stack.empty()) {
    unsigned long long idx = stack.back();
    stack.pop_back();
    Element e = element_of(g, idx);
    for (const auto& gen : s.gens) {
      unsigned long long nx = index_of(g, add(g, e, gen));
      if (!seen.test(nx)) {
        seen.set(nx);
        stack.push_back(nx);
      }
    }
  }
  return seen.count() == g.order;
}

SubsetMask lex_segment(const GroupSpec& g, unsigned long long n) {
  if (n > g.order) throw std::invalid_argument("lex_segment: size exceeds group order");
  SubsetMask m(g.order);
  for (unsigned long long i = 0; i < n; ++i) m.set(i);
  return m;
}

SubsetMask box_set(long m, int r, int k, long t) {
  GroupSpec g = homocyclic(m, r, 1ull << 62);
  if (k < 0 || k > r) throw std::invalid_argument("box_set: side count out of range");
  if (t < 1 || t > m) throw std::invalid_argument("box_set: side length out of range");
  SubsetMask mask(g.order);
  for (unsigned long long i = 0; i < g.order; ++i) {
    Element e = element_of(g, i);
    bool in = true;
    for (int j = 0; j < k && in; ++j) in = e[static_cast<std::size_t>(j)] < t;
    if (in) mask.set(i);
  }
  return mask;
}

std::vector<long> parse_moduli(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("group: bad modulus list '" + s + "'");
    out.push_back(std::stol(tok));
  }
  if (out.empty()) throw std::invalid_argument("group: bad modulus list '" + s + "'");
  return out;
}

GenSet parse_gens(const GroupSpec& g, const std::string& s) {
  std::vector<Element> gens;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    std::vector<long long> coords;
    std::stringstream ps(part);
    std::string tok;
    while (std::getline(ps, tok, ',')) {
      if (tok.empty()) throw std::invalid_argument("genset: bad literal '" + s + "'");
      coords.push_back(std::stoll(tok));
    }
    gens.push_back(make_element(g, coords));
  }
  return make_genset(g, std::move(gens));
}

}  // namespace takagi
