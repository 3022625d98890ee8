#include "takagi/search.hpp"

#include "takagi/combinations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace takagi {

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  return threads > 0 ? threads : 1;
#endif
}

double e_m_bound(unsigned long long order, unsigned long long exponent, unsigned long long n) {
  if (n == 0 || n >= order) return 0.0;
  double nn = static_cast<double>(n);
  return std::exp(1.0) / static_cast<double>(exponent) * nn *
         std::log(static_cast<double>(order) / nn);
}

SearchResult base_result(const GroupSpec& g, const GenSet& s, unsigned long long n,
                         const GeneratorTables& tables) {
  SearchResult r;
  r.group = g.moduli;
  r.gens = s.gens;
  r.n = n;
  r.lex_boundary = boundary_count(tables, lex_segment(g, n));
  r.bound_e_m = e_m_bound(g.order, g.exponent, n);
  return r;
}

SubsetMask mask_of(const std::vector<unsigned>& comb, std::size_t universe) {
  SubsetMask m(universe);
  for (unsigned i : comb) m.set(i);
  return m;
}

struct Best {
  long long value;
  SubsetMask mask;
  void offer(long long v, const SubsetMask& m) {
    if (v < value || (v == value && SubsetMask::lex_less(m, mask))) {
      value = v;
      mask = m;
    }
  }
};

}  // namespace

SearchResult min_boundary_exhaustive(const GroupSpec& g, const GenSet& s, unsigned long long n,
                                     unsigned long long budget, int threads,
                                     std::size_t mask_budget) {
  if (n > g.order) throw std::invalid_argument("search: subset size exceeds group order");
  GeneratorTables tables = make_tables(g, s, mask_budget);
  SearchResult res = base_result(g, s, n, tables);
  res.exhaustive = true;

  if (n == 0 || n == g.order) {
    SubsetMask m(g.order);
    if (n == g.order) m.flip_all();
    res.min_boundary = boundary_count(tables, m);
    res.witness = std::move(m);
    return res;
  }

  auto un = static_cast<unsigned>(g.order);
  auto uk = static_cast<unsigned>(n);
  BinomTable binom(un, uk, budget > (1ull << 62) ? budget : budget + 1);
  unsigned long long total = binom(un, uk);
  if (total > budget)
    throw std::invalid_argument("search: C(" + std::to_string(g.order) + ", " +
                                std::to_string(n) + ") = " + std::to_string(total) +
                                " subsets exceed budget " + std::to_string(budget));

  int nthreads = resolve_threads(threads);
  auto nchunks = static_cast<unsigned long long>(nthreads);
  if (nchunks > total) nchunks = total;
  std::vector<Best> bests(nchunks, Best{0, SubsetMask()});

  auto run_chunk = [&](unsigned long long c) {
    unsigned long long lo = total / nchunks * c + std::min<unsigned long long>(c, total % nchunks);
    unsigned long long hi = lo + total / nchunks + (c < total % nchunks ? 1 : 0);
    SubsetMask mask = mask_of(rd_unrank(binom, un, uk, lo), g.order);
    long long count = boundary_count(tables, mask);
    Best best{count, mask};
    for (unsigned long long rank = lo; rank + 1 < hi; ++rank) {
      auto [out, in] = rd_step(binom, un, uk, rank);
      count += boundary_delta_remove(tables, mask, out);
      mask.reset(out);
      count += boundary_delta_add(tables, mask, in);
      mask.set(in);
      best.offer(count, mask);
    }
    bests[c] = std::move(best);
  };

#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(static, 1)
#endif
  for (long long c = 0; c < static_cast<long long>(nchunks); ++c)
    run_chunk(static_cast<unsigned long long>(c));

  Best global = bests[0];
  for (unsigned long long c = 1; c < nchunks; ++c) global.offer(bests[c].value, bests[c].mask);
  res.min_boundary = global.value;
  res.witness = std::move(global.mask);
  return res;
}

SearchResult min_boundary_exhaustive_reference(const GroupSpec& g, const GenSet& s,
                                               unsigned long long n, unsigned long long budget,
                                               std::size_t mask_budget) {
  if (n > g.order) throw std::invalid_argument("search: subset size exceeds group order");
  GeneratorTables tables = make_tables(g, s, mask_budget);
  SearchResult res = base_result(g, s, n, tables);
  res.exhaustive = true;

  if (n == 0 || n == g.order) {
    SubsetMask m(g.order);
    if (n == g.order) m.flip_all();
    res.min_boundary = boundary_count(tables, m);
    res.witness = std::move(m);
    return res;
  }

  auto un = static_cast<unsigned>(g.order);
  auto uk = static_cast<unsigned>(n);
  BinomTable binom(un, uk, budget > (1ull << 62) ? budget : budget + 1);
  if (binom(un, uk) > budget)
    throw std::invalid_argument("search: subset count exceeds budget " + std::to_string(budget));

  std::vector<unsigned> comb(uk);
  std::iota(comb.begin(), comb.end(), 0u);
  SubsetMask mask = mask_of(comb, g.order);
  Best best{boundary_count(tables, mask), mask};
  while (next_combination(comb, un)) {
    mask = mask_of(comb, g.order);
    best.offer(boundary_count(tables, mask), mask);
  }
  res.min_boundary = best.value;
  res.witness = std::move(best.mask);
  return res;
}

SearchResult min_boundary_heuristic(const GroupSpec& g, const GenSet& s, unsigned long long n,
                                    unsigned long long budget, unsigned long long seed,
                                    std::size_t mask_budget) {
  if (n > g.order) throw std::invalid_argument("search: subset size exceeds group order");
  GeneratorTables tables = make_tables(g, s, mask_budget);
  SearchResult res = base_result(g, s, n, tables);
  res.exhaustive = false;

  if (n == 0 || n == g.order) {
    SubsetMask m(g.order);
    if (n == g.order) m.flip_all();
    res.min_boundary = boundary_count(tables, m);
    res.witness = std::move(m);
    return res;
  }

  std::mt19937_64 rng(seed);
  const unsigned long long stall_limit = 4 * g.order;
  std::optional<Best> global;

  std::vector<std::uint32_t> members;
  SubsetMask mask(g.order);
  auto start_lex = [&] {
    mask = lex_segment(g, n);
    members.clear();
    for (unsigned long long i = 0; i < n; ++i) members.push_back(static_cast<std::uint32_t>(i));
  };
  auto start_random = [&] {
    std::vector<std::uint32_t> all(g.order);
    std::iota(all.begin(), all.end(), 0u);
    for (unsigned long long i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    members.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    mask = SubsetMask(g.order);
    for (auto i : members) mask.set(i);
  };

  unsigned long long used = 0;
  bool first = true;
  do {
    if (first) start_lex();
    else start_random();
    first = false;

    long long count = boundary_count(tables, mask);
    if (!global) global = Best{count, mask};
    else global->offer(count, mask);

    unsigned long long stall = 0;
    while (used < budget && stall < stall_limit) {
      std::uniform_int_distribution<std::size_t> pick_out(0, members.size() - 1);
      std::size_t oi = pick_out(rng);
      std::uint32_t out = members[oi];
      std::uniform_int_distribution<unsigned long long> pick_in(0, g.order - 1);
      unsigned long long in = pick_in(rng);
      while (mask.test(in)) in = pick_in(rng);

      ++used;
      long long d = boundary_delta_remove(tables, mask, out);
      mask.reset(out);
      d += boundary_delta_add(tables, mask, in);
      if (d < 0) {
        mask.set(in);
        members[oi] = static_cast<std::uint32_t>(in);
        count += d;
        global->offer(count, mask);
        stall = 0;
      } else {
        mask.set(out);
        ++stall;
      }
    }
  } while (used < budget);

  res.min_boundary = global->value;
  res.witness = std::move(global->mask);
  return res;
}

Main1Report verify_main1(const std::vector<SearchResult>& results, long m_override) {
  Main1Report rep;
  rep.pass = true;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SearchResult& r = results[i];
    unsigned long long order = 1, expo = 1;
    for (long m : r.group) {
      order *= static_cast<unsigned long long>(m);
      expo = std::lcm(expo, static_cast<unsigned long long>(m));
    }
    if (m_override > 0) expo = static_cast<unsigned long long>(m_override);
    double bound = e_m_bound(order, expo, r.n);
    ++rep.checked;
    if (static_cast<double>(r.min_boundary) < bound - 1e-9) {
      rep.pass = false;
      rep.worst_index = i;
    }
    if (bound > 0) {
      double ratio = static_cast<double>(r.min_boundary) / bound;
      if (ratio < rep.min_ratio) {
        rep.min_ratio = ratio;
        if (rep.pass) rep.worst_index = i;
      }
    }
  }
  if (results.empty()) rep.min_ratio = 0.0;
  return rep;
}

IsoperReport verify_isoper(const std::vector<SearchResult>& results, const FunctionSpec& f,
                           long m) {
  if (m < 2) throw std::invalid_argument("verify_isoper: degree must be >= 2");
  IsoperReport rep;
  rep.pass = true;
  rep.exact_path = f.exact();
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.membership_note = "assumes " + f.label() + " satisfies the degree-" + std::to_string(m) +
                        " mean inequality with zero boundary values";
  for (const SearchResult& r : results) {
    unsigned long long order = 1;
    for (long mod : r.group) order *= static_cast<unsigned long long>(mod);
    Rational x(r.n, order);
    ++rep.checked;
    if (rep.exact_path) {
      Rational bound = Rational(order, m) * eval_f(f, x).value;
      Rational margin = Rational(r.min_boundary) - bound;
      if (margin.sign() < 0) rep.pass = false;
      if (margin.is_zero()) ++rep.equalities;
      rep.min_margin = std::min(rep.min_margin, margin.to_double());
    } else {
      double bound = static_cast<double>(order) / static_cast<double>(m) *
                     eval_f(f, x).approx.value;
      double margin = static_cast<double>(r.min_boundary) - bound;
      if (margin < -1e-9) rep.pass = false;
      rep.min_margin = std::min(rep.min_margin, margin);
    }
  }
  if (results.empty()) rep.min_margin = 0.0;
  return rep;
}

ViolationResult find_lex_violation(long m, int r, const std::vector<unsigned long long>& n_list,
                                   unsigned long long budget, int threads,
                                   std::size_t mask_budget) {
  if (m < 5)
    throw std::invalid_argument("find_lex_violation: base must be >= 5, got " +
                                std::to_string(m) + " (initial segments are optimal below 5)");
  GroupSpec g = homocyclic(m, r);
  GenSet s = standard_gens(g);
  for (unsigned long long n : n_list) {
    SearchResult res = min_boundary_exhaustive(g, s, n, budget, threads, mask_budget);
    if (res.min_boundary < res.lex_boundary) return {true, n, std::move(res)};
  }
  return {};
}

}  // namespace takagi
