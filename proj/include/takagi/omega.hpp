#pragma once

#include "takagi/rational.hpp"

#include <cstdint>
#include <vector>

namespace takagi {

// Distance to the nearest integer truncated at alpha: min(||x mod 1||, alpha).
// Requires alpha > 0.
Rational trunc_dist(const Rational& x, const Rational& alpha);

// omega_m(x) = sum_{k>=0} m^-k * min(||m^k x||, 1/m), the truncated-distance
// series in base m.  Requires m >= 2.

// Exact value at x = n / m^r, scaled by m^r; always an integer.  n is reduced
// mod m^r first (the series has period 1).
Int omega_scaled_madic(long m, Int n, int r);
// Exact value at x = n / m^r as a rational.
Rational omega_exact_madic(long m, const Int& n, int r);

// Exact value at an arbitrary rational via cycle detection on
// a_{k+1} = m * a_k mod q.  max_states caps the number of distinct residues
// visited before giving up (throws std::invalid_argument beyond it).
Rational omega_exact_rational(long m, const Rational& x, std::size_t max_states = 1u << 22);

// Partial sum of the series with `terms` terms in double arithmetic.
// error_bound = m^-terms / (m - 1) covers the discarded tail.
BoundedValue omega_float(long m, double x, int terms);

// Smallest term count whose declared tail bound is below err.
int omega_terms_for(long m, double err);

// Table of scaled values m^r * omega_m(n / m^r) for n = 0..m^r, computed
// entry-by-entry from the defining series.
struct OmegaTable {
  long m = 0;
  int r = 0;
  std::vector<Int> scaled;  // scaled[n], n in [0, m^r]
};
OmegaTable omega_table(long m, int r, std::size_t mem_budget = 1u << 22);

// T(r, n) = sum_{k=1..r} 3^k * min(||n / 3^k||, 1/3); integer-valued.
// Requires 0 <= r <= 38 (the result then fits in 64 bits).
long long t3(int r, long long n);

// Residue marks of an integer mod 3: delta3(n) = [n not divisible by 3],
// xi in {-1,0,1} and zeta in {-2,0,2} both congruent to n mod 3.
struct ResidueMarks {
  int delta3 = 0;
  int xi = 0;
  int zeta = 0;
};
ResidueMarks residue_marks(long long n);

// Closed-form two-sided envelopes of omega_m on (0, 1]; both return 0 at x = 0.
double omega_lower_bound(long m, double x);
double omega_upper_bound(long m, double x);

struct SharpnessHit {
  Rational x;
  char side = 'L';  // 'L' lower, 'U' upper
};

struct BoundsReport {
  long m = 0;
  long grid = 0;
  bool pass = false;
  Rational worst_lower_margin;  // min over the grid of omega - lower
  Rational worst_upper_margin;  // min over the grid of upper - omega
  std::vector<SharpnessHit> sharpness_hits;
};

// Checks omega_lower_bound <= omega <= omega_upper_bound at x = i/grid for
// i = 1..grid (float evaluation, slack 1e-12 in the bound's favor), and probes
// the points where the bounds are attained (m in {2,3,4}, families indexed by
// k = 0..6) recording exact hits.
BoundsReport bounds_check(long m, long grid);

struct PlotRow {
  Rational x;
  double omega = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Rows at x = i/resolution for i = 0..resolution.
std::vector<PlotRow> plot_data(long m, long resolution);

}  // namespace takagi
