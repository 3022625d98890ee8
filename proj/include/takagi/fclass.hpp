#pragma once

#include "takagi/omega.hpp"
#include "takagi/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace takagi {

// Catalog of functions [0,1] -> R fed to the mean-inequality machinery.
// Exactly evaluable kinds return rationals; the others return doubles with a
// declared error bound.  interior_offset is added on the open interval (0,1)
// only, leaving the endpoint values untouched.
struct FunctionSpec {
  enum class Kind { ScaledOmega, Entropy, FmUpperEnv, ConvexPoly, PiecewiseLinear };

  Kind kind = Kind::Entropy;
  long m0 = 0;                                     // ScaledOmega base / FmUpperEnv parameter
  Rational scale = Rational(1);                    // ScaledOmega multiplier
  std::vector<Rational> coeffs;                    // ConvexPoly, constant term first
  std::vector<std::pair<Rational, Rational>> pts;  // PiecewiseLinear breakpoints, x ascending
  Rational interior_offset;

  bool exact() const {
    return kind == Kind::ScaledOmega || kind == Kind::ConvexPoly || kind == Kind::PiecewiseLinear;
  }
  std::string label() const;

  // "entropy", "scaled_omega:m=2,scale=2", "fm_upper_env:m=5",
  // "poly:0,-1,1", "pwl:0,0;1/2,3/2;1,0" or "pwl:@points.csv"
  static FunctionSpec parse(const std::string& literal);

  // max(f(0), f(1)) <= 0?
  bool boundary_ok() const;
};

struct EvalResult {
  bool exact = false;
  Rational value;       // valid when exact
  BoundedValue approx;  // always valid
};

// f at x; requires x in [0, 1].
EvalResult eval_f(const FunctionSpec& f, const Rational& x);
// double-only path used to build large tables; the result's error bound is
// kept below err_target.
double eval_f_float(const FunctionSpec& f, double x, double err_target);

// f(mean) - mean of f - (max - min) over an m-tuple from [0,1]^m; positive
// values witness that f violates the degree-m mean inequality.
struct DefectResult {
  bool exact = false;
  Rational value;
  BoundedValue approx;
};
DefectResult defect(const FunctionSpec& f, int m, const std::vector<Rational>& xs);

struct DefectWitness {
  int m = 0;
  std::vector<Rational> tuple;  // ascending
  Rational defect;
  bool certified = false;  // exact rational defect > 0
};

struct RefuteConfig {
  long grid = 243;
  int restarts = 64;
  unsigned long long budget = 200000;  // perturbation-stage evaluations
  unsigned long long seed = 1;
  int threads = 0;
};

struct RefuteReport {
  bool found = false;
  DefectWitness witness;  // valid when found
  double best_defect_float = 0.0;
  std::vector<Rational> best_tuple;
  unsigned long long evaluations = 0;
  long grid = 0;
  int restarts = 0;
};

// Three stages: a coarse sweep of tuples (x1, interior from at most two
// distinct grid values, xm) over the grid i/N, seeded random perturbation of
// the best candidates, then exact re-evaluation of survivors.  A returned
// witness with certified=true has an exactly positive rational defect.
// "not found" is a search outcome, never a membership proof.
RefuteReport refute_membership(const FunctionSpec& f, int m, const RefuteConfig& cfg = {});

struct ScanReport {
  int m = 0;
  long grid = 0;
  bool exact_path = false;
  bool violation = false;
  unsigned long long checked = 0;
  std::vector<Rational> worst_tuple;
  Rational worst_defect;          // exact path
  double worst_defect_float = 0;  // float path
  double tol = 0;
};

// Exhaustive sweep of all nondecreasing m-tuples over {0, 1/N, ..., 1}.
// Exact arithmetic whenever f is exactly evaluable, doubles with tolerance
// `tol` otherwise.  A pass means "no violation at resolution N" only.
ScanReport grid_membership_scan(const FunctionSpec& f, int m, long grid, double tol = 1e-9,
                                int threads = 0,
                                unsigned long long budget = 20000000000ull);

struct EnvelopeBracket {
  bool exact = false;
  Rational value;  // valid when exact
  double lower = 0.0;
  double upper = 0.0;
};

// Pointwise extremal value of the degree-m class: exact m * omega_m(x) for
// m in {2,3,4}; a two-sided bracket for m >= 5 (upper side takes the best of
// m * omega_m, the closed-form envelope, the constant m/(m-1) and, at
// x = n/m^2, a two-level grid refinement).
EnvelopeBracket envelope(long m, const Rational& x);

// Upper-bound table at refinement depth r, scaled by m^r: base values 0 at
// the endpoints, then one application of the degree-m mean inequality per
// level between adjacent grid points.
OmegaTable envelope_grid_propagate(long m, int r, std::size_t mem_budget = 1u << 22);

struct FunnyReport {
  long m = 0;
  long grid = 0;
  bool exact_path = false;
  bool pass = false;
  unsigned long long checked = 0;
  Rational worst_slack;
  double worst_slack_float = 0.0;
  std::vector<Rational> worst_point;  // lambda, x, y
};

// Checks f(lx + (1-l)y) <= l f(x) + (1-l) f(y) + (y-x) * m * omega_m(l) over
// the grid l, x, y in {i/N}, x <= y.
FunnyReport funny_check(const FunctionSpec& f, long m, long grid);

struct BpReport {
  int r = 0;
  bool pass = false;
  unsigned long long checked = 0;
  long long worst_margin = 0;
  long long violation_x = -1, violation_y = -1;
};

// Midpoint inequality for 2 * omega_2 at dyadic points, in cleared-denominator
// integer form: with W_d(n) = 2^d * omega_2(n / 2^d),
//   W_{r+1}(x + y) <= W_r(x) + W_r(y) + |x - y|  for all x, y in [0, 2^r].
BpReport bp_dyadic_check(int r);

struct Bp3Report {
  int r_max = 0;
  long long range = 0;
  bool pass = false;
  unsigned long long checked = 0;
  long long worst_margin = 0;
};

// Integer form of the triadic inequality: T(r, x+y+z) <= T(r-1, x) +
// T(r-1, y) + T(r-1, z) + (z - x) for x <= y <= z in [-range, range].
Bp3Report bp3_integer_check(int r_max, long long range);

// Total variation around the cycle x_0 -> x_1 -> ... -> x_0.
Rational cyclic_variation(const std::vector<Rational>& xs);

struct KpowReport {
  long m = 0;
  long grid = 0;
  int k_max = 0;
  bool pass = false;
  double worst_margin = 0.0;
};

// For f = (1 - 1/m) * m * omega_m with m in {2,3,4}: f(xi^k) <= k * xi^(k-1)
// over xi in the grid and k = 1..k_max (float, slack 1e-9).
KpowReport kpow_check(long m, long grid, int k_max);

}  // namespace takagi
