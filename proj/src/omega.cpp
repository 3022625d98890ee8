#include "takagi/omega.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace takagi {

namespace {

void require_base(long m) {
  if (m < 2) throw std::invalid_argument("omega: base must be >= 2, got " + std::to_string(m));
}

}  // namespace

Rational trunc_dist(const Rational& x, const Rational& alpha) {
  if (alpha.sign() <= 0) throw std::invalid_argument("trunc_dist: alpha must be positive");
  Rational f = x.frac_mod1();
  Rational other = Rational(1) - f;
  const Rational& d = min(f, other);
  return min(d, alpha);
}

Int omega_scaled_madic(long m, Int n, int r) {
  require_base(m);
  if (r < 0) throw std::invalid_argument("omega: exponent must be >= 0");
  if (r > 4096) throw std::invalid_argument("omega: exponent too large");
  Int M = pow_int(m, static_cast<unsigned long>(r));
  n %= M;
  if (n < 0) n += M;

  // every summand is at most m^(r-k-1), so the total stays below m^r
  if (M <= Int(std::numeric_limits<long long>::max() / (2 * m))) {
    auto mk = M.convert_to<unsigned long long>();
    auto b = n.convert_to<unsigned long long>();
    unsigned long long w = 0;
    auto um = static_cast<unsigned long long>(m);
    for (int k = 0; k < r; ++k) {
      unsigned long long cap = mk / um;
      unsigned long long t = std::min(std::min(b, mk - b), cap);
      w += t;
      mk = cap;
      b %= mk;
    }
    return Int(w);
  }

  Int mk = M;
  Int b = n;
  Int w = 0;
  for (int k = 0; k < r; ++k) {
    Int cap = mk / m;
    Int other = mk - b;
    const Int& t1 = b < other ? b : other;
    w += t1 < cap ? t1 : cap;
    mk = cap;
    b %= mk;
  }
  return w;
}

Rational omega_exact_madic(long m, const Int& n, int r) {
  Int w = omega_scaled_madic(m, n, r);
  return Rational(std::move(w), pow_int(m, static_cast<unsigned long>(r)));
}

Rational omega_exact_rational(long m, const Rational& x, std::size_t max_states) {
  require_base(m);
  Rational y = x.frac_mod1();
  const Int& p = y.num();
  const Int& q = y.den();
  if (p == 0) return Rational();

  std::map<Int, int> pos;
  std::vector<Int> cs;
  Int a = p;
  int i = -1;
  while (true) {
    auto it = pos.find(a);
    if (it != pos.end()) {
      i = it->second;
      break;
    }
    if (cs.size() >= max_states)
      throw std::invalid_argument("omega: residue budget exceeded, needs more than " +
                                  std::to_string(max_states) + " states");
    pos.emplace(a, static_cast<int>(cs.size()));
    Int ma = a * m;
    Int c2 = (q - a) * m;
    const Int& t = ma < c2 ? ma : c2;
    cs.push_back(t < q ? t : q);
    a = ma % q;
  }
  int j = static_cast<int>(cs.size());
  int len = j - i;

  Int pre = 0;
  for (int k = 0; k < i; ++k) pre = pre * m + cs[k];
  Int cyc = 0;
  for (int k = i; k < j; ++k) cyc = cyc * m + cs[k];

  Int mi = pow_int(m, static_cast<unsigned long>(i));
  Int ml = pow_int(m, static_cast<unsigned long>(len));
  Int den = q * mi * (ml - 1);
  Int num = pre * (ml - 1) + cyc;
  return Rational(std::move(num), std::move(den));
}

BoundedValue omega_float(long m, double x, int terms) {
  require_base(m);
  if (terms < 0) throw std::invalid_argument("omega: term count must be >= 0");
  double t = x - std::floor(x);
  double md = static_cast<double>(m);
  double cap = 1.0 / md;
  double w = 1.0;
  double val = 0.0;
  for (int k = 0; k < terms; ++k) {
    double d = std::min(t, 1.0 - t);
    val += w * std::min(d, cap);
    w /= md;
    t *= md;
    t -= std::floor(t);
  }
  return {val, w / (md - 1.0)};
}

int omega_terms_for(long m, double err) {
  require_base(m);
  if (err <= 0) throw std::invalid_argument("omega: error target must be positive");
  double md = static_cast<double>(m);
  double w = 1.0;
  int t = 0;
  while (w / (md - 1.0) >= err) {
    w /= md;
    if (++t > 4096) throw std::invalid_argument("omega: error target unreachable");
  }
  return t;
}

OmegaTable omega_table(long m, int r, std::size_t mem_budget) {
  require_base(m);
  if (r < 0) throw std::invalid_argument("omega: exponent must be >= 0");
  Int M = pow_int(m, static_cast<unsigned long>(r));
  if (M > Int(mem_budget))
    throw std::invalid_argument("omega_table: table needs " + M.str() +
                                " entries, budget is " + std::to_string(mem_budget));
  auto size = M.convert_to<std::size_t>();
  OmegaTable t;
  t.m = m;
  t.r = r;
  t.scaled.reserve(size + 1);
  for (std::size_t n = 0; n <= size; ++n) t.scaled.push_back(omega_scaled_madic(m, Int(n), r));
  return t;
}

long long t3(int r, long long n) {
  if (r < 0 || r > 38) throw std::invalid_argument("t3: depth must be in [0, 38]");
  long long total = 0;
  long long p = 1;
  for (int k = 1; k <= r; ++k) {
    p *= 3;
    long long b = n % p;
    if (b < 0) b += p;
    total += std::min(std::min(b, p - b), p / 3);
  }
  return total;
}

ResidueMarks residue_marks(long long n) {
  int rm = static_cast<int>(((n % 3) + 3) % 3);
  if (rm == 0) return {0, 0, 0};
  if (rm == 1) return {1, 1, -2};
  return {1, -1, 2};
}

double omega_lower_bound(long m, double x) {
  require_base(m);
  if (x <= 0.0) return 0.0;
  double lm = std::log(static_cast<double>(m));
  if (m <= 4) return x * std::log(1.0 / x) / lm;
  return x * std::log(std::exp(1.0) / (m * x)) / lm;
}

double omega_upper_bound(long m, double x) {
  require_base(m);
  if (x <= 0.0) return 0.0;
  double lm = std::log(static_cast<double>(m));
  if (m == 2 || m == 4) return x * std::log(4.0 / (3.0 * x)) / lm;
  return x * std::log(3.0 / (2.0 * x)) / lm;
}

BoundsReport bounds_check(long m, long grid) {
  require_base(m);
  if (grid < 1) throw std::invalid_argument("bounds_check: grid must be >= 1");
  const double tol = 1e-12;
  int terms = omega_terms_for(m, 1e-13);

  BoundsReport rep;
  rep.m = m;
  rep.grid = grid;
  rep.pass = true;
  double worst_lo = std::numeric_limits<double>::infinity();
  double worst_up = std::numeric_limits<double>::infinity();
  for (long i = 1; i <= grid; ++i) {
    double xd = static_cast<double>(i) / static_cast<double>(grid);
    double w = omega_float(m, xd, terms).value;
    double lo = w - omega_lower_bound(m, xd);
    double up = omega_upper_bound(m, xd) - w;
    worst_lo = std::min(worst_lo, lo);
    worst_up = std::min(worst_up, up);
    if (lo < -tol || up < -tol) rep.pass = false;
  }
  rep.worst_lower_margin = Rational::from_double(worst_lo);
  rep.worst_upper_margin = Rational::from_double(worst_up);

  auto probe = [&](const Rational& x, char side) {
    double xd = x.to_double();
    double w = omega_exact_rational(m, x).to_double();
    double b = side == 'L' ? omega_lower_bound(m, xd) : omega_upper_bound(m, xd);
    if (std::fabs(w - b) <= tol) rep.sharpness_hits.push_back({x, side});
  };
  if (m == 2 || m == 4) {
    for (int k = 0; k <= 6; ++k) {
      probe(Rational(1, pow_int(2, k)), 'L');
      probe(Rational(2, Int(3) * pow_int(2, k)), 'U');
    }
  } else if (m == 3) {
    for (int k = 0; k <= 6; ++k) {
      probe(Rational(1, pow_int(3, k + 1)), 'L');
      probe(Rational(1, Int(2) * pow_int(3, k)), 'U');
    }
  }
  return rep;
}

std::vector<PlotRow> plot_data(long m, long resolution) {
  require_base(m);
  if (resolution < 1) throw std::invalid_argument("plot_data: resolution must be >= 1");
  int terms = omega_terms_for(m, 1e-13);
  std::vector<PlotRow> rows;
  rows.reserve(static_cast<std::size_t>(resolution) + 1);
  for (long i = 0; i <= resolution; ++i) {
    PlotRow row;
    row.x = Rational(i, resolution);
    double xd = static_cast<double>(i) / static_cast<double>(resolution);
    row.omega = i == 0 ? 0.0 : omega_float(m, xd, terms).value;
    row.lower = omega_lower_bound(m, xd);
    row.upper = omega_upper_bound(m, xd);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace takagi
