#include "takagi/fclass.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace takagi {

namespace {

constexpr double kE = 2.718281828459045235;

void require_unit_interval(const Rational& x) {
  if (x.sign() < 0 || Rational(1) < x)
    throw std::invalid_argument("fclass: argument outside [0, 1]");
}

void validate(const FunctionSpec& f) {
  switch (f.kind) {
    case FunctionSpec::Kind::ScaledOmega:
      if (f.m0 < 2) throw std::invalid_argument("fclass: scaled_omega needs base >= 2");
      break;
    case FunctionSpec::Kind::FmUpperEnv:
      if (f.m0 < 2) throw std::invalid_argument("fclass: fm_upper_env needs m >= 2");
      break;
    case FunctionSpec::Kind::ConvexPoly:
      if (f.coeffs.empty()) throw std::invalid_argument("fclass: poly needs coefficients");
      break;
    case FunctionSpec::Kind::PiecewiseLinear: {
      if (f.pts.size() < 2) throw std::invalid_argument("fclass: pwl needs >= 2 points");
      if (!f.pts.front().first.is_zero() || f.pts.back().first != Rational(1))
        throw std::invalid_argument("fclass: pwl must cover [0, 1]");
      for (std::size_t i = 1; i < f.pts.size(); ++i)
        if (!(f.pts[i - 1].first < f.pts[i].first))
          throw std::invalid_argument("fclass: pwl abscissas must increase");
      break;
    }
    case FunctionSpec::Kind::Entropy:
      break;
  }
}

Rational eval_exact_core(const FunctionSpec& f, const Rational& x) {
  switch (f.kind) {
    case FunctionSpec::Kind::ScaledOmega:
      return f.scale * omega_exact_rational(f.m0, x);
    case FunctionSpec::Kind::ConvexPoly: {
      Rational v;
      for (std::size_t i = f.coeffs.size(); i-- > 0;) v = v * x + f.coeffs[i];
      return v;
    }
    case FunctionSpec::Kind::PiecewiseLinear: {
      std::size_t i = 1;
      while (i + 1 < f.pts.size() && f.pts[i].first < x) ++i;
      const auto& [x0, y0] = f.pts[i - 1];
      const auto& [x1, y1] = f.pts[i];
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
    default:
      throw std::logic_error("fclass: not exactly evaluable");
  }
}

double eval_float_core(const FunctionSpec& f, double x, double err_target) {
  switch (f.kind) {
    case FunctionSpec::Kind::ScaledOmega: {
      double sc = f.scale.to_double();
      double target = err_target / (2.0 * std::max(std::fabs(sc), 1e-30));
      return sc * omega_float(f.m0, x, omega_terms_for(f.m0, target)).value;
    }
    case FunctionSpec::Kind::Entropy:
      return x <= 0.0 || x >= 1.0 ? 0.0 : -kE * x * std::log(x);
    case FunctionSpec::Kind::FmUpperEnv: {
      if (x <= 0.0) return 0.0;
      double c = static_cast<double>(f.m0) / static_cast<double>(f.m0 - 1);
      return c * kE * x * std::log(kE / x);
    }
    case FunctionSpec::Kind::ConvexPoly: {
      double v = 0;
      for (std::size_t i = f.coeffs.size(); i-- > 0;) v = v * x + f.coeffs[i].to_double();
      return v;
    }
    case FunctionSpec::Kind::PiecewiseLinear: {
      std::size_t i = 1;
      while (i + 1 < f.pts.size() && f.pts[i].first.to_double() < x) ++i;
      double x0 = f.pts[i - 1].first.to_double(), y0 = f.pts[i - 1].second.to_double();
      double x1 = f.pts[i].first.to_double(), y1 = f.pts[i].second.to_double();
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

std::string FunctionSpec::label() const {
  std::string s;
  switch (kind) {
    case Kind::ScaledOmega:
      s = scale.str() + "*omega_" + std::to_string(m0);
      break;
    case Kind::Entropy:
      s = "entropy";
      break;
    case Kind::FmUpperEnv:
      s = "fm_upper_env_" + std::to_string(m0);
      break;
    case Kind::ConvexPoly:
      s = "poly_deg" + std::to_string(coeffs.empty() ? 0 : coeffs.size() - 1);
      break;
    case Kind::PiecewiseLinear:
      s = "pwl_" + std::to_string(pts.size()) + "pts";
      break;
  }
  if (!interior_offset.is_zero()) s += "+offset";
  return s;
}

FunctionSpec FunctionSpec::parse(const std::string& literal) {
  FunctionSpec f;
  auto colon = literal.find(':');
  std::string kind = literal.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : literal.substr(colon + 1);

  auto kv_params = [&](const std::string& src) {
    for (const std::string& part : split(src, ',')) {
      auto eq = part.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("fclass: bad parameter '" + part + "'");
      std::string key = part.substr(0, eq);
      std::string val = part.substr(eq + 1);
      if (key == "m") f.m0 = std::stol(val);
      else if (key == "scale") f.scale = Rational::parse(val);
      else if (key == "offset") f.interior_offset = Rational::parse(val);
      else throw std::invalid_argument("fclass: unknown parameter '" + key + "'");
    }
  };

  if (kind == "entropy") {
    f.kind = Kind::Entropy;
    if (!rest.empty()) kv_params(rest);
  } else if (kind == "scaled_omega") {
    f.kind = Kind::ScaledOmega;
    kv_params(rest);
  } else if (kind == "fm_upper_env") {
    f.kind = Kind::FmUpperEnv;
    kv_params(rest);
  } else if (kind == "poly" || kind == "convex_poly") {
    f.kind = Kind::ConvexPoly;
    for (const std::string& c : split(rest, ',')) f.coeffs.push_back(Rational::parse(c));
  } else if (kind == "pwl") {
    f.kind = Kind::PiecewiseLinear;
    std::vector<std::string> pairs;
    if (!rest.empty() && rest[0] == '@') {
      std::ifstream in(rest.substr(1));
      if (!in) throw std::invalid_argument("fclass: cannot open '" + rest.substr(1) + "'");
      std::string line;
      while (std::getline(in, line))
        if (!line.empty()) pairs.push_back(line);
    } else {
      pairs = split(rest, ';');
    }
    for (const std::string& p : pairs) {
      auto xy = split(p, ',');
      if (xy.size() != 2) throw std::invalid_argument("fclass: bad pwl point '" + p + "'");
      f.pts.emplace_back(Rational::parse(xy[0]), Rational::parse(xy[1]));
    }
  } else {
    throw std::invalid_argument("fclass: unknown function '" + kind + "'");
  }
  validate(f);
  return f;
}

bool FunctionSpec::boundary_ok() const {
  for (int end = 0; end <= 1; ++end) {
    EvalResult v = eval_f(*this, Rational(end));
    if (v.exact ? v.value.sign() > 0 : v.approx.value > 1e-12) return false;
  }
  return true;
}

EvalResult eval_f(const FunctionSpec& f, const Rational& x) {
  validate(f);
  require_unit_interval(x);
  bool interior = x.sign() > 0 && x < Rational(1);
  EvalResult r;
  if (f.exact()) {
    r.exact = true;
    r.value = eval_exact_core(f, x);
    if (interior) r.value += f.interior_offset;
    double vd = r.value.to_double();
    r.approx = {vd, std::ldexp(std::max(std::fabs(vd), 1.0), -52)};
    return r;
  }
  double v = eval_float_core(f, x.to_double(), 1e-13);
  if (interior) v += f.interior_offset.to_double();
  r.approx = {v, 1e-12};
  return r;
}

double eval_f_float(const FunctionSpec& f, double x, double err_target) {
  double v = eval_float_core(f, x, err_target);
  if (x > 0.0 && x < 1.0) v += f.interior_offset.to_double();
  return v;
}

DefectResult defect(const FunctionSpec& f, int m, const std::vector<Rational>& xs) {
  if (m < 2) throw std::invalid_argument("defect: degree must be >= 2");
  if (xs.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("defect: expected " + std::to_string(m) + " values");
  for (const Rational& x : xs) require_unit_interval(x);

  Rational sum;
  Rational lo = xs[0], hi = xs[0];
  for (const Rational& x : xs) {
    sum += x;
    lo = min(lo, x);
    hi = max(hi, x);
  }
  Rational mean = sum / Rational(m);

  DefectResult d;
  if (f.exact()) {
    d.exact = true;
    Rational acc;
    for (const Rational& x : xs) acc += eval_f(f, x).value;
    d.value = eval_f(f, mean).value - acc / Rational(m) - (hi - lo);
    double vd = d.value.to_double();
    d.approx = {vd, std::ldexp(std::max(std::fabs(vd), 1.0), -50)};
    return d;
  }
  double acc = 0, err = 0;
  for (const Rational& x : xs) {
    BoundedValue v = eval_f(f, x).approx;
    acc += v.value;
    err += v.error_bound;
  }
  BoundedValue fm = eval_f(f, mean).approx;
  d.approx.value = fm.value - acc / m - (hi - lo).to_double();
  d.approx.error_bound = fm.error_bound + err / m + 1e-15;
  return d;
}

// ---------------------------------------------------------------------------
// refutation search

namespace {

struct StageCandidate {
  double d = -std::numeric_limits<double>::infinity();
  long i1 = 0, im = 0, a = 0, b = 0;
  int j = 0;
};

bool candidate_order(const StageCandidate& p, const StageCandidate& q) {
  if (p.d != q.d) return p.d > q.d;
  if (p.i1 != q.i1) return p.i1 < q.i1;
  if (p.im != q.im) return p.im < q.im;
  if (p.a != q.a) return p.a < q.a;
  if (p.b != q.b) return p.b < q.b;
  return p.j < q.j;
}

bool tuple_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double float_defect(const FunctionSpec& f, int m, const std::vector<Rational>& xs) {
  Rational sum;
  Rational lo = xs[0], hi = xs[0];
  for (const Rational& x : xs) {
    sum += x;
    lo = min(lo, x);
    hi = max(hi, x);
  }
  double mean = (sum / Rational(m)).to_double();
  double acc = 0;
  for (const Rational& x : xs) acc += eval_f_float(f, x.to_double(), 1e-11);
  return eval_f_float(f, mean, 1e-11) - acc / m - (hi - lo).to_double();
}

}  // namespace

RefuteReport refute_membership(const FunctionSpec& f, int m, const RefuteConfig& cfg) {
  validate(f);
  if (m < 2) throw std::invalid_argument("refute: degree must be >= 2");
  long n = cfg.grid;
  if (n < 1 || n > 4096) throw std::invalid_argument("refute: grid must be in [1, 4096]");

  RefuteReport rep;
  rep.grid = n;
  rep.restarts = cfg.restarts;

  std::vector<double> t1(static_cast<std::size_t>(n) + 1);
  std::vector<double> t2(static_cast<std::size_t>(m) * n + 1);
  double dn = static_cast<double>(n);
  for (long i = 0; i <= n; ++i) t1[i] = eval_f_float(f, i / dn, 1e-11);
  for (long i = 0; i <= m * n; ++i) t2[i] = eval_f_float(f, i / (dn * m), 1e-11);

  // stage 1: x1 and xm on the grid, interior filled from at most two values
  double inv_m = 1.0 / m;
  double inv_n = 1.0 / dn;
  int inner = m - 2;
  std::vector<StageCandidate> block(static_cast<std::size_t>(n) + 1);
  unsigned long long stage1_evals = 0;

#ifdef _OPENMP
#pragma omp parallel for num_threads(cfg.threads > 0 ? cfg.threads : omp_get_max_threads()) \
    schedule(dynamic) reduction(+ : stage1_evals)
#endif
  for (long i1 = 0; i1 <= n; ++i1) {
    StageCandidate best;
    for (long im = i1; im <= n; ++im) {
      for (long a = i1; a <= im; ++a) {
        for (long b = a; b <= im; ++b) {
          for (int j = 0; j <= inner; ++j) {
            if (j == 0 && a != i1) continue;        // no copies of a: canonical a
            if (j == inner && b != a) continue;     // no copies of b: canonical b
            long s = i1 + im + j * a + (inner - j) * b;
            double d = t2[s] - (t1[i1] + t1[im] + j * t1[a] + (inner - j) * t1[b]) * inv_m -
                       (im - i1) * inv_n;
            ++stage1_evals;
            if (d > best.d) best = {d, i1, im, a, b, j};
          }
        }
      }
    }
    block[i1] = best;
  }
  rep.evaluations = stage1_evals;

  std::sort(block.begin(), block.end(), candidate_order);
  std::size_t pool_size = std::min<std::size_t>(block.size(), 64);

  struct PoolEntry {
    double d;
    std::vector<Rational> tuple;
  };
  std::vector<PoolEntry> pool;
  pool.reserve(pool_size);
  for (std::size_t c = 0; c < pool_size; ++c) {
    const StageCandidate& s = block[c];
    std::vector<Rational> tuple;
    tuple.reserve(m);
    tuple.emplace_back(s.i1, n);
    for (int t = 0; t < s.j; ++t) tuple.emplace_back(s.a, n);
    for (int t = 0; t < inner - s.j; ++t) tuple.emplace_back(s.b, n);
    tuple.emplace_back(s.im, n);
    pool.push_back({s.d, std::move(tuple)});
  }

  // stage 2: seeded perturbation of the pool
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> jitter(-3, 3);
  Rational step(1, 16 * n);
  unsigned long long used = 0;
  for (int round = 0; round < cfg.restarts && used < cfg.budget; ++round) {
    for (auto& entry : pool) {
      if (used >= cfg.budget) break;
      std::vector<Rational> cand = entry.tuple;
      for (Rational& x : cand) {
        Rational y = x + Rational(jitter(rng)) * step;
        if (y.sign() < 0) y = Rational(0);
        if (Rational(1) < y) y = Rational(1);
        x = y;
      }
      std::sort(cand.begin(), cand.end());
      double d = float_defect(f, m, cand);
      ++used;
      if (d > entry.d) {
        entry.d = d;
        entry.tuple = std::move(cand);
      }
    }
  }
  rep.evaluations += used;

  std::sort(pool.begin(), pool.end(), [](const PoolEntry& p, const PoolEntry& q) {
    if (p.d != q.d) return p.d > q.d;
    return tuple_less(p.tuple, q.tuple);
  });
  if (!pool.empty()) {
    rep.best_defect_float = pool.front().d;
    rep.best_tuple = pool.front().tuple;
  }

  // stage 3: exact re-evaluation
  for (const PoolEntry& entry : pool) {
    DefectResult d = defect(f, m, entry.tuple);
    if (d.exact) {
      if (d.value.sign() > 0) {
        rep.found = true;
        rep.witness = {m, entry.tuple, d.value, true};
        return rep;
      }
    } else if (d.approx.value - d.approx.error_bound > 0) {
      rep.found = true;
      rep.witness = {m, entry.tuple, Rational::from_double(d.approx.value), false};
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// exhaustive grid scan

namespace {

struct ScanWorst {
  bool valid = false;
  long long d_int = std::numeric_limits<long long>::min();
  double d_float = -std::numeric_limits<double>::infinity();
  std::vector<long> tuple;
};

// all nondecreasing m-tuples with first entry i1; Leaf(acc, sum, last, indices)
template <class Acc, class Leaf>
void scan_rec(int level, int m, long n, long prev, long long sum_idx, Acc acc,
              const Acc* table1, std::vector<long>& idx, Leaf&& leaf) {
  if (level == m - 1) {
    leaf(prev, sum_idx, acc, idx);
    return;
  }
  for (long i = prev; i <= n; ++i) {
    idx[level] = i;
    scan_rec(level + 1, m, n, i, sum_idx + i, static_cast<Acc>(acc + table1[i]), table1, idx,
             leaf);
  }
}

}  // namespace

ScanReport grid_membership_scan(const FunctionSpec& f, int m, long grid, double tol, int threads,
                                unsigned long long budget) {
  validate(f);
  if (m < 2) throw std::invalid_argument("scan: degree must be >= 2");
  if (grid < 1) throw std::invalid_argument("scan: grid must be >= 1");
  long n = grid;

  Int count = 1;
  for (int i = 1; i <= m; ++i) count = count * (n + i) / i;  // C(n+m, m), exact stepwise
  if (count > Int(budget))
    throw std::invalid_argument("scan: " + count.str() + " tuples exceed budget " +
                                std::to_string(budget));

  ScanReport rep;
  rep.m = m;
  rep.grid = grid;
  rep.tol = tol;
  rep.checked = count.convert_to<unsigned long long>();

  int nthreads = threads;
#ifdef _OPENMP
  if (nthreads <= 0) nthreads = omp_get_max_threads();
#else
  if (nthreads <= 0) nthreads = 1;
#endif

  bool exact = f.exact();
  rep.exact_path = exact;
  std::vector<long long> p1, p2;
  long long big_l = 0;
  if (exact) {
    std::vector<Rational> t1r, t2r;
    t1r.reserve(n + 1);
    t2r.reserve(static_cast<std::size_t>(m) * n + 1);
    for (long i = 0; i <= n; ++i) t1r.push_back(eval_f(f, Rational(i, n)).value);
    for (long i = 0; i <= m * n; ++i)
      t2r.push_back(eval_f(f, Rational(i, static_cast<long long>(m) * n)).value);
    Int l = 1;
    for (const auto& v : t1r) l = boost::multiprecision::lcm(l, v.den());
    for (const auto& v : t2r) l = boost::multiprecision::lcm(l, v.den());
    if (l <= Int(1LL << 20)) {
      big_l = l.convert_to<long long>();
      auto to_int = [&](const Rational& v) {
        return (v.num() * (l / v.den())).convert_to<long long>();
      };
      bool fits = true;
      p1.reserve(t1r.size());
      p2.reserve(t2r.size());
      for (const auto& v : t1r) {
        Int scaled = v.num() * (l / v.den());
        if (boost::multiprecision::abs(scaled) > Int(1LL << 40)) fits = false;
        p1.push_back(fits ? to_int(v) : 0);
      }
      for (const auto& v : t2r) {
        Int scaled = v.num() * (l / v.den());
        if (boost::multiprecision::abs(scaled) > Int(1LL << 40)) fits = false;
        p2.push_back(fits ? to_int(v) : 0);
      }
      if (!fits) big_l = 0;
    }
    if (big_l == 0)
      throw std::invalid_argument(
          "scan: exact table denominators too large at this resolution; use a base-aligned grid");
  }

  std::vector<ScanWorst> blocks(static_cast<std::size_t>(n) + 1);

  if (exact) {
    long long mn = static_cast<long long>(m) * n;
    long long ml = static_cast<long long>(m) * big_l;
    const long long* tp1 = p1.data();
    const long long* tp2 = p2.data();
#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
#endif
    for (long i1 = 0; i1 <= n; ++i1) {
      ScanWorst w;
      std::vector<long> idx(m);
      idx[0] = i1;
      scan_rec<long long>(1, m, n, i1, i1, tp1[i1], tp1, idx,
                          [&](long prev, long long sum, long long acc, std::vector<long>& ix) {
                            for (long i = prev; i <= n; ++i) {
                              long long d = mn * tp2[sum + i] - n * (acc + tp1[i]) -
                                            ml * (i - ix[0]);
                              if (d > w.d_int) {
                                w.d_int = d;
                                w.valid = true;
                                ix[m - 1] = i;
                                w.tuple.assign(ix.begin(), ix.end());
                              }
                            }
                          });
      blocks[i1] = std::move(w);
    }
  } else {
    std::vector<double> t1(static_cast<std::size_t>(n) + 1);
    std::vector<double> t2(static_cast<std::size_t>(m) * n + 1);
    double dn = static_cast<double>(n);
    for (long i = 0; i <= n; ++i) t1[i] = eval_f_float(f, i / dn, tol / 10);
    for (long i = 0; i <= m * n; ++i) t2[i] = eval_f_float(f, i / (dn * m), tol / 10);
    double inv_m = 1.0 / m;
    double inv_n = 1.0 / dn;
    const double* tp1 = t1.data();
    const double* tp2 = t2.data();
#ifdef _OPENMP
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
#endif
    for (long i1 = 0; i1 <= n; ++i1) {
      ScanWorst w;
      std::vector<long> idx(m);
      idx[0] = i1;
      scan_rec<double>(1, m, n, i1, i1, tp1[i1], tp1, idx,
                       [&](long prev, long long sum, double acc, std::vector<long>& ix) {
                         for (long i = prev; i <= n; ++i) {
                           double d = tp2[sum + i] - (acc + tp1[i]) * inv_m -
                                      (i - ix[0]) * inv_n;
                           if (d > w.d_float) {
                             w.d_float = d;
                             w.valid = true;
                             ix[m - 1] = i;
                             w.tuple.assign(ix.begin(), ix.end());
                           }
                         }
                       });
      blocks[i1] = std::move(w);
    }
  }

  const ScanWorst* worst = nullptr;
  for (const auto& b : blocks) {
    if (!b.valid) continue;
    if (!worst || (exact ? b.d_int > worst->d_int : b.d_float > worst->d_float)) worst = &b;
  }
  if (worst) {
    rep.worst_tuple.reserve(m);
    for (long i : worst->tuple) rep.worst_tuple.emplace_back(i, n);
    if (exact) {
      rep.worst_defect = Rational(worst->d_int, Int(m) * n * big_l);
      rep.worst_defect_float = rep.worst_defect.to_double();
      rep.violation = worst->d_int > 0;
    } else {
      rep.worst_defect_float = worst->d_float;
      rep.violation = worst->d_float > tol;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// envelope

namespace {

// Best two-level upper bound at x = n / m^2: distribute n over m slots valued
// in [0, m]; slots strictly inside (0, m) cost 1, plus the slot spread.
long long two_level_cost(long m, long n) {
  long long best = std::numeric_limits<long long>::max();
  std::vector<long> parts;
  // enumerate nonincreasing part lists with at most m entries
  std::function<void(long, long, long)> rec = [&](long slots, long remaining, long cap) {
    if (remaining == 0) {
      long long mids = 0;
      for (long p : parts)
        if (p > 0 && p < m) ++mids;
      long long amax = parts.empty() ? 0 : parts.front();
      long long amin = static_cast<long>(parts.size()) == m ? parts.back() : 0;
      best = std::min(best, mids + amax - amin);
      return;
    }
    if (slots == 0) return;
    long hi = std::min(cap, remaining);
    for (long v = hi; v >= 1; --v) {
      if (static_cast<long long>(v) * slots < remaining) break;
      parts.push_back(v);
      rec(slots - 1, remaining - v, v);
      parts.pop_back();
    }
  };
  rec(m, n, m);
  return best;
}

}  // namespace

EnvelopeBracket envelope(long m, const Rational& x) {
  if (m < 2) throw std::invalid_argument("envelope: degree must be >= 2");
  require_unit_interval(x);
  EnvelopeBracket b;
  if (m <= 4) {
    b.exact = true;
    b.value = Rational(m) * omega_exact_rational(m, x);
    b.lower = b.upper = b.value.to_double();
    return b;
  }
  double xd = x.to_double();
  b.lower = xd <= 0.0 ? 0.0 : kE * xd * std::log(1.0 / xd);
  double md = static_cast<double>(m);
  double up = (Rational(m) * omega_exact_rational(m, x)).to_double();
  if (xd > 0.0) up = std::min(up, md / (md - 1.0) * kE * xd * std::log(kE / xd));
  up = std::min(up, md / (md - 1.0));
  Int m2 = Int(m) * m;
  if (m <= 64 && m2 % x.den() == 0) {
    Int num = x.num() * (m2 / x.den());
    if (num <= 64) {
      long long cost = two_level_cost(m, num.convert_to<long>());
      up = std::min(up, static_cast<double>(cost) / md);
    }
  }
  b.upper = up;
  return b;
}

OmegaTable envelope_grid_propagate(long m, int r, std::size_t mem_budget) {
  if (m < 2) throw std::invalid_argument("propagate: degree must be >= 2");
  if (r < 0) throw std::invalid_argument("propagate: depth must be >= 0");
  Int size = pow_int(m, static_cast<unsigned long>(r));
  if (size > Int(mem_budget))
    throw std::invalid_argument("propagate: table needs " + size.str() + " entries, budget is " +
                                std::to_string(mem_budget));
  std::vector<Int> prev{0, 0};
  unsigned long long width = 1;
  for (int level = 1; level <= r; ++level) {
    width *= static_cast<unsigned long long>(m);
    std::vector<Int> cur(width + 1);
    for (unsigned long long nn = 0; nn <= width; ++nn) {
      if (nn % static_cast<unsigned long long>(m) == 0) {
        cur[nn] = m * prev[nn / m];
      } else {
        unsigned long long t = nn / static_cast<unsigned long long>(m);
        long rho = static_cast<long>(nn % static_cast<unsigned long long>(m));
        cur[nn] = (m - rho) * prev[t] + rho * prev[t + 1] + m;
      }
    }
    prev = std::move(cur);
  }
  OmegaTable out;
  out.m = m;
  out.r = r;
  out.scaled = std::move(prev);
  return out;
}

// ---------------------------------------------------------------------------
// inequality sweeps

FunnyReport funny_check(const FunctionSpec& f, long m, long grid) {
  validate(f);
  if (m < 2 || m > 4)
    throw std::invalid_argument("funny_check: extremal comparison needs degree in {2, 3, 4}");
  if (grid < 1 || grid > 256) throw std::invalid_argument("funny_check: grid must be in [1, 256]");
  long n = grid;

  FunnyReport rep;
  rep.m = m;
  rep.grid = grid;
  rep.exact_path = f.exact();

  if (rep.exact_path) {
    std::vector<Rational> f1, w, f2;
    f1.reserve(n + 1);
    w.reserve(n + 1);
    f2.reserve(static_cast<std::size_t>(n) * n + 1);
    for (long i = 0; i <= n; ++i) {
      f1.push_back(eval_f(f, Rational(i, n)).value);
      w.push_back(Rational(m) * omega_exact_rational(m, Rational(i, n)));
    }
    for (long u = 0; u <= n * n; ++u)
      f2.push_back(eval_f(f, Rational(u, static_cast<long long>(n) * n)).value);

    bool first = true;
    for (long i = 0; i <= n; ++i) {
      for (long j = 0; j <= n; ++j) {
        for (long k = j; k <= n; ++k) {
          Rational rhs = (Rational(i) * f1[j] + Rational(n - i) * f1[k]) / Rational(n) +
                         Rational(k - j, n) * w[i];
          Rational slack = rhs - f2[i * j + (n - i) * k];
          ++rep.checked;
          if (first || slack < rep.worst_slack) {
            rep.worst_slack = slack;
            rep.worst_point = {Rational(i, n), Rational(j, n), Rational(k, n)};
            first = false;
          }
        }
      }
    }
    rep.worst_slack_float = rep.worst_slack.to_double();
    rep.pass = !first && rep.worst_slack.sign() >= 0;
    return rep;
  }

  std::vector<double> f1(n + 1), w(n + 1), f2(static_cast<std::size_t>(n) * n + 1);
  double dn = static_cast<double>(n);
  int terms = omega_terms_for(m, 1e-12);
  for (long i = 0; i <= n; ++i) {
    f1[i] = eval_f_float(f, i / dn, 1e-11);
    w[i] = m * omega_float(m, i / dn, terms).value;
  }
  for (long u = 0; u <= n * n; ++u) f2[u] = eval_f_float(f, u / (dn * dn), 1e-11);
  double worst = std::numeric_limits<double>::infinity();
  long wi = 0, wj = 0, wk = 0;
  for (long i = 0; i <= n; ++i) {
    for (long j = 0; j <= n; ++j) {
      for (long k = j; k <= n; ++k) {
        double rhs = (i * f1[j] + (n - i) * f1[k]) / dn + (k - j) / dn * w[i];
        double slack = rhs - f2[i * j + (n - i) * k];
        ++rep.checked;
        if (slack < worst) {
          worst = slack;
          wi = i;
          wj = j;
          wk = k;
        }
      }
    }
  }
  rep.worst_slack_float = worst;
  rep.worst_point = {Rational(wi, n), Rational(wj, n), Rational(wk, n)};
  rep.pass = worst >= -1e-9;
  return rep;
}

BpReport bp_dyadic_check(int r) {
  if (r < 0 || r > 20) throw std::invalid_argument("bp_dyadic_check: depth must be in [0, 20]");
  BpReport rep;
  rep.r = r;
  long long size = 1LL << r;
  std::vector<long long> w0(size + 1), w1(2 * size + 1);
  for (long long x = 0; x <= size; ++x)
    w0[x] = omega_scaled_madic(2, Int(x), r).convert_to<long long>();
  for (long long s = 0; s <= 2 * size; ++s)
    w1[s] = omega_scaled_madic(2, Int(s), r + 1).convert_to<long long>();
  rep.worst_margin = std::numeric_limits<long long>::max();
  rep.pass = true;
  for (long long x = 0; x <= size; ++x) {
    for (long long y = x; y <= size; ++y) {
      long long margin = w0[x] + w0[y] + (y - x) - w1[x + y];
      ++rep.checked;
      if (margin < rep.worst_margin) rep.worst_margin = margin;
      if (margin < 0 && rep.violation_x < 0) {
        rep.pass = false;
        rep.violation_x = x;
        rep.violation_y = y;
      }
    }
  }
  return rep;
}

Bp3Report bp3_integer_check(int r_max, long long range) {
  if (r_max < 1 || r_max > 38) throw std::invalid_argument("bp3_integer_check: bad depth");
  if (range < 0) throw std::invalid_argument("bp3_integer_check: bad range");
  Bp3Report rep;
  rep.r_max = r_max;
  rep.range = range;
  rep.pass = true;
  rep.worst_margin = std::numeric_limits<long long>::max();
  auto at = [&](std::vector<long long>& t, long long i) -> long long& { return t[i + 3 * range]; };
  for (int r = 1; r <= r_max; ++r) {
    std::vector<long long> tr(6 * range + 1), tp(6 * range + 1);
    for (long long i = -3 * range; i <= 3 * range; ++i) {
      at(tr, i) = t3(r, i);
      at(tp, i) = t3(r - 1, i);
    }
    for (long long x = -range; x <= range; ++x)
      for (long long y = x; y <= range; ++y)
        for (long long z = y; z <= range; ++z) {
          long long margin = at(tp, x) + at(tp, y) + at(tp, z) + (z - x) - at(tr, x + y + z);
          ++rep.checked;
          if (margin < rep.worst_margin) rep.worst_margin = margin;
          if (margin < 0) rep.pass = false;
        }
  }
  return rep;
}

Rational cyclic_variation(const std::vector<Rational>& xs) {
  if (xs.empty()) throw std::invalid_argument("cyclic_variation: empty list");
  Rational total;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational& a = xs[i];
    const Rational& b = xs[(i + 1) % xs.size()];
    total += (b - a).abs();
  }
  return total;
}

KpowReport kpow_check(long m, long grid, int k_max) {
  if (m < 2 || m > 4) throw std::invalid_argument("kpow_check: degree must be in {2, 3, 4}");
  if (grid < 1 || k_max < 1) throw std::invalid_argument("kpow_check: bad parameters");
  KpowReport rep;
  rep.m = m;
  rep.grid = grid;
  rep.k_max = k_max;
  int terms = omega_terms_for(m, 1e-10 / static_cast<double>(m - 1));
  double worst = std::numeric_limits<double>::infinity();
  for (long i = 1; i <= grid; ++i) {
    double xi = static_cast<double>(i) / static_cast<double>(grid);
    double xk = xi;   // xi^k
    double p = 1.0;   // xi^(k-1)
    for (int k = 1; k <= k_max; ++k) {
      double fv = (m - 1) * omega_float(m, xk, terms).value;
      double margin = k * p - fv;
      if (margin < worst) worst = margin;
      p = xk;
      xk *= xi;
    }
  }
  rep.worst_margin = worst;
  rep.pass = worst >= -1e-9;
  return rep;
}

}  // namespace takagi
