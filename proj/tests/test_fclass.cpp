#include <doctest.h>

#include "takagi/fclass.hpp"
#include "takagi/omega.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

using namespace takagi;

TEST_CASE("function literals parse and label") {
  FunctionSpec f = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  CHECK(f.kind == FunctionSpec::Kind::ScaledOmega);
  CHECK(f.m0 == 2);
  CHECK(f.scale == Rational(2));
  CHECK(f.exact());
  CHECK(f.label() == "2*omega_2");

  FunctionSpec e = FunctionSpec::parse("entropy");
  CHECK(!e.exact());
  CHECK(e.label() == "entropy");

  FunctionSpec u = FunctionSpec::parse("fm_upper_env:m=5");
  CHECK(u.m0 == 5);
  CHECK(!u.exact());

  FunctionSpec p = FunctionSpec::parse("poly:0,-1,1");
  CHECK(p.coeffs.size() == 3);
  CHECK(p.exact());

  FunctionSpec w = FunctionSpec::parse("pwl:0,0;1/2,3/2;1,0");
  CHECK(w.pts.size() == 3);
  CHECK(w.exact());

  FunctionSpec off = FunctionSpec::parse("scaled_omega:m=2,scale=2,offset=1/100");
  CHECK(off.interior_offset == Rational(1, 100));
  CHECK(off.label() == "2*omega_2+offset");
}

TEST_CASE("bad literals are rejected") {
  CHECK_THROWS_AS(FunctionSpec::parse("nope"), std::invalid_argument);
  CHECK_THROWS_AS(FunctionSpec::parse("scaled_omega:m=1"), std::invalid_argument);
  CHECK_THROWS_AS(FunctionSpec::parse("scaled_omega:q=2"), std::invalid_argument);
  CHECK_THROWS_AS(FunctionSpec::parse("poly:"), std::invalid_argument);
  CHECK_THROWS_AS(FunctionSpec::parse("pwl:0,0;1/2,1"), std::invalid_argument);
  CHECK_THROWS_AS(FunctionSpec::parse("pwl:0,0;0,1;1,0"), std::invalid_argument);
  CHECK_THROWS_AS(FunctionSpec::parse("pwl:@/no/such/file.csv"), std::invalid_argument);
}

TEST_CASE("piecewise points load from a file") {
  const char* path = "pwl_points_test.csv";
  {
    std::ofstream out(path);
    out << "0,0\n1/2,3/2\n1,0\n";
  }
  FunctionSpec f = FunctionSpec::parse(std::string("pwl:@") + path);
  std::remove(path);
  REQUIRE(f.pts.size() == 3);
  CHECK(f.pts[1].second == Rational(3, 2));
  CHECK(eval_f(f, Rational(1, 4)).value == Rational(3, 4));
}

TEST_CASE("evaluation of the exact kinds") {
  FunctionSpec f = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  CHECK(eval_f(f, Rational(1, 3)).value == Rational(4, 3));
  CHECK(eval_f(f, Rational(0)).value == Rational(0));
  CHECK(eval_f(f, Rational(1)).value == Rational(0));

  FunctionSpec p = FunctionSpec::parse("poly:0,-1,1");  // x^2 - x
  CHECK(eval_f(p, Rational(1, 2)).value == Rational(-1, 4));
  CHECK(eval_f(p, Rational(1)).value == Rational(0));

  FunctionSpec w = FunctionSpec::parse("pwl:0,0;1/2,3/2;1,0");
  CHECK(eval_f(w, Rational(1, 2)).value == Rational(3, 2));
  CHECK(eval_f(w, Rational(3, 4)).value == Rational(3, 4));
  CHECK(eval_f(w, Rational(0)).value == Rational(0));

  CHECK_THROWS_AS(eval_f(f, Rational(-1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(eval_f(f, Rational(3, 2)), std::invalid_argument);
}

TEST_CASE("interior offset spares the endpoints") {
  FunctionSpec f = FunctionSpec::parse("scaled_omega:m=2,scale=2,offset=1/100");
  CHECK(eval_f(f, Rational(0)).value == Rational(0));
  CHECK(eval_f(f, Rational(1)).value == Rational(0));
  CHECK(eval_f(f, Rational(1, 2)).value == Rational(1) + Rational(1, 100));
  CHECK(f.boundary_ok());
}

TEST_CASE("entropy evaluates to 1 at 1/e") {
  FunctionSpec e = FunctionSpec::parse("entropy");
  Rational x = Rational::from_double(std::exp(-1.0));
  EvalResult r = eval_f(e, x);
  CHECK(!r.exact);
  CHECK(std::fabs(r.approx.value - 1.0) <= 1e-12);
  CHECK(eval_f(e, Rational(0)).approx.value == 0.0);
  CHECK(eval_f(e, Rational(1)).approx.value == 0.0);
}

TEST_CASE("boundary admissibility") {
  CHECK(FunctionSpec::parse("entropy").boundary_ok());
  CHECK(FunctionSpec::parse("scaled_omega:m=3,scale=3").boundary_ok());
  CHECK(FunctionSpec::parse("poly:0,-1,1").boundary_ok());
  CHECK(!FunctionSpec::parse("poly:1").boundary_ok());
  CHECK(!FunctionSpec::parse("fm_upper_env:m=5").boundary_ok());
}

TEST_CASE("float path tracks the exact path") {
  FunctionSpec f = FunctionSpec::parse("scaled_omega:m=3,scale=3");
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    long long q = 1 + static_cast<long long>(rng() % 120);
    long long p = static_cast<long long>(rng() % (q + 1));
    Rational x(p, q);
    double exact = eval_f(f, x).value.to_double();
    CHECK(std::fabs(eval_f_float(f, x.to_double(), 1e-12) - exact) <= 1e-10);
  }
}

TEST_CASE("defect of hand-checked witnesses") {
  // oracle: tuples evaluated term by term with exact fractions
  FunctionSpec f2 = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  std::vector<Rational> w6 = {Rational(1, 4), Rational(1, 4), Rational(1, 4),
                              Rational(1, 4), Rational(1, 2), Rational(1, 2)};
  DefectResult d = defect(f2, 6, w6);
  REQUIRE(d.exact);
  CHECK(d.value == Rational(1, 12));  // 4/3 - 1 - 1/4

  FunctionSpec f3 = FunctionSpec::parse("scaled_omega:m=3,scale=3");
  std::vector<Rational> w63 = {Rational(0), Rational(0), Rational(0),
                               Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  CHECK(defect(f3, 6, w63).value == Rational(1, 6));  // 1 - 1/2 - 1/3

  std::vector<Rational> w8 = {Rational(0), Rational(0), Rational(0), Rational(0), Rational(0),
                              Rational(4, 9), Rational(4, 9), Rational(4, 9)};
  CHECK(defect(f2, 8, w8).value == Rational(5, 63));  // 1 - 10/21 - 4/9

  // near miss: moving the lower block to 0 kills the violation
  std::vector<Rational> near = {Rational(0), Rational(0), Rational(0),
                                Rational(0), Rational(1, 3), Rational(1, 3)};
  CHECK(defect(f2, 6, near).value == Rational(-1, 63));
}

TEST_CASE("defect identities") {
  FunctionSpec f2 = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  std::mt19937_64 rng(29);
  for (int it = 0; it < 100; ++it) {
    long long q = 1 + static_cast<long long>(rng() % 80);
    long long p = static_cast<long long>(rng() % (q + 1));
    Rational x(p, q);
    // the halving step is tight for the degree-2 extremal function
    CHECK(defect(f2, 2, {Rational(0), x}).value.sign() == 0);
    // blowing a pair up to six copies leaves mean, average and spread alone
    std::vector<Rational> pair = {x, Rational(p % 7, 7)};
    std::sort(pair.begin(), pair.end());
    std::vector<Rational> blown;
    for (const Rational& v : pair)
      for (int c = 0; c < 3; ++c) blown.push_back(v);
    CHECK(defect(f2, 6, blown).value == defect(f2, 2, pair).value);
  }
}

TEST_CASE("defect validates its input") {
  FunctionSpec f = FunctionSpec::parse("entropy");
  CHECK_THROWS_AS(defect(f, 1, {Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(defect(f, 3, {Rational(0), Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(defect(f, 2, {Rational(0), Rational(2)}), std::invalid_argument);
}

TEST_CASE("refutation finds certified witnesses") {
  RefuteConfig cfg;
  cfg.restarts = 4;
  cfg.budget = 2000;

  // quarters and halves carry a violation of the degree-6 inequality
  cfg.grid = 8;
  FunctionSpec f2 = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  RefuteReport r = refute_membership(f2, 6, cfg);
  REQUIRE(r.found);
  CHECK(r.witness.certified);
  CHECK(r.witness.defect >= Rational(1, 13));
  CHECK(defect(f2, 6, r.witness.tuple).value == r.witness.defect);

  cfg.grid = 9;
  FunctionSpec f3 = FunctionSpec::parse("scaled_omega:m=3,scale=3");
  RefuteReport r3 = refute_membership(f3, 6, cfg);
  REQUIRE(r3.found);
  CHECK(r3.witness.certified);
  CHECK(r3.witness.defect >= Rational(1, 7));

  RefuteReport r8 = refute_membership(f2, 8, cfg);
  REQUIRE(r8.found);
  CHECK(r8.witness.certified);
  CHECK(r8.witness.defect >= Rational(5, 64));

  FunctionSpec spike = FunctionSpec::parse("pwl:0,0;1/2,3/2;1,0");
  RefuteReport rs = refute_membership(spike, 2, cfg);
  REQUIRE(rs.found);
  CHECK(rs.witness.certified);
  CHECK(rs.witness.defect >= Rational(1, 2));
}

TEST_CASE("refutation leaves member functions alone") {
  RefuteConfig cfg;
  cfg.grid = 27;
  cfg.restarts = 4;
  cfg.budget = 4000;
  FunctionSpec e = FunctionSpec::parse("entropy");
  for (int m : {2, 3, 4}) {
    RefuteReport r = refute_membership(e, m, cfg);
    CHECK(!r.found);
    CHECK(r.best_defect_float <= 1e-9);
  }
  FunctionSpec f2 = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  RefuteReport r2 = refute_membership(f2, 2, cfg);
  CHECK(!r2.found);
}

TEST_CASE("grid scans, exact and float") {
  FunctionSpec f2 = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  ScanReport ok = grid_membership_scan(f2, 2, 16);
  CHECK(ok.exact_path);
  CHECK(!ok.violation);
  CHECK(ok.worst_defect.sign() == 0);  // constant tuples sit on the boundary
  CHECK(ok.checked == 153);            // multisets of size 2 from 17 values

  ScanReport bad = grid_membership_scan(f2, 6, 8);
  CHECK(bad.exact_path);
  CHECK(bad.violation);
  CHECK(bad.worst_defect >= Rational(1, 12));
  CHECK(defect(f2, 6, bad.worst_tuple).value == bad.worst_defect);

  FunctionSpec f3 = FunctionSpec::parse("scaled_omega:m=3,scale=3");
  ScanReport ok3 = grid_membership_scan(f3, 3, 27);
  CHECK(!ok3.violation);

  ScanReport bad3 = grid_membership_scan(f3, 6, 9);
  CHECK(bad3.violation);
  CHECK(bad3.worst_defect >= Rational(1, 6));

  FunctionSpec e = FunctionSpec::parse("entropy");
  ScanReport fl = grid_membership_scan(e, 3, 16);
  CHECK(!fl.exact_path);
  CHECK(!fl.violation);
  CHECK(fl.checked == 969);

  FunctionSpec spike = FunctionSpec::parse("pwl:0,0;1/2,3/2;1,0");
  ScanReport sp = grid_membership_scan(spike, 2, 2);
  CHECK(sp.violation);
  CHECK(sp.worst_defect == Rational(1, 2));
}

TEST_CASE("scan guards") {
  FunctionSpec e = FunctionSpec::parse("entropy");
  CHECK_THROWS_AS(grid_membership_scan(e, 6, 128, 1e-9, 0, 1000), std::invalid_argument);
  FunctionSpec f2 = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  CHECK_THROWS_AS(grid_membership_scan(f2, 2, 97), std::invalid_argument);
}

TEST_CASE("scan respects thread count deterministically") {
  FunctionSpec e = FunctionSpec::parse("entropy");
  ScanReport a = grid_membership_scan(e, 3, 24, 1e-9, 1);
  ScanReport b = grid_membership_scan(e, 3, 24, 1e-9, 4);
  CHECK(a.worst_defect_float == b.worst_defect_float);
  CHECK(a.worst_tuple == b.worst_tuple);
}

TEST_CASE("pointwise extremal values") {
  CHECK(envelope(2, Rational(1, 3)).value == Rational(4, 3));
  CHECK(envelope(3, Rational(1, 2)).value == Rational(3, 2));
  CHECK(envelope(2, Rational(0)).value == Rational(0));

  for (int n = 0; n <= 64; ++n) {
    Rational x(n, 64);
    CHECK(envelope(4, x).value == envelope(2, x).value);
  }

  EnvelopeBracket b7 = envelope(7, Rational(4, 49));
  CHECK(!b7.exact);
  CHECK(b7.upper <= 4.0 / 7 + 1e-12);
  CHECK(b7.lower <= b7.upper + 1e-12);

  std::mt19937_64 rng(77);
  for (int it = 0; it < 100; ++it) {
    long m = 5 + static_cast<long>(rng() % 8);
    long long q = 1 + static_cast<long long>(rng() % 90);
    long long p = static_cast<long long>(rng() % (q + 1));
    EnvelopeBracket b = envelope(m, Rational(p, q));
    CHECK(b.lower <= b.upper + 1e-12);
    CHECK(b.upper <= static_cast<double>(m) / (m - 1) + 1e-12);
  }
}

TEST_CASE("level recursion reproduces the scaled tables") {
  for (long m : {2L, 3L, 4L, 5L}) {
    for (int r = 0; r <= 4; ++r) {
      OmegaTable prop = envelope_grid_propagate(m, r);
      OmegaTable direct = omega_table(m, r);
      REQUIRE(prop.scaled.size() == direct.scaled.size());
      for (std::size_t i = 0; i < prop.scaled.size(); ++i)
        CHECK(prop.scaled[i] == m * direct.scaled[i]);
    }
  }
  CHECK_THROWS_AS(envelope_grid_propagate(2, 30), std::invalid_argument);
}

TEST_CASE("interpolation inequality sweeps") {
  FunctionSpec f2 = FunctionSpec::parse("scaled_omega:m=2,scale=2");
  FunnyReport r = funny_check(f2, 2, 8);
  CHECK(r.pass);
  CHECK(r.exact_path);
  CHECK(r.worst_slack.sign() >= 0);
  CHECK(r.checked == 9 * 9 * 10 / 2);

  FunctionSpec f3 = FunctionSpec::parse("scaled_omega:m=3,scale=3");
  CHECK(funny_check(f3, 3, 9).pass);

  FunctionSpec e = FunctionSpec::parse("entropy");
  FunnyReport rf = funny_check(e, 2, 8);
  CHECK(rf.pass);
  CHECK(!rf.exact_path);

  CHECK_THROWS_AS(funny_check(f2, 5, 8), std::invalid_argument);
}

TEST_CASE("pair inequality on the dyadic grid") {
  BpReport r = bp_dyadic_check(5);
  CHECK(r.pass);
  CHECK(r.checked == 33 * 34 / 2);
  CHECK(r.worst_margin == 0);  // x = y = 0 is tight
  CHECK_THROWS_AS(bp_dyadic_check(-1), std::invalid_argument);
}

TEST_CASE("triple inequality on the ternary grid") {
  Bp3Report r = bp3_integer_check(2, 9);
  CHECK(r.pass);
  CHECK(r.worst_margin == 0);
  CHECK(r.checked > 0);
  CHECK_THROWS_AS(bp3_integer_check(0, 9), std::invalid_argument);
}

TEST_CASE("cyclic variation") {
  CHECK(cyclic_variation({Rational(1, 2)}) == Rational(0));
  CHECK(cyclic_variation({Rational(0), Rational(1)}) == Rational(2));
  CHECK(cyclic_variation({Rational(0), Rational(1, 3), Rational(2, 3)}) == Rational(4, 3));
  CHECK_THROWS_AS(cyclic_variation({}), std::invalid_argument);

  std::mt19937_64 rng(123);
  for (int it = 0; it < 500; ++it) {
    std::size_t len = 1 + rng() % 12;
    std::vector<Rational> xs;
    for (std::size_t i = 0; i < len; ++i)
      xs.emplace_back(static_cast<long long>(rng() % 61), 60);
    Rational lo = xs[0], hi = xs[0];
    for (const Rational& x : xs) {
      lo = min(lo, x);
      hi = max(hi, x);
    }
    Rational v = cyclic_variation(xs);
    CHECK(v >= Rational(2) * (hi - lo));
    std::vector<Rational> rot(xs.begin() + 1, xs.end());
    rot.push_back(xs[0]);
    CHECK(cyclic_variation(rot) == v);
  }
}

TEST_CASE("powers stay under the tangent lines") {
  CHECK(kpow_check(2, 16, 5).pass);
  CHECK(kpow_check(3, 9, 4).pass);
  CHECK(kpow_check(4, 8, 3).pass);
  CHECK_THROWS_AS(kpow_check(5, 8, 3), std::invalid_argument);
}
