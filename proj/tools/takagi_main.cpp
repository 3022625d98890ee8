#include <CLI11.hpp>
#include <json.hpp>

#include "takagi/boundary.hpp"
#include "takagi/combinations.hpp"
#include "takagi/fclass.hpp"
#include "takagi/group.hpp"
#include "takagi/omega.hpp"
#include "takagi/rational.hpp"
#include "takagi/search.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace takagi;

namespace {

std::string fstr(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json rats(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const Rational& x : xs) a.push_back(x.str());
  return a;
}

std::vector<Rational> parse_tuple(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(Rational::parse(tok));
  return out;
}

std::vector<unsigned long long> parse_n_list(const std::string& s) {
  std::vector<unsigned long long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

unsigned long long env_budget(unsigned long long fallback) {
  const char* v = std::getenv("TAKAGI_BUDGET");
  if (!v || !*v) return fallback;
  return std::stoull(v);
}

class Timer {
 public:
  long long ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json moduli_json(const std::vector<long>& moduli) {
  json j = json::array();
  for (long m : moduli) j.push_back(m);
  return j;
}

json result_json(const SearchResult& r) {
  json j;
  j["moduli"] = moduli_json(r.group);
  j["n"] = r.n;
  j["min_boundary"] = r.min_boundary;
  j["witness_hex"] = r.witness.to_hex();
  j["lex_boundary"] = r.lex_boundary;
  j["exhaustive"] = r.exhaustive;
  j["bound_e_m"] = fstr(r.bound_e_m);
  return j;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::vector<SearchResult> run_searches(const std::string& moduli, const std::string& gens,
                                       const std::vector<unsigned long long>& ns,
                                       unsigned long long budget, int threads) {
  GroupSpec g = make_group(parse_moduli(moduli));
  GenSet s = parse_gens(g, gens);
  std::vector<SearchResult> out;
  out.reserve(ns.size());
  for (unsigned long long n : ns)
    out.push_back(min_boundary_exhaustive(g, s, n, budget, threads));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"directed boundary minimization and mean-inequality toolkit"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  // ---- omega ----
  auto* omega_cmd = app.add_subcommand("omega", "self-affine sum evaluation and bounds");
  omega_cmd->require_subcommand(1);

  long om = 2;
  std::string ox = "0";
  int oterms = 64;
  bool ofloat = false;
  auto* oeval = omega_cmd->add_subcommand("eval", "evaluate at a rational point");
  oeval->add_option("-m,--base", om, "base, >= 2")->required();
  oeval->add_option("-x,--point", ox, "rational point, e.g. 1/3; reduced mod 1")->required();
  oeval->add_option("--terms", oterms, "series terms for the float value");
  oeval->add_flag("--float-only", ofloat, "skip the exact value");
  oeval->callback([&] {
    Rational x = Rational::parse(ox);
    json j;
    j["m"] = om;
    j["x"] = x.str();
    if (!ofloat) {
      Rational v = omega_exact_rational(om, x);
      j["exact"] = v.str();
      j["float"] = fstr(v.to_double());
    } else {
      BoundedValue v = omega_float(om, x.to_double(), oterms);
      j["float"] = fstr(v.value);
      j["error_bound"] = fstr(v.error_bound);
    }
    emit(j);
  });

  int otr = 4;
  long otlimit = -1;
  auto* otable = omega_cmd->add_subcommand("table", "scaled values on the base-m grid");
  otable->add_option("-m,--base", om, "base, >= 2")->required();
  otable->add_option("-r,--depth", otr, "refinement depth")->required();
  otable->add_option("--limit", otlimit, "print only the first entries");
  otable->callback([&] {
    OmegaTable t = omega_table(om, otr);
    json j;
    j["m"] = t.m;
    j["r"] = t.r;
    j["denominator"] = pow_int(om, static_cast<unsigned long>(otr)).str();
    json vals = json::array();
    long limit = otlimit < 0 ? static_cast<long>(t.scaled.size()) : otlimit;
    for (long i = 0; i < limit && i < static_cast<long>(t.scaled.size()); ++i)
      vals.push_back(t.scaled[i].str());
    j["scaled"] = vals;
    emit(j);
  });

  long ores = 256;
  auto* oplot = omega_cmd->add_subcommand("plot-data", "CSV of value and bounds on a grid");
  oplot->add_option("-m,--base", om, "base, >= 2")->required();
  oplot->add_option("--resolution", ores, "number of grid intervals");
  oplot->callback([&] {
    std::cout << "x,omega,lower,upper\n";
    for (const PlotRow& row : plot_data(om, ores))
      std::cout << row.x.str() << "," << fstr(row.omega) << "," << fstr(row.lower) << ","
                << fstr(row.upper) << "\n";
  });

  long ogrid = 1024;
  auto* obounds = omega_cmd->add_subcommand("bounds-check", "verify the two-sided bounds");
  obounds->add_option("-m,--base", om, "base, >= 2")->required();
  obounds->add_option("--grid", ogrid, "grid intervals");
  obounds->callback([&] {
    BoundsReport rep = bounds_check(om, ogrid);
    json j;
    j["m"] = rep.m;
    j["grid"] = rep.grid;
    j["pass"] = rep.pass;
    j["worst_lower_margin"] = rep.worst_lower_margin.str();
    j["worst_upper_margin"] = rep.worst_upper_margin.str();
    json hits = json::array();
    for (const SharpnessHit& h : rep.sharpness_hits) {
      json hj;
      hj["x"] = h.x.str();
      hj["side"] = std::string(1, h.side);
      hits.push_back(hj);
    }
    j["sharpness_hits"] = hits;
    emit(j);
    if (!rep.pass) std::exit(1);
  });

  // ---- boundary ----
  auto* bnd_cmd = app.add_subcommand("boundary", "directed boundary counting on finite groups");
  bnd_cmd->require_subcommand(1);

  std::string bmoduli = "2", bgens, bset, blexn;
  auto* bcount = bnd_cmd->add_subcommand("count", "boundary of one vertex set");
  bcount->add_option("--moduli", bmoduli, "cyclic factors, e.g. 3,3")->required();
  bcount->add_option("--gens", bgens, "generators, e.g. 1,0;0,1")->required();
  bcount->add_option("--set", bset, "subset as hex mask");
  bcount->add_option("--lex-n", blexn, "use the first n elements instead");
  bcount->callback([&] {
    GroupSpec g = make_group(parse_moduli(bmoduli));
    GenSet s = parse_gens(g, bgens);
    SubsetMask a = !blexn.empty() ? lex_segment(g, std::stoull(blexn))
                                  : SubsetMask::from_hex(bset, g.order);
    GeneratorTables t = make_tables(g, s);
    json j;
    j["moduli"] = moduli_json(g.moduli);
    j["size"] = a.count();
    j["boundary"] = boundary_count(t, a);
    j["set_hex"] = a.to_hex();
    emit(j);
  });

  int blr = 4;
  auto* blex = bnd_cmd->add_subcommand("lex-check", "initial segments vs the scaled sum");
  blex->add_option("-m,--base", om, "base, >= 2")->required();
  blex->add_option("-r,--depth", blr, "power of the cyclic group")->required();
  blex->callback([&] {
    LexTheoremReport rep = lex_theorem_check(om, blr);
    json j;
    j["m"] = rep.m;
    j["r"] = rep.r;
    j["checked"] = rep.checked;
    j["mismatches"] = rep.mismatches;
    j["pass"] = rep.pass;
    emit(j);
    if (!rep.pass) std::exit(1);
  });

  // ---- search ----
  auto* search_cmd = app.add_subcommand("search", "minimum directed boundary over n-sets");
  search_cmd->require_subcommand(1);

  std::string smoduli, sgens, snlist;
  unsigned long long sn = 0, sbudget = kDefaultEnumBudget, sseed = 1;
  int sthreads = 0;
  bool sheuristic = false, sreference = false;
  auto* smin = search_cmd->add_subcommand("min", "minimize over sets of one size");
  smin->add_option("--moduli", smoduli, "cyclic factors")->required();
  smin->add_option("--gens", sgens, "generators")->required();
  smin->add_option("-n,--size", sn, "set size")->required();
  smin->add_option("--budget", sbudget, "enumeration budget");
  smin->add_option("--seed", sseed, "heuristic seed");
  smin->add_option("--threads", sthreads, "worker threads (0 = all)");
  smin->add_flag("--heuristic", sheuristic, "one-swap descent instead of enumeration");
  smin->add_flag("--reference", sreference, "serial recount enumeration");
  smin->callback([&] {
    Timer timer;
    GroupSpec g = make_group(parse_moduli(smoduli));
    GenSet s = parse_gens(g, sgens);
    unsigned long long budget = env_budget(sbudget);
    SearchResult r = sheuristic   ? min_boundary_heuristic(g, s, sn, budget, sseed)
                     : sreference ? min_boundary_exhaustive_reference(g, s, sn, budget)
                                  : min_boundary_exhaustive(g, s, sn, budget, sthreads);
    json j = result_json(r);
    j["elapsed_ms"] = timer.ms();
    emit(j);
  });

  long vm = 0;
  auto* sm1 = search_cmd->add_subcommand("verify-main1", "lower bound e/m n log(|G|/n)");
  sm1->add_option("--moduli", smoduli, "cyclic factors")->required();
  sm1->add_option("--gens", sgens, "generators")->required();
  sm1->add_option("--n-list", snlist, "set sizes, comma separated")->required();
  sm1->add_option("--budget", sbudget, "enumeration budget");
  sm1->add_option("--threads", sthreads, "worker threads");
  sm1->add_option("--m-override", vm, "degree parameter (default: group exponent)");
  sm1->callback([&] {
    auto results =
        run_searches(smoduli, sgens, parse_n_list(snlist), env_budget(sbudget), sthreads);
    Main1Report rep = verify_main1(results, vm);
    json j;
    j["pass"] = rep.pass;
    j["checked"] = rep.checked;
    j["min_ratio"] = fstr(rep.min_ratio);
    j["worst_index"] = rep.worst_index;
    emit(j);
    if (!rep.pass) std::exit(1);
  });

  std::string sfunc;
  auto* siso = search_cmd->add_subcommand("verify-isoper", "lower bound |G|/m f(n/|G|)");
  siso->add_option("--moduli", smoduli, "cyclic factors")->required();
  siso->add_option("--gens", sgens, "generators")->required();
  siso->add_option("--n-list", snlist, "set sizes, comma separated")->required();
  siso->add_option("-f,--function", sfunc, "function literal")->required();
  siso->add_option("-m,--degree", vm, "inequality degree")->required();
  siso->add_option("--budget", sbudget, "enumeration budget");
  siso->add_option("--threads", sthreads, "worker threads");
  siso->callback([&] {
    FunctionSpec f = FunctionSpec::parse(sfunc);
    auto results =
        run_searches(smoduli, sgens, parse_n_list(snlist), env_budget(sbudget), sthreads);
    IsoperReport rep = verify_isoper(results, f, vm);
    json j;
    j["pass"] = rep.pass;
    j["checked"] = rep.checked;
    j["equalities"] = rep.equalities;
    j["min_margin"] = fstr(rep.min_margin);
    j["exact_path"] = rep.exact_path;
    j["note"] = rep.membership_note;
    emit(j);
    if (!rep.pass) std::exit(1);
  });

  int fvr = 2;
  auto* sviol = search_cmd->add_subcommand("find-violation",
                                           "set beating the initial segment on C_m^r");
  sviol->add_option("-m,--base", om, "base, >= 5")->required();
  sviol->add_option("-r,--power", fvr, "number of factors")->required();
  sviol->add_option("--n-list", snlist, "candidate sizes (default: all)");
  sviol->add_option("--budget", sbudget, "enumeration budget");
  sviol->add_option("--threads", sthreads, "worker threads");
  sviol->callback([&] {
    Timer timer;
    std::vector<unsigned long long> ns;
    if (!snlist.empty()) {
      ns = parse_n_list(snlist);
    } else {
      GroupSpec g = homocyclic(om, fvr);
      for (unsigned long long n = 1; n < g.order; ++n) ns.push_back(n);
    }
    ViolationResult v = find_lex_violation(om, fvr, ns, env_budget(sbudget), sthreads);
    json j;
    j["found"] = v.found;
    if (v.found) {
      j["n"] = v.n;
      j["result"] = result_json(v.result);
    }
    j["elapsed_ms"] = timer.ms();
    emit(j);
    if (!v.found) std::exit(1);
  });

  // ---- fclass ----
  auto* fc_cmd = app.add_subcommand("fclass", "mean-inequality function classes");
  fc_cmd->require_subcommand(1);

  std::string ffunc, ftuple;
  int fm = 2;
  auto* fdef = fc_cmd->add_subcommand("defect", "inequality defect of one tuple");
  fdef->add_option("-f,--function", ffunc, "function literal")->required();
  fdef->add_option("-m,--degree", fm, "inequality degree")->required();
  fdef->add_option("--tuple", ftuple, "comma-separated rationals")->required();
  fdef->callback([&] {
    FunctionSpec f = FunctionSpec::parse(ffunc);
    DefectResult d = defect(f, fm, parse_tuple(ftuple));
    json j;
    j["function"] = f.label();
    j["m"] = fm;
    j["exact"] = d.exact;
    if (d.exact) {
      j["defect"] = d.value.str();
      j["defect_float"] = fstr(d.value.to_double());
    } else {
      j["defect_float"] = fstr(d.approx.value);
      j["error_bound"] = fstr(d.approx.error_bound);
    }
    emit(j);
  });

  RefuteConfig rcfg;
  auto* fref = fc_cmd->add_subcommand("refute", "search for a positive-defect witness");
  fref->add_option("-f,--function", ffunc, "function literal")->required();
  fref->add_option("-m,--degree", fm, "inequality degree")->required();
  fref->add_option("--grid", rcfg.grid, "stage-one grid intervals");
  fref->add_option("--restarts", rcfg.restarts, "perturbation rounds");
  fref->add_option("--budget", rcfg.budget, "perturbation evaluations");
  fref->add_option("--seed", rcfg.seed, "perturbation seed");
  fref->add_option("--threads", rcfg.threads, "worker threads");
  fref->callback([&] {
    Timer timer;
    FunctionSpec f = FunctionSpec::parse(ffunc);
    RefuteReport rep = refute_membership(f, fm, rcfg);
    json j;
    j["function"] = f.label();
    j["m"] = fm;
    j["found"] = rep.found;
    if (rep.found) {
      j["witness"] = rats(rep.witness.tuple);
      j["defect"] = rep.witness.defect.str();
      j["certified"] = rep.witness.certified;
    }
    j["best_defect_float"] = fstr(rep.best_defect_float);
    j["best_tuple"] = rats(rep.best_tuple);
    j["evaluations"] = rep.evaluations;
    j["grid"] = rep.grid;
    j["restarts"] = rep.restarts;
    j["elapsed_ms"] = timer.ms();
    emit(j);
  });

  long fgrid = 128;
  double ftol = 1e-9;
  unsigned long long fbudget = 20000000000ull;
  int fthreads = 0;
  auto* fscan = fc_cmd->add_subcommand("scan", "exhaustive tuple sweep at one resolution");
  fscan->add_option("-f,--function", ffunc, "function literal")->required();
  fscan->add_option("-m,--degree", fm, "inequality degree")->required();
  fscan->add_option("--grid", fgrid, "grid intervals")->required();
  fscan->add_option("--tol", ftol, "float-path tolerance");
  fscan->add_option("--threads", fthreads, "worker threads");
  fscan->add_option("--budget", fbudget, "tuple budget");
  fscan->callback([&] {
    Timer timer;
    FunctionSpec f = FunctionSpec::parse(ffunc);
    ScanReport rep = grid_membership_scan(f, fm, fgrid, ftol, fthreads, env_budget(fbudget));
    json j;
    j["function"] = f.label();
    j["m"] = rep.m;
    j["grid"] = rep.grid;
    j["exact_path"] = rep.exact_path;
    j["violation"] = rep.violation;
    j["checked"] = rep.checked;
    j["worst_tuple"] = rats(rep.worst_tuple);
    if (rep.exact_path) j["worst_defect"] = rep.worst_defect.str();
    j["worst_defect_float"] = fstr(rep.worst_defect_float);
    j["elapsed_ms"] = timer.ms();
    emit(j);
  });

  std::string ex = "1/2";
  auto* fenv = fc_cmd->add_subcommand("envelope", "pointwise extremal value or bracket");
  fenv->add_option("-m,--degree", om, "degree, >= 2")->required();
  fenv->add_option("-x,--point", ex, "rational in [0,1]")->required();
  fenv->callback([&] {
    Rational x = Rational::parse(ex);
    EnvelopeBracket b = envelope(om, x);
    json j;
    j["m"] = om;
    j["x"] = x.str();
    j["exact"] = b.exact;
    if (b.exact) j["value"] = b.value.str();
    j["lower"] = fstr(b.lower);
    j["upper"] = fstr(b.upper);
    emit(j);
  });

  int pr = 4;
  long plimit = -1;
  auto* fprop = fc_cmd->add_subcommand("propagate", "upper-bound table by level recursion");
  fprop->add_option("-m,--degree", om, "degree, >= 2")->required();
  fprop->add_option("-r,--depth", pr, "refinement depth")->required();
  fprop->add_option("--limit", plimit, "print only the first entries");
  fprop->callback([&] {
    OmegaTable t = envelope_grid_propagate(om, pr);
    json j;
    j["m"] = t.m;
    j["r"] = t.r;
    j["denominator"] = pow_int(om, static_cast<unsigned long>(pr)).str();
    json vals = json::array();
    long limit = plimit < 0 ? static_cast<long>(t.scaled.size()) : plimit;
    for (long i = 0; i < limit && i < static_cast<long>(t.scaled.size()); ++i)
      vals.push_back(t.scaled[i].str());
    j["scaled"] = vals;
    emit(j);
  });

  auto* ffun = fc_cmd->add_subcommand("funny", "interpolation inequality sweep");
  ffun->add_option("-f,--function", ffunc, "function literal")->required();
  ffun->add_option("-m,--degree", om, "degree in {2,3,4}")->required();
  ffun->add_option("--grid", fgrid, "grid intervals")->required();
  ffun->callback([&] {
    FunctionSpec f = FunctionSpec::parse(ffunc);
    FunnyReport rep = funny_check(f, om, fgrid);
    json j;
    j["function"] = f.label();
    j["m"] = rep.m;
    j["grid"] = rep.grid;
    j["exact_path"] = rep.exact_path;
    j["pass"] = rep.pass;
    j["checked"] = rep.checked;
    if (rep.exact_path) j["worst_slack"] = rep.worst_slack.str();
    j["worst_slack_float"] = fstr(rep.worst_slack_float);
    j["worst_point"] = rats(rep.worst_point);
    emit(j);
    if (!rep.pass) std::exit(1);
  });

  int bpr = 8;
  auto* fbp = fc_cmd->add_subcommand("bp", "dyadic midpoint inequality, integer form");
  fbp->add_option("-r,--depth", bpr, "refinement depth")->required();
  fbp->callback([&] {
    BpReport rep = bp_dyadic_check(bpr);
    json j;
    j["r"] = rep.r;
    j["pass"] = rep.pass;
    j["checked"] = rep.checked;
    j["worst_margin"] = rep.worst_margin;
    emit(j);
    if (!rep.pass) std::exit(1);
  });

  int b3r = 4;
  long long b3range = 81;
  auto* fbp3 = fc_cmd->add_subcommand("bp3", "triadic three-point inequality, integer form");
  fbp3->add_option("--r-max", b3r, "maximum depth")->required();
  fbp3->add_option("--range", b3range, "argument range");
  fbp3->callback([&] {
    Bp3Report rep = bp3_integer_check(b3r, b3range);
    json j;
    j["r_max"] = rep.r_max;
    j["range"] = rep.range;
    j["pass"] = rep.pass;
    j["checked"] = rep.checked;
    j["worst_margin"] = rep.worst_margin;
    emit(j);
    if (!rep.pass) std::exit(1);
  });

  int kmax = 8;
  auto* fkp = fc_cmd->add_subcommand("kpow", "power-point inequality sweep");
  fkp->add_option("-m,--degree", om, "degree in {2,3,4}")->required();
  fkp->add_option("--grid", fgrid, "grid intervals")->required();
  fkp->add_option("--k-max", kmax, "maximum exponent");
  fkp->callback([&] {
    KpowReport rep = kpow_check(om, fgrid, kmax);
    json j;
    j["m"] = rep.m;
    j["grid"] = rep.grid;
    j["k_max"] = rep.k_max;
    j["pass"] = rep.pass;
    j["worst_margin"] = fstr(rep.worst_margin);
    emit(j);
    if (!rep.pass) std::exit(1);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
