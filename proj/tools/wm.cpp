#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "wm/gt_patterns.hpp"
#include "wm/kostant.hpp"
#include "wm/kostant_arrangements.hpp"
#include "wm/mult_complex.hpp"
#include "wm/type_a.hpp"

using namespace wm;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "wm-cli/1";

enum Exit { kOk = 0, kFailed = 1, kBadInput = 2, kIncomplete = 3 };

struct RunConfig {
  std::string cache_dir;
  std::string format = "text";
  int workers = 1;
  int scale_cap = 0;  // 0: 2 C(k-1, 2) + 4
};

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Weight parse_weight(const std::string& text, int k, const char* name) {
  RatVec v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      Rat r(tok);
      r.canonicalize();
      v.push_back(r);
    } catch (const std::invalid_argument&) {
      throw BadInput(std::string(name) + ": cannot parse '" + tok + "'");
    }
  }
  if (v.size() < 2) throw BadInput(std::string(name) + ": need at least two coordinates");
  if (k > 0 && static_cast<int>(v.size()) != k)
    throw BadInput(std::string(name) + ": expected " + std::to_string(k) + " coordinates");
  return Weight::from_gl(v);
}

json weight_json(const Weight& w) {
  json j;
  j["sl"] = w.to_string();
  std::vector<std::string> l;
  for (const auto& x : w.fundamental()) l.push_back(x.get_str());
  j["fundamental"] = l;
  return j;
}

std::string int_str(const Int& x) { return x.get_str(); }

int emit(const RunConfig& cfg, json report, const std::string& text) {
  report["schema"] = kSchema;
  report["config"] = {{"cache_dir", cfg.cache_dir}, {"workers", cfg.workers}, {"scale_cap", cfg.scale_cap}};
  if (cfg.format == "json") std::cout << report.dump(2) << "\n";
  else std::cout << text;
  return kOk;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw BadInput("format '" + cfg.format + "' is not available for this command");
}

int binom2(int k) { return (k - 1) * (k - 2) / 2; }

Weight random_generic(std::mt19937& rng, int k) {
  std::uniform_int_distribution<long> d(1, 60);
  while (true) {
    RatVec l(k - 1);
    for (auto& x : l) x = d(rng);
    auto w = Weight::from_fundamental(l);
    if (avoids_small_relations(w)) return w;
  }
}

/// Random dominant gl weight with entries in [0, top] and a gl weight of the same sum.
std::pair<IntVec, IntVec> random_pair(std::mt19937& rng, int k, long top) {
  std::uniform_int_distribution<long> d(0, top);
  IntVec lambda(k), beta(k);
  for (auto& x : lambda) x = d(rng);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  Int rest = 0;
  for (const auto& x : lambda) rest += x;
  for (int i = 0; i + 1 < k; ++i) rest -= (beta[i] = d(rng));
  beta[k - 1] = rest;
  return {lambda, beta};
}

Weight gl_weight(const IntVec& v) { return Weight::from_gl(to_rat(v)); }

std::string join(const IntVec& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x.get_str();
  return s;
}

// ---------------------------------------------------------------------------

int cmd_mult(const RunConfig& cfg, int k, const std::string& ls, const std::string& bs, const std::string& method) {
  require_format(cfg, {"text", "json", "csv"});
  const Weight lam = parse_weight(ls, k, "--lambda");
  const Weight beta = parse_weight(bs, lam.k(), "--beta");
  if (!lam.is_dominant()) throw BadInput("--lambda must be dominant (weakly decreasing)");
  json r;
  r["command"] = "mult";
  r["lambda"] = weight_json(lam);
  r["beta"] = weight_json(beta);
  r["method"] = method;
  auto pair = to_gl_pair(lam, beta);
  if (!pair) {
    r["values"] = {{"all", "0"}};
    r["explanation"] = "lambda - beta is not in the root lattice, so beta is not a weight of V_lambda";
    std::string text = "0 (lambda - beta is not in the root lattice)\n";
    if (cfg.format == "csv") text = "method,value\nall,0\n";
    return emit(cfg, r, text);
  }
  r["gl_lambda"] = join(pair->lambda);
  r["gl_beta"] = join(pair->beta);
  std::map<std::string, Int> values;
  if (method == "gt" || method == "all") values["gt"] = count_gt(pair->lambda, pair->beta);
  if (method == "kmf" || method == "all") values["kmf"] = multiplicity_kmf(lam, beta);
  if (method == "spf" || method == "all") values["spf"] = multiplicity_spf(build_spf_system(lam.k()), pair->lambda, pair->beta);
  std::set<Int> distinct;
  json vj;
  std::string text, csv = "method,value\n";
  for (const auto& [m, v] : values) {
    distinct.insert(v);
    vj[m] = int_str(v);
    text += m + " = " + int_str(v) + "\n";
    csv += m + "," + int_str(v) + "\n";
  }
  r["values"] = vj;
  r["agree"] = distinct.size() == 1;
  text = "lambda = (" + join(pair->lambda) + "), beta = (" + join(pair->beta) + ") [gl, shifted to min 0]\n" + text;
  if (distinct.size() != 1) {
    text += "methods disagree\n";
    emit(cfg, r, cfg.format == "csv" ? csv : text);
    return kFailed;
  }
  if (values.size() > 1) text += "all methods agree\n";
  return emit(cfg, r, cfg.format == "csv" ? csv : text);
}

int cmd_complex(const RunConfig& cfg, int k, bool glue, bool with_lambda, bool walls, const std::string& output) {
  require_format(cfg, {"text", "json", "svg"});
  if (k != 3 && k != 4) throw BadInput("--k must be 3 or 4");
  if (cfg.format == "svg" && !(with_lambda && k == 4)) throw BadInput("svg output needs --lambda-complex with --k 4");
  const bool glued = glue || with_lambda || walls;
  const MultComplex raw = load_or_build(k, false);
  const MultComplex mc = glued ? load_or_build(k, true) : raw;
  json r;
  r["command"] = "complex";
  r["k"] = k;
  r["bases"] = mc.bases;
  r["restricted_cones"] = mc.restricted_cones;
  r["raw_cells"] = raw.cells.cells.size();
  r["glued"] = glued;
  r["cells"] = mc.cells.cells.size();
  r["adjacent_pairs"] = mc.cells.adjacency.size();
  r["orbits"] = mc.orbit_count;
  r["closed_under_beta_action"] = mc.symmetric;
  std::ostringstream text;
  text << "k = " << k << ": " << mc.bases << " bases, " << mc.restricted_cones << " restricted cones, "
       << raw.cells.cells.size() << " cells before gluing\n";
  if (glued) text << "glued: " << mc.cells.cells.size() << " cells in " << mc.orbit_count << " orbits\n";
  else text << mc.cells.cells.size() << " cells in " << mc.orbit_count << " orbits\n";
  std::string svg;
  if (with_lambda) {
    const LambdaComplex lc = lambda_complex(mc);
    r["lambda_complex"] = {{"cells", lc.cells.cells.size()},
                           {"symmetry_classes", lc.symmetry_classes},
                           {"distinct_projections", lc.distinct_projections},
                           {"distinct_generator_sets", lc.distinct_generator_sets}};
    text << "lambda complex: " << lc.cells.cells.size() << " cells (" << lc.symmetry_classes
         << " up to lambda -> -lambda^rev), " << lc.distinct_generator_sets << " projected generator sets\n";
    if (k == 4) svg = lambda_complex_svg(lc);
  }
  if (walls) {
    const WallDerivation wd = derive_walls(mc);
    int beta_walls = 0;
    for (const auto& w : wd.walls) beta_walls += w.involves_beta;
    r["walls"] = {{"normal_directions", wd.normal_directions}, {"walls", wd.walls.size()}, {"beta_walls", beta_walls}};
    text << "walls: " << wd.normal_directions << " normal directions, " << beta_walls << " walls involving beta\n";
  }
  if (!output.empty()) {
    json full = mc.to_json();
    full["schema"] = kSchema;
    std::ofstream(output) << full.dump() << "\n";
    r["output"] = output;
    text << "complex written to " << output << "\n";
  }
  if (cfg.format == "svg") {
    std::cout << svg;
    return kOk;
  }
  return emit(cfg, r, text.str());
}

int cmd_regions(const RunConfig& cfg, int k, const std::string& ls) {
  require_format(cfg, {"text", "json", "csv", "svg"});
  const Weight lam = parse_weight(ls, k, "--lambda");
  if (!lam.is_dominant()) throw BadInput("--lambda must be dominant (weakly decreasing)");
  if (cfg.format == "svg") {
    if (lam.k() != 3) throw BadInput("svg output is available for k = 3");
    std::cout << permutahedron_svg(lam);
    return kOk;
  }
  if (cfg.format == "csv") {
    std::cout << region_count_csv({lam});
    return kOk;
  }
  const auto part = partition_permutahedron(lam);
  json r;
  r["command"] = "regions";
  r["lambda"] = weight_json(lam);
  r["count"] = part.count;
  json regions = json::array();
  for (const auto& p : part.regions) {
    json verts = json::array();
    for (const auto& v : p.vertices()) {
      std::vector<std::string> c;
      for (const auto& x : v) c.push_back(x.get_str());
      verts.push_back(c);
    }
    regions.push_back(verts);
  }
  r["regions"] = regions;
  std::string text = std::to_string(part.count) + " regions\n";
  const bool generic = lam.k() == 4 && lam.is_regular() && avoids_small_relations(lam);
  if (generic) {
    static const std::set<int> allowed = {213, 229, 261, 277, 325, 337};
    const bool ok = allowed.count(part.count) == 1;
    r["generic"] = true;
    r["in_generic_set"] = ok;
    if (!ok) {
      emit(cfg, r, text + "count is not one of 213, 229, 261, 277, 325, 337\n");
      return kFailed;
    }
  }
  return emit(cfg, r, text);
}

// ---------------------------------------------------------------------------

struct Verifier {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double max_seconds = 0;
  int passed = 0, failed = 0;
  bool incomplete = false;
  json counterexamples = json::array();
  std::map<std::string, json> stats;

  bool out_of_time() {
    if (max_seconds <= 0) return false;
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (t > max_seconds) incomplete = true;
    return incomplete;
  }
  void record(bool ok, const json& payload) {
    if (ok) ++passed;
    else {
      ++failed;
      if (counterexamples.size() < 10) counterexamples.push_back(payload);
    }
  }
};

void verify_oracle(Verifier& v, int k, int budget, std::mt19937& rng) {
  const auto sys = build_spf_system(k);
  KostantCounter kpf(k - 1);
  for (int i = 0; i < budget && !v.out_of_time(); ++i) {
    auto [l, b] = random_pair(rng, k, 8);
    const Int gt = count_gt(l, b);
    const Int kmf = multiplicity_kmf(kpf, gl_weight(l), gl_weight(b));
    const Int spf = multiplicity_spf(sys, l, b);
    v.record(gt == kmf && kmf == spf, {{"lambda", join(l)}, {"beta", join(b)}, {"gt", int_str(gt)},
                                       {"kmf", int_str(kmf)}, {"spf", int_str(spf)}});
  }
}

void verify_factorization(Verifier& v, int k, int budget, std::mt19937& rng) {
  const MultComplex glued = load_or_build(k, true);
  std::map<int, std::set<int>> factor_counts;
  for (const auto& cj : check_complex_jumps(glued)) {
    if (v.out_of_time()) return;
    json payload = cj.report.to_json();
    payload["cells"] = {cj.a, cj.b};
    v.record(cj.report.ok(), payload);
  }
  for (int i = 0; i < budget && !v.out_of_time(); ++i) {
    const Weight lam = random_generic(rng, k);
    for (const auto& r : check_boundary_factors(glued, lam)) {
      factor_counts[r.facet.j()].insert(static_cast<int>(r.offsets.size()));
      json payload = r.to_json();
      payload["lambda"] = lam.to_string();
      v.record(r.ok(), payload);
    }
    for (const auto& rj : check_slice_jumps(glued, lam)) {
      json payload = rj.report.to_json();
      payload["lambda"] = lam.to_string();
      v.record(rj.report.ok(), payload);
    }
  }
  json fc;
  for (const auto& [j, counts] : factor_counts) fc[std::to_string(j)] = std::vector<int>(counts.begin(), counts.end());
  v.stats["boundary_factor_counts_by_j"] = fc;
}

void verify_scaling(Verifier& v, const RunConfig& cfg, int k, int budget, std::mt19937& rng) {
  const int K = binom2(k);
  const int t_max = cfg.scale_cap > 0 ? cfg.scale_cap : 2 * K + 4;
  if (t_max < 2 * K + 2) throw BadInput("--scale-cap must be at least " + std::to_string(2 * K + 2) + " for k = " + std::to_string(k));
  v.stats["t_max"] = t_max;
  for (int i = 0; i < budget && !v.out_of_time(); ++i) {
    auto [l, b] = random_pair(rng, k, 5);
    json payload = {{"lambda", join(l)}, {"beta", join(b)}};
    try {
      const MultiPoly p = scaling_polynomial(gl_weight(l), gl_weight(b), t_max);
      payload["polynomial"] = p.to_string();
      v.record(p.total_degree() <= 2 * K, payload);
    } catch (const std::runtime_error& e) {
      payload["error"] = e.what();
      v.record(false, payload);
    }
  }
}

void verify_gluing(Verifier& v, int k, int budget, std::mt19937& rng) {
  const MultComplex glued = load_or_build(k, true);
  v.record(glued.symmetric, {{"check", "glued complex closed under the beta action"}});
  std::uniform_int_distribution<long> dl(0, 6), db(-8, 8);
  int located = 0;
  for (long attempt = 0; located < budget && attempt < 50L * budget && !v.out_of_time(); ++attempt) {
    IntVec lb(2 * k - 2);
    for (int j = 0; j + 1 < k; ++j) {
      lb[j] = dl(rng);
      lb[k - 1 + j] = db(rng);
    }
    long congruence = 0;
    for (int j = 0; j + 1 < k; ++j) congruence += (j + 1) * (lb[j].get_si() - lb[k - 1 + j].get_si());
    const RatVec x = to_rat(lb);
    const auto cells = glued.locate(x);
    if (congruence % k != 0 || cells.empty()) continue;
    ++located;
    const Int m = multiplicity_lb(k, lb);
    for (int c : cells) {
      const Rat p = glued.polynomials[c].eval(x);
      v.record(p == Rat(m), {{"lb", join(lb)}, {"cell", c}, {"multiplicity", int_str(m)}, {"polynomial", p.get_str()}});
    }
  }
  v.stats["points"] = located;
}

void verify_walls(Verifier& v, int k, int budget, std::mt19937& rng) {
  const WallDerivation wd = derive_walls(load_or_build(k, true));
  v.stats["normal_directions"] = wd.normal_directions;
  for (int i = 0; i < budget && !v.out_of_time(); ++i) {
    const Weight lam = random_generic(rng, k);
    v.record(reproduces_dh_walls(wd, lam), {{"lambda", lam.to_string()}});
  }
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, int k, unsigned seed, int budget, double max_seconds) {
  require_format(cfg, {"text", "json"});
  if (k < 2 || k > 4 || (suite != "oracle" && k < 3)) throw BadInput("--k out of range for this suite");
  if (budget < 1) throw BadInput("--budget must be positive");
  std::mt19937 rng(seed);
  Verifier v;
  v.max_seconds = max_seconds;
  if (suite == "oracle") verify_oracle(v, k, budget, rng);
  else if (suite == "factorization") verify_factorization(v, k, budget, rng);
  else if (suite == "scaling") verify_scaling(v, cfg, k, budget, rng);
  else if (suite == "gluing") verify_gluing(v, k, budget, rng);
  else if (suite == "walls") verify_walls(v, k, budget, rng);
  const std::string status = v.failed ? "fail" : v.incomplete ? "incomplete" : "pass";
  json r = {{"command", "verify"}, {"suite", suite},        {"k", k},           {"seed", seed},
            {"budget", budget},    {"passed", v.passed},    {"failed", v.failed}, {"status", status},
            {"counterexamples", v.counterexamples}};
  for (const auto& [key, val] : v.stats) r[key] = val;
  std::ostringstream text;
  text << suite << " (k = " << k << "): " << v.passed << "/" << (v.passed + v.failed) << " checks pass";
  if (v.incomplete) text << ", stopped early (time budget)";
  text << "\n";
  for (const auto& [key, val] : v.stats) text << "  " << key << ": " << val.dump() << "\n";
  for (const auto& c : v.counterexamples) text << "  counterexample: " << c.dump() << "\n";
  emit(cfg, r, text.str());
  return v.failed ? kFailed : v.incomplete ? kIncomplete : kOk;
}

void prepare_cache(const RunConfig& cfg) {
  if (cfg.cache_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cfg.cache_dir, ec);
  const auto probe = std::filesystem::path(cfg.cache_dir) / ".probe";
  if (ec || !std::ofstream(probe)) throw BadInput("cache directory '" + cfg.cache_dir + "' is not writable");
  std::filesystem::remove(probe, ec);
  setenv("WM_CACHE_DIR", cfg.cache_dir.c_str(), 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight multiplicities of sl_k: exact counts, multiplicity complexes and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  if (const char* env = std::getenv("WM_CACHE_DIR")) cfg.cache_dir = env;
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (also WM_CACHE_DIR)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv", "svg"}));
  app.add_option("--workers", cfg.workers, "Worker count")->check(CLI::PositiveNumber);
  app.add_option("--scale-cap", cfg.scale_cap, "Largest dilation factor for scaling fits")->check(CLI::PositiveNumber);

  int k = 0;
  std::string lambda, beta, method = "all";
  auto* mult = app.add_subcommand("mult", "Multiplicity of beta in V_lambda");
  mult->add_option("--k", k, "Rank + 1 (checked against the coordinates)");
  mult->add_option("--lambda", lambda, "Highest weight, gl or sl coordinates")->required();
  mult->add_option("--beta", beta, "Weight")->required();
  mult->add_option("--method", method, "Counting method")->check(CLI::IsMember({"gt", "kmf", "spf", "all"}));

  bool glue = false, with_lambda = false, walls = false;
  std::string output;
  auto* cx = app.add_subcommand("complex", "Build or load the multiplicity complex");
  cx->add_option("--k", k, "3 or 4")->required();
  cx->add_flag("--glue", glue, "Glue cells with equal polynomials");
  cx->add_flag("--lambda-complex", with_lambda, "Refine the projections to lambda space");
  cx->add_flag("--walls", walls, "Derive the walls of the partitioned permutahedron");
  cx->add_option("--output", output, "Write the complex as JSON");

  auto* rg = app.add_subcommand("regions", "Regions of the partitioned permutahedron");
  rg->add_option("--k", k, "Rank + 1 (checked against the coordinates)");
  rg->add_option("--lambda", lambda, "Dominant weight")->required();

  std::string suite;
  unsigned seed = 1;
  int budget = 0;
  double max_seconds = 0;
  auto* vf = app.add_subcommand("verify", "Randomized checks of the main statements");
  vf->add_option("suite", suite, "Suite")->required()->check(CLI::IsMember({"factorization", "scaling", "oracle", "gluing", "walls"}));
  vf->add_option("--k", k, "Rank + 1");
  vf->add_option("--seed", seed, "Random seed");
  vf->add_option("--budget", budget, "Number of random samples");
  vf->add_option("--max-seconds", max_seconds, "Stop and report incomplete after this many seconds");

  CLI11_PARSE(app, argc, argv);
  try {
    prepare_cache(cfg);
    if (*mult) return cmd_mult(cfg, k, lambda, beta, method);
    if (*cx) return cmd_complex(cfg, k, glue, with_lambda, walls, output);
    if (*rg) return cmd_regions(cfg, k, lambda);
    if (*vf) {
      if (k == 0) k = suite == "factorization" || suite == "walls" ? 4 : 3;
      if (budget == 0) budget = suite == "oracle" ? 200 : suite == "factorization" ? 2 : 20;
      return cmd_verify(cfg, suite, k, seed, budget, max_seconds);
    }
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}
