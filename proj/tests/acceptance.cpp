#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "wm/gt_patterns.hpp"
#include "wm/kostant.hpp"
#include "wm/kostant_arrangements.hpp"
#include "wm/linalg.hpp"
#include "wm/mult_complex.hpp"
#include "wm/type_a.hpp"

using namespace wm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Targets in seconds; reported next to the measured time.
constexpr double kTarget[10] = {0, 300, 10, 60, 7200, 600, 1800, 600, 300, 60};

constexpr int kOracleTop = 8;
constexpr int kMinTriples = 500;
constexpr int kWallSamples = 20;
constexpr int kRegionSamples = 50;
constexpr int kScalingSamples = 30;
constexpr int kCentralSamples = 30;
const std::set<int> kGenericRegionCounts = {213, 229, 261, 277, 325, 337};

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

Weight gl(const RatVec& v) { return Weight::from_gl(v); }

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

std::vector<MultiPoly> coordinate_forms(int k, bool beta) {
  const auto vars = lb_vars(k);
  const auto rs = root_system(k);
  std::vector<MultiPoly> out;
  for (int i = 0; i < k; ++i) {
    RatVec c(2 * k - 2, Rat(0));
    for (int j = 0; j + 1 < k; ++j) c[(beta ? k - 1 : 0) + j] = rs.fundamental_weights[j][i];
    out.push_back(MultiPoly::linear(vars, c, 0));
  }
  return out;
}

std::vector<int> range(int from, int to) {
  std::vector<int> v;
  for (int i = from; i < to; ++i) v.push_back(i);
  return v;
}

const MultComplex& complex_of(int k, bool glued) {
  static std::map<std::pair<int, bool>, MultComplex> memo;
  auto key = std::make_pair(k, glued);
  auto it = memo.find(key);
  if (it == memo.end()) it = memo.emplace(key, load_or_build(k, glued)).first;
  return it->second;
}

void expect(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + std::string("failed: ") + what;
  }
}

// ---------------------------------------------------------------------------

Outcome oracle_equality() {
  Outcome o;
  long triples = 0, zero = 0;
  for (int k = 2; k <= 4; ++k) {
    KostantCounter kpf(k - 1);
    const auto sys = build_spf_system(k);
    IntVec l(k);
    std::function<void(int, long)> rec = [&](int i, long cap) {
      if (i == k) {
        std::map<IntVec, long> hist;
        for (const auto& p : enumerate_gt_patterns(l)) ++hist[pattern_weight(p)];
        Int total = 0;
        const Weight lw = Weight::from_gl(to_rat(l));
        for (const auto& [beta, m] : hist) {
          total += m;
          const Int kmf = multiplicity_kmf(kpf, lw, Weight::from_gl(to_rat(beta)));
          const Int spf = multiplicity_spf(sys, l, beta);
          const Int gt = count_gt(l, beta);
          ++triples;
          expect(o, gt == m && kmf == m && spf == m, "three methods at lambda " + Weight::from_gl(to_rat(l)).to_string());
        }
        expect(o, total == weyl_dimension(l), "Weyl dimension");
        // just above the highest weight
        IntVec above = l;
        above[0] += 1;
        above[k - 1] -= 1;
        const Weight aw = Weight::from_gl(to_rat(above));
        expect(o, count_gt(l, above) == 0 && multiplicity_kmf(kpf, lw, aw) == 0 && multiplicity_spf(sys, l, above) == 0,
               "zero outside the weights");
        ++triples;
        ++zero;
        return;
      }
      for (long x = 0; x <= cap; ++x) {
        l[i] = x;
        rec(i + 1, x);
      }
    };
    rec(0, kOracleTop);
  }
  expect(o, triples >= kMinTriples, "at least 500 triples");
  o.detail = std::to_string(triples) + " triples (" + std::to_string(zero) + " non-weights), k = 2..4, gl entries in [0, 8]" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome a2_complex() {
  Outcome o;
  auto raw = restricted_chamber_complex(3);
  expect(o, raw.cells.cells.size() == 8, "8 cones");
  const IntVec a1 = iv({2, -1, -1, 2, -1, -1}), a2 = iv({2, -1, -1, -1, 2, -1}), a3 = iv({2, -1, -1, -1, -1, 2});
  const IntVec b = iv({1, 0, -1, 0, 0, 0});
  const IntVec c1 = iv({1, 1, -2, -2, 1, 1}), c2 = iv({1, 1, -2, 1, -2, 1}), c3 = iv({1, 1, -2, 1, 1, -2});
  const auto vars = lb_vars(3);
  auto poly = [&](long l1, long l2, long b1, long b2, long den) {
    return MultiPoly::linear(vars, {make_rat(l1, den), make_rat(l2, den), make_rat(b1, den), make_rat(b2, den)}, 1);
  };
  const std::map<std::set<IntVec>, MultiPoly> table = {
      {{b, a1, a2, a3}, poly(0, 1, 0, 0, 1)},   {{b, c1, c2, c3}, poly(1, 0, 0, 0, 1)},
      {{b, a1, c2, c3}, poly(2, 1, -2, -1, 3)}, {{b, a2, c1, c3}, poly(2, 1, 1, -1, 3)},
      {{b, a3, c1, c2}, poly(2, 1, 1, 2, 3)},   {{b, a1, a2, c3}, poly(1, 2, -1, -2, 3)},
      {{b, a1, a3, c2}, poly(1, 2, -1, 1, 3)},  {{b, a2, a3, c1}, poly(1, 2, 2, 1, 3)}};
  assign_polynomials(raw);
  std::set<std::set<IntVec>> seen;
  for (std::size_t i = 0; i < raw.cells.cells.size(); ++i) {
    std::set<IntVec> rays;
    for (const auto& r : raw.cells.cells[i].rays()) rays.insert(ray_lambda_beta(3, r));
    seen.insert(rays);
    auto it = table.find(rays);
    expect(o, it != table.end(), "rays of cell " + std::to_string(i));
    if (it != table.end()) expect(o, raw.polynomials[i] == it->second, "polynomial of cell " + std::to_string(i));
  }
  expect(o, seen.size() == 8, "8 distinct ray sets");
  if (o.pass) o.detail = "8 cones with the tabulated rays, p1 .. p8 equal";
  return o;
}

Outcome kpf_structure() {
  Outcome o;
  std::vector<std::string> names;
  for (const auto& b : enumerate_bases(kostant_matrix(3))) {
    std::string s;
    for (int c : b) s += std::to_string(c + 1);
    names.push_back(s);
  }
  expect(o, names == std::vector<std::string>{"123", "125", "126", "134", "135", "136", "145", "146", "234", "236", "245",
                                              "246", "256", "345", "356", "456"},
         "16 bases of M_A3");
  expect(o, kpf_chamber_complex(3).complex.cells.size() == 7, "7 chambers");
  for (int n = 1; n <= 4; ++n) expect(o, is_unimodular(kostant_matrix(n)), "unimodular n = " + std::to_string(n));
  for (int n = 1; n <= 3; ++n)
    expect(o, kpf_wall_normals(kpf_chamber_complex(n)) == kostant_arrangement_normals(n + 1),
           "facet normals n = " + std::to_string(n));
  if (o.pass) o.detail = "16 bases, 7 chambers, unimodular for n <= 4, facet normals = conjugates of omega~_j";
  return o;
}

Outcome a3_complex() {
  Outcome o;
  const auto& raw = complex_of(4, false);
  const auto& glued = complex_of(4, true);
  expect(o, raw.bases == 146, "146 bases");
  expect(o, raw.restricted_cones == 132, "132 restricted cones");
  expect(o, raw.cells.cells.size() == 1202, "1202 cells");
  expect(o, glued.cells.cells.size() == 612, "612 glued cells");
  expect(o, glued.orbit_count == 64, "64 orbits");
  const auto lc = lambda_complex(glued);
  expect(o, lc.cells.cells.size() == 50, "50 lambda regions");
  expect(o, lc.symmetry_classes == 25, "25 classes");
  const auto wd = derive_walls(glued);
  expect(o, wd.normal_directions == 37, "37 normal directions");
  std::mt19937 rng(101);
  int matched = 0;
  for (int i = 0; i < kWallSamples; ++i) matched += reproduces_dh_walls(wd, random_generic(rng, 4));
  expect(o, matched == kWallSamples, "walls on random generic lambda");
  std::ostringstream s;
  s << raw.bases << " bases, " << raw.restricted_cones << " cones, " << raw.cells.cells.size() << " cells, "
    << glued.cells.cells.size() << " glued in " << glued.orbit_count << " orbits, " << lc.cells.cells.size()
    << " lambda regions (" << lc.symmetry_classes << "), " << wd.normal_directions << " normals, walls match on "
    << matched << "/" << kWallSamples;
  o.detail = s.str() + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome region_counts() {
  Outcome o;
  std::mt19937 rng(202);
  std::map<int, int> hist;
  for (int i = 0; i < kRegionSamples; ++i) {
    const int c = partition_permutahedron(random_generic(rng, 4)).count;
    ++hist[c];
    expect(o, kGenericRegionCounts.count(c) == 1, "count " + std::to_string(c));
  }
  expect(o, partition_permutahedron(Weight::from_fundamental(rv({1, 0}))).count == 1, "omega_1 gives 1 region");
  std::string h;
  for (const auto& [c, n] : hist) h += (h.empty() ? "" : ", ") + std::to_string(c) + " x" + std::to_string(n);
  o.detail = std::to_string(kRegionSamples) + " generic lambda: " + h + "; omega_1: 1" + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome factorization() {
  Outcome o;
  std::mt19937 rng(303);
  std::map<int, std::set<std::size_t>> counts[5];
  long boundary = 0, jumps = 0;
  for (int k = 3; k <= 4; ++k) {
    const auto& mc = complex_of(k, true);
    for (int i = 0; i < 3; ++i) {
      const Weight lam = random_generic(rng, k);
      for (const auto& r : check_boundary_factors(mc, lam)) {
        counts[k][r.facet.j()].insert(r.offsets.size());
        expect(o, r.ok(), "boundary factors " + r.to_json().dump());
        ++boundary;
      }
    }
  }
  expect(o, counts[3] == std::map<int, std::set<std::size_t>>{{1, {1}}}, "k = 3 factor count 1");
  expect(o, counts[4] == std::map<int, std::set<std::size_t>>{{1, {2}}, {2, {3}}}, "k = 4 factor counts 2 and 3");
  for (const auto& cj : check_complex_jumps(complex_of(4, true))) {
    ++jumps;
    bool valid = false;
    for (const auto& [sm, sp] : cj.report.windows) valid = valid || sm + sp == cj.report.j * (4 - cj.report.j);
    expect(o, valid, "jump window between cells " + std::to_string(cj.a) + " and " + std::to_string(cj.b));
  }
  // lambda_2 = lambda_3: each jump is the wall times one further linear factor, not parallel to it
  long degenerate = 0;
  const Weight mid = gl(rv({30, 11, 11, 0}));
  for (const auto& rj : check_slice_jumps(complex_of(4, true), mid)) {
    ++degenerate;
    expect(o, !rj.report.zero && rj.report.longest_run == 1, "no parallel factors for lambda_2 = lambda_3");
    bool two_factors = false;
    for (const auto& U : {std::vector<int>{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}}) {
      for (const auto& V : U.size() == 1 ? std::vector<std::vector<int>>{{0}, {1}, {2}, {3}}
                                         : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) {
        auto h = make_hyperplane(4, U, V, V);
        if (h.to_string() != rj.report.wall) continue;
        auto q = rj.report.jump.divide_linear(h.gamma_at(mid));
        two_factors = q && q->total_degree() == 1;
      }
    }
    expect(o, two_factors, "jump = wall x linear for lambda_2 = lambda_3");
  }
  std::ostringstream s;
  s << boundary << " boundary facets (k = 3: 1 factor; k = 4: 2 for j = 1, 3 for j = 2), " << jumps
    << " adjacent glued pairs with a window, " << degenerate << " jumps of the form (g - g')(g + g' + 1) at (30,11,11,0)";
  o.detail = s.str() + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome scaling() {
  Outcome o;
  std::mt19937 rng(404);
  int fitted = 0;
  for (int i = 0; i < kScalingSamples; ++i) {
    const int k = i % 2 ? 4 : 3;
    const int K = binom2(k);
    std::uniform_int_distribution<long> d(0, 5);
    RatVec l(k), b(k);
    for (auto& x : l) x = d(rng);
    std::sort(l.begin(), l.end(), std::greater<>());
    Rat rest = 0;
    for (const auto& x : l) rest += x;
    for (int j = 0; j + 1 < k; ++j) rest -= (b[j] = d(rng));
    b[k - 1] = rest;
    try {
      const MultiPoly p = scaling_polynomial(gl(l), gl(b), 2 * K + 4);
      expect(o, p.total_degree() <= 2 * K, "degree bound");
      ++fitted;
    } catch (const std::exception& e) {
      expect(o, false, e.what());
    }
  }
  const auto central = scaling_polynomial(gl(rv({1, 0, -1})), gl(rv({0, 0, 0})), 6);
  expect(o, central.to_string() == "1 + t", "sl3 central weight gives t + 1");
  o.detail = std::to_string(fitted) + "/" + std::to_string(kScalingSamples) + " exact fits over t = 1 .. 2K + 4; sl3: " +
             central.to_string() + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome central_domain() {
  Outcome o;
  const auto& glued = complex_of(4, true);
  auto L = coordinate_forms(4, false), B = coordinate_forms(4, true);
  const auto vars = lb_vars(4);
  auto one = MultiPoly::constant(vars, 1);
  auto half = make_rat(1, 2);
  const MultiPoly light = (L[1] - L[2] + one) * (L[0] - L[1] + one) * (L[0] - L[2] + one * 2) * half;
  const MultiPoly h2 = B[0] * B[0] + B[1] * B[1] + B[2] * B[2] + B[0] * B[1] + B[1] * B[2] + B[0] * B[2];
  const MultiPoly dark = (L[0] - L[1] + one) *
                         (-(L[1] * L[1]) - L[2] * L[2] * 2 + L[2] * L[3] - L[1] * L[2] - L[1] * L[3] + L[1] - L[3] +
                          one * 2 - h2 * 2) *
                         half;
  std::mt19937 rng(505);
  int n_light = 0, n_dark = 0;
  for (int i = 0; i < kCentralSamples; ++i) {
    const Weight lam = random_generic(rng, 4);
    if (!(lam[0] < -lam[3])) {
      --i;
      continue;
    }
    RatVec lb = lam.fundamental();
    lb.resize(6, Rat(0));
    const auto cells = glued.locate(lb);
    expect(o, cells.size() == 1, "beta = 0 in one cell");
    if (cells.size() != 1) continue;
    const auto& p = glued.polynomials[cells[0]];
    n_light += p == light;
    n_dark += p == dark;
    expect(o, p == light || p == dark, "central polynomial at " + lam.to_string());
  }
  expect(o, n_light > 0 && n_dark > 0, "both sides of the split sampled");
  o.detail = std::to_string(n_light) + " light, " + std::to_string(n_dark) + " dark of " + std::to_string(kCentralSamples) +
             " generic lambda with lambda_1 < -lambda_4" + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome degree_budgets() {
  Outcome o;
  long scanned = 0, slices = 0;
  for (int k = 3; k <= 4; ++k) {
    const int K = binom2(k);
    const auto lidx = range(0, k - 1), bidx = range(k - 1, 2 * k - 2);
    for (bool g : {false, true})
      for (const auto& p : complex_of(k, g).polynomials) {
        ++scanned;
        expect(o, p.degree_in(lidx) <= K && p.degree_in(bidx) <= K, "cell polynomial degrees");
      }
    // block sizes of equal coordinates (compositions of k with at least two parts)
    std::mt19937 rng(600 + k);
    std::uniform_int_distribution<long> gap(1, 25);
    for (int mask = 0; mask + 1 < (1 << (k - 1)); ++mask) {
      std::vector<int> sizes{1};
      for (int i = 0; i + 1 < k; ++i) {
        if ((mask >> i) & 1) ++sizes.back();
        else sizes.push_back(1);
      }
      int sq = 0;
      for (int s : sizes) sq += s * s;
      const int bound = (k * k - sq) / 2 - k + 1;
      for (int rep = 0; rep < 2; ++rep) {
        RatVec l;
        long value = 0;
        for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
          for (int t = 0; t < *it; ++t) l.insert(l.begin(), Rat(value));
          value += gap(rng);
        }
        for (const auto& r : slice_for_lambda(complex_of(k, true), gl(l))) {
          ++slices;
          expect(o, r.polynomial.degree_in(bidx) <= std::max(bound, 0), "slice degree at " + gl(l).to_string());
        }
      }
    }
  }
  o.detail = std::to_string(scanned) + " cell polynomials within l, b degree C(k-1, 2); " + std::to_string(slices) +
             " slice polynomials within (k^2 - sum k_j^2)/2 - k + 1" + (o.pass ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"three-method oracle equality", oracle_equality},
      {"A2 chamber complex reproduction", a2_complex},
      {"Kostant partition function structure", kpf_structure},
      {"A3 multiplicity complex", a3_complex},
      {"region-count classification", region_counts},
      {"factorization theorems", factorization},
      {"scaling polynomiality", scaling},
      {"central-domain polynomials", central_domain},
      {"degree budgets", degree_budgets},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("criterion %zu %s  %s: %s (%.1f s, target %.0f s)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), secs, kTarget[i + 1]);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
