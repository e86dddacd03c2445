#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "wm/gt_patterns.hpp"
#include "wm/kostant.hpp"
#include "wm/kostant_arrangements.hpp"
#include "wm/mult_complex.hpp"

using namespace wm;

namespace {

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

Weight gl(const RatVec& v) { return Weight::from_gl(v); }

const MultComplex& complex_of(int k) {
  static std::map<int, MultComplex> memo;
  auto it = memo.find(k);
  if (it == memo.end()) it = memo.emplace(k, load_or_build(k, true)).first;
  return it->second;
}

std::vector<int> identity(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// Strictly dominant gl weight with random gaps, rejecting small integer relations.
Weight random_generic(std::mt19937& rng, int k, long top) {
  std::uniform_int_distribution<long> d(1, top);
  while (true) {
    RatVec l(k, Rat(0));
    for (int i = k - 2; i >= 0; --i) l[i] = l[i + 1] + d(rng);
    auto w = gl(l);
    if (avoids_small_relations(w)) return w;
  }
}

bool contains(const std::vector<AffineHyperplane>& hs, const AffineHyperplane& h) {
  return std::find(hs.begin(), hs.end(), h) != hs.end();
}

}  // namespace

TEST_CASE("delta shifts") {
  CHECK(delta_shift({0}, {1}, 3) == 1);
  CHECK(delta_shift({0}, {2}, 3) == 2);
  CHECK(delta_shift({2}, {0}, 3) == -2);
  for (int k = 2; k <= 6; ++k)
    for (int j = 1; j < k; ++j) {
      std::vector<int> top(j), bottom(j);
      std::iota(top.begin(), top.end(), 0);
      std::iota(bottom.begin(), bottom.end(), k - j);
      CHECK(delta_shift(top, bottom, k) == j * (k - j));
      CHECK(delta_shift(top, top, k) == 0);
    }
  CHECK_THROWS_AS(delta_shift({0, 1}, {2}, 4), std::invalid_argument);
  CHECK_THROWS_AS(delta_shift({0}, {5}, 4), std::invalid_argument);
}

TEST_CASE("Kostant arrangements") {
  auto lam3 = gl(rv({2, 1, 0}));
  auto all3 = kostant_arrangement(lam3, identity(3));
  CHECK(all3.size() == 27);
  auto h = make_hyperplane(3, {0}, {0}, {2});
  CHECK(h.shift == 2);
  CHECK(h.to_string() == "beta{1} = lambda{1} + 2");
  CHECK(contains(all3, h));
  CHECK(kostant_arrangement(lam3, identity(3), ArrangementScope::SinglePsi).size() == 9);
  CHECK_THROWS(kostant_arrangement(lam3, {0, 0, 1}));
  CHECK_THROWS(kostant_arrangement(gl(rv({0, 1, 2})), identity(3)));

  // complements describe the same hyperplane
  for (int mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) != 2) continue;
    std::vector<int> U, Uc;
    for (int i = 0; i < 4; ++i) (((mask >> i) & 1) ? U : Uc).push_back(i);
    auto a = make_hyperplane(4, U, {1, 3}, {0, 2});
    auto b = make_hyperplane(4, Uc, {0, 2}, {1, 3});
    CHECK(a == b);
    auto lam = gl(rv({9, 5, 2, 0}));
    auto beta = gl(rv({3, 7, 1, 5}));
    Rat direct = beta[Uc[0]] + beta[Uc[1]] - lam[0] - lam[2] - delta_shift({0, 2}, {1, 3}, 4);
    CHECK((a.evaluate(lam, beta) == direct || a.evaluate(lam, beta) == -direct));
  }

  for (int k = 3; k <= 4; ++k) {
    auto lam = k == 3 ? lam3 : gl(rv({7, 4, 2, 0}));
    auto all = kostant_arrangement(lam, identity(k));
    std::set<AffineHyperplane> uni;
    auto p = identity(k);
    do {
      auto single = kostant_arrangement(lam, p, ArrangementScope::SinglePsi);
      uni.insert(single.begin(), single.end());
      // every hyperplane met by sigma(lambda + delta) - (psi beta + delta) has U = psi^{-1}(W)
      for (const auto& s : single) CHECK(contains(all, s));
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(std::vector<AffineHyperplane>(uni.begin(), uni.end()) == all);

    // shift-zero members on every boundary facet, outer shifts on the outer side
    for (const auto& f : permutahedron_facets(lam)) {
      const int j = static_cast<int>(f.subset.size());
      std::vector<int> V(j);
      std::iota(V.begin(), V.end(), f.top ? 0 : k - j);
      CHECK(contains(all, make_hyperplane(k, f.subset, V, V)));
      for (const auto& a : all)
        if (a.U == f.subset && a.V == V) CHECK((f.top ? a.shift >= 0 : a.shift <= 0));
    }
  }

  for (int k = 2; k <= 4; ++k) CHECK(kostant_arrangement_normals(k) == kpf_wall_normals(kpf_chamber_complex(k - 1)));
}

TEST_CASE("type vectors") {
  auto kpf2 = kpf_chamber_complex(2);
  // lambda = 4 (1, 0, -1), beta = 0 lies on the wall v1 = v2 for sigma = id
  try {
    type_vector(gl(rv({4, 0, -4})), gl(rv({0, 0, 0})), identity(3), kpf2);
    FAIL("expected a wall");
  } catch (const NonGenericPoint& e) {
    CHECK(e.sigma == identity(3));
  }
  auto t = type_vector(gl(rv({5, 1, -6})), gl(rv({1, 0, -1})), identity(3), kpf2);
  CHECK(t.labels.size() == 6);
  CHECK(t.labels[0] > 0);
  CHECK(t.to_json()["entries"].size() == 6);
  CHECK_THROWS_AS(type_vector(gl(rv({5, 1, -6})), gl(rv({1, 0, -1})), identity(4), kpf2), std::invalid_argument);

  // wall points of the Kostant complex lie on the arrangement for psi
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-8, 8);
  int walls = 0, generic = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto lam = gl(rv({9, 4, 0}));
    auto beta = gl(rv({d(rng), d(rng), 0}));
    std::vector<int> psi = identity(3);
    std::shuffle(psi.begin(), psi.end(), rng);
    auto arr = kostant_arrangement(lam, psi, ArrangementScope::SinglePsi);
    bool on = std::any_of(arr.begin(), arr.end(), [&](const AffineHyperplane& h) { return h.evaluate(lam, beta) == 0; });
    try {
      type_vector(lam, beta, psi, kpf2);
      ++generic;
    } catch (const NonGenericPoint&) {
      ++walls;
      CHECK(on);
    }
  }
  CHECK(walls > 0);
  CHECK(generic > 0);

  // the type is constant on the regions of the arrangement
  auto kpf3 = kpf_chamber_complex(3);
  std::uniform_int_distribution<long> small(-50, 50);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    const int k = trial % 2 ? 4 : 3;
    const KPFInstance& kpf = k == 3 ? kpf2 : kpf3;
    auto lam = random_generic(rng, k, 40);
    RatVec b(k), step(k);
    for (int i = 0; i < k; ++i) {
      b[i] = make_rat(small(rng), 7);
      step[i] = make_rat(small(rng), 997);
    }
    auto beta = gl(b), moved = gl(add(b, step));
    std::vector<int> psi = identity(k);
    std::shuffle(psi.begin(), psi.end(), rng);
    bool same_side = true;
    for (const auto& h : kostant_arrangement(lam, psi, ArrangementScope::SinglePsi)) {
      Rat x = h.evaluate(lam, beta), y = h.evaluate(lam, moved);
      same_side = same_side && x != 0 && ((x > 0) == (y > 0)) && y != 0;
    }
    if (!same_side) continue;
    CHECK(type_vector(lam, beta, psi, kpf) == type_vector(lam, moved, psi, kpf));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("piecewise multiplicity formula") {
  auto kpf2 = kpf_chamber_complex(2);
  auto kpf3 = kpf_chamber_complex(3);
  std::mt19937 rng(17);
  for (int k = 3; k <= 4; ++k) {
    const KPFInstance& kpf = k == 3 ? kpf2 : kpf3;
    const int want = k == 3 ? 100 : 40;
    int done = 0, outside = 0;
    for (int trial = 0; trial < 4000 && done < want; ++trial) {
      std::uniform_int_distribution<long> d(0, k == 3 ? 9 : 6);
      RatVec l(k), b(k);
      for (auto& x : l) x = d(rng);
      std::sort(l.begin(), l.end(), std::greater<>());
      Rat rest = std::accumulate(l.begin(), l.end(), Rat(0));
      for (int i = 0; i + 1 < k; ++i) rest -= (b[i] = d(rng));
      b[k - 1] = rest;
      auto lam = gl(l), beta = gl(b);
      std::vector<int> psi = identity(k);
      std::shuffle(psi.begin(), psi.end(), rng);
      try {
        auto pv = piecewise_multiplicity(lam, beta, psi, kpf);
        const Int m = count_gt(lam, beta);
        CHECK(pv.value == Rat(m));
        CHECK(pv.polynomial.eval(to_lb(lam, beta)) == pv.value);
        outside += m == 0;
        ++done;
      } catch (const NonGenericPoint&) {
      }
    }
    CHECK(done == want);
    CHECK(outside > 0);
  }
  // a generic neighbour of the wall example
  auto pv = piecewise_multiplicity(gl(rv({6, 2, -8})), gl(rv({0, 0, 0})), identity(3), kpf2);
  CHECK(pv.value == 5);
}

TEST_CASE("boundary factors") {
  std::mt19937 rng(23);
  for (int k = 3; k <= 4; ++k) {
    const auto& mc = complex_of(k);
    for (int trial = 0; trial < (k == 3 ? 4 : 2); ++trial) {
      auto lam = random_generic(rng, k, 40);
      auto reports = check_boundary_factors(mc, lam);
      CHECK(!reports.empty());
      std::set<int> sizes;
      for (const auto& r : reports) {
        const int j = r.facet.j();
        CHECK(r.offsets.size() == static_cast<std::size_t>(j * (k - j) - 1));
        sizes.insert(static_cast<int>(r.offsets.size()));
        CHECK(r.ok());
        CHECK(std::none_of(r.opposite_divides.begin(), r.opposite_divides.end(), [](bool b) { return b; }));
        CHECK(r.to_json()["ok"] == true);
      }
      CHECK(sizes == (k == 3 ? std::set<int>{1} : std::set<int>{2, 3}));
    }
  }
  // a falsification report for a region whose polynomial lacks the factors
  const auto& mc = complex_of(3);
  auto lam = gl(rv({7, 2, 0}));
  auto regions = slice_for_lambda(mc, lam);
  SliceRegion fake;
  for (const auto& r : regions) {
    try {
      check_boundary_factors(mc, lam, r);
      fake = r;
      break;
    } catch (const std::invalid_argument&) {
    }
  }
  REQUIRE(fake.cell >= 0);
  fake.polynomial = MultiPoly::constant(lb_vars(3), 1);
  auto bad = check_boundary_factors(mc, lam, fake);
  CHECK_FALSE(bad[0].ok());
  auto j = bad[0].to_json();
  CHECK(j["falsification"]["theorem"] == "boundary-factors");
  CHECK(j["falsification"]["missing_factor"].get<std::string>().find("b") != std::string::npos);
  // the central region of the hexagon has no boundary facet
  bool interior = false;
  for (const auto& r : regions) {
    try {
      check_boundary_factors(mc, lam, r);
    } catch (const std::invalid_argument&) {
      interior = true;
    }
  }
  CHECK(interior);
}

TEST_CASE("jump factors") {
  // direct use on a product
  auto wall = make_hyperplane(4, {0, 1}, {0, 2}, {0, 2});
  CHECK(wall.shift == 0);
  const MultiPoly g = wall.gamma();
  const MultiPoly one = MultiPoly::constant(g.vars(), 1);
  const MultiPoly base = MultiPoly::variable(g.vars(), 0) + one;
  // V = {1, 3}: shifts range over [-1, 3], so the window is -3 < c < 1
  auto prod = g * (g - one) * (g - one * 2) * base;
  auto r = check_jump_factors(prod + base, base, wall);
  CHECK(r.ok());
  CHECK(r.predicted == std::make_pair(3, 1));
  CHECK(std::find(r.windows.begin(), r.windows.end(), r.predicted) != r.windows.end());
  CHECK(r.longest_run == 3);
  CHECK(check_jump_factors(base, base, wall).zero);
  auto weak = check_jump_factors(g * base, MultiPoly(g.vars()), wall);
  CHECK_FALSE(weak.ok());
  CHECK(weak.longest_run == 1);
  CHECK(weak.to_json().contains("falsification"));
  RatVec coeffs;
  for (std::size_t i = 0; i < g.nvars(); ++i) {
    RatVec e(g.nvars(), Rat(0));
    e[i] = 1;
    coeffs.push_back(g.eval(e));
  }
  CHECK(wall_for_normal(4, primitive(coeffs)) == wall);
  CHECK(wall_for_normal(4, primitive(scale(coeffs, Rat(-3)))) == wall);
  CHECK_FALSE(wall_for_normal(4, IntVec{1, 0, 0, 0, 0, 0}).has_value());

  // generic lambda: each jump carries exactly j(k-j) - 1 parallel factors, at the window read off the wall
  std::mt19937 rng(29);
  for (int k = 3; k <= 4; ++k) {
    const auto& mc = complex_of(k);
    auto lam = random_generic(rng, k, 40);
    auto jumps = check_slice_jumps(mc, lam);
    CHECK(!jumps.empty());
    for (const auto& jp : jumps) {
      const int j = jp.report.j;
      REQUIRE(j > 0);
      CHECK_FALSE(jp.report.zero);
      CHECK(jp.report.ok());
      CHECK(jp.report.longest_run == j * (k - j) - 1);
      CHECK(std::find(jp.report.windows.begin(), jp.report.windows.end(), jp.report.predicted) !=
            jp.report.windows.end());
    }
    std::map<int, int> by_j;
    for (const auto& cj : check_complex_jumps(mc)) {
      ++by_j[cj.report.j];
      CHECK(cj.report.ok());
      CHECK(cj.report.longest_run == cj.report.j * (k - cj.report.j) - 1);
    }
    CHECK(by_j.count(0) == 0);
    if (k == 3) CHECK(by_j == std::map<int, int>{{1, 12}});
    else CHECK(by_j == std::map<int, int>{{1, 736}, {2, 1134}});
  }

  // lambda_2 = lambda_3: no parallel factors beyond the wall itself
  const auto& mc = complex_of(4);
  auto mid = gl(rv({30, 11, 11, 0}));
  CHECK(slice_for_lambda(mc, mid).size() == 15);
  for (const auto& jp : check_slice_jumps(mc, mid)) {
    CHECK_FALSE(jp.report.zero);
    CHECK(jp.report.longest_run == 1);
  }
  // lambda_1 = lambda_2 or lambda_3 = lambda_4: two parallel factors in every jump
  for (auto lam : {gl(rv({30, 30, 11, 0})), gl(rv({30, 19, 0, 0}))}) {
    CHECK(slice_for_lambda(mc, lam).size() == 61);
    for (const auto& jp : check_slice_jumps(mc, lam)) {
      CHECK_FALSE(jp.report.zero);
      CHECK(jp.report.longest_run == 2);
    }
  }
}
