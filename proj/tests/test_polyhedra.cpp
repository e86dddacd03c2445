#include <random>

#include "doctest.h"
#include "wm/linalg.hpp"
#include "wm/polyhedra.hpp"

using namespace wm;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

void check_invariants(const Cone& c) {
  for (const auto& r : c.rays())
    for (const auto& f : c.facets()) CHECK(sgn(dot(f, r)) >= 0);
  for (std::size_t f = 0; f < c.facets().size(); ++f) {
    std::vector<IntVec> on;
    for (int r : c.incidence()[f]) on.push_back(c.rays()[r]);
    on.insert(on.end(), c.lineality().begin(), c.lineality().end());
    int rk = on.empty() ? 0 : bareiss_rank(on);
    CHECK(rk == c.dim() - 1);
  }
}

// k = 3 rays of the restricted complex in (lambda, beta) coordinates
const IntVec A1 = iv({2, -1, -1, 2, -1, -1}), A2 = iv({2, -1, -1, -1, 2, -1}), A3 = iv({2, -1, -1, -1, -1, 2});
const IntVec B0 = iv({1, 0, -1, 0, 0, 0});
const IntVec C1 = iv({1, 1, -2, -2, 1, 1}), C2 = iv({1, 1, -2, 1, -2, 1}), C3 = iv({1, 1, -2, 1, 1, -2});

std::vector<Cone> tau3() {
  std::vector<std::vector<IntVec>> gens{{B0, A1, A2, A3}, {B0, C1, C2, C3}, {B0, A1, C2, C3}, {B0, A2, C1, C3},
                                        {B0, A3, C1, C2}, {B0, A1, A2, C3}, {B0, A1, A3, C2}, {B0, A2, A3, C1}};
  std::vector<Cone> out;
  for (const auto& g : gens) out.push_back(Cone::from_rays(6, g));
  return out;
}

std::vector<Cone> basis_cones(const std::vector<IntVec>& cols, std::size_t n) {
  std::vector<Cone> out;
  const std::size_t m = cols.size();
  std::vector<int> pick(n);
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == n) {
      std::vector<IntVec> g;
      for (int i : pick) g.push_back(cols[i]);
      if (sgn(bareiss_determinant(g)) != 0) out.push_back(Cone::from_rays(n, g));
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = static_cast<int>(i);
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

Cone random_cone(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<long> u(-3, 3);
  std::vector<IntVec> rays;
  for (int i = 0; i < 5; ++i) {
    IntVec r(d);
    for (auto& x : r) x = u(rng);
    r[0] = 1 + std::abs(r[0].get_si());
    rays.push_back(r);
  }
  return Cone::from_rays(d, rays);
}

}  // namespace

TEST_CASE("dual description of simple cones") {
  auto q = Cone::from_rays(2, std::vector<IntVec>{iv({1, 0}), iv({0, 1})});
  CHECK(q.facets() == std::vector<IntVec>{iv({0, 1}), iv({1, 0})});
  CHECK(q.dim() == 2);
  auto oct = Cone::from_halfspaces(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
  CHECK(oct.rays() == std::vector<IntVec>{iv({0, 0, 1}), iv({0, 1, 0}), iv({1, 0, 0})});
  check_invariants(oct);
  CHECK_THROWS_AS(Cone::from_rays(3, std::vector<IntVec>{iv({0, 0, 0})}), DegenerateInput);
}

TEST_CASE("redundant generators and lineality") {
  auto c = Cone::from_rays(2, std::vector<IntVec>{iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({2, 2})});
  CHECK(c.rays().size() == 2);
  auto half = Cone::from_rays(2, std::vector<IntVec>{iv({1, 0}), iv({-1, 0}), iv({0, 1})});
  CHECK(half.lineality_dim() == 1);
  CHECK(half.facets() == std::vector<IntVec>{iv({0, 1})});
  auto plane = Cone::from_halfspaces(3, {}, {iv({1, 1, 1})});
  CHECK(plane.dim() == 2);
  CHECK(plane.lineality_dim() == 2);
  CHECK(plane.equations() == std::vector<IntVec>{iv({1, 1, 1})});
}

TEST_CASE("k=3 cone tau_1 has four rays and four facets") {
  auto t = tau3();
  for (const auto& c : t) {
    CHECK(c.dim() == 4);
    CHECK(c.rays().size() == 4);
    CHECK(c.facets().size() == 4);
    CHECK(c.equations().size() == 2);
    check_invariants(c);
  }
}

TEST_CASE("intersections") {
  auto c = Cone::from_rays(3, std::vector<IntVec>{iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 0, 1})});
  CHECK(intersect(c, c) == c);
  auto a = Cone::from_rays(3, std::vector<IntVec>{iv({1, 0, 0}), iv({0, 1, 0})});
  auto b = Cone::from_rays(3, std::vector<IntVec>{iv({0, 1, 0}), iv({0, 0, 1})});
  auto ab = intersect(a, b);
  CHECK(ab.dim() == 1);
  CHECK(ab.rays() == std::vector<IntVec>{iv({0, 1, 0})});
  // simple-root coordinates of A2
  auto p = Cone::from_rays(2, std::vector<IntVec>{iv({1, 0}), iv({1, 1})});
  auto r = Cone::from_rays(2, std::vector<IntVec>{iv({0, 1}), iv({1, 1})});
  CHECK(intersect(p, r).rays() == std::vector<IntVec>{iv({1, 1})});
  auto disjoint = intersect(Cone::from_rays(2, std::vector<IntVec>{iv({1, 0})}),
                            Cone::from_rays(2, std::vector<IntVec>{iv({-1, 0})}));
  CHECK(disjoint.is_zero());
}

TEST_CASE("intersection is commutative and associative") {
  std::mt19937 rng(5);
  for (int t = 0; t < 15; ++t) {
    auto a = random_cone(rng, 4), b = random_cone(rng, 4), c = random_cone(rng, 4);
    check_invariants(a);
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    auto ab = intersect(a, b);
    CHECK(a.contains_cone(ab));
    CHECK(b.contains_cone(ab));
  }
}

TEST_CASE("truncated volumes") {
  auto q = Cone::from_rays(2, std::vector<IntVec>{iv({1, 0}), iv({0, 1})});
  CHECK(truncated_volume(q, rv({1, 1}), 1) == make_rat(1, 2));
  auto w = Cone::from_rays(2, std::vector<IntVec>{iv({1, 0}), iv({1, 1})});
  CHECK(truncated_volume(w, rv({1, 0}), 1) == make_rat(1, 2));
  CHECK(truncated_volume(w, rv({1, 0}), 3) == make_rat(9, 2));
  CHECK_THROWS_AS(truncated_volume(w, rv({0, 1}), 1), DegenerateInput);
  auto cube = Cone::from_rays(3, std::vector<IntVec>{iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 0, 1}), iv({1, 1, 1})});
  CHECK(truncated_volume(cube, rv({1, 0, 0}), 1) == make_rat(1, 3));
}

TEST_CASE("k=3 restricted cones glue to their hull") {
  auto t = tau3();
  RatVec lambda1 = rv({1, 0, 0, 0, 0, 0});
  Rat sum = 0;
  for (const auto& c : t) sum += truncated_volume(c, lambda1, 1);
  auto hull = Cone::from_rays(6, std::vector<IntVec>{A1, A2, A3, B0, C1, C2, C3});
  CHECK(sum == truncated_volume(hull, lambda1, 1));
  Rat uv, hv;
  auto u = convex_union(t, lambda1, &uv, &hv);
  REQUIRE(u);
  CHECK(*u == hull);
  CHECK(uv == hv);
  std::vector<Cone> two{t[0], t[1]};
  CHECK_FALSE(convex_union(two, lambda1));
}

TEST_CASE("common refinement examples") {
  auto single = Cone::from_rays(2, std::vector<IntVec>{iv({1, 0}), iv({1, 1})});
  auto one = common_refinement({single});
  REQUIRE(one.cells.size() == 1);
  CHECK(one.cells[0] == single);

  std::vector<IntVec> ma2{iv({1, 0}), iv({0, 1}), iv({1, 1})};
  auto b2 = basis_cones(ma2, 2);
  CHECK(b2.size() == 3);
  auto cx2 = common_refinement(b2);
  CHECK(cx2.cells.size() == 2);
  CHECK(cx2.adjacency.size() == 1);
  CHECK(chamber_complex(b2).cells == cx2.cells);

  std::vector<IntVec> ma3{iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({1, 1, 0}), iv({0, 1, 1}), iv({1, 1, 1})};
  auto b3 = basis_cones(ma3, 3);
  CHECK(b3.size() == 16);
  auto cx3 = common_refinement(b3);
  CHECK(cx3.cells.size() == 7);
  auto walk = chamber_complex(b3);
  CHECK(walk.cells == cx3.cells);
  CHECK(walk.adjacency == cx3.adjacency);
  RatVec ones = rv({1, 1, 1});
  Rat sum = 0;
  for (const auto& c : cx3.cells) sum += truncated_volume(c, ones, 1);
  CHECK(sum == truncated_volume(Cone::from_rays(3, ma3), ones, 1));

  std::vector<std::string> warn;
  auto flat = Cone::from_rays(3, std::vector<IntVec>{iv({1, 0, 0}), iv({0, 1, 0})});
  common_refinement({b3[0], flat}, &warn);
  CHECK(warn.size() == 1);
}

TEST_CASE("k=3 restricted cones form a chamber fan") {
  std::vector<IntVec> eqs{iv({1, 1, 1, 0, 0, 0}), iv({0, 0, 0, 1, 1, 1})};
  auto t = tau3();
  // work inside the 4-dim span by restricting to coordinates (l1, l2, b1, b2)
  RatMat m{{1, -1, 0, 0, 0, 0}, {0, 1, -1, 0, 0, 0}, {0, 0, 0, 1, -1, 0}, {0, 0, 0, 0, 1, -1}};
  std::vector<Cone> img;
  for (const auto& c : t) img.push_back(linear_image(c, m));
  auto walk = chamber_complex(img);
  CHECK(walk.cells.size() == 8);
  auto general = common_refinement(img);
  CHECK(general.cells.size() == 8);
  CHECK(general.cells == walk.cells);
}

TEST_CASE("lattice points") {
  auto seg = polytope_from_halfspaces(1, {{rv({1}), Rat(1)}, {rv({-1}), Rat(0)}});
  CHECK(lattice_points(seg) == std::vector<IntVec>{iv({0}), iv({1})});
  auto none = polytope_from_halfspaces(1, {{rv({1}), make_rat(2, 3)}, {rv({-1}), make_rat(-1, 3)}});
  CHECK(lattice_points(none).empty());
  CHECK_FALSE(none.empty());
}

TEST_CASE("lattice points agree with box enumeration") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> u(-4, 4), off(2, 12);
  for (int t = 0; t < 12; ++t) {
    std::vector<Polyhedron::Halfspace> hs;
    for (std::size_t i = 0; i < 3; ++i) {
      RatVec e(3, Rat(0));
      e[i] = 1;
      hs.push_back({e, Rat(10)});
      e[i] = -1;
      hs.push_back({e, Rat(10)});
    }
    for (int j = 0; j < 4; ++j) hs.push_back({rv({u(rng), u(rng), u(rng)}), Rat(off(rng))});
    auto p = polytope_from_halfspaces(3, hs);
    std::vector<IntVec> naive;
    for (long x = -10; x <= 10; ++x)
      for (long y = -10; y <= 10; ++y)
        for (long z = -10; z <= 10; ++z) {
          RatVec pt = rv({x, y, z});
          bool in = true;
          for (const auto& h : hs) in = in && dot(h.normal, pt) <= h.offset;
          if (in) naive.push_back(iv({x, y, z}));
        }
    CHECK(lattice_points(p) == naive);
  }
}

TEST_CASE("lattice points on an affine sublattice") {
  // 0 <= x,y <= 4 restricted to x + y even
  auto sq = polytope_from_halfspaces(2, {{rv({1, 0}), Rat(4)}, {rv({-1, 0}), Rat(0)}, {rv({0, 1}), Rat(4)}, {rv({0, -1}), Rat(0)}});
  AffineLattice lat{rv({0, 0}), RatMat{{1, 1}, {1, -1}}};
  auto pts = lattice_points(sq, lat);
  CHECK(pts.size() == 13);
  for (const auto& p : pts) CHECK(is_integral(p[0] + p[1]));
}

TEST_CASE("slices") {
  auto oct = Cone::from_halfspaces(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
  // plane x + y + z = 1 parametrized by (x, y)
  auto tri = affine_slice(oct, rv({0, 0, 1}), {rv({1, 0, -1}), rv({0, 1, -1})});
  CHECK(tri.dim() == 2);
  CHECK(tri.vertices().size() == 3);
  CHECK(tri.volume() == make_rat(1, 2));

  auto t = tau3();
  std::vector<RatVec> beta_plane{rv({0, 0, 0, 1, -1, 0}), rv({0, 0, 0, 0, 1, -1})};
  // over lambda = (1,0,-1) itself the fibre of tau_2 is the single point beta = 0
  auto pt = affine_slice(t[1], rv({1, 0, -1, 0, 0, 0}), beta_plane);
  CHECK(pt.dim() == 0);
  CHECK(pt.vertices() == std::vector<RatVec>{rv({0, 0})});
  // slightly off the ray b the fibre is the central triangle with vertices on the c-directions
  auto central = affine_slice(t[1], rv({2, 1, -3, 0, 0, 0}), beta_plane);
  CHECK(central.dim() == 2);
  std::vector<RatVec> expected{rv({-2, -1}), rv({1, -1}), rv({1, 2})};
  std::sort(expected.begin(), expected.end());
  CHECK(central.vertices() == expected);

  auto missed = affine_slice(oct, rv({0, 0, -1}), {rv({1, 0, 0}), rv({0, 1, 0})});
  CHECK(missed.empty());
}
