#include <random>
#include <set>

#include "doctest.h"
#include "wm/type_a.hpp"

using namespace wm;

namespace {

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

bool is_fundamental_conjugate(const RatVec& n, int k) {
  // 0/1 indicator of a subset of size j, or its complement, with 1 <= j <= k/2
  int ones = 0;
  for (const auto& x : n) {
    if (x != 0 && x != 1) return false;
    ones += x == 1;
  }
  return ones >= 1 && 2 * ones <= k;
}

}  // namespace

TEST_CASE("root data") {
  auto r3 = root_system(3);
  CHECK(r3.delta == rv({1, 0, -1}));
  CHECK(r3.omega_tilde[0] == rv({1, 0, 0}));
  CHECK(r3.omega_tilde[1] == rv({1, 1, 0}));
  CHECK(r3.positive_roots.size() == 3);
  auto r4 = root_system(4);
  CHECK(r4.positive_roots.size() == 6);
  CHECK(r4.delta == RatVec{make_rat(3, 2), make_rat(1, 2), make_rat(-1, 2), make_rat(-3, 2)});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(dot(r4.simple_roots[i], r4.fundamental_weights[j]) == (i == j ? 1 : 0));
  CHECK_THROWS(root_system(1));
}

TEST_CASE("weight conversions") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<long> u(-9, 9);
  for (int t = 0; t < 50; ++t) {
    RatVec l{Rat(u(rng)), Rat(u(rng)), Rat(u(rng))};
    auto w = Weight::from_fundamental(l);
    CHECK(w.fundamental() == l);
    CHECK(Weight::from_coords(w.coords()) == w);
  }
  auto w = Weight::from_gl(rv({2, 1, 0}));
  CHECK(w.coords() == rv({1, 0, -1}));
  CHECK(w.is_dominant());
  CHECK(w.gl_normalized() == IntVec{Int(2), Int(1), Int(0)});
  CHECK_THROWS(Weight::from_coords(rv({1, 1})));
  CHECK_FALSE(Weight::from_gl(rv({0, 1, 2})).is_dominant());
}

TEST_CASE("Weyl orbits") {
  CHECK(weyl_orbit(Weight::from_gl(rv({5, 3, 1, 0}))).size() == 24);
  auto rs = root_system(4);
  for (int j = 1; j < 4; ++j) {
    long expect = j == 2 ? 6 : 4;
    CHECK(static_cast<long>(weyl_orbit(Weight::from_coords(rs.fundamental_weights[j - 1])).size()) == expect);
  }
  CHECK(weyl_orbit(Weight::from_coords(rv({0, 0, 0}))).size() == 1);
}

TEST_CASE("permutahedron facets") {
  auto g3 = Weight::from_gl(rv({3, 1, 0}));
  CHECK(permutahedron_facets(g3).size() == 6);
  CHECK(permutahedron(g3).vertices().size() == 6);
  auto g4 = Weight::from_gl(rv({6, 3, 1, 0}));
  CHECK(permutahedron_facets(g4).size() == 14);
  auto w1 = Weight::from_gl(rv({1, 0, 0}));
  CHECK(facet_hyperplane_candidates(w1).size() == 6);
  CHECK(permutahedron_facets(w1).size() == 3);
  CHECK(permutahedron(w1).vertices().size() == 3);
  CHECK_THROWS(permutahedron_facets(Weight::from_coords(rv({0, 0, 0}))));
  for (const auto& f : permutahedron_facets(g4)) CHECK(is_fundamental_conjugate(f.normal, 4));
}

TEST_CASE("walls of the permutahedron") {
  auto g4 = Weight::from_gl(rv({13, 7, 2, 0}));
  auto walls = dh_walls(g4);
  CHECK(walls.size() == 34);
  int boundary = 0;
  for (const auto& w : walls) {
    boundary += w.boundary;
    CHECK(is_fundamental_conjugate(w.normal, 4));
    CHECK(w.polytope.dim() == 2);
    for (const auto& v : w.polytope.vertices()) CHECK(dot(w.normal, v) == w.offset);
  }
  CHECK(boundary == 14);
  // the wall through (l1, l3, l2, l4) under the subgroup permuting {1,2} and {3,4}
  const auto& c = g4.coords();
  RatVec pt{c[0], c[2], c[1], c[3]};
  bool found = false;
  for (const auto& w : walls) {
    if (w.subset != std::vector<int>{0, 1}) continue;
    for (const auto& v : w.polytope.vertices()) found |= v == pt;
    if (found) {
      CHECK(w.normal == rv({1, 1, 0, 0}));
      // in the sum-zero hyperplane this is the normal (1,1,-1,-1)
      CHECK(w.polytope.vertices().size() == 4);
      break;
    }
  }
  CHECK(found);

  auto w1 = Weight::from_gl(rv({1, 0, 0}));
  for (const auto& w : dh_walls(w1)) CHECK(w.boundary);
}

TEST_CASE("region counts in small cases") {
  CHECK(partition_permutahedron(Weight::from_gl(rv({1, 0, 0}))).count == 1);
  CHECK(partition_permutahedron(Weight::from_gl(rv({1, 1, 0}))).count == 1);
  // generic hexagon: six outer regions and the central triangle
  CHECK(partition_permutahedron(Weight::from_gl(rv({3, 1, 0}))).count == 7);
  // for the regular hexagon the central triangle collapses to the origin
  CHECK(partition_permutahedron(Weight::from_gl(rv({2, 1, 0}))).count == 6);
  CHECK_THROWS(partition_permutahedron(Weight::from_gl(rv({0, 1, 2}))));
}

TEST_CASE("regions are closed under the Weyl action and tile the permutahedron") {
  auto l = Weight::from_gl(rv({13, 7, 2, 0}));
  auto part = partition_permutahedron(l);
  CHECK(part.count == 277);
  std::set<std::vector<RatVec>> shapes;
  Rat vol = 0;
  for (const auto& r : part.regions) {
    shapes.insert(r.vertices());
    vol += r.volume();
  }
  CHECK(vol == permutahedron(l).volume());
  std::vector<int> sigma{1, 0, 3, 2};
  for (const auto& r : part.regions) {
    std::vector<RatVec> moved;
    for (const auto& v : r.vertices()) moved.push_back(Weight::from_coords(v).permuted(sigma).coords());
    std::sort(moved.begin(), moved.end());
    CHECK(shapes.count(moved) == 1);
  }
}

TEST_CASE("genericity filter") {
  CHECK_FALSE(avoids_small_relations(Weight::from_gl(rv({7, 4, 2, 0}))));
  CHECK(avoids_small_relations(Weight::from_gl(rv({131, 70, 29, 0}))));
}

TEST_CASE("emitters") {
  auto svg = permutahedron_svg(Weight::from_gl(rv({3, 1, 0})));
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polygon") != std::string::npos);
  auto csv = region_count_csv({Weight::from_gl(rv({1, 0, 0})), Weight::from_gl(rv({3, 1, 0}))});
  CHECK(csv == "l1,l2,regions\n1,0,1\n2,1,7\n");
}
