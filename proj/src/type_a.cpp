#include "wm/type_a.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wm/linalg.hpp"

namespace wm {

namespace {

Rat sum_of(const RatVec& v) {
  Rat s = 0;
  for (const auto& x : v) s += x;
  return s;
}

/// Affine dimension of a point set.
int affine_rank(const std::vector<RatVec>& pts) {
  if (pts.empty()) return -1;
  std::vector<RatVec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  if (diffs.empty()) return 0;
  return rank(RatMat::from_rows(diffs));
}

std::vector<std::vector<int>> subsets_of_size(int k, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> mask(k, 0);
  std::fill(mask.begin(), mask.begin() + j, 1);
  do {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

std::vector<RatVec> block_permutations(const RatVec& values_u, const RatVec& values_c, const std::vector<int>& u, int k) {
  std::vector<int> comp;
  for (int i = 0; i < k; ++i)
    if (!std::binary_search(u.begin(), u.end(), i)) comp.push_back(i);
  RatVec a = values_u, b = values_c;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<RatVec> out;
  do {
    RatVec bb = b;
    do {
      RatVec p(k);
      for (std::size_t i = 0; i < u.size(); ++i) p[u[i]] = a[i];
      for (std::size_t i = 0; i < comp.size(); ++i) p[comp[i]] = bb[i];
      out.push_back(p);
    } while (std::next_permutation(bb.begin(), bb.end()));
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

Cone homogenize(const Polytope& p) { return p.homogenized(); }

}  // namespace

RootSystem root_system(int k) {
  if (k < 2) throw std::invalid_argument("root_system: k must be at least 2");
  RootSystem rs;
  rs.k = k;
  auto e = [k](int i) {
    RatVec v(k, Rat(0));
    v[i] = 1;
    return v;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) rs.positive_roots.push_back(sub(e(i), e(j)));
  for (int i = 0; i + 1 < k; ++i) rs.simple_roots.push_back(sub(e(i), e(i + 1)));
  for (int j = 1; j < k; ++j) {
    RatVec w(k);
    for (int i = 0; i < k; ++i) w[i] = (i < j ? Rat(1) : Rat(0)) - Rat(j) / k;
    rs.fundamental_weights.push_back(w);
    RatVec t(k, Rat(0));
    for (int i = 0; i < j; ++i) t[i] = 1;
    rs.omega_tilde.push_back(t);
  }
  rs.delta.resize(k);
  for (int i = 0; i < k; ++i) rs.delta[i] = make_rat(k - 1 - 2 * i, 2);
  return rs;
}

Weight Weight::from_coords(RatVec coords) {
  if (coords.size() < 2) throw std::invalid_argument("weight needs at least two coordinates");
  if (sum_of(coords) != 0) throw std::invalid_argument("weight coordinates must sum to zero");
  Weight w;
  w.coords_ = std::move(coords);
  return w;
}

Weight Weight::from_gl(const RatVec& gl) {
  if (gl.size() < 2) throw std::invalid_argument("weight needs at least two coordinates");
  Rat mean = sum_of(gl) / static_cast<long>(gl.size());
  RatVec c;
  for (const auto& x : gl) c.push_back(x - mean);
  return from_coords(c);
}

Weight Weight::from_fundamental(const RatVec& l) {
  const int k = static_cast<int>(l.size()) + 1;
  auto rs = root_system(k);
  RatVec c(k, Rat(0));
  for (int j = 0; j + 1 < k; ++j) c = add(c, scale(rs.fundamental_weights[j], l[j]));
  return from_coords(c);
}

RatVec Weight::fundamental() const {
  RatVec l;
  for (std::size_t i = 0; i + 1 < coords_.size(); ++i) l.push_back(coords_[i] - coords_[i + 1]);
  return l;
}

bool Weight::is_dominant() const {
  for (std::size_t i = 0; i + 1 < coords_.size(); ++i)
    if (coords_[i] < coords_[i + 1]) return false;
  return true;
}

bool Weight::is_regular() const {
  std::set<Rat> s(coords_.begin(), coords_.end());
  return s.size() == coords_.size();
}

IntVec Weight::gl_normalized() const {
  Rat m = *std::min_element(coords_.begin(), coords_.end());
  IntVec out;
  for (const auto& x : coords_) {
    Rat d = x - m;
    if (!is_integral(d)) throw std::invalid_argument("weight coordinates do not differ by integers");
    out.push_back(d.get_num());
  }
  return out;
}

Weight Weight::permuted(const std::vector<int>& sigma) const {
  RatVec c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[sigma[i]];
  Weight w;
  w.coords_ = c;
  return w;
}

std::string Weight::to_string() const { return wm::to_string(coords_); }

bool avoids_small_relations(const Weight& lambda, int bound) {
  RatVec l = lambda.fundamental();
  std::vector<int> c(l.size(), -bound);
  while (true) {
    bool nonzero = std::any_of(c.begin(), c.end(), [](int x) { return x != 0; });
    if (nonzero) {
      Rat s = 0;
      for (std::size_t i = 0; i < l.size(); ++i) s += l[i] * c[i];
      if (s == 0) return false;
    }
    std::size_t i = 0;
    while (i < c.size() && c[i] == bound) c[i++] = -bound;
    if (i == c.size()) return true;
    ++c[i];
  }
}

std::vector<Weight> weyl_orbit(const Weight& v) {
  RatVec c = v.coords();
  std::sort(c.begin(), c.end());
  std::vector<Weight> out;
  do out.push_back(Weight::from_coords(c));
  while (std::next_permutation(c.begin(), c.end()));
  return out;
}

Polytope permutahedron(const Weight& lambda) {
  std::vector<RatVec> pts;
  for (const auto& w : weyl_orbit(lambda)) pts.push_back(w.coords());
  return Polytope::from_vertices(lambda.k(), pts);
}

std::vector<FacetHyperplane> facet_hyperplane_candidates(const Weight& lambda) {
  const int k = lambda.k();
  RatVec sorted = lambda.coords();
  std::sort(sorted.rbegin(), sorted.rend());
  std::vector<FacetHyperplane> out;
  for (int j = 1; 2 * j <= k; ++j) {
    Rat top = 0, bottom = 0;
    for (int i = 0; i < j; ++i) {
      top += sorted[i];
      bottom += sorted[k - 1 - i];
    }
    for (const auto& u : subsets_of_size(k, j)) {
      RatVec n(k, Rat(0));
      for (int i : u) n[i] = 1;
      out.push_back({u, true, n, top});
      // for |U| = k/2, bottom(U) coincides with top(complement)
      if (2 * j == k) continue;
      out.push_back({u, false, n, bottom});
    }
  }
  return out;
}

std::vector<FacetHyperplane> permutahedron_facets(const Weight& lambda) {
  if (std::all_of(lambda.coords().begin(), lambda.coords().end(), [](const Rat& x) { return x == 0; }))
    throw std::invalid_argument("permutahedron_facets: lambda = 0");
  auto orbit = weyl_orbit(lambda);
  std::vector<FacetHyperplane> out;
  for (const auto& h : facet_hyperplane_candidates(lambda)) {
    std::vector<RatVec> on;
    for (const auto& w : orbit)
      if (dot(h.normal, w.coords()) == h.offset) on.push_back(w.coords());
    if (affine_rank(on) == lambda.k() - 2) out.push_back(h);
  }
  return out;
}

std::vector<WallFamily> dh_walls(const Weight& lambda) {
  const int k = lambda.k();
  const RatVec& lam = lambda.coords();
  auto orbit = weyl_orbit(lambda);
  const int full_dim = affine_rank([&] {
    std::vector<RatVec> pts;
    for (const auto& w : orbit) pts.push_back(w.coords());
    return pts;
  }());
  std::vector<WallFamily> out;
  std::set<std::vector<RatVec>> seen;
  for (int j = 1; 2 * j <= k; ++j) {
    for (const auto& u : subsets_of_size(k, j)) {
      if (2 * j == k && u[0] != 0) continue;
      std::vector<int> comp;
      for (int i = 0; i < k; ++i)
        if (!std::binary_search(u.begin(), u.end(), i)) comp.push_back(i);
      for (const auto& v : subsets_of_size(k, j)) {
        RatVec vu, vc;
        std::vector<int> vcomp;
        for (int i = 0; i < k; ++i) {
          if (std::binary_search(v.begin(), v.end(), i))
            vu.push_back(lam[i]);
          else {
            vc.push_back(lam[i]);
            vcomp.push_back(i);
          }
        }
        auto pts = block_permutations(vu, vc, u, k);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (affine_rank(pts) != full_dim - 1) continue;
        RatVec n(k, Rat(0));
        for (int i : u) n[i] = 1;
        Rat off = 0;
        for (const auto& x : vu) off += x;
        if (!seen.insert(pts).second) continue;
        WallFamily w;
        w.sigma.assign(k, 0);
        for (std::size_t i = 0; i < u.size(); ++i) w.sigma[u[i]] = v[i];
        for (std::size_t i = 0; i < comp.size(); ++i) w.sigma[comp[i]] = vcomp[i];
        w.subset = u;
        w.normal = n;
        w.offset = off;
        w.polytope = Polytope::from_vertices(k, pts);
        bool above = false, below = false;
        for (const auto& o : orbit) {
          Rat s = dot(n, o.coords());
          above |= s > off;
          below |= s < off;
        }
        w.boundary = !(above && below);
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

PermutahedronPartition partition_permutahedron(const Weight& lambda, bool stretch) {
  if (!lambda.is_dominant()) throw std::invalid_argument("partition_permutahedron: lambda must be dominant");
  if (lambda.k() > 4 && !stretch) throw std::invalid_argument("partition_permutahedron: k > 4 needs the stretch flag");
  PermutahedronPartition out;
  auto perm = permutahedron(lambda);
  if (perm.dim() <= 0) {
    out.regions.push_back(perm);
    out.count = 1;
    return out;
  }
  std::vector<Cone> walls;
  for (const auto& w : dh_walls(lambda))
    if (!w.boundary) walls.push_back(homogenize(w.polytope));
  auto part = partition_by_walls(perm.homogenized(), walls);
  std::vector<std::vector<Cone>> groups(part.regions);
  for (std::size_t i = 0; i < part.pieces.size(); ++i) groups[part.region[i]].push_back(part.pieces[i]);
  RatVec et(lambda.k() + 1, Rat(0));
  et[0] = 1;
  Rat total = 0;
  for (const auto& g : groups) {
    auto u = convex_union(g, et);
    if (!u) throw std::logic_error("partition_permutahedron: region is not convex");
    out.regions.push_back(Polytope::from_homogeneous(*u));
    total += out.regions.back().volume();
  }
  if (total != perm.volume()) throw std::logic_error("partition_permutahedron: volume certificate failed");
  std::sort(out.regions.begin(), out.regions.end(),
            [](const Polytope& a, const Polytope& b) { return a.vertices() < b.vertices(); });
  out.count = static_cast<int>(out.regions.size());
  return out;
}

std::string region_count_csv(const std::vector<Weight>& lambdas, bool stretch) {
  std::ostringstream os;
  if (lambdas.empty()) return "";
  const int k = lambdas[0].k();
  for (int i = 1; i < k; ++i) os << "l" << i << ",";
  os << "regions\n";
  for (const auto& l : lambdas) {
    for (const auto& x : l.fundamental()) os << wm::to_string(x) << ",";
    os << partition_permutahedron(l, stretch).count << "\n";
  }
  return os.str();
}

std::string permutahedron_svg(const Weight& lambda) {
  if (lambda.k() != 3) throw std::invalid_argument("permutahedron_svg: k must be 3");
  auto xy = [](const RatVec& b) {
    double b1 = b[0].get_d(), b2 = b[1].get_d(), b3 = b[2].get_d();
    return std::pair<double, double>{(b1 - b2) * std::sqrt(3.0) / 2.0, (b1 + b2 - 2 * b3) / 2.0};
  };
  auto part = partition_permutahedron(lambda);
  auto perm = permutahedron(lambda);
  double extent = 1;
  for (const auto& v : perm.vertices()) {
    auto [x, y] = xy(v);
    extent = std::max({extent, std::abs(x), std::abs(y)});
  }
  const double scale = 180.0 / extent;
  auto px = [&](const RatVec& b) {
    auto [x, y] = xy(b);
    std::ostringstream s;
    s << 200 + scale * x << "," << 200 - scale * y;
    return s.str();
  };
  auto ordered = [&](const Polytope& p) {
    std::vector<RatVec> vs = p.vertices();
    double cx = 0, cy = 0;
    for (const auto& v : vs) {
      auto [x, y] = xy(v);
      cx += x;
      cy += y;
    }
    cx /= static_cast<double>(vs.size());
    cy /= static_cast<double>(vs.size());
    std::sort(vs.begin(), vs.end(), [&](const RatVec& a, const RatVec& b) {
      auto [ax, ay] = xy(a);
      auto [bx, by] = xy(b);
      return std::atan2(ay - cy, ax - cx) < std::atan2(by - cy, bx - cx);
    });
    return vs;
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  int idx = 0;
  for (const auto& r : part.regions) {
    os << "  <polygon points=\"";
    for (const auto& v : ordered(r)) os << px(v) << " ";
    os << "\" fill=\"hsl(" << (idx++ * 47) % 360 << ",60%,85%)\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  }
  for (const auto& w : dh_walls(lambda)) {
    if (w.boundary) continue;
    const auto& vs = w.polytope.vertices();
    os << "  <line x1=\"" << px(vs.front()).substr(0, px(vs.front()).find(',')) << "\" y1=\""
       << px(vs.front()).substr(px(vs.front()).find(',') + 1) << "\" x2=\""
       << px(vs.back()).substr(0, px(vs.back()).find(',')) << "\" y2=\"" << px(vs.back()).substr(px(vs.back()).find(',') + 1)
       << "\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
  }
  for (const auto& w : weyl_orbit(lambda)) {
    auto p = px(w.coords());
    os << "  <circle cx=\"" << p.substr(0, p.find(',')) << "\" cy=\"" << p.substr(p.find(',') + 1)
       << "\" r=\"3\" fill=\"#000\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace wm
