#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "wm/linalg.hpp"
#include "wm/polyhedra.hpp"

namespace wm {

namespace {

using Bits = boost::dynamic_bitset<>;

std::vector<long> to_long(const IntVec& v) {
  std::vector<long> out;
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw DegenerateInput("coordinates too large for the chamber walk");
    out.push_back(x.get_si());
  }
  return out;
}

long dotl(const std::vector<long>& a, const std::vector<long>& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec sum_rays(const Cone& c, const std::vector<int>& idx) {
  IntVec s(c.ambient_dim(), Int(0));
  for (int r : idx)
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += c.rays()[r][i];
  return s;
}

IntVec sign_canonical(IntVec v) {
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// F minus the union of coplanar walls still has interior (relative to the hyperplane)?
bool uncovered(const Cone& f, const std::vector<const Cone*>& walls) {
  const int target = f.dim();
  std::vector<Cone> pieces{f};
  for (const Cone* w : walls) {
    std::vector<Cone> next;
    for (const auto& p : pieces) {
      if (intersect(p, *w).dim() < target) {
        next.push_back(p);
        continue;
      }
      if (w->contains_cone(p)) continue;
      std::vector<IntVec> ineqs = p.facets();
      for (const auto& g : w->facets()) {
        std::vector<IntVec> with = ineqs;
        IntVec ng = g;
        for (auto& x : ng) x = -x;
        with.push_back(ng);
        auto q = Cone::from_halfspaces(p.ambient_dim(), with, p.equations());
        if (q.dim() == target) next.push_back(q);
        ineqs.push_back(g);
      }
    }
    pieces = std::move(next);
    if (pieces.empty()) return false;
  }
  return !pieces.empty();
}

}  // namespace

IntVec relative_normal(const Cone& support, const Cone& wall) {
  for (const auto& e : wall.equations()) {
    IntVec p = project_to_span(e, support.equations());
    if (std::any_of(p.begin(), p.end(), [](const Int& x) { return sgn(x) != 0; })) return sign_canonical(p);
  }
  throw DegenerateInput("wall spans the support");
}

WallPartition partition_by_walls(const Cone& support, const std::vector<Cone>& walls) {
  struct Adj {
    int a, b;
    Cone shared;
    IntVec normal;
  };
  const int d = support.dim();
  std::vector<Cone> cells{support};
  std::vector<Adj> adjs;
  std::vector<std::vector<int>> adj_of{{}};

  std::vector<IntVec> normals;
  for (const auto& w : walls) {
    if (w.dim() != d - 1 || !support.contains_cone(w)) {
      normals.emplace_back();
      continue;
    }
    normals.push_back(relative_normal(support, w));
  }

  for (std::size_t wi = 0; wi < walls.size(); ++wi) {
    const IntVec& h = normals[wi];
    if (h.empty()) continue;
    IntVec nh = h;
    for (auto& x : nh) x = -x;
    const std::size_t count = cells.size();
    for (std::size_t ci = 0; ci < count; ++ci) {
      bool pos = false, neg = false;
      for (const auto& r : cells[ci].rays()) {
        int s = sgn(dot(h, r));
        pos |= s > 0;
        neg |= s < 0;
      }
      if (!pos || !neg) continue;
      if (intersect(walls[wi], cells[ci]).dim() < d - 1) continue;
      Cone plus = cut(cells[ci], h);
      Cone minus = cut(cells[ci], nh);
      std::vector<IntVec> eqs = cells[ci].equations();
      eqs.push_back(h);
      Cone section = Cone::from_halfspaces(support.ambient_dim(), cells[ci].facets(), eqs);
      const int cm = static_cast<int>(cells.size());
      cells[ci] = plus;
      cells.push_back(minus);
      adj_of.emplace_back();
      std::vector<int> old = std::move(adj_of[ci]);
      adj_of[ci].clear();
      for (int id : old) {
        Adj& e = adjs[id];
        int other = e.a == static_cast<int>(ci) ? e.b : e.a;
        bool fp = false, fn = false;
        for (const auto& r : e.shared.rays()) {
          int s = sgn(dot(h, r));
          fp |= s > 0;
          fn |= s < 0;
        }
        if (fp && fn) {
          Cone sp = cut(e.shared, h);
          Cone sn = cut(e.shared, nh);
          e.shared = sp;
          adj_of[ci].push_back(id);
          adjs.push_back({cm, other, sn, e.normal});
          int nid = static_cast<int>(adjs.size()) - 1;
          adj_of[cm].push_back(nid);
          adj_of[other].push_back(nid);
        } else if (fn) {
          if (e.a == static_cast<int>(ci))
            e.a = cm;
          else
            e.b = cm;
          adj_of[cm].push_back(id);
        } else {
          adj_of[ci].push_back(id);
        }
      }
      adjs.push_back({static_cast<int>(ci), cm, section, h});
      int nid = static_cast<int>(adjs.size()) - 1;
      adj_of[ci].push_back(nid);
      adj_of[cm].push_back(nid);
    }
  }

  std::map<IntVec, std::vector<const Cone*>> by_plane;
  for (std::size_t wi = 0; wi < walls.size(); ++wi)
    if (!normals[wi].empty()) by_plane[normals[wi]].push_back(&walls[wi]);
  UnionFind uf(cells.size());
  for (const auto& e : adjs) {
    auto it = by_plane.find(sign_canonical(e.normal));
    if (it == by_plane.end() || uncovered(e.shared, it->second)) uf.unite(e.a, e.b);
  }
  WallPartition out;
  out.pieces = std::move(cells);
  std::map<int, int> label;
  for (std::size_t i = 0; i < out.pieces.size(); ++i) {
    int root = uf.find(static_cast<int>(i));
    auto [it, fresh] = label.emplace(root, static_cast<int>(label.size()));
    out.region.push_back(it->second);
  }
  out.regions = static_cast<int>(label.size());
  return out;
}

RatVec positive_functional(const std::vector<Cone>& cones) {
  if (cones.empty()) throw DegenerateInput("positive_functional: no cones");
  std::vector<IntVec> rays;
  for (const auto& c : cones) {
    if (!c.is_pointed()) throw DegenerateInput("positive_functional: cone not pointed");
    rays.insert(rays.end(), c.rays().begin(), c.rays().end());
  }
  Cone hull = Cone::from_rays(cones[0].ambient_dim(), rays);
  if (!hull.is_pointed()) throw DegenerateInput("positive_functional: union is not pointed");
  RatVec f(hull.ambient_dim(), Rat(0));
  for (const auto& n : hull.facets()) f = add(f, to_rat(n));
  return f;
}

std::optional<Cone> convex_union(const std::vector<Cone>& cells, const RatVec& trunc_normal, Rat* union_volume,
                                 Rat* hull_volume) {
  if (cells.empty()) return std::nullopt;
  std::vector<IntVec> rays;
  for (const auto& c : cells) rays.insert(rays.end(), c.rays().begin(), c.rays().end());
  Cone hull = Cone::from_rays(cells[0].ambient_dim(), rays);
  Rat hv = truncated_volume(hull, trunc_normal, 1);
  Rat uv = 0;
  for (const auto& c : cells)
    if (c.dim() == hull.dim()) uv += truncated_volume(c, trunc_normal, 1);
  if (union_volume) *union_volume = uv;
  if (hull_volume) *hull_volume = hv;
  if (uv != hv) return std::nullopt;
  return hull;
}

std::vector<std::pair<int, int>> facet_adjacency(const std::vector<Cone>& cells) {
  std::map<IntVec, std::vector<std::pair<int, int>>> by_normal;
  std::set<std::pair<int, int>> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    for (std::size_t f = 0; f < c.facets().size(); ++f) {
      IntVec opp = c.facets()[f];
      for (auto& x : opp) x = -x;
      auto it = by_normal.find(opp);
      if (it != by_normal.end()) {
        Cone fi = c.facet_cone(f);
        for (auto [j, g] : it->second) {
          if (out.count({j, static_cast<int>(i)})) continue;
          if (intersect(fi, cells[j].facet_cone(g)).dim() == c.dim() - 1) out.insert({j, static_cast<int>(i)});
        }
      }
      by_normal[c.facets()[f]].push_back({static_cast<int>(i), static_cast<int>(f)});
    }
  }
  return {out.begin(), out.end()};
}

void canonicalize(ComplexOfCones& cx) {
  std::vector<int> perm(cx.cells.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return cx.cells[a] < cx.cells[b]; });
  std::vector<int> inv(perm.size());
  std::vector<Cone> sorted;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    inv[perm[i]] = static_cast<int>(i);
    sorted.push_back(cx.cells[perm[i]]);
  }
  cx.cells = std::move(sorted);
  if (cx.adjacency.empty() && cx.cells.size() > 1) {
    cx.adjacency = facet_adjacency(cx.cells);
  } else {
    for (auto& [a, b] : cx.adjacency) {
      a = inv[a];
      b = inv[b];
      if (a > b) std::swap(a, b);
    }
    std::sort(cx.adjacency.begin(), cx.adjacency.end());
  }
}

ComplexOfCones common_refinement(const std::vector<Cone>& cones, std::vector<std::string>* warnings) {
  ComplexOfCones cx;
  std::vector<Cone> full;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (cones[i].is_full_dim() && cones[i].is_pointed()) {
      full.push_back(cones[i]);
    } else if (warnings) {
      warnings->push_back("skipping cone " + std::to_string(i) + " (not full-dimensional and pointed)");
    }
  }
  if (full.empty()) return cx;
  const std::size_t d = full[0].ambient_dim();
  cx.ambient = d;
  cx.dim = static_cast<int>(d);
  std::vector<IntVec> rays;
  for (const auto& c : full) rays.insert(rays.end(), c.rays().begin(), c.rays().end());
  Cone support = Cone::from_rays(d, rays);
  std::set<Cone> wall_set;
  for (const auto& c : full)
    for (std::size_t f = 0; f < c.facets().size(); ++f) wall_set.insert(c.facet_cone(f));
  std::vector<Cone> walls(wall_set.begin(), wall_set.end());
  auto part = partition_by_walls(support, walls);
  RatVec trunc = positive_functional(full);
  std::vector<std::vector<Cone>> groups(part.regions);
  for (std::size_t i = 0; i < part.pieces.size(); ++i) groups[part.region[i]].push_back(part.pieces[i]);
  for (auto& g : groups) {
    IntVec p = g.front().relint_point();
    bool inside = std::any_of(full.begin(), full.end(), [&](const Cone& c) { return c.contains(p); });
    if (!inside) continue;
    if (auto u = convex_union(g, trunc)) {
      cx.cells.push_back(*u);
    } else {
      if (warnings) warnings->push_back("non-convex region kept as " + std::to_string(g.size()) + " pieces");
      cx.cells.insert(cx.cells.end(), g.begin(), g.end());
    }
  }
  canonicalize(cx);
  return cx;
}

ComplexOfCones chamber_complex(const std::vector<Cone>& cones, int /*workers*/) {
  ComplexOfCones cx;
  std::vector<const Cone*> full;
  for (const auto& c : cones)
    if (c.is_full_dim() && c.is_pointed()) full.push_back(&c);
  if (full.empty()) return cx;
  const std::size_t d = full[0]->ambient_dim();
  cx.ambient = d;
  cx.dim = static_cast<int>(d);
  const std::size_t n = full.size();
  std::vector<std::vector<std::vector<long>>> fac(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& f : full[i]->facets()) fac[i].push_back(to_long(f));

  auto membership = [&](const std::vector<long>& x) {
    Bits s(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool in = true;
      for (const auto& f : fac[i])
        if (dotl(f, x) < 0) {
          in = false;
          break;
        }
      if (in) s.set(i);
    }
    return s;
  };
  auto chamber_of = [&](const Bits& s) {
    std::set<IntVec> ineqs;
    for (std::size_t i = 0; i < n; ++i)
      if (s.test(i)) ineqs.insert(full[i]->facets().begin(), full[i]->facets().end());
    return Cone::from_halfspaces(d, std::vector<IntVec>(ineqs.begin(), ineqs.end()));
  };

  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> w(1, 997);
  std::vector<long> start;
  for (int attempt = 0; attempt < 1000 && start.empty(); ++attempt) {
    std::vector<long> x(d, 0);
    for (const auto& r : full[0]->rays()) {
      long c = w(rng);
      auto rl = to_long(r);
      for (std::size_t i = 0; i < d; ++i) x[i] += c * rl[i];
    }
    bool generic = true;
    for (std::size_t i = 0; i < n && generic; ++i)
      for (const auto& f : fac[i])
        if (dotl(f, x) == 0) {
          generic = false;
          break;
        }
    if (generic) start = x;
  }
  if (start.empty()) throw DegenerateInput("chamber_complex: no generic start point found");

  std::map<Bits, int> index;
  std::queue<int> todo;
  std::vector<Bits> sets;
  std::set<std::pair<int, int>> adj;
  auto visit = [&](const Bits& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(cx.cells.size());
    Cone c = chamber_of(s);
    if (!c.is_full_dim()) throw DegenerateInput("chamber_complex: chamber is not full-dimensional");
    cx.cells.push_back(std::move(c));
    sets.push_back(s);
    index.emplace(s, id);
    todo.push(id);
    return id;
  };
  visit(membership(start));
  while (!todo.empty()) {
    int id = todo.front();
    todo.pop();
    const Cone q = cx.cells[id];
    for (std::size_t f = 0; f < q.facets().size(); ++f) {
      auto p = to_long(sum_rays(q, q.incidence()[f]));
      auto nf = to_long(q.facets()[f]);
      Bits s(n);
      for (std::size_t i = 0; i < n; ++i) {
        bool in = true;
        for (const auto& g : fac[i])
          if (dotl(g, p) < 0) {
            in = false;
            break;
          }
        for (std::size_t gi = 0; gi < fac[i].size() && in; ++gi) {
          const auto& g = fac[i][gi];
          if (dotl(g, p) != 0) continue;
          long dir = -dotl(g, nf);
          if (dir == 0) throw DegenerateInput("chamber_complex: input cones do not form a chamber fan");
          if (dir < 0) in = false;
        }
        if (in) s.set(i);
      }
      if (s.none()) continue;
      int other = visit(s);
      adj.insert({std::min(id, other), std::max(id, other)});
    }
  }
  cx.adjacency.assign(adj.begin(), adj.end());
  canonicalize(cx);
  return cx;
}

nlohmann::json ComplexOfCones::to_json() const {
  nlohmann::json j;
  j["ambient"] = ambient;
  j["dim"] = dim;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells) j["cells"].push_back(c.to_json());
  j["adjacency"] = adjacency;
  return j;
}

ComplexOfCones ComplexOfCones::from_json(const nlohmann::json& j) {
  ComplexOfCones cx;
  cx.ambient = j.at("ambient").get<std::size_t>();
  cx.dim = j.at("dim").get<int>();
  for (const auto& c : j.at("cells")) cx.cells.push_back(Cone::from_json(c));
  cx.adjacency = j.at("adjacency").get<std::vector<std::pair<int, int>>>();
  return cx;
}

}  // namespace wm
