#include "wm/kostant_arrangements.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wm/linalg.hpp"

namespace wm {

namespace {

std::vector<std::vector<int>> subsets_of_size(int k, int j) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << k); ++mask) {
    if (__builtin_popcount(mask) != j) continue;
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

std::vector<int> complement(int k, const std::vector<int>& s) {
  std::vector<int> out;
  for (int i = 0; i < k; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

std::vector<int> inverse(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

void check_permutation(int k, const std::vector<int>& p, const char* who) {
  std::vector<int> s = p;
  std::sort(s.begin(), s.end());
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  if (s != id) throw std::invalid_argument(std::string(who) + ": not a permutation of 0..k-1");
}

IntVec sign_normalized(IntVec a) {
  auto nz = std::find_if(a.begin(), a.end(), [](const Int& x) { return x != 0; });
  if (nz != a.end() && *nz < 0)
    for (auto& x : a) x = -x;
  return a;
}

/// lambda_i (beta = false) or beta_i as linear forms over lb_vars(k).
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

RatVec gamma_coefficients(int k, const std::vector<int>& U, const std::vector<int>& V) {
  const auto rs = root_system(k);
  RatVec c(2 * k - 2, Rat(0));
  for (int j = 0; j + 1 < k; ++j) {
    for (int u : U) c[k - 1 + j] += rs.fundamental_weights[j][u];
    for (int v : V) c[j] -= rs.fundamental_weights[j][v];
  }
  return c;
}

std::vector<std::optional<Rat>> fixed_l(const Weight& lambda) {
  const int k = lambda.k();
  const RatVec l = lambda.fundamental();
  std::vector<std::optional<Rat>> fixed(2 * k - 2);
  for (int i = 0; i + 1 < k; ++i) fixed[i] = l[i];
  return fixed;
}

Rat subset_sum(const RatVec& x, const std::vector<int>& s) {
  Rat t = 0;
  for (int i : s) t += x[i];
  return t;
}

std::string set_string(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

/// Canonical subsets U with 1 <= |U| <= k/2 (0 in U when |U| = k/2).
std::vector<std::vector<int>> canonical_subsets(int k) {
  std::vector<std::vector<int>> out;
  for (int j = 1; 2 * j <= k; ++j)
    for (auto& U : subsets_of_size(k, j))
      if (2 * j < k || U[0] == 0) out.push_back(U);
  return out;
}

nlohmann::json falsification(const std::string& theorem, nlohmann::json inputs, const MultiPoly& p,
                             const MultiPoly& factor) {
  return {{"theorem", theorem},
          {"inputs", std::move(inputs)},
          {"polynomial", p.to_string()},
          {"missing_factor", factor.to_string()}};
}

}  // namespace

Rat delta_shift(const std::vector<int>& V, const std::vector<int>& W, int k) {
  if (V.size() != W.size()) throw std::invalid_argument("delta_shift: |V| != |W|");
  const RatVec delta = root_system(k).delta;
  for (int i : V)
    if (i < 0 || i >= k) throw std::invalid_argument("delta_shift: index out of range");
  for (int i : W)
    if (i < 0 || i >= k) throw std::invalid_argument("delta_shift: index out of range");
  return subset_sum(delta, V) - subset_sum(delta, W);
}

AffineHyperplane make_hyperplane(int k, std::vector<int> U, std::vector<int> V, const std::vector<int>& W) {
  if (U.size() != V.size() || U.empty() || static_cast<int>(U.size()) >= k)
    throw std::invalid_argument("make_hyperplane: need 0 < |U| = |V| < k");
  std::sort(U.begin(), U.end());
  std::sort(V.begin(), V.end());
  std::vector<int> Ws = W;
  std::sort(Ws.begin(), Ws.end());
  const int j = static_cast<int>(U.size());
  if (2 * j > k || (2 * j == k && U[0] != 0)) {
    U = complement(k, U);
    V = complement(k, V);
    Ws = complement(k, Ws);
  }
  AffineHyperplane h;
  h.k = k;
  h.shift = delta_shift(V, Ws, k);
  h.U = std::move(U);
  h.V = std::move(V);
  return h;
}

Rat AffineHyperplane::offset(const Weight& lambda) const { return subset_sum(lambda.coords(), V) + shift; }

Rat AffineHyperplane::evaluate(const Weight& lambda, const Weight& beta) const {
  return subset_sum(beta.coords(), U) - offset(lambda);
}

MultiPoly AffineHyperplane::gamma() const { return MultiPoly::linear(lb_vars(k), gamma_coefficients(k, U, V), 0); }

MultiPoly AffineHyperplane::gamma_at(const Weight& lambda) const { return gamma().partial_eval(fixed_l(lambda)); }

std::string AffineHyperplane::to_string() const {
  std::string s = "beta" + set_string(U) + " = lambda" + set_string(V);
  if (shift > 0) s += " + " + shift.get_str();
  if (shift < 0) s += " - " + Rat(-shift).get_str();
  return s;
}

nlohmann::json AffineHyperplane::to_json() const {
  std::vector<int> u, v;
  for (int i : U) u.push_back(i + 1);
  for (int i : V) v.push_back(i + 1);
  return {{"U", u}, {"V", v}, {"shift", shift.get_str()}, {"text", to_string()}};
}

bool AffineHyperplane::operator<(const AffineHyperplane& o) const {
  if (U.size() != o.U.size()) return U.size() < o.U.size();
  if (U != o.U) return U < o.U;
  if (V != o.V) return V < o.V;
  return shift < o.shift;
}

std::vector<AffineHyperplane> kostant_arrangement(const Weight& lambda, const std::vector<int>& psi,
                                                  ArrangementScope scope) {
  const int k = lambda.k();
  if (k < 2) throw std::invalid_argument("kostant_arrangement: k must be at least 2");
  if (!lambda.is_dominant()) throw std::invalid_argument("kostant_arrangement: lambda must be dominant");
  check_permutation(k, psi, "kostant_arrangement");
  const auto psi_inv = inverse(psi);
  std::set<AffineHyperplane> out;
  for (int j = 1; 2 * j <= k; ++j) {
    const auto sets = subsets_of_size(k, j);
    for (const auto& W : sets)
      for (const auto& V : sets) {
        if (scope == ArrangementScope::SinglePsi) {
          std::vector<int> U;
          for (int w : W) U.push_back(psi_inv[w]);
          out.insert(make_hyperplane(k, U, V, W));
        } else {
          for (const auto& U : sets) out.insert(make_hyperplane(k, U, V, W));
        }
      }
  }
  return {out.begin(), out.end()};
}

std::vector<IntVec> kostant_arrangement_normals(int k) {
  std::set<IntVec> out;
  for (int mask = 1; mask + 1 < (1 << k); ++mask) {
    IntVec a;
    for (int i = 0; i + 1 < k; ++i) a.push_back(Int(((mask >> i) & 1) - ((mask >> (i + 1)) & 1)));
    out.insert(sign_normalized(a));
  }
  return {out.begin(), out.end()};
}

nlohmann::json TypeVector::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < sigmas.size(); ++i) entries.push_back({{"sigma", sigmas[i]}, {"label", labels[i]}});
  return {{"psi", psi}, {"entries", entries}};
}

TypeVector type_vector(const Weight& lambda, const Weight& beta, const std::vector<int>& psi, const KPFInstance& kpf) {
  const int k = lambda.k();
  if (beta.k() != k || kpf.n != k - 1) throw std::invalid_argument("type_vector: rank mismatch");
  check_permutation(k, psi, "type_vector");
  const RatVec delta = root_system(k).delta;
  const RatVec ld = add(lambda.coords(), delta);
  const RatVec bd = add(act(psi, beta.coords()), delta);
  TypeVector t;
  t.psi = psi;
  for (const auto& s : signed_permutations(k)) {
    const RatVec w = sub(act(s.perm, ld), bd);
    RatVec c;
    Rat acc = 0;
    for (int i = 0; i + 1 < k; ++i) c.push_back(acc += w[i]);
    const int label = kpf.label(c);
    if (label < 0) {
      std::string p;
      for (int x : s.perm) p += std::to_string(x + 1);
      throw NonGenericPoint(s.perm, "type_vector: sigma = " + p + " puts the point on a wall of the Kostant complex");
    }
    t.sigmas.push_back(s.perm);
    t.labels.push_back(label);
  }
  return t;
}

PiecewiseValue piecewise_multiplicity(const Weight& lambda, const Weight& beta, const std::vector<int>& psi,
                                      const KPFInstance& kpf) {
  const int k = lambda.k();
  if (!lambda.is_dominant()) throw std::invalid_argument("piecewise_multiplicity: lambda must be dominant");
  PiecewiseValue out;
  out.type = type_vector(lambda, beta, psi, kpf);
  const RatVec delta = root_system(k).delta;
  const auto L = coordinate_forms(k, false), B = coordinate_forms(k, true);
  const auto vars = lb_vars(k);
  const auto psi_inv = inverse(psi);
  out.polynomial = MultiPoly(vars);
  const auto perms = signed_permutations(k);
  for (std::size_t s = 0; s < perms.size(); ++s) {
    const int label = out.type.labels[s];
    if (label == 0) continue;
    const auto sigma_inv = inverse(perms[s].perm);
    std::vector<MultiPoly> images;
    MultiPoly acc(vars);
    for (int m = 0; m + 1 < k; ++m) {
      acc = acc + L[sigma_inv[m]] - B[psi_inv[m]] + MultiPoly::constant(vars, delta[sigma_inv[m]] - delta[m]);
      images.push_back(acc);
    }
    MultiPoly term = kpf.polynomial(label).substitute(images);
    out.polynomial = perms[s].sign > 0 ? out.polynomial + term : out.polynomial - term;
  }
  out.value = out.polynomial.eval(to_lb(lambda, beta));
  return out;
}

bool BoundaryFactorReport::ok() const {
  return std::all_of(divides.begin(), divides.end(), [](bool b) { return b; }) &&
         std::all_of(lifted_divides.begin(), lifted_divides.end(), [](bool b) { return b; });
}

nlohmann::json BoundaryFactorReport::to_json() const {
  nlohmann::json j = {{"cell", cell},
                      {"facet", facet.to_json()},
                      {"side", top ? "top" : "bottom"},
                      {"offsets", offsets},
                      {"divides", divides},
                      {"lifted_divides", lifted_divides},
                      {"opposite_divides", opposite_divides},
                      {"polynomial", polynomial.to_string()},
                      {"ok", ok()}};
  if (!ok()) {
    const MultiPoly g = facet.gamma();
    for (std::size_t i = 0; i < offsets.size(); ++i)
      if (!divides[i] || !lifted_divides[i]) {
        j["falsification"] =
            falsification("boundary-factors", {{"cell", cell}, {"facet", facet.to_json()}}, polynomial,
                          g + MultiPoly::constant(g.vars(), Rat(offsets[i])));
        break;
      }
  }
  return j;
}

std::vector<BoundaryFactorReport> check_boundary_factors(const MultComplex& glued, const Weight& lambda,
                                                         const SliceRegion& region) {
  const int k = glued.k;
  if (lambda.k() != k) throw std::invalid_argument("check_boundary_factors: rank mismatch");
  if (region.cell < 0 || region.cell >= static_cast<int>(glued.polynomials.size()))
    throw std::invalid_argument("check_boundary_factors: region without a cell polynomial");
  const RatVec inside = region.region.vertex_average();
  std::vector<BoundaryFactorReport> out;
  for (const auto& f : permutahedron_facets(lambda)) {
    std::vector<RatVec> on;
    for (const auto& v : region.region.vertices())
      if (dot(f.normal, v) == f.offset) on.push_back(v);
    if (static_cast<int>(on.size()) < k - 1 || Polyhedron::from_vertices(k, on).dim() != k - 2) continue;
    const int j = static_cast<int>(f.subset.size());
    std::vector<int> V(j);
    std::iota(V.begin(), V.end(), f.top ? 0 : k - j);
    BoundaryFactorReport r;
    r.cell = region.cell;
    r.facet = make_hyperplane(k, f.subset, V, V);
    const MultiPoly g = r.facet.gamma_at(lambda), lifted = r.facet.gamma();
    // the factors vanish on the outer side of the facet
    r.top = g.eval(to_lb(lambda, Weight::from_coords(inside))) < 0;
    const int s = j * (k - j);
    r.polynomial = region.polynomial;
    const MultiPoly& cell_poly = glued.polynomials[region.cell];
    for (int c = 1; c < s; ++c) {
      const int off = r.top ? -c : c;
      r.offsets.push_back(off);
      r.divides.push_back(region.polynomial.divide_linear(g + MultiPoly::constant(g.vars(), Rat(off))).has_value());
      r.lifted_divides.push_back(
          cell_poly.divide_linear(lifted + MultiPoly::constant(lifted.vars(), Rat(off))).has_value());
      r.opposite_divides.push_back(
          region.polynomial.divide_linear(g + MultiPoly::constant(g.vars(), Rat(-off))).has_value());
    }
    out.push_back(std::move(r));
  }
  if (out.empty()) throw std::invalid_argument("check_boundary_factors: region has no facet on the boundary");
  return out;
}

std::vector<BoundaryFactorReport> check_boundary_factors(const MultComplex& glued, const Weight& lambda) {
  std::vector<BoundaryFactorReport> out;
  for (const auto& r : slice_for_lambda(glued, lambda)) {
    try {
      auto part = check_boundary_factors(glued, lambda, r);
      out.insert(out.end(), part.begin(), part.end());
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

nlohmann::json JumpReport::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& [a, b] : windows) w.push_back({a, b});
  nlohmann::json j = {{"wall", wall},
                      {"j", this->j},
                      {"zero", zero},
                      {"windows", w},
                      {"predicted", {predicted.first, predicted.second}},
                      {"longest_run", longest_run},
                      {"jump", jump.to_string()},
                      {"ok", ok()}};
  if (!ok()) j["falsification"] = {{"theorem", "jump-factors"}, {"inputs", {{"wall", wall}}}, {"polynomial", jump.to_string()},
                                   {"missing_factor", "window of " + std::to_string(this->j * (this->k - this->j) - 1) + " parallel factors"}};
  return j;
}

JumpReport check_jump_factors(const MultiPoly& p1, const MultiPoly& p2, const MultiPoly& gamma,
                              const AffineHyperplane& wall) {
  const int k = wall.k, j = wall.j();
  JumpReport r;
  r.k = k;
  r.j = j;
  r.wall = wall.to_string();
  r.jump = p1 - p2;
  Rat lo_shift, hi_shift;
  bool first = true;
  for (const auto& W : subsets_of_size(k, j)) {
    Rat s = delta_shift(wall.V, W, k);
    if (first || s < lo_shift) lo_shift = s;
    if (first || s > hi_shift) hi_shift = s;
    first = false;
  }
  r.predicted = {static_cast<int>(hi_shift.get_num().get_si()), static_cast<int>(-lo_shift.get_num().get_si())};
  if (r.jump.is_zero()) {
    r.zero = true;
    return r;
  }
  const int s = j * (k - j);
  std::map<int, bool> divides;
  for (int c = -s - 1; c <= s + 1; ++c)
    divides[c] = r.jump.divide_linear(gamma + MultiPoly::constant(gamma.vars(), Rat(c))).has_value();
  for (int sm = 0; sm <= s; ++sm) {
    const int sp = s - sm;
    bool all = true;
    for (int c = -sm + 1; c <= sp - 1 && all; ++c) all = divides[c];
    if (all) r.windows.emplace_back(sm, sp);
  }
  if (divides[0]) {
    int lo = 0, hi = 0;
    while (divides.count(lo - 1) && divides[lo - 1]) --lo;
    while (divides.count(hi + 1) && divides[hi + 1]) ++hi;
    r.longest_run = hi - lo + 1;
  }
  return r;
}

JumpReport check_jump_factors(const MultiPoly& p1, const MultiPoly& p2, const AffineHyperplane& wall) {
  return check_jump_factors(p1, p2, wall.gamma(), wall);
}

std::optional<AffineHyperplane> wall_for_normal(int k, const IntVec& normal) {
  const IntVec target = sign_normalized(primitive(normal));
  for (const auto& U : canonical_subsets(k))
    for (const auto& V : subsets_of_size(k, static_cast<int>(U.size())))
      if (sign_normalized(primitive(gamma_coefficients(k, U, V))) == target) return make_hyperplane(k, U, V, V);
  return std::nullopt;
}

std::vector<CellJump> check_complex_jumps(const MultComplex& glued) {
  if (glued.polynomials.size() != glued.cells.cells.size())
    throw std::invalid_argument("check_complex_jumps: polynomials missing");
  std::vector<CellJump> out;
  for (const auto& [a, b] : glued.cells.adjacency) {
    const Cone shared = intersect(glued.cells.cells[a], glued.cells.cells[b]);
    if (shared.equations().size() != 1) throw std::logic_error("check_complex_jumps: adjacent cells do not share a facet");
    CellJump cj;
    cj.a = a;
    cj.b = b;
    auto wall = wall_for_normal(glued.k, shared.equations()[0]);
    if (!wall) {
      cj.report.jump = glued.polynomials[a] - glued.polynomials[b];
      cj.report.zero = cj.report.jump.is_zero();
      std::string n;
      for (const auto& x : shared.equations()[0]) n += (n.empty() ? "" : ",") + x.get_str();
      cj.report.wall = "normal (" + n + ")";
    } else {
      cj.report = check_jump_factors(glued.polynomials[a], glued.polynomials[b], *wall);
    }
    out.push_back(std::move(cj));
  }
  return out;
}

std::vector<RegionJump> check_slice_jumps(const MultComplex& glued, const Weight& lambda) {
  const int k = glued.k;
  const auto regions = slice_for_lambda(glued, lambda);
  std::map<std::pair<IntVec, Rat>, std::vector<int>> by_facet;
  std::vector<std::vector<Polyhedron::Halfspace>> ineqs;
  for (const auto& r : regions) ineqs.push_back(r.region.inequalities());
  // facets keyed by primitive normal and the offset scaled accordingly
  auto key = [](const Polyhedron::Halfspace& h) {
    IntVec n = primitive(h.normal);
    Rat scale = 0;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (h.normal[i] != 0) {
        scale = Rat(n[i]) / h.normal[i];
        break;
      }
    return std::make_pair(n, Rat(h.offset * scale));
  };
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (const auto& h : ineqs[i]) by_facet[key(h)].push_back(static_cast<int>(i));

  const auto subsets = canonical_subsets(k);
  std::vector<IntVec> directions;
  for (const auto& U : subsets) {
    IntVec d(k);
    for (int i = 0; i < k; ++i) d[i] = Int(k * std::binary_search(U.begin(), U.end(), i) - static_cast<int>(U.size()));
    directions.push_back(sign_normalized(primitive(d)));
  }

  std::vector<RegionJump> out;
  std::set<std::pair<int, int>> seen;
  for (const auto& [k1, members] : by_facet) {
    IntVec neg = k1.first;
    for (auto& x : neg) x = -x;
    auto it = by_facet.find({neg, -k1.second});
    if (it == by_facet.end()) continue;
    for (int a : members)
      for (int b : it->second) {
        const auto pr = std::minmax(a, b);
        if (a == b || !seen.insert(pr).second) continue;
        const Polyhedron shared = intersect(regions[a].region, regions[b].region);
        if (shared.dim() != k - 2) continue;
        RegionJump rj;
        rj.a = pr.first;
        rj.b = pr.second;
        const IntVec dir = sign_normalized(k1.first);
        std::optional<AffineHyperplane> wall;
        for (std::size_t u = 0; u < subsets.size() && !wall; ++u) {
          if (directions[u] != dir) continue;
          const Rat value = subset_sum(shared.vertices()[0], subsets[u]);
          for (const auto& V : subsets_of_size(k, static_cast<int>(subsets[u].size())))
            if (subset_sum(lambda.coords(), V) == value) {
              wall = make_hyperplane(k, subsets[u], V, V);
              break;
            }
        }
        const MultiPoly& p1 = regions[rj.a].polynomial;
        const MultiPoly& p2 = regions[rj.b].polynomial;
        if (wall) {
          rj.report = check_jump_factors(p1, p2, wall->gamma_at(lambda), *wall);
        } else {
          rj.report.jump = p1 - p2;
          rj.report.zero = rj.report.jump.is_zero();
          rj.report.wall = "unidentified";
        }
        out.push_back(std::move(rj));
      }
  }
  std::sort(out.begin(), out.end(), [](const RegionJump& x, const RegionJump& y) {
    return std::make_pair(x.a, x.b) < std::make_pair(y.a, y.b);
  });
  return out;
}

}  // namespace wm
