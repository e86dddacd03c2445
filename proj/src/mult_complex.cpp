#include "wm/mult_complex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wm/gt_patterns.hpp"
#include "wm/kostant.hpp"
#include "wm/linalg.hpp"

namespace wm {

namespace {

constexpr const char* kCacheVersion = "1";

void check_rank(int k, const char* what) {
  if (k < 2 || k > 4) throw std::invalid_argument(std::string(what) + ": k must be 2, 3 or 4");
}

int binom2(int k) { return (k - 1) * (k - 2) / 2; }

const PiecewiseKostant& piecewise_kostant(int n) {
  static const PiecewiseKostant a1(1), a2(2), a3(3);
  switch (n) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    default: throw std::invalid_argument("piecewise_kostant: n must be 1, 2 or 3");
  }
}

IntVec sign_normalized(IntVec a) {
  auto nz = std::find_if(a.begin(), a.end(), [](const Int& x) { return x != 0; });
  if (nz != a.end() && *nz < 0)
    for (auto& x : a) x = -x;
  return a;
}

/// lambda_1 as a functional on (l, b).
RatVec lambda1_functional(int k) {
  RatVec a(2 * k - 2, Rat(0));
  for (int j = 0; j + 1 < k; ++j) a[j] = make_rat(k - 1 - j, k);
  return a;
}

RatMat lambda_projection(int k) {
  RatMat p(k - 1, 2 * k - 2);
  for (int i = 0; i + 1 < k; ++i) p(i, i) = 1;
  return p;
}

Cone image_by_rays(const Cone& c, const RatMat& m) {
  std::vector<IntVec> rays;
  for (const auto& r : c.rays()) rays.push_back(primitive(m * to_rat(r)));
  return Cone::from_rays(m.rows(), rays);
}

std::vector<std::vector<int>> permutations_of(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Union-find over n elements; returns the class index of each element in order of first appearance.
std::vector<int> classes(int n, const std::vector<std::pair<int, int>>& links, int* count) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : links) parent[find(a)] = find(b);
  std::map<int, int> id;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    auto it = id.emplace(find(i), static_cast<int>(id.size())).first;
    out[i] = it->second;
  }
  *count = static_cast<int>(id.size());
  return out;
}

/// All c in N^d with sum(c) == total.
void compositions(int d, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(d, total - x, cur, out);
    cur.pop_back();
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

RatMat lb_to_lambda_beta(int k) {
  auto rs = root_system(k);
  RatMat m(2 * k, 2 * k - 2);
  for (int j = 0; j + 1 < k; ++j)
    for (int i = 0; i < k; ++i) {
      m(i, j) = rs.fundamental_weights[j][i];
      m(k + i, k - 1 + j) = rs.fundamental_weights[j][i];
    }
  return m;
}

RatMat lambda_beta_to_lb(int k) {
  RatMat m(2 * k - 2, 2 * k);
  for (int j = 0; j + 1 < k; ++j) {
    m(j, j) = 1;
    m(j, j + 1) = -1;
    m(k - 1 + j, k + j) = 1;
    m(k - 1 + j, k + j + 1) = -1;
  }
  return m;
}

RatVec to_lb(const Weight& lambda, const Weight& beta) {
  RatVec out = lambda.fundamental();
  RatVec b = beta.fundamental();
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

IntVec ray_lambda_beta(int k, const IntVec& lb_ray) { return primitive(lb_to_lambda_beta(k) * to_rat(lb_ray)); }

RatMat beta_permutation_matrix(int k, const std::vector<int>& sigma) {
  RatMat p(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    p(i, i) = 1;
    p(k + sigma[i], k + i) = 1;
  }
  return lambda_beta_to_lb(k) * p * lb_to_lambda_beta(k);
}

std::vector<Cone> restricted_base_cones(int k, int* bases) {
  check_rank(k, "restricted_base_cones");
  const SPFSystem sys = build_spf_system(k);
  const RatMat phi = sys.B * lb_to_lambda_beta(k);
  const auto all = enumerate_bases(sys.E);
  if (bases) *bases = static_cast<int>(all.size());
  std::set<Cone> out;
  for (const auto& b : all) {
    auto inv = inverse(sys.E.select_cols(b));
    if (!inv) throw std::logic_error("restricted_base_cones: singular basis");
    const RatMat rows = *inv * phi;
    std::vector<IntVec> ineqs;
    for (std::size_t r = 0; r < rows.rows(); ++r)
      if (!is_zero(rows.row(r))) ineqs.push_back(primitive(rows.row(r)));
    Cone c = Cone::from_halfspaces(2 * k - 2, ineqs);
    if (!c.is_zero()) out.insert(std::move(c));
  }
  return {out.begin(), out.end()};
}

MultComplex restricted_chamber_complex(int k) {
  check_rank(k, "restricted_chamber_complex");
  MultComplex mc;
  mc.k = k;
  auto cones = restricted_base_cones(k, &mc.bases);
  mc.restricted_cones = static_cast<int>(cones.size());
  mc.cells = chamber_complex(cones);
  canonicalize(mc.cells);
  return mc;
}

std::vector<int> MultComplex::locate(const RatVec& lb) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < cells.cells.size(); ++i)
    if (cells.cells[i].contains(lb)) out.push_back(static_cast<int>(i));
  return out;
}

nlohmann::json MultComplex::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["glued"] = glued;
  j["bases"] = bases;
  j["restricted_cones"] = restricted_cones;
  j["complex"] = cells.to_json();
  nlohmann::json polys = nlohmann::json::array(), rays = nlohmann::json::array();
  for (const auto& p : polynomials) polys.push_back(p.to_json());
  for (const auto& c : cells.cells) {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : c.rays()) {
      std::vector<std::string> v;
      for (const auto& x : ray_lambda_beta(k, r)) v.push_back(x.get_str());
      rs.push_back(v);
    }
    rays.push_back(rs);
  }
  j["polynomials"] = polys;
  j["rays_lambda_beta"] = rays;
  j["orbit"] = orbit;
  j["orbit_count"] = orbit_count;
  j["symmetric"] = symmetric;
  return j;
}

MultComplex MultComplex::from_json(const nlohmann::json& j) {
  MultComplex mc;
  mc.k = j.at("k").get<int>();
  mc.glued = j.at("glued").get<bool>();
  mc.bases = j.at("bases").get<int>();
  mc.restricted_cones = j.at("restricted_cones").get<int>();
  mc.cells = ComplexOfCones::from_json(j.at("complex"));
  for (const auto& p : j.at("polynomials")) mc.polynomials.push_back(MultiPoly::from_json(p));
  mc.orbit = j.at("orbit").get<std::vector<int>>();
  mc.orbit_count = j.at("orbit_count").get<int>();
  mc.symmetric = j.at("symmetric").get<bool>();
  return mc;
}

Int multiplicity_lb(int k, const IntVec& lb) {
  check_rank(k, "multiplicity_lb");
  if (static_cast<int>(lb.size()) != 2 * k - 2) throw std::invalid_argument("multiplicity_lb: wrong number of coordinates");
  Int congruence = 0;
  RatVec l, b;
  for (int j = 0; j + 1 < k; ++j) {
    if (lb[j] < 0) throw std::invalid_argument("multiplicity_lb: lambda must be dominant");
    congruence += (j + 1) * (lb[j] - lb[k - 1 + j]);
    l.push_back(Rat(lb[j]));
    b.push_back(Rat(lb[k - 1 + j]));
  }
  if (congruence % k != 0) return 0;
  return multiplicity_kmf(piecewise_kostant(k - 1), Weight::from_fundamental(l), Weight::from_fundamental(b));
}

void assign_polynomials(MultComplex& mc) {
  const int k = mc.k;
  const int d = 2 * k - 2, K = binom2(k);
  const auto vars = lb_vars(k);
  DegreeBounds bounds;
  std::vector<int> lvars(k - 1), bvars(k - 1);
  std::iota(lvars.begin(), lvars.end(), 0);
  std::iota(bvars.begin(), bvars.end(), k - 1);
  bounds.groups = {lvars, bvars};
  bounds.group_max = {K, K};
  bounds.total_max = K;

  // a principal lattice of order K in the simplex spanned by the shifted rays is unisolvent for total degree <= K
  std::vector<std::vector<int>> grid, held_out;
  for (int t = 0; t <= K; ++t) {
    std::vector<int> cur;
    compositions(d, t, cur, grid);
  }
  for (int i = 0; i < d; ++i) {
    std::vector<int> c(d, 0);
    c[i] = K + 1;
    held_out.push_back(c);
  }
  held_out.push_back(std::vector<int>(d, K));

  mc.polynomials.clear();
  for (std::size_t ci = 0; ci < mc.cells.cells.size(); ++ci) {
    const Cone& cell = mc.cells.cells[ci];
    const auto pieces = triangulate(cell);
    std::vector<Sample> samples;
    auto add_point = [&](const std::vector<int>& simplex, const std::vector<int>& c) {
      IntVec p(d, Int(0));
      for (std::size_t i = 0; i < simplex.size(); ++i)
        for (int t = 0; t < d; ++t) p[t] += k * (1 + c[i]) * cell.rays()[simplex[i]][t];
      samples.push_back({to_rat(p), Rat(multiplicity_lb(k, p))});
    };
    for (const auto& c : grid) add_point(pieces[0], c);
    for (const auto& c : held_out) add_point(pieces[0], c);
    for (std::size_t s = 1; s < pieces.size(); ++s) {
      std::vector<int> c(d, 0);
      c[s % d] = 1;
      add_point(pieces[s], c);
    }
    try {
      mc.polynomials.push_back(fit_polynomial(vars, samples, bounds));
    } catch (const FitError& e) {
      throw std::runtime_error("assign_polynomials: cell " + std::to_string(ci) + ": " + e.what());
    }
  }
}

void compute_orbits(MultComplex& mc) {
  const int k = mc.k;
  std::map<Cone, int> index;
  for (std::size_t i = 0; i < mc.cells.cells.size(); ++i) index.emplace(mc.cells.cells[i], static_cast<int>(i));
  std::vector<std::pair<int, int>> links;
  mc.symmetric = true;
  for (const auto& sigma : permutations_of(k)) {
    const RatMat m = beta_permutation_matrix(k, sigma);
    for (std::size_t i = 0; i < mc.cells.cells.size(); ++i) {
      auto it = index.find(image_by_rays(mc.cells.cells[i], m));
      if (it == index.end()) mc.symmetric = false;
      else links.emplace_back(static_cast<int>(i), it->second);
    }
  }
  mc.orbit = classes(static_cast<int>(mc.cells.cells.size()), links, &mc.orbit_count);
}

MultComplex glue_by_polynomial(const MultComplex& mc) {
  if (mc.polynomials.size() != mc.cells.cells.size()) throw std::invalid_argument("glue_by_polynomial: polynomials missing");
  std::map<MultiPoly, std::vector<int>> groups;
  for (std::size_t i = 0; i < mc.polynomials.size(); ++i) groups[mc.polynomials[i]].push_back(static_cast<int>(i));
  const RatVec trunc = lambda1_functional(mc.k);
  std::vector<std::pair<Cone, MultiPoly>> glued;
  for (const auto& [poly, members] : groups) {
    std::vector<Cone> cells;
    for (int i : members) cells.push_back(mc.cells.cells[i]);
    if (cells.size() == 1) {
      glued.emplace_back(cells[0], poly);
      continue;
    }
    Rat uv, hv;
    auto u = convex_union(cells, trunc, &uv, &hv);
    if (!u) {
      std::string ids;
      for (int i : members) ids += " " + std::to_string(i);
      throw std::runtime_error("glue_by_polynomial: union of cells" + ids + " is not convex (volume " + to_string(uv) +
                               " vs hull " + to_string(hv) + ")");
    }
    glued.emplace_back(*u, poly);
  }
  std::sort(glued.begin(), glued.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  MultComplex out;
  out.k = mc.k;
  out.glued = true;
  out.bases = mc.bases;
  out.restricted_cones = mc.restricted_cones;
  out.cells.ambient = mc.cells.ambient;
  out.cells.dim = mc.cells.dim;
  for (auto& [c, p] : glued) {
    out.cells.cells.push_back(std::move(c));
    out.polynomials.push_back(std::move(p));
  }
  canonicalize(out.cells);
  compute_orbits(out);
  return out;
}

MultComplex load_or_build(int k, bool glued, bool use_cache) {
  check_rank(k, "load_or_build");
  namespace fs = std::filesystem;
  const char* env = std::getenv("WM_CACHE_DIR");
  const fs::path dir = env && *env ? fs::path(env) : fs::path(".wm_cache");
  const fs::path file =
      dir / ("mult_complex_k" + std::to_string(k) + (glued ? "_glued" : "_raw") + "_v" + kCacheVersion + ".json");
  if (use_cache && fs::exists(file)) {
    try {
      std::ifstream in(file);
      auto j = nlohmann::json::parse(in);
      if (j.at("version") == kCacheVersion && j.at("hash") == hex(fnv1a(j.at("data").dump())))
        return MultComplex::from_json(j.at("data"));
    } catch (const std::exception&) {
      // unreadable cache entries are rebuilt
    }
  }
  MultComplex mc;
  if (glued) {
    mc = glue_by_polynomial(load_or_build(k, false, use_cache));
  } else {
    mc = restricted_chamber_complex(k);
    assign_polynomials(mc);
    compute_orbits(mc);
  }
  if (use_cache) {
    nlohmann::json j;
    j["version"] = kCacheVersion;
    j["data"] = mc.to_json();
    j["hash"] = hex(fnv1a(j["data"].dump()));
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = file.string() + ".tmp";
    std::ofstream out(tmp);
    if (out << j.dump()) {
      out.close();
      fs::rename(tmp, file, ec);
    }
  }
  return mc;
}

nlohmann::json LambdaComplex::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["complex"] = cells.to_json();
  j["present"] = present;
  j["distinct_projections"] = distinct_projections;
  j["distinct_generator_sets"] = distinct_generator_sets;
  j["symmetry_classes"] = symmetry_classes;
  return j;
}

LambdaComplex lambda_complex(const MultComplex& mc) {
  const int k = mc.k;
  const RatMat p = lambda_projection(k);
  std::vector<Cone> images;
  std::set<std::set<IntVec>> generators;
  for (const auto& c : mc.cells.cells) {
    std::set<IntVec> g;
    for (const auto& r : c.rays()) g.insert(primitive(p * to_rat(r)));
    generators.insert(g);
    images.push_back(Cone::from_rays(k - 1, std::vector<IntVec>(g.begin(), g.end())));
  }
  std::set<Cone> distinct(images.begin(), images.end());
  LambdaComplex lc;
  lc.k = k;
  lc.distinct_projections = static_cast<int>(distinct.size());
  lc.distinct_generator_sets = static_cast<int>(generators.size());
  lc.cells = common_refinement({distinct.begin(), distinct.end()});
  canonicalize(lc.cells);
  for (const auto& cell : lc.cells.cells) {
    std::vector<int> present;
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i].contains_cone(cell)) present.push_back(static_cast<int>(i));
    lc.present.push_back(present);
  }
  RatMat rev(k - 1, k - 1);
  for (int i = 0; i + 1 < k; ++i) rev(i, k - 2 - i) = 1;
  std::map<Cone, int> index;
  for (std::size_t i = 0; i < lc.cells.cells.size(); ++i) index.emplace(lc.cells.cells[i], static_cast<int>(i));
  std::vector<std::pair<int, int>> links;
  for (std::size_t i = 0; i < lc.cells.cells.size(); ++i) {
    auto it = index.find(image_by_rays(lc.cells.cells[i], rev));
    if (it == index.end()) throw std::logic_error("lambda_complex: not closed under lambda -> -lambda^rev");
    links.emplace_back(static_cast<int>(i), it->second);
  }
  classes(static_cast<int>(lc.cells.cells.size()), links, &lc.symmetry_classes);
  return lc;
}

std::string lambda_complex_svg(const LambdaComplex& lc) {
  if (lc.k != 4) throw std::invalid_argument("lambda_complex_svg: k must be 4");
  const auto rs = root_system(4);
  // rows of T_4 giving x, y, z
  const std::vector<RatVec> t = {{make_rat(1, 2), make_rat(-1, 2), make_rat(-1, 2), make_rat(1, 2)},
                                 {make_rat(1, 2), make_rat(-1, 2), make_rat(1, 2), make_rat(-1, 2)},
                                 {make_rat(1, 2), make_rat(1, 2), make_rat(-1, 2), make_rat(-1, 2)}};
  std::vector<std::vector<std::pair<double, double>>> polys;
  double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
  for (const auto& cell : lc.cells.cells) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : cell.rays()) {
      RatVec lam(4, Rat(0));
      for (int j = 0; j < 3; ++j) lam = add(lam, scale(rs.fundamental_weights[j], Rat(r[j])));
      Rat z = dot(t[2], lam);
      double x = Rat(dot(t[0], lam) / z).get_d(), y = Rat(dot(t[1], lam) / z).get_d();
      pts.emplace_back(x, y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    double cx = 0, cy = 0;
    for (auto [x, y] : pts) {
      cx += x / pts.size();
      cy += y / pts.size();
    }
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
      return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
    });
    polys.push_back(pts);
  }
  const double size = 600, margin = 20;
  const double sc = (size - 2 * margin) / std::max(xmax - xmin, ymax - ymin);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    os << "  <polygon fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    double cx = 0, cy = 0;
    for (auto [x, y] : polys[i]) {
      double px = margin + (x - xmin) * sc, py = size - margin - (y - ymin) * sc;
      os << px << "," << py << " ";
      cx += px / polys[i].size();
      cy += py / polys[i].size();
    }
    os << "\"/>\n  <text x=\"" << cx << "\" y=\"" << cy << "\" font-size=\"8\" text-anchor=\"middle\">" << i + 1
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<SliceRegion> slice_for_lambda(const MultComplex& mc, const Weight& lambda) {
  const int k = mc.k;
  if (lambda.k() != k) throw std::invalid_argument("slice_for_lambda: rank mismatch");
  if (!lambda.is_dominant()) throw std::invalid_argument("slice_for_lambda: lambda must be dominant");
  const auto rs = root_system(k);
  const RatVec l = lambda.fundamental();
  RatVec base = l;
  base.resize(2 * k - 2, Rat(0));
  std::vector<RatVec> basis;
  for (int i = 0; i + 1 < k; ++i) {
    RatVec e(2 * k - 2, Rat(0));
    e[k - 1 + i] = 1;
    basis.push_back(e);
  }
  std::vector<std::optional<Rat>> fixed(2 * k - 2);
  for (int i = 0; i + 1 < k; ++i) fixed[i] = l[i];
  std::vector<SliceRegion> out;
  for (std::size_t i = 0; i < mc.cells.cells.size(); ++i) {
    auto p = affine_slice(mc.cells.cells[i], base, basis);
    if (p.dim() != k - 1) continue;
    std::vector<RatVec> verts;
    for (const auto& v : p.vertices()) verts.push_back(Weight::from_fundamental(v).coords());
    SliceRegion r;
    r.cell = static_cast<int>(i);
    r.region = Polyhedron::from_vertices(k, verts);
    if (i < mc.polynomials.size()) r.polynomial = mc.polynomials[i].partial_eval(fixed);
    out.push_back(std::move(r));
  }
  return out;
}

Rat evaluate_at_beta(const SliceRegion& r, const Weight& lambda, const Weight& beta) {
  return r.polynomial.eval(to_lb(lambda, beta));
}

std::vector<RatVec> DerivedWall::vertices(const Weight& lambda) const {
  std::vector<RatVec> out;
  for (const auto& tau : vertex_permutations) out.push_back(act(tau, lambda.coords()));
  std::sort(out.begin(), out.end());
  return out;
}

bool reproduces_dh_walls(const WallDerivation& wd, const Weight& lambda) {
  std::set<std::vector<RatVec>> got, want;
  for (const auto& w : wd.walls)
    if (w.involves_beta) got.insert(w.vertices(lambda));
  for (const auto& w : dh_walls(lambda)) {
    auto v = w.polytope.vertices();
    std::sort(v.begin(), v.end());
    want.insert(v);
  }
  return got == want;
}

WallDerivation derive_walls(const MultComplex& glued) {
  const int k = glued.k;
  const RatVec trunc = lambda1_functional(k);
  const RatMat proj = lambda_projection(k);
  const auto rs = root_system(k);
  std::vector<IntVec> units;
  for (int i = 0; i + 1 < k; ++i) {
    IntVec e(k - 1, Int(0));
    e[i] = 1;
    units.push_back(e);
  }
  const Cone chamber = Cone::from_rays(k - 1, units);
  const auto perms = permutations_of(k);

  // facets grouped by oriented normal
  std::map<IntVec, std::vector<Cone>> oriented;
  for (const auto& cell : glued.cells.cells)
    for (std::size_t f = 0; f < cell.facets().size(); ++f) oriented[cell.facets()[f]].push_back(cell.facet_cone(f));
  std::map<IntVec, std::vector<IntVec>> directions;
  for (const auto& [n, _] : oriented) directions[sign_normalized(n)].push_back(n);

  WallDerivation out;
  out.normal_directions = static_cast<int>(directions.size());
  for (const auto& [normal, sides] : directions) {
    // every side covers the same wall; each one is certified separately
    std::optional<Cone> wall;
    for (const auto& side : sides) {
      Rat uv, hv;
      auto u = convex_union(oriented[side], trunc, &uv, &hv);
      if (!u) throw std::runtime_error("derive_walls: union of facets with normal " + to_string(to_rat(side)) +
                                       " is not convex (volume " + to_string(uv) + " vs hull " + to_string(hv) + ")");
      if (wall && *wall != *u) throw std::runtime_error("derive_walls: the two sides of a wall differ");
      wall = *u;
    }
    DerivedWall dw;
    dw.normal = normal;
    dw.involves_beta = std::any_of(normal.begin() + (k - 1), normal.end(), [](const Int& x) { return x != 0; });
    // faces meeting L(lambda) in a single point have dimension k - 1 (facets of facets for k = 4)
    std::set<Cone> faces{*wall};
    while (faces.begin()->dim() > k - 1) {
      std::set<Cone> next;
      for (const auto& c : faces)
        for (std::size_t f = 0; f < c.facets().size(); ++f) next.insert(c.facet_cone(f));
      faces = std::move(next);
    }
    for (const auto& f : faces) {
      if (image_by_rays(f, proj) != chamber) continue;
      if (static_cast<int>(f.rays().size()) != k - 1)
        throw std::runtime_error("derive_walls: vertex cone over the Weyl chamber is not simplicial");
      // rays (omega_j, tau omega_j) up to scale
      std::vector<RatVec> bimg(k - 1);
      for (const auto& r : f.rays()) {
        int j = -1;
        for (int i = 0; i + 1 < k; ++i)
          if (r[i] != 0) j = i;
        RatVec b;
        for (int i = 0; i + 1 < k; ++i) b.push_back(Rat(r[k - 1 + i]) / Rat(r[j]));
        bimg[j] = Weight::from_fundamental(b).coords();
      }
      bool found = false;
      for (const auto& tau : perms) {
        bool ok = true;
        for (int j = 0; j + 1 < k && ok; ++j) ok = act(tau, rs.fundamental_weights[j]) == bimg[j];
        if (ok) {
          dw.vertex_permutations.push_back(tau);
          found = true;
          break;
        }
      }
      if (!found) throw std::runtime_error("derive_walls: vertex cone is not of the form (omega, tau omega)");
    }
    std::sort(dw.vertex_permutations.begin(), dw.vertex_permutations.end());
    out.walls.push_back(std::move(dw));
  }
  return out;
}

MultiPoly scaling_polynomial(const Weight& lambda, const Weight& beta, int t_max) {
  const int k = lambda.k();
  const int deg = 2 * binom2(k);
  if (t_max < deg + 2) throw std::invalid_argument("scaling_polynomial: t_max must be at least 2 C(k-1,2) + 2");
  if (!to_gl_pair(lambda, beta)) throw std::invalid_argument("scaling_polynomial: lambda - beta is not in the root lattice");
  std::vector<Sample> samples;
  for (int t = 1; t <= t_max; ++t) {
    auto tl = Weight::from_coords(scale(lambda.coords(), Rat(t)));
    auto tb = Weight::from_coords(scale(beta.coords(), Rat(t)));
    samples.push_back({RatVec{Rat(t)}, Rat(count_gt(tl, tb))});
  }
  DegreeBounds bounds;
  bounds.total_max = deg;
  try {
    return fit_polynomial({"t"}, samples, bounds);
  } catch (const FitError& e) {
    throw std::runtime_error(std::string("scaling_polynomial: no exact polynomial fit: ") + e.what());
  }
}

}  // namespace wm
