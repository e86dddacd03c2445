#include "wm/kostant.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wm/linalg.hpp"

namespace wm {

namespace {

/// [i, j] index ranges of the positive roots in the column order of kostant_matrix.
std::vector<std::pair<int, int>> root_ranges(int n) {
  std::vector<std::pair<int, int>> out;
  for (int h = 0; h < n; ++h)
    for (int i = 0; i + h < n; ++i) out.emplace_back(i, i + h);
  return out;
}

}  // namespace

RatMat kostant_matrix(int n) {
  if (n < 1) throw std::invalid_argument("kostant_matrix: n must be positive");
  auto ranges = root_ranges(n);
  RatMat m(n, ranges.size());
  for (std::size_t c = 0; c < ranges.size(); ++c)
    for (int i = ranges[c].first; i <= ranges[c].second; ++i) m(i, c) = 1;
  return m;
}

KostantCounter::KostantCounter(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("KostantCounter: n must be positive");
  // non-simple roots, highest first; the simple roots are resolved directly
  auto ranges = root_ranges(n);
  for (std::size_t c = ranges.size(); c-- > static_cast<std::size_t>(n);)
    supports_.push_back({ranges[c].first, ranges[c].second});
}

Int KostantCounter::operator()(const IntVec& v) {
  if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("kostant_pf: wrong number of coordinates");
  for (const auto& x : v)
    if (x < 0) return 0;
  return count(0, v);
}

Int KostantCounter::count(std::size_t col, const IntVec& v) {
  if (col == supports_.size()) return 1;
  auto key = std::make_pair(col, v);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const int i = supports_[col][0], j = supports_[col][1];
  Int top = v[i];
  for (int t = i + 1; t <= j; ++t) top = std::min(top, v[t]);
  Int total = 0;
  IntVec w = v;
  for (Int t = 0; t <= top; ++t) {
    total += count(col + 1, w);
    for (int s = i; s <= j; ++s) w[s] -= 1;
  }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::move(key), total);
  return total;
}

Int KostantCounter::on_weight(const RatVec& w) {
  auto c = simple_root_coords(w);
  if (!c) return 0;
  return (*this)(*c);
}

Int kostant_pf(int n, const IntVec& v) {
  KostantCounter k(n);
  return k(v);
}

std::optional<IntVec> simple_root_coords(const RatVec& w) {
  Rat acc = 0;
  IntVec c;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    acc += w[i];
    if (!is_integral(acc)) return std::nullopt;
    c.push_back(acc.get_num());
  }
  if (acc + w.back() != 0) throw std::invalid_argument("simple_root_coords: coordinates must sum to zero");
  return c;
}

std::vector<SignedPermutation> signed_permutations(int k) {
  std::vector<SignedPermutation> out;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inv = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) inv += p[a] > p[b];
    out.push_back({p, inv % 2 ? -1 : 1});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

RatVec act(const std::vector<int>& sigma, const RatVec& x) {
  RatVec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[sigma[i]] = x[i];
  return y;
}

namespace {

template <class Counter>
Int alternating_sum(Counter& kpf, const Weight& lambda, const Weight& beta) {
  const int k = lambda.k();
  if (beta.k() != k || kpf.n() != k - 1) throw std::invalid_argument("multiplicity_kmf: rank mismatch");
  if (!lambda.is_dominant()) throw std::invalid_argument("multiplicity_kmf: lambda must be dominant");
  const RatVec delta = root_system(k).delta;
  const RatVec ld = add(lambda.coords(), delta);
  const RatVec bd = add(beta.coords(), delta);
  Int total = 0;
  for (const auto& s : signed_permutations(k)) {
    Int term = kpf.on_weight(sub(act(s.perm, ld), bd));
    if (s.sign > 0) total += term;
    else total -= term;
  }
  return total;
}

}  // namespace

Int multiplicity_kmf(KostantCounter& kpf, const Weight& lambda, const Weight& beta) {
  return alternating_sum(kpf, lambda, beta);
}

Int multiplicity_kmf(const PiecewiseKostant& kpf, const Weight& lambda, const Weight& beta) {
  return alternating_sum(kpf, lambda, beta);
}

PiecewiseKostant::PiecewiseKostant(int n) : kpf_(kpf_chamber_complex(n)) {}

Int PiecewiseKostant::operator()(const IntVec& v) const {
  if (static_cast<int>(v.size()) != kpf_.n) throw std::invalid_argument("PiecewiseKostant: wrong number of coordinates");
  for (const auto& x : v)
    if (x < 0) return 0;
  const RatVec x = to_rat(v);
  for (std::size_t i = 0; i < kpf_.complex.cells.size(); ++i)
    if (kpf_.complex.cells[i].contains(v)) {
      Rat r = kpf_.polynomials[i].eval(x);
      if (!is_integral(r)) throw std::logic_error("PiecewiseKostant: non-integral value");
      return r.get_num();
    }
  return 0;
}

Int PiecewiseKostant::on_weight(const RatVec& v) const {
  auto c = simple_root_coords(v);
  if (!c) return 0;
  return (*this)(*c);
}

Int multiplicity_kmf(const Weight& lambda, const Weight& beta) {
  KostantCounter kpf(lambda.k() - 1);
  return multiplicity_kmf(kpf, lambda, beta);
}

int KPFInstance::label(const RatVec& v) const {
  bool on_wall = false;
  for (std::size_t i = 0; i < complex.cells.size(); ++i) {
    if (complex.cells[i].contains_relint(v)) return static_cast<int>(i) + 1;
    on_wall = on_wall || complex.cells[i].contains(v);
  }
  return on_wall ? -1 : 0;
}

const MultiPoly& KPFInstance::polynomial(int label) const {
  if (label == 0) return zero;
  if (label < 0 || label > static_cast<int>(polynomials.size()))
    throw std::out_of_range("KPFInstance::polynomial: bad label");
  return polynomials[label - 1];
}

nlohmann::json KPFInstance::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["bases"] = bases;
  j["complex"] = complex.to_json();
  nlohmann::json polys = nlohmann::json::array();
  for (std::size_t i = 0; i < polynomials.size(); ++i)
    polys.push_back({{"label", i + 1}, {"polynomial", polynomials[i].to_json()}, {"text", polynomials[i].to_string()}});
  j["polynomials"] = polys;
  return j;
}

KPFInstance kpf_chamber_complex(int n, bool stretch) {
  if (n < 1) throw std::invalid_argument("kpf_chamber_complex: n must be positive");
  if (n > 3 && !stretch) throw std::invalid_argument("kpf_chamber_complex: n > 3 requires the stretch flag");
  KPFInstance out;
  out.n = n;
  out.M = kostant_matrix(n);
  out.bases = enumerate_bases(out.M);
  std::vector<Cone> cones;
  for (const auto& b : out.bases) {
    std::vector<IntVec> rays;
    for (int c : b) rays.push_back(primitive(out.M.col(c)));
    cones.push_back(Cone::from_rays(n, rays));
  }
  out.complex = chamber_complex(cones);
  canonicalize(out.complex);
  const auto vars = indexed_vars("v", n);
  out.zero = MultiPoly(vars);

  DegreeBounds bounds;
  bounds.total_max = n * (n - 1) / 2;
  KostantCounter kpf(n);
  for (const auto& cell : out.complex.cells) {
    for (long t = 4L * (n + 1);; t *= 2) {
      std::vector<Polyhedron::Halfspace> le;
      for (const auto& f : cell.facets()) le.push_back({scale(to_rat(f), Rat(-1)), Rat(0)});
      le.push_back({RatVec(n, Rat(1)), Rat(t)});
      std::vector<Sample> samples;
      for (const auto& p : lattice_points(polytope_from_halfspaces(n, le)))
        if (cell.contains_relint(to_rat(p))) samples.push_back({to_rat(p), Rat(kpf(p))});
      try {
        out.polynomials.push_back(fit_polynomial(vars, samples, bounds));
        break;
      } catch (const FitError& e) {
        if (e.kind != FitError::Kind::Underdetermined || t > 4096) throw;
      }
    }
  }
  return out;
}

std::vector<IntVec> kpf_wall_normals(const KPFInstance& kpf) {
  std::set<IntVec> out;
  for (const auto& cell : kpf.complex.cells)
    for (const auto& f : cell.facets()) {
      IntVec a = f;
      auto nz = std::find_if(a.begin(), a.end(), [](const Int& x) { return x != 0; });
      if (nz != a.end() && *nz < 0)
        for (auto& x : a) x = -x;
      out.insert(a);
    }
  return {out.begin(), out.end()};
}

Rat kostant_volume(int n, const RatVec& v) {
  if (static_cast<int>(v.size()) != n) throw std::invalid_argument("kostant_volume: wrong number of coordinates");
  for (const auto& x : v)
    if (x < 0) return 0;
  const RatMat m = kostant_matrix(n);
  const std::size_t cols = m.cols();
  if (cols == static_cast<std::size_t>(n)) return 1;
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(primitive(m.row(i)));
  auto kb = integer_kernel_basis(rows, cols);
  const std::size_t d = kb.size();
  // x = (v, 0, ..) + sum z_j kb_j >= 0, the first n columns being the simple roots
  std::vector<Polyhedron::Halfspace> le;
  for (std::size_t i = 0; i < cols; ++i) {
    RatVec a(d);
    for (std::size_t j = 0; j < d; ++j) a[j] = -Rat(kb[j][i]);
    le.push_back({a, i < static_cast<std::size_t>(n) ? v[i] : Rat(0)});
  }
  auto p = polytope_from_halfspaces(d, le);
  if (p.empty() || p.dim() < static_cast<int>(d)) return 0;
  return p.volume();
}

Rat dh_density(const Weight& lambda, const Weight& beta) {
  const int k = lambda.k();
  if (beta.k() != k) throw std::invalid_argument("dh_density: rank mismatch");
  if (!lambda.is_dominant()) throw std::invalid_argument("dh_density: lambda must be dominant");
  for (const auto& w : dh_walls(lambda))
    if (w.polytope.contains(beta.coords())) throw DegenerateInput("dh_density: beta lies on a wall");
  Rat total = 0;
  for (const auto& s : signed_permutations(k)) {
    RatVec w = sub(act(s.perm, lambda.coords()), beta.coords());
    RatVec c;
    Rat acc = 0;
    for (int i = 0; i + 1 < k; ++i) c.push_back(acc += w[i]);
    total += s.sign * kostant_volume(k - 1, c);
  }
  return total;
}

}  // namespace wm
