#include "wm/polyhedra.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <cmath>
#include <map>
#include <set>

#include "wm/linalg.hpp"

namespace wm {

namespace {

using Bits = boost::dynamic_bitset<>;

Rat dot_ir(const IntVec& a, const RatVec& x) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) s += a[i] * x[i];
  return s;
}

IntVec combine(const Int& a, const IntVec& x, const Int& b, const IntVec& y) {
  IntVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + b * y[i];
  return primitive(r);
}

IntVec negated(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

bool all_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

int rank_of(const std::vector<IntVec>& a, const std::vector<IntVec>& b = {}) {
  std::vector<IntVec> m = a;
  m.insert(m.end(), b.begin(), b.end());
  if (m.empty()) return 0;
  return bareiss_rank(std::move(m));
}

/// Reduced echelon basis of a subspace, rows made primitive.
std::vector<IntVec> canonical_basis(const std::vector<IntVec>& rows, std::size_t d) {
  if (rows.empty()) return {};
  RatMat m(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
  auto piv = rref(m);
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(primitive(m.row(i)));
  return out;
}

/// Orthogonal projection onto the complement of span(rows).
class Projector {
 public:
  explicit Projector(const std::vector<IntVec>& rows) : rows_(rows) {
    if (rows_.empty()) return;
    std::size_t r = rows_.size();
    std::size_t d = rows_[0].size();
    RatMat e(r, d);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j) e(i, j) = rows_[i][j];
    auto g = inverse(e * e.transpose());
    if (!g) throw std::logic_error("projector basis is dependent");
    ginv_e_ = *g * e;
  }
  RatVec apply(const RatVec& v) const {
    if (rows_.empty()) return v;
    RatVec c = ginv_e_ * v;
    RatVec out = v;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] -= c[i] * rows_[i][j];
    return out;
  }
  IntVec apply(const IntVec& v) const { return rows_.empty() ? primitive(v) : primitive(apply(to_rat(v))); }

 private:
  std::vector<IntVec> rows_;
  RatMat ginv_e_;
};

struct DDResult {
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;
};

/// Incremental double description of {x : eqs·x = 0, ineqs·x >= 0}.
DDResult double_description(std::size_t d, const std::vector<IntVec>& ineqs_in, const std::vector<IntVec>& eqs) {
  std::vector<IntVec> ineqs;
  {
    std::set<IntVec> seen;
    for (const auto& a : ineqs_in) {
      IntVec p = primitive(a);
      if (all_zero(p) || !seen.insert(p).second) continue;
      ineqs.push_back(p);
    }
  }
  const std::size_t m = ineqs.size();
  std::vector<IntVec> lin;
  for (std::size_t i = 0; i < d; ++i) {
    IntVec e(d, Int(0));
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<IntVec> rays;
  std::vector<Bits> tight;
  Bits processed(m);

  auto step = [&](const IntVec& a, bool eq, std::size_t j) {
    for (std::size_t i = 0; i < lin.size(); ++i) {
      Int al0 = dot(a, lin[i]);
      if (sgn(al0) == 0) continue;
      IntVec l0 = lin[i];
      if (sgn(al0) < 0) {
        l0 = negated(l0);
        al0 = -al0;
      }
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto& l : lin) {
        Int al = dot(a, l);
        if (sgn(al) != 0) l = combine(al0, l, -al, l0);
      }
      for (std::size_t r = 0; r < rays.size(); ++r) {
        Int ar = dot(a, rays[r]);
        if (sgn(ar) != 0) rays[r] = combine(al0, rays[r], -ar, l0);
        if (!eq) tight[r].set(j);
      }
      if (!eq) {
        rays.push_back(l0);
        tight.push_back(processed);
        processed.set(j);
      }
      return;
    }
    std::vector<Int> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      int s = sgn(val[r]);
      if (s > 0) pos.push_back(r);
      if (s < 0) neg.push_back(r);
    }
    if (neg.empty() && !eq) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (sgn(val[r]) == 0) tight[r].set(j);
      processed.set(j);
      return;
    }
    int eff = rank_of(rays, lin) - static_cast<int>(lin.size());
    std::vector<IntVec> nr;
    std::vector<Bits> nt;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      int s = sgn(val[r]);
      if (s == 0 || (s > 0 && !eq)) {
        nr.push_back(rays[r]);
        nt.push_back(tight[r]);
        if (s == 0 && !eq) nt.back().set(j);
      }
    }
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        Bits c = tight[p] & tight[n];
        if (static_cast<int>(c.count()) + 2 < eff) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (c.is_subset_of(tight[r])) adjacent = false;
        }
        if (!adjacent) continue;
        nr.push_back(combine(val[p], rays[n], -val[n], rays[p]));
        nt.push_back(c);
        if (!eq) nt.back().set(j);
      }
    }
    rays = std::move(nr);
    tight = std::move(nt);
    if (!eq) processed.set(j);
  };

  for (const auto& e : eqs) {
    if (e.size() != d) throw DimensionError("equation has wrong dimension");
    IntVec p = primitive(e);
    if (!all_zero(p)) step(p, true, 0);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (ineqs[j].size() != d) throw DimensionError("inequality has wrong dimension");
    step(ineqs[j], false, j);
  }
  return {rays, lin};
}

nlohmann::json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Int json_int(const nlohmann::json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long>());
}

nlohmann::json vecs_json(const std::vector<IntVec>& vs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : vs) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(int_json(x));
    a.push_back(row);
  }
  return a;
}

std::vector<IntVec> json_vecs(const nlohmann::json& a) {
  std::vector<IntVec> out;
  for (const auto& row : a) {
    IntVec v;
    for (const auto& x : row) v.push_back(json_int(x));
    out.push_back(v);
  }
  return out;
}

Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

// ---------------------------------------------------------------- Cone

Cone Cone::assemble(std::size_t d, const std::vector<IntVec>& rays_in, const std::vector<IntVec>& lin_in,
                    const std::vector<IntVec>& normals, bool filter_rays) {
  Cone c;
  c.ambient_ = d;
  c.lineality_ = canonical_basis(lin_in, d);
  Projector pl(c.lineality_);
  std::set<IntVec> ray_set;
  for (const auto& r : rays_in) {
    IntVec p = pl.apply(r);
    if (!all_zero(p)) ray_set.insert(p);
  }
  std::vector<IntVec> rays(ray_set.begin(), ray_set.end());
  c.dim_ = rank_of(rays, c.lineality_);
  if (c.dim_ < static_cast<int>(d)) {
    std::vector<IntVec> span = rays;
    span.insert(span.end(), c.lineality_.begin(), c.lineality_.end());
    if (span.empty()) {
      for (std::size_t i = 0; i < d; ++i) {
        IntVec e(d, Int(0));
        e[i] = 1;
        c.equations_.push_back(e);
      }
    } else {
      c.equations_ = canonical_basis(integer_kernel_basis(span, d), d);
    }
  }
  Projector pe(c.equations_);
  const int pointed_dim = c.dim_ - static_cast<int>(c.lineality_.size());
  std::set<IntVec> normal_set;
  for (const auto& a : normals) {
    IntVec n = pe.apply(a);
    if (all_zero(n) || normal_set.count(n)) continue;
    std::vector<IntVec> on;
    bool valid = true;
    for (const auto& r : rays) {
      int s = sgn(dot(n, r));
      if (s < 0) valid = false;
      if (s == 0) on.push_back(r);
    }
    if (!valid) throw std::logic_error("normal is not valid on the cone");
    if (static_cast<int>(on.size()) + 1 < pointed_dim) continue;
    if (rank_of(on, c.lineality_) == c.dim_ - 1) normal_set.insert(n);
  }
  c.facets_.assign(normal_set.begin(), normal_set.end());
  if (filter_rays) {
    std::vector<IntVec> kept;
    for (const auto& r : rays) {
      std::vector<IntVec> tf;
      for (const auto& f : c.facets_)
        if (sgn(dot(f, r)) == 0) tf.push_back(f);
      if (rank_of(tf) == pointed_dim - 1) kept.push_back(r);
    }
    rays = std::move(kept);
  }
  c.rays_ = std::move(rays);
  c.compute_incidence();
  return c;
}

void Cone::compute_incidence() {
  incidence_.assign(facets_.size(), {});
  for (std::size_t f = 0; f < facets_.size(); ++f)
    for (std::size_t r = 0; r < rays_.size(); ++r)
      if (sgn(dot(facets_[f], rays_[r])) == 0) incidence_[f].push_back(static_cast<int>(r));
}

Cone Cone::from_rays(std::size_t d, const std::vector<IntVec>& rays, const std::vector<IntVec>& lineality) {
  std::vector<IntVec> rs;
  for (const auto& r : rays) {
    if (r.size() != d) throw DimensionError("ray has wrong dimension");
    if (!all_zero(r)) rs.push_back(primitive(r));
  }
  for (const auto& l : lineality)
    if (l.size() != d) throw DimensionError("lineality vector has wrong dimension");
  if (rs.empty() && lineality.empty()) throw DegenerateInput("from_rays: no nonzero generators");
  auto dual = double_description(d, rs, lineality);
  std::vector<IntVec> dual_span = dual.rays;
  dual_span.insert(dual_span.end(), dual.lineality.begin(), dual.lineality.end());
  std::vector<IntVec> lin;
  if (dual_span.empty()) {
    for (std::size_t i = 0; i < d; ++i) {
      IntVec e(d, Int(0));
      e[i] = 1;
      lin.push_back(e);
    }
  } else {
    lin = integer_kernel_basis(dual_span, d);
  }
  return assemble(d, rs, lin, dual.rays, true);
}

Cone Cone::from_rays(std::size_t d, const std::vector<RatVec>& rays) {
  std::vector<IntVec> rs;
  for (const auto& r : rays) rs.push_back(primitive(r));
  return from_rays(d, rs);
}

Cone Cone::from_halfspaces(std::size_t d, const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs) {
  auto dd = double_description(d, ineqs, eqs);
  return assemble(d, dd.rays, dd.lineality, ineqs, false);
}

Cone Cone::zero(std::size_t d) { return assemble(d, {}, {}, {}, false); }

bool Cone::contains(const RatVec& x) const {
  if (x.size() != ambient_) throw DimensionError("point has wrong dimension");
  for (const auto& e : equations_)
    if (dot_ir(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot_ir(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const IntVec& x) const {
  if (x.size() != ambient_) throw DimensionError("point has wrong dimension");
  for (const auto& e : equations_)
    if (sgn(dot(e, x)) != 0) return false;
  for (const auto& f : facets_)
    if (sgn(dot(f, x)) < 0) return false;
  return true;
}

bool Cone::contains_relint(const RatVec& x) const {
  if (x.size() != ambient_) throw DimensionError("point has wrong dimension");
  for (const auto& e : equations_)
    if (dot_ir(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot_ir(f, x) <= 0) return false;
  return true;
}

bool Cone::contains_cone(const Cone& o) const {
  for (const auto& r : o.rays_)
    if (!contains(r)) return false;
  for (const auto& l : o.lineality_)
    if (!contains(l) || !contains(negated(l))) return false;
  return true;
}

IntVec Cone::relint_point() const {
  IntVec s(ambient_, Int(0));
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < ambient_; ++i) s[i] += r[i];
  return s;
}

Cone Cone::facet_cone(std::size_t f) const {
  std::vector<IntVec> rs;
  for (int r : incidence_.at(f)) rs.push_back(rays_[r]);
  if (rs.empty() && lineality_.empty()) return zero(ambient_);
  return from_rays(ambient_, rs, lineality_);
}

Cone Cone::face_from_rays(const std::vector<int>& idx) const {
  std::vector<bool> keep(rays_.size(), true);
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    bool tight_all = std::all_of(idx.begin(), idx.end(),
                                 [&](int r) { return sgn(dot(facets_[f], rays_[r])) == 0; });
    if (!tight_all) continue;
    for (std::size_t r = 0; r < rays_.size(); ++r)
      if (sgn(dot(facets_[f], rays_[r])) != 0) keep[r] = false;
  }
  std::vector<IntVec> rs;
  for (std::size_t r = 0; r < rays_.size(); ++r)
    if (keep[r]) rs.push_back(rays_[r]);
  if (rs.empty() && lineality_.empty()) return zero(ambient_);
  return from_rays(ambient_, rs, lineality_);
}

bool Cone::operator==(const Cone& o) const {
  return ambient_ == o.ambient_ && rays_ == o.rays_ && lineality_ == o.lineality_ && dim_ == o.dim_;
}

bool Cone::operator<(const Cone& o) const {
  if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
  if (rays_ != o.rays_) return rays_ < o.rays_;
  return lineality_ < o.lineality_;
}

nlohmann::json Cone::to_json() const {
  return {{"ambient", ambient_},          {"dim", dim_},
          {"rays", vecs_json(rays_)},     {"lineality", vecs_json(lineality_)},
          {"facets", vecs_json(facets_)}, {"equations", vecs_json(equations_)}};
}

Cone Cone::from_json(const nlohmann::json& j) {
  Cone c;
  c.ambient_ = j.at("ambient").get<std::size_t>();
  c.dim_ = j.at("dim").get<int>();
  c.rays_ = json_vecs(j.at("rays"));
  c.lineality_ = json_vecs(j.at("lineality"));
  c.facets_ = json_vecs(j.at("facets"));
  c.equations_ = json_vecs(j.at("equations"));
  c.compute_incidence();
  return c;
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersect: ambient dimensions differ");
  std::vector<IntVec> ineqs = a.facets();
  ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
  std::vector<IntVec> eqs = a.equations();
  eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
  return Cone::from_halfspaces(a.ambient_dim(), ineqs, eqs);
}

Cone cut(const Cone& c, const IntVec& a) {
  std::vector<IntVec> ineqs = c.facets();
  ineqs.push_back(a);
  return Cone::from_halfspaces(c.ambient_dim(), ineqs, c.equations());
}

Cone linear_image(const Cone& c, const RatMat& m) {
  if (m.cols() != c.ambient_dim()) throw DimensionError("linear_image: matrix width");
  std::vector<IntVec> rs, ls;
  for (const auto& r : c.rays()) rs.push_back(primitive(m * to_rat(r)));
  for (const auto& l : c.lineality()) ls.push_back(primitive(m * to_rat(l)));
  return Cone::from_rays(m.rows(), rs, ls);
}

IntVec project_to_span(const IntVec& a, const std::vector<IntVec>& equations) {
  return Projector(equations).apply(a);
}

std::vector<std::vector<int>> triangulate(const Cone& c) {
  if (!c.is_pointed()) throw DegenerateInput("triangulate: cone is not pointed");
  const auto& rays = c.rays();
  const auto& inc = c.incidence();
  std::vector<std::vector<int>> out;
  auto rec = [&](auto&& self, const std::vector<int>& face, int fdim, std::vector<int>& apexes) -> void {
    if (static_cast<int>(face.size()) == fdim) {
      std::vector<int> s = apexes;
      s.insert(s.end(), face.begin(), face.end());
      std::sort(s.begin(), s.end());
      out.push_back(s);
      return;
    }
    int apex = face.front();
    std::set<std::vector<int>> seen;
    for (const auto& f : inc) {
      std::vector<int> sub;
      std::set_intersection(face.begin(), face.end(), f.begin(), f.end(), std::back_inserter(sub));
      if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
      if (static_cast<int>(sub.size()) < fdim - 1 || !seen.insert(sub).second) continue;
      std::vector<IntVec> vs;
      for (int r : sub) vs.push_back(rays[r]);
      if (rank_of(vs) != fdim - 1) continue;
      apexes.push_back(apex);
      self(self, sub, fdim - 1, apexes);
      apexes.pop_back();
    }
  };
  std::vector<int> all(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<int> apexes;
  if (c.dim() == 0) return {{}};
  rec(rec, all, c.dim(), apexes);
  return out;
}

Rat truncated_volume(const Cone& c, const RatVec& normal, const Rat& offset) {
  if (!c.is_pointed()) throw DegenerateInput("truncated_volume: cone is not pointed");
  if (normal.size() != c.ambient_dim()) throw DimensionError("truncated_volume: normal dimension");
  std::vector<Rat> height;
  for (const auto& r : c.rays()) {
    Rat h = dot_ir(r, normal);
    if (h <= 0) throw DegenerateInput("truncated_volume: truncation is unbounded");
    height.push_back(h);
  }
  if (offset <= 0 || c.dim() == 0) return 0;
  const std::size_t d = c.ambient_dim();
  std::vector<IntVec> basis;
  if (c.equations().empty()) {
    for (std::size_t i = 0; i < d; ++i) {
      IntVec e(d, Int(0));
      e[i] = 1;
      basis.push_back(e);
    }
  } else {
    basis = integer_kernel_basis(c.equations(), d);
  }
  RatMat bm(basis.size(), d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) bm(i, j) = basis[i][j];
  RatMat red = bm;
  auto piv = rref(red);
  std::vector<IntVec> bp;
  for (const auto& b : basis) {
    IntVec row;
    for (int p : piv) row.push_back(b[p]);
    bp.push_back(row);
  }
  Int det_b = abs(bareiss_determinant(bp));
  Rat total = 0;
  for (const auto& simplex : triangulate(c)) {
    std::vector<IntVec> vp;
    Rat scale_prod = 1;
    for (int r : simplex) {
      IntVec row;
      for (int p : piv) row.push_back(c.rays()[r][p]);
      vp.push_back(row);
      scale_prod *= offset / height[r];
    }
    total += Rat(abs(bareiss_determinant(vp))) * scale_prod;
  }
  total /= det_b;
  total /= factorial(c.dim());
  return total;
}

// ---------------------------------------------------------------- Polyhedron

Polyhedron Polyhedron::from_halfspaces(std::size_t d, const std::vector<Halfspace>& le, const std::vector<Halfspace>& eq) {
  std::vector<IntVec> ineqs, eqs;
  for (const auto& h : le) {
    if (h.normal.size() != d) throw DimensionError("halfspace has wrong dimension");
    RatVec v{h.offset};
    for (const auto& a : h.normal) v.push_back(-a);
    ineqs.push_back(primitive(v));
  }
  IntVec t(d + 1, Int(0));
  t[0] = 1;
  ineqs.push_back(t);
  for (const auto& h : eq) {
    if (h.normal.size() != d) throw DimensionError("equation has wrong dimension");
    RatVec v{-h.offset};
    for (const auto& a : h.normal) v.push_back(a);
    eqs.push_back(primitive(v));
  }
  Polyhedron p;
  p.ambient_ = d;
  p.hom_ = Cone::from_halfspaces(d + 1, ineqs, eqs);
  p.load();
  return p;
}

Polyhedron Polyhedron::from_vertices(std::size_t d, const std::vector<RatVec>& vertices) {
  std::vector<IntVec> rays;
  for (const auto& v : vertices) {
    if (v.size() != d) throw DimensionError("vertex has wrong dimension");
    RatVec h{Rat(1)};
    h.insert(h.end(), v.begin(), v.end());
    rays.push_back(primitive(h));
  }
  Polyhedron p;
  p.ambient_ = d;
  p.hom_ = Cone::from_rays(d + 1, rays);
  p.load();
  return p;
}

Polyhedron Polyhedron::from_homogeneous(Cone c) {
  Polyhedron p;
  if (c.ambient_dim() == 0) throw DimensionError("homogenized cone needs a homogenizing coordinate");
  p.ambient_ = c.ambient_dim() - 1;
  p.hom_ = std::move(c);
  p.load();
  return p;
}

void Polyhedron::load() {
  vertices_.clear();
  recession_.clear();
  for (const auto& r : hom_.rays()) {
    if (sgn(r[0]) > 0) {
      RatVec v;
      for (std::size_t i = 1; i < r.size(); ++i) v.push_back(Rat(r[i]) / Rat(r[0]));
      vertices_.push_back(v);
    } else {
      recession_.push_back(IntVec(r.begin() + 1, r.end()));
    }
  }
  for (const auto& l : hom_.lineality()) {
    IntVec v(l.begin() + 1, l.end());
    recession_.push_back(v);
    recession_.push_back(negated(v));
  }
  std::sort(vertices_.begin(), vertices_.end());
}

std::vector<Polyhedron::Halfspace> Polyhedron::inequalities() const {
  std::vector<Halfspace> out;
  const auto& rays = hom_.rays();
  for (std::size_t f = 0; f < hom_.facets().size(); ++f) {
    const auto& inc = hom_.incidence()[f];
    bool finite = std::any_of(inc.begin(), inc.end(), [&](int r) { return sgn(rays[r][0]) > 0; });
    if (!finite) continue;
    const auto& g = hom_.facets()[f];
    Halfspace h;
    h.offset = g[0];
    for (std::size_t i = 1; i < g.size(); ++i) h.normal.push_back(Rat(-g[i]));
    out.push_back(h);
  }
  return out;
}

std::vector<Polyhedron::Halfspace> Polyhedron::affine_equations() const {
  std::vector<Halfspace> out;
  for (const auto& e : hom_.equations()) {
    Halfspace h;
    h.offset = -e[0];
    for (std::size_t i = 1; i < e.size(); ++i) h.normal.push_back(Rat(e[i]));
    if (is_zero(h.normal)) continue;
    out.push_back(h);
  }
  return out;
}

bool Polyhedron::contains(const RatVec& x) const {
  RatVec h{Rat(1)};
  h.insert(h.end(), x.begin(), x.end());
  return hom_.contains(h);
}

bool Polyhedron::contains_relint(const RatVec& x) const {
  if (!contains(x)) return false;
  RatVec h{Rat(1)};
  h.insert(h.end(), x.begin(), x.end());
  const auto& rays = hom_.rays();
  for (std::size_t f = 0; f < hom_.facets().size(); ++f) {
    const auto& inc = hom_.incidence()[f];
    bool finite = std::any_of(inc.begin(), inc.end(), [&](int r) { return sgn(rays[r][0]) > 0; });
    if (finite && dot_ir(hom_.facets()[f], h) == 0) return false;
  }
  return true;
}

RatVec Polyhedron::vertex_average() const {
  if (empty()) throw DegenerateInput("vertex_average of empty polyhedron");
  RatVec s(ambient_, Rat(0));
  for (const auto& v : vertices_) s = add(s, v);
  return scale(s, Rat(1) / static_cast<long>(vertices_.size()));
}

Rat Polyhedron::volume() const {
  if (!is_bounded()) throw DegenerateInput("volume of unbounded polyhedron");
  if (empty()) return 0;
  RatVec et(ambient_ + 1, Rat(0));
  et[0] = 1;
  return Rat(dim() + 1) * truncated_volume(hom_, et, 1);
}

nlohmann::json Polyhedron::to_json() const {
  nlohmann::json j;
  j["ambient"] = ambient_;
  j["dim"] = dim();
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : vertices_) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    vs.push_back(row);
  }
  j["vertices"] = vs;
  nlohmann::json hs = nlohmann::json::array();
  for (const auto& h : inequalities()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : h.normal) row.push_back(to_string(x));
    hs.push_back({{"normal", row}, {"offset", to_string(h.offset)}});
  }
  j["halfspaces"] = hs;
  return j;
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  return Polyhedron::from_homogeneous(intersect(a.homogenized(), b.homogenized()));
}

Polyhedron cut(const Polyhedron& p, const Polyhedron::Halfspace& h) {
  RatVec v{h.offset};
  for (const auto& a : h.normal) v.push_back(-a);
  return Polyhedron::from_homogeneous(cut(p.homogenized(), primitive(v)));
}

Polytope polytope_from_halfspaces(std::size_t d, const std::vector<Polyhedron::Halfspace>& le,
                                  const std::vector<Polyhedron::Halfspace>& eq) {
  auto p = Polyhedron::from_halfspaces(d, le, eq);
  if (!p.is_bounded()) throw DegenerateInput("halfspaces do not bound a polytope");
  return p;
}

Polyhedron affine_slice(const Cone& c, const RatVec& base, const std::vector<RatVec>& basis) {
  if (base.size() != c.ambient_dim()) throw DimensionError("affine_slice: base dimension");
  const std::size_t m = basis.size();
  std::vector<Polyhedron::Halfspace> le, eq;
  for (const auto& f : c.facets()) {
    Polyhedron::Halfspace h;
    for (const auto& b : basis) h.normal.push_back(-dot_ir(f, b));
    h.offset = dot_ir(f, base);
    le.push_back(h);
  }
  for (const auto& e : c.equations()) {
    Polyhedron::Halfspace h;
    for (const auto& b : basis) h.normal.push_back(dot_ir(e, b));
    h.offset = -dot_ir(e, base);
    if (is_zero(h.normal)) {
      if (h.offset != 0) {
        // inconsistent: 0 = nonzero
        Polyhedron::Halfspace bad;
        bad.normal.assign(m, Rat(0));
        bad.offset = -1;
        le.push_back(bad);
      }
      continue;
    }
    eq.push_back(h);
  }
  return Polyhedron::from_halfspaces(m, le, eq);
}

namespace {

void enumerate_points(std::size_t d, const std::vector<Polyhedron::Halfspace>& le,
                      std::vector<Polyhedron::Halfspace>& eq, std::size_t i, IntVec& prefix, std::vector<IntVec>& out) {
  auto p = Polyhedron::from_halfspaces(d, le, eq);
  if (p.empty()) return;
  Rat lo = p.vertices()[0][i], hi = lo;
  for (const auto& v : p.vertices()) {
    lo = std::min(lo, v[i]);
    hi = std::max(hi, v[i]);
  }
  Int a, b;
  mpz_cdiv_q(a.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_fdiv_q(b.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  for (Int x = a; x <= b; ++x) {
    prefix.push_back(x);
    if (i + 1 == d) {
      out.push_back(prefix);
    } else {
      Polyhedron::Halfspace h;
      h.normal.assign(d, Rat(0));
      h.normal[i] = 1;
      h.offset = x;
      eq.push_back(h);
      enumerate_points(d, le, eq, i + 1, prefix, out);
      eq.pop_back();
    }
    prefix.pop_back();
  }
}

}  // namespace

std::vector<IntVec> lattice_points(const Polytope& p) {
  if (!p.is_bounded()) throw DegenerateInput("lattice_points: unbounded");
  std::vector<IntVec> out;
  if (p.empty()) return out;
  const std::size_t d = p.ambient_dim();
  if (d == 0) return {IntVec{}};
  auto le = p.inequalities();
  auto eq = p.affine_equations();
  IntVec prefix;
  enumerate_points(d, le, eq, 0, prefix, out);
  return out;
}

std::vector<RatVec> lattice_points(const Polytope& p, const AffineLattice& lat) {
  const std::size_t d = p.ambient_dim();
  if (lat.basis.rows() != d || lat.basis.cols() != d || lat.base.size() != d)
    throw DimensionError("lattice_points: lattice shape");
  auto to_z = [&](const Polyhedron::Halfspace& h) {
    Polyhedron::Halfspace z;
    for (std::size_t j = 0; j < d; ++j) {
      Rat s = 0;
      for (std::size_t i = 0; i < d; ++i) s += h.normal[i] * lat.basis(i, j);
      z.normal.push_back(s);
    }
    z.offset = h.offset - dot(h.normal, lat.base);
    return z;
  };
  std::vector<Polyhedron::Halfspace> le, eq;
  for (const auto& h : p.inequalities()) le.push_back(to_z(h));
  for (const auto& h : p.affine_equations()) eq.push_back(to_z(h));
  auto zp = Polyhedron::from_halfspaces(d, le, eq);
  std::vector<RatVec> out;
  for (const auto& z : lattice_points(zp)) out.push_back(add(lat.base, lat.basis * to_rat(z)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wm
