#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wm/rational.hpp"

namespace wm {

struct DegenerateInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Polyhedral cone in R^d with both descriptions.
/// Rays are primitive integer vectors, facet normals a satisfy a·x >= 0 and lie in the span of the cone,
/// equations are a canonical integer basis of the orthogonal complement of the span.
class Cone {
 public:
  Cone() = default;

  static Cone from_rays(std::size_t dim, const std::vector<IntVec>& rays, const std::vector<IntVec>& lineality = {});
  static Cone from_rays(std::size_t dim, const std::vector<RatVec>& rays);
  static Cone from_halfspaces(std::size_t dim, const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs = {});
  static Cone zero(std::size_t dim);

  std::size_t ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  int lineality_dim() const { return static_cast<int>(lineality_.size()); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_full_dim() const { return dim_ == static_cast<int>(ambient_); }
  bool is_zero() const { return dim_ == 0; }

  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<IntVec>& lineality() const { return lineality_; }
  const std::vector<IntVec>& facets() const { return facets_; }
  const std::vector<IntVec>& equations() const { return equations_; }
  /// incidence_[f] = indices of rays on facet f
  const std::vector<std::vector<int>>& incidence() const { return incidence_; }

  bool contains(const RatVec& x) const;
  bool contains(const IntVec& x) const;
  /// Point of the relative interior (strictly inside every facet).
  bool contains_relint(const RatVec& x) const;
  bool contains_cone(const Cone& other) const;
  IntVec relint_point() const;

  Cone facet_cone(std::size_t f) const;
  /// Face spanned by the given ray indices (smallest face containing them).
  Cone face_from_rays(const std::vector<int>& ray_idx) const;

  bool operator==(const Cone& o) const;
  bool operator!=(const Cone& o) const { return !(*this == o); }
  bool operator<(const Cone& o) const;

  nlohmann::json to_json() const;
  static Cone from_json(const nlohmann::json& j);

 private:
  static Cone assemble(std::size_t dim, const std::vector<IntVec>& rays, const std::vector<IntVec>& lineality,
                       const std::vector<IntVec>& normals, bool filter_rays);
  void compute_incidence();

  std::size_t ambient_ = 0;
  int dim_ = 0;
  std::vector<IntVec> rays_;
  std::vector<IntVec> lineality_;
  std::vector<IntVec> facets_;
  std::vector<IntVec> equations_;
  std::vector<std::vector<int>> incidence_;
};

Cone intersect(const Cone& a, const Cone& b);
/// Cone ∩ {a·x >= 0}.
Cone cut(const Cone& c, const IntVec& a);
/// Image of a cone under a linear map x -> M x (M rows = output coordinates).
Cone linear_image(const Cone& c, const RatMat& m);

/// Canonical primitive projection of a normal onto the span of the cone.
IntVec project_to_span(const IntVec& a, const std::vector<IntVec>& equations);

/// Lattice-normalized volume of c ∩ {normal·x <= offset} in the lattice of span(c).
Rat truncated_volume(const Cone& c, const RatVec& normal, const Rat& offset);

/// Decomposition of a pointed cone into simplicial cones without new rays (ray indices).
std::vector<std::vector<int>> triangulate(const Cone& c);

/// Convex polyhedron {x : A x <= b, E x = f} stored as a homogenized cone in R^{d+1}
/// (coordinate 0 is the homogenizing variable).
class Polyhedron {
 public:
  Polyhedron() = default;
  struct Halfspace {
    RatVec normal;
    Rat offset;
  };
  static Polyhedron from_halfspaces(std::size_t dim, const std::vector<Halfspace>& le,
                                    const std::vector<Halfspace>& eq = {});
  static Polyhedron from_vertices(std::size_t dim, const std::vector<RatVec>& vertices);
  static Polyhedron from_homogeneous(Cone c);

  std::size_t ambient_dim() const { return ambient_; }
  bool empty() const { return vertices_.empty(); }
  bool is_bounded() const { return recession_.empty(); }
  /// Dimension of the affine hull; -1 when empty.
  int dim() const { return empty() ? -1 : hom_.dim() - 1; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<IntVec>& recession_rays() const { return recession_; }
  /// Irredundant inequalities normal·x <= offset and affine-hull equations.
  std::vector<Halfspace> inequalities() const;
  std::vector<Halfspace> affine_equations() const;
  const Cone& homogenized() const { return hom_; }

  bool contains(const RatVec& x) const;
  bool contains_relint(const RatVec& x) const;
  /// Average of the vertices (a relative-interior point for bounded input).
  RatVec vertex_average() const;
  /// Lattice-normalized volume in the affine hull (the hull lattice is the homogenized span lattice).
  Rat volume() const;

  bool operator==(const Polyhedron& o) const { return hom_ == o.hom_; }
  nlohmann::json to_json() const;

 private:
  void load();
  std::size_t ambient_ = 0;
  Cone hom_;
  std::vector<RatVec> vertices_;
  std::vector<IntVec> recession_;
};

using Polytope = Polyhedron;

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);
Polyhedron cut(const Polyhedron& p, const Polyhedron::Halfspace& h);
Polytope polytope_from_halfspaces(std::size_t dim, const std::vector<Polyhedron::Halfspace>& le,
                                  const std::vector<Polyhedron::Halfspace>& eq = {});

/// Intersection of a cone with the affine subspace base + span(basis), in basis coordinates.
Polyhedron affine_slice(const Cone& c, const RatVec& base, const std::vector<RatVec>& basis);

/// Integer points of a bounded polyhedron by recursive coordinate bounding.
/// Optional lattice: points base + B z with integer z (B square, invertible); points returned in x-coordinates.
struct AffineLattice {
  RatVec base;
  RatMat basis;
};
std::vector<IntVec> lattice_points(const Polytope& p);
std::vector<RatVec> lattice_points(const Polytope& p, const AffineLattice& lattice);

/// Maximal cells of a fan with adjacency (pairs sharing a facet).
struct ComplexOfCones {
  std::size_t ambient = 0;
  int dim = 0;
  std::vector<Cone> cells;
  std::vector<std::pair<int, int>> adjacency;

  nlohmann::json to_json() const;
  static ComplexOfCones from_json(const nlohmann::json& j);
};

/// Common refinement of full-dimensional cones: regions of constant membership, merged into convex cells.
/// Lower-dimensional inputs are skipped.
ComplexOfCones common_refinement(const std::vector<Cone>& cones, std::vector<std::string>* warnings = nullptr);

/// Chamber complex of cones coming from a vector partition function (each generic point's chamber is the
/// intersection of the cones containing it); explored by walking across facets.
ComplexOfCones chamber_complex(const std::vector<Cone>& cones, int workers = 1);

/// Sort cells canonically (lexicographic on sorted ray matrices) and recompute adjacency.
void canonicalize(ComplexOfCones& cx);
/// Pairs of cells whose intersection has dimension dim-1.
std::vector<std::pair<int, int>> facet_adjacency(const std::vector<Cone>& cells);

/// Union of cells as one cone if convex (certified by truncated volume), else nullopt.
std::optional<Cone> convex_union(const std::vector<Cone>& cells, const RatVec& trunc_normal, Rat* union_volume = nullptr,
                                 Rat* hull_volume = nullptr);

/// Subdivision of a support cone by walls (cones of codimension one inside its span).
/// Pieces are split only where a wall meets their interior; pieces sharing a facet not covered by walls
/// belong to the same region.
struct WallPartition {
  std::vector<Cone> pieces;
  std::vector<int> region;
  int regions = 0;
};
WallPartition partition_by_walls(const Cone& support, const std::vector<Cone>& walls);

/// Primitive normal of the hyperplane spanned by a codimension-one subcone of `support`, inside span(support).
IntVec relative_normal(const Cone& support, const Cone& wall);

/// A linear functional strictly positive on every nonzero point of the pointed cones.
RatVec positive_functional(const std::vector<Cone>& cones);

}  // namespace wm
