#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gamut/color.hpp"
#include "gamut/linalg.hpp"

namespace gamut {

inline constexpr double kFeasTol = 1e-9;
inline constexpr double kDedupeTol = 1e-8;

// Axis-aligned box known to contain the feasible region.
struct Box {
  PointD lo;
  PointD hi;
};

// Bounded convex polytope with both descriptions. Vertices are sorted
// lexicographically, so vertex 0 is the lexicographic minimum.
struct Polytope {
  int dim = 0;
  std::vector<PointD> vertices;
  std::vector<Halfspace> facets;  // unit outward normals
  std::vector<std::vector<int>> facet_vertices;  // sorted vertex ids per facet
  std::vector<std::vector<int>> vertex_facets;   // sorted facet ids per vertex
  double scale = 1.0;  // max(1, largest |coordinate|), the reference for relative tolerances
};

// Double description: halfspaces are inserted one at a time into a vertex
// description seeded from a bounding box. `bounds` should contain the
// feasible region; without it a large box around the origin is used.
Polytope intersect_halfspaces(std::span<const Halfspace> hs, int dim, double tol = kFeasTol,
                              const std::optional<Box>& bounds = std::nullopt);

bool contains_point(const Polytope& p, const PointD& x, double tol = kFeasTol);

// Affine dimension of a point set (rank of differences to the first point).
int affine_rank(std::span<const PointD> pts, double tol);

struct Face {
  std::vector<int> vertices;  // sorted
  std::vector<int> children;  // facets of this face, indices one dimension down
};

// faces[k] lists the k-dimensional faces for k = 0..dim-1.
struct FaceLattice {
  int dim = 0;
  std::vector<std::vector<Face>> faces;

  std::vector<std::size_t> counts() const;
};

FaceLattice face_lattice(const Polytope& p);

struct Simplex {
  std::vector<int> vertex_ids;  // sorted
  int k() const { return static_cast<int>(vertex_ids.size()) - 1; }
};

// Pulling triangulation of the boundary: each face is coned from its
// lexicographically smallest vertex over the triangulations of its own facets
// that avoid that vertex. Returns the whole simplicial complex (every face of
// every top simplex), sorted by dimension then vertex ids.
std::vector<Simplex> pulling_triangulation(const Polytope& p, const FaceLattice& lattice);
std::vector<Simplex> pulling_triangulation(const Polytope& p);

// Simplices of dimension <= max_dim of the same triangulation, enumerated
// without building the top simplices. A sorted vertex set {v0 < ... < vj} is
// in the complex iff its carrier face is proper, v0 is the smallest vertex of
// that carrier, v0 is off the carrier of the rest, and the rest is in the
// complex.
std::vector<Simplex> pulling_skeleton(const Polytope& p, int max_dim);

// k-dimensional volume of a simplex from its Gram determinant.
double simplex_volume(const Polytope& p, const Simplex& s);

// Facets seen from the origin (lower, offset < 0) versus the rest.
struct FacetClass {
  std::vector<int> lower;
  std::vector<int> upper;
};

FacetClass classify_facets(const Polytope& p, double tol = kFeasTol);

// Where the chromaticity ray t*direction(c), t > 0, enters and leaves p.
struct RayExtent {
  Color lambda_minus;
  Color lambda_plus;
  double t_minus = 0.0;
  double t_plus = 0.0;
};

RayExtent ray_extent(const Polytope& p, const Chroma& c, double tol = kFeasTol);
std::optional<RayExtent> try_ray_extent(const Polytope& p, const Chroma& c, double tol = kFeasTol);

// Intersection of gamut parallelepipeds in color space.
Polytope gamut_intersection(std::span<const Gamut> gamuts, double tol = kFeasTol);

}  // namespace gamut
