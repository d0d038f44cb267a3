#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gamut/color.hpp"
#include "gamut/polytope.hpp"
#include "gamut/result.hpp"

namespace gamut {

// A point of the search space: the red and blue corners of a candidate
// standard gamut, coordinates (R, B).
struct RBPoint {
  Color R;
  Color B;

  PointD coords() const;
  static RBPoint from(const PointD& x);
};

// q(x) = 1/2 x'Hx + g'x + c over the search coordinates.
struct QuadraticObjective {
  Eigen::MatrixXd hessian;
  Eigen::VectorXd gradient;
  double constant = 0.0;

  double value(const PointD& x) const;
};

struct SimplexCandidate {
  Simplex simplex;
  RBPoint point;
  double value = 0.0;
};

// One inequality per (projector facet, derived corner R, G, B, C, M, Y), in
// that nesting order: 36 per projector.
std::vector<Halfspace> gamma_halfspaces(std::span<const Gamut> gamuts, const Color& K, const Color& W);

// Signed volume det(R-K, W-K, B-K) as a quadratic in (R, B). It equals
// det(R-K, G-K, B-K) because the two dropped terms repeat a row.
QuadraticObjective vol_objective(const Color& K, const Color& W);

// Maximum of q over the relative interior of the simplex spanned by `verts`
// when the restriction to its affine hull is negative definite. A single
// vertex is always returned.
std::optional<std::pair<PointD, double>> restricted_max(std::span<const PointD> verts, const QuadraticObjective& q);
std::optional<SimplexCandidate> restricted_max(const Polytope& gamma, const Simplex& s, const QuadraticObjective& q);

// Largest standard gamut with the given black and white points that fits in
// every projector gamut.
GamutResult maximize_volume(std::span<const Gamut> gamuts, const Color& K, const Color& W, double tol = kFeasTol);

// The gamut with corners K, R, W+2K-R-B, B.
Gamut gamut_from_rb(const Color& K, const Color& W, const RBPoint& rb);

}  // namespace gamut
