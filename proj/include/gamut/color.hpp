#pragma once

#include <array>
#include <vector>

#include "gamut/linalg.hpp"

namespace gamut {

// Tristimulus value in a device-independent linear color space.
using Color = Vec3;

// An additive three-channel gamut: the parallelepiped spanned from the black
// corner K by the primaries R, G and B.
struct Gamut {
  Color K = Color::Zero();
  Color R = Color::Zero();
  Color G = Color::Zero();
  Color B = Color::Zero();

  Mat3 edges() const;           // columns R-K, G-K, B-K
  double signed_volume() const;  // det(R-K, G-K, B-K)
  Color at(const Vec3& rgb) const { return K + edges() * rgb; }
};

struct CornerSet {
  Color K, R, G, B, C, M, Y, W;

  std::array<Color, 8> all() const { return {K, R, G, B, C, M, Y, W}; }
  Gamut gamut() const { return {K, R, G, B}; }
};

// Luminosity is the linear functional w·x. Weights must be nonnegative with a
// positive sum.
struct LuminosityWeights {
  double w1 = 0.0;
  double w2 = 1.0;
  double w3 = 0.0;

  Vec3 vec() const { return {w1, w2, w3}; }
};

// Coordinates on the unit-sum plane; the color ray is t*(u, v, 1-u-v).
struct Chroma {
  double u = 0.0;
  double v = 0.0;

  Vec3 direction() const { return {u, v, 1.0 - u - v}; }
  friend bool operator==(const Chroma&, const Chroma&) = default;
};

// Relative degeneracy threshold on det(R-K,G-K,B-K) / product of edge norms.
inline constexpr double kDegenerateTol = 1e-12;
inline constexpr double kZeroSumTol = 1e-12;

bool is_degenerate(const Gamut& g);

CornerSet derive_corners(const Gamut& g);
double luminosity(const Color& c, const LuminosityWeights& w);
Chroma chromaticity(const Color& c);

// Six outward halfspaces n·x <= h with unit normals; a point is in the
// gamut iff it satisfies all six.
std::array<Halfspace, 6> gamut_halfspaces(const Gamut& g);

// Homogeneous affine map from standard-gamut device coordinates (r,g,b) to the
// projector's device coordinates. Row-major, homogeneous row last.
Matrix4 device_transform(const Gamut& standard, const Gamut& projector);

// Arithmetic mean computed as first + mean of offsets, so a list of identical
// values averages to that exact value.
Vec3 stable_mean(const std::vector<Vec3>& values);

}  // namespace gamut
