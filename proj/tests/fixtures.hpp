#pragma once

#include <vector>

#include "gamut/color.hpp"
#include "gamut/rng.hpp"

namespace fixtures {

using gamut::Color;
using gamut::Gamut;

inline Gamut cube12() { return {Color(1, 1, 1), Color(2, 1, 1), Color(1, 2, 1), Color(1, 1, 2)}; }

inline Gamut translated(const Gamut& g, const Color& by) { return {g.K + by, g.R + by, g.G + by, g.B + by}; }

inline Gamut scaled(const Gamut& g, double s) { return {g.K * s, g.R * s, g.G * s, g.B * s}; }

inline Gamut cube12x() { return translated(cube12(), Color(0.25, 0, 0)); }

inline std::vector<Gamut> pair() { return {cube12(), cube12x()}; }

// A projector-like gamut: dim grayish black, primaries near the sRGB XYZ
// columns, then a random shear and translation.
inline Gamut random_projector(gamut::Xorshift64Star& rng) {
  const double k = rng.uniform(0.01, 0.05);
  Color K(k + rng.uniform(-0.003, 0.003), k + rng.uniform(-0.003, 0.003), k + rng.uniform(-0.003, 0.003));
  const double lum = rng.uniform(0.8, 1.2);
  gamut::Mat3 prim;
  prim.col(0) = Color(0.41, 0.21, 0.02);
  prim.col(1) = Color(0.36, 0.72, 0.12);
  prim.col(2) = Color(0.18, 0.07, 0.95);
  gamut::Mat3 shear = gamut::Mat3::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) shear(i, j) += rng.uniform(-0.08, 0.08);
  const gamut::Mat3 e = shear * prim * lum;
  return {K, K + e.col(0), K + e.col(1), K + e.col(2)};
}

inline std::vector<Gamut> random_instance(std::uint64_t seed, int n) {
  gamut::Xorshift64Star rng(seed);
  std::vector<Gamut> out;
  for (int i = 0; i < n; ++i) out.push_back(random_projector(rng));
  return out;
}

}  // namespace fixtures
