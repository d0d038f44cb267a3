#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "gamut/color.hpp"
#include "gamut/polytope.hpp"
#include "gamut/result.hpp"

namespace gamut {

// Convex polygon on the chromaticity plane, counterclockwise.
struct ChromaPolygon {
  std::vector<Chroma> vertices;
  double area() const;
};

struct StoneTrace {
  std::array<Chroma, 3> chroma_triangle;  // assigned to R, G, B
  Chroma black_chroma;
  Color K;
  Color W;
  std::array<double, 3> primary_scales{};
  double alpha = 0.0;
  Gamut gamut;
};

// Chromaticity triangle of a gamut: the chromaticities of R-K, G-K, B-K.
std::array<Chroma, 3> primary_chromas(const Gamut& g);

ChromaPolygon chroma_intersection(std::span<const Gamut> gamuts);

// Maximum-area triangle on polygon vertices; indices ascending, first
// triple wins ties.
std::array<Chroma, 3> largest_triangle(const ChromaPolygon& poly);
std::array<int, 3> largest_triangle_indices(const ChromaPolygon& poly);

// Scales s with sum s_i * direction(c_i) = W - K.
std::array<double, 3> solve_primaries(const Chroma& cR, const Chroma& cG, const Chroma& cB, const Color& K,
                                      const Color& W);

// Largest alpha in (0, 1] keeping every corner of the gamut with primaries
// K + alpha * s_i * d_i inside p.
double max_feasible_scale(const Color& K, const std::array<Vec3, 3>& directions, const std::array<double, 3>& scales,
                          const Polytope& p);

std::pair<GamutResult, StoneTrace> stone_gamut(std::span<const Gamut> gamuts, const LuminosityWeights& w);

}  // namespace gamut
