#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gamut/color.hpp"
#include "gamut/polytope.hpp"

namespace gamut {

// Brute-force baselines. They lower-bound optima and share the optimizers'
// feasibility predicates, nothing more.
struct OracleReport {
  double best_value = 0.0;
  std::vector<double> best_witness;
  std::int64_t samples_or_cells = 0;  // cells or samples that passed feasibility
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultOracleSeed = 1;

// Ratio t+/t- over the centroids of the resolution^2 cells of a uniform
// triangular grid on the chromaticity simplex. Witness is (u, v).
OracleReport grid_bw_oracle(const Polytope& p, int resolution);

// Uniform (R, B) samples from the bounding box of P x P; the collapsed pair
// (K, K) with value 0 is always included. Witness is (R, B).
OracleReport sample_volume_oracle(std::span<const Gamut> gamuts, const Color& K, const Color& W,
                                  std::int64_t samples, std::uint64_t seed = kDefaultOracleSeed);

// Solves every dim-subset of the halfspace planes and keeps feasible,
// deduplicated solutions.
std::vector<PointD> subset_vertex_oracle(std::span<const Halfspace> hs, int dim);

}  // namespace gamut
