#pragma once

#include <vector>

#include "gamut/color.hpp"
#include "gamut/polytope.hpp"

namespace gamut {

enum class CandidateSource { LowerVertex, UpperVertex, EdgeCrossing };

// A chromaticity that may carry the optimal black/white pair, with the
// nearest and farthest points of the gamut intersection on its ray.
struct CandidateChroma {
  Chroma chroma;
  CandidateSource source = CandidateSource::LowerVertex;
  Color lambda_minus;
  Color lambda_plus;

  // Ratio of ray parameters; equals the luminosity ratio for any positive weights.
  double ratio() const { return lambda_plus.sum() / lambda_minus.sum(); }
};

struct BWSelection {
  Color K;
  Color W;
  Chroma chroma;
  double ratio = 1.0;  // luminosity(W) / luminosity(K)
  int candidate_count = 0;
};

// Enumerates the vertices of the overlay of the near-side and far-side facet
// projections: near-side vertices lifted to the far side, far-side vertices
// dropped to the near side, and crossings of near/far edge projections.
std::vector<CandidateChroma> candidate_chromaticities(const Polytope& p);

// Best luminosity ratio over the candidates. Ties go to the brighter W (by
// channel sum, so the choice does not depend on the weights), then to the
// lexicographically smaller chromaticity.
BWSelection select_black_white(const Polytope& p, const LuminosityWeights& w);

}  // namespace gamut
