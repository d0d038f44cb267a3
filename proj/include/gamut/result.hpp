#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gamut/color.hpp"

namespace gamut {

struct GamutResult {
  std::string method;
  CornerSet gamut;
  double volume = 0.0;
  double luminosity_ratio = 0.0;
  // Projector id -> map from standard to projector device coordinates.
  std::vector<std::pair<std::string, Matrix4>> per_projector_matrix;
  std::vector<std::pair<std::string, double>> diagnostics;

  void note(std::string key, double value) { diagnostics.emplace_back(std::move(key), value); }
};

}  // namespace gamut
