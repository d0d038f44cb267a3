#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gamut/color.hpp"
#include "gamut/qcp.hpp"

namespace gamut {

struct Projector {
  std::string id;
  Gamut gamut;
};

struct Instance {
  std::vector<Projector> projectors;
  LuminosityWeights weights;
  std::optional<std::vector<CornerQualitySpec>> qcp_specs;

  std::vector<Gamut> gamuts() const;
};

// JSON schema:
//   {"luminosity_weights": [w1, w2, w3],            optional, default [0, 1, 0]
//    "projectors": [{"id": str, "K": [x, y, z], "R": [...], "G": [...], "B": [...]}],
//    "qcp_specs": [{"corner": "K", "kind": "euclidean"|"linear", "target": [...],
//                   "direction": [...], "weight": w}]}  optional
// Throws ParseError (with line or field) or ValidationError.
Instance parse_instance(std::string_view bytes);

// Nondegenerate, right-handed gamuts with positive channel sums at every
// corner, unique ids, valid weights and specs.
void validate_instance(const Instance& inst);

// Moves every input corner by up to eps * scale per coordinate, driven by the
// seeded generator, then revalidates.
Instance perturbed(const Instance& inst, double eps, std::uint64_t seed);

std::string corner_name(Corner c);

}  // namespace gamut
