#pragma once

#include <string>

#include "gamut/instance.hpp"
#include "gamut/pipeline.hpp"

namespace gamut {

inline constexpr const char* kMatrixConvention =
    "4x4 row-major, homogeneous row last; maps standard-gamut device rgb to projector device rgb";

// JSON report. Key order is fixed and numbers round-trip exactly, so equal
// inputs give equal bytes.
std::string emit_report(const Instance& inst, const PipelineConfig& config, const PipelineOutput& out);

// Chromaticity plot: projector triangles, their intersection, the black/white
// chromaticity and each result's triangle, with a legend.
std::string emit_svg(const Instance& inst, const PipelineOutput& out);

}  // namespace gamut
