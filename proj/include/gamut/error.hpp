#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gamut {

enum class ErrorCode {
  DegenerateGamut,
  ZeroSum,
  EmptyIntersection,
  UnboundedRegion,
  DegenerateIntersection,
  OriginOnFacetPlane,
  OriginInside,
  RayMisses,
  NoCandidates,
  InfeasibleAnchor,
  DegenerateOptimum,
  IterationBudgetExceeded,
  NoFiniteLevel,
  EmptyChromaIntersection,
  TooFewVertices,
  SingularChromaBasis,
  NegativeScale,
  NoPositiveScale,
  TooManySubsets,
  ParseError,
  ValidationError,
  VerificationFailure,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class GamutError : public std::runtime_error {
 public:
  GamutError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gamut
