#include "gamut/error.hpp"

namespace gamut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateGamut: return "DegenerateGamut";
    case ErrorCode::ZeroSum: return "ZeroSum";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::UnboundedRegion: return "UnboundedRegion";
    case ErrorCode::DegenerateIntersection: return "DegenerateIntersection";
    case ErrorCode::OriginOnFacetPlane: return "OriginOnFacetPlane";
    case ErrorCode::OriginInside: return "OriginInside";
    case ErrorCode::RayMisses: return "RayMisses";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::InfeasibleAnchor: return "InfeasibleAnchor";
    case ErrorCode::DegenerateOptimum: return "DegenerateOptimum";
    case ErrorCode::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorCode::NoFiniteLevel: return "NoFiniteLevel";
    case ErrorCode::EmptyChromaIntersection: return "EmptyChromaIntersection";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::SingularChromaBasis: return "SingularChromaBasis";
    case ErrorCode::NegativeScale: return "NegativeScale";
    case ErrorCode::NoPositiveScale: return "NoPositiveScale";
    case ErrorCode::TooManySubsets: return "TooManySubsets";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
  }
  return "Unknown";
}

}  // namespace gamut
