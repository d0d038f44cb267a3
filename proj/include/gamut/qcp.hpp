#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gamut/color.hpp"
#include "gamut/polytope.hpp"
#include "gamut/result.hpp"

namespace gamut {

enum class Corner { K, R, G, B, C, M, Y, W };

enum class QualityKind { Euclidean, Linear };

// q(x) = weight * |x - target| (euclidean) or weight * direction·(x - target)
// (linear), evaluated at one corner of the candidate gamut.
struct CornerQualitySpec {
  Corner corner = Corner::K;
  QualityKind kind = QualityKind::Euclidean;
  Color target = Color::Zero();
  Vec3 direction = Vec3::Zero();
  double weight = 1.0;
};

// Full gamut parameters (K, R, G, B) stacked into 12 coordinates.
using GamutParams = Eigen::Matrix<double, 12, 1>;

GamutParams to_params(const Gamut& g);
Gamut from_params(const GamutParams& x);

// Coefficients of a corner as a combination of K, R, G, B.
Eigen::Vector4d corner_coefficients(Corner c);
Color corner_of(const GamutParams& x, Corner c);

double corner_quality(const CornerQualitySpec& spec, const Color& x);
double max_quality(std::span<const CornerQualitySpec> specs, const GamutParams& x);

inline constexpr double kQcpTol = 1e-10;
inline constexpr int kSweepBudget = 10000;

enum class LevelStatus { Feasible, Infeasible, BudgetExceeded };

struct LevelCheck {
  LevelStatus status = LevelStatus::Infeasible;
  GamutParams point = GamutParams::Zero();
  int sweeps = 0;
};

// Cyclic projections onto the containment halfspaces of p (every corner
// inside every facet) and the level sets of the specs. Feasible means all
// corners inside p within 1e-10*scale and every quality <= t + tol.
// Infeasible means the sweep reached a fixed point that is not feasible.
LevelCheck check_level(const Polytope& p, std::span<const CornerQualitySpec> specs, double t, double tol,
                       const GamutParams& start);

// Same, starting from the collapsed gamut at the vertex centroid of the
// intersection. Throws IterationBudgetExceeded when the sweep budget runs out.
std::optional<GamutParams> feasible_at_level(std::span<const Gamut> gamuts, std::span<const CornerQualitySpec> specs,
                                             double t, double tol = kQcpTol);

struct QcpSolution {
  Gamut gamut;
  double t_star = 0.0;  // max quality of the returned gamut
  int iterations = 0;   // levels tested
  double t_low = 0.0;
  double t_high = 0.0;
  bool low_certified = false;  // t_low came from a failed level test
  int budget_exhausted = 0;    // level tests that ran out of sweeps
};

// Bisection on the level between an infeasible (or trivially valid) lower
// bound and a feasible upper bound until they are within tol.
QcpSolution solve_qcp(std::span<const Gamut> gamuts, std::span<const CornerQualitySpec> specs, double tol = kQcpTol);

// Euclidean targets at the per-corner means of the projector corners, weight 2
// on K and W, 1 elsewhere.
std::vector<CornerQualitySpec> default_specs(std::span<const Gamut> gamuts);

GamutResult qcp_result(const QcpSolution& s, std::span<const CornerQualitySpec> specs, const LuminosityWeights& w);

}  // namespace gamut
