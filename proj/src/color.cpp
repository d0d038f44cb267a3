#include "gamut/color.hpp"

#include <cmath>

#include "gamut/error.hpp"

namespace gamut {

Mat3 Gamut::edges() const {
  Mat3 e;
  e.col(0) = R - K;
  e.col(1) = G - K;
  e.col(2) = B - K;
  return e;
}

double Gamut::signed_volume() const { return det3(R - K, G - K, B - K); }

bool is_degenerate(const Gamut& g) {
  const double scale = (g.R - g.K).norm() * (g.G - g.K).norm() * (g.B - g.K).norm();
  if (!(scale > 0.0) || !std::isfinite(scale)) return true;
  return std::abs(g.signed_volume()) <= kDegenerateTol * scale;
}

namespace {

void require_nondegenerate(const Gamut& g) {
  if (is_degenerate(g)) throw GamutError(ErrorCode::DegenerateGamut, "det(R-K, G-K, B-K) vanishes");
}

}  // namespace

CornerSet derive_corners(const Gamut& g) {
  require_nondegenerate(g);
  CornerSet c;
  c.K = g.K;
  c.R = g.R;
  c.G = g.G;
  c.B = g.B;
  c.W = g.K + (g.R - g.K) + (g.G - g.K) + (g.B - g.K);
  c.C = c.W + g.K - g.R;
  c.M = c.W + g.K - g.G;
  c.Y = c.W + g.K - g.B;
  return c;
}

double luminosity(const Color& c, const LuminosityWeights& w) {
  return w.w1 * c.x() + w.w2 * c.y() + w.w3 * c.z();
}

Chroma chromaticity(const Color& c) {
  const double sum = c.sum();
  if (!(sum > kZeroSumTol * std::max(1.0, c.cwiseAbs().maxCoeff())))
    throw GamutError(ErrorCode::ZeroSum, "channel sum is not positive");
  return {c.x() / sum, c.y() / sum};
}

std::array<Halfspace, 6> gamut_halfspaces(const Gamut& g) {
  require_nondegenerate(g);
  const Mat3 inv = g.edges().inverse();
  std::array<Halfspace, 6> out;
  for (int i = 0; i < 3; ++i) {
    // Affine coordinate y_i = row_i·(x - K) must lie in [0, 1].
    const Vec3 row = inv.row(i).transpose();
    const double norm = row.norm();
    const Vec3 n = row / norm;
    out[i] = Halfspace{PointD(-n), -n.dot(g.K)};
    out[i + 3] = Halfspace{PointD(n), 1.0 / norm + n.dot(g.K)};
  }
  return out;
}

Matrix4 device_transform(const Gamut& standard, const Gamut& projector) {
  require_nondegenerate(standard);
  require_nondegenerate(projector);
  const Mat3 inv = projector.edges().inverse();
  Matrix4 m = Matrix4::Identity();
  m.topLeftCorner<3, 3>() = inv * standard.edges();
  m.topRightCorner<3, 1>() = inv * (standard.K - projector.K);
  return m;
}

Vec3 stable_mean(const std::vector<Vec3>& values) {
  if (values.empty()) return Vec3::Zero();
  Vec3 acc = Vec3::Zero();
  for (const auto& v : values) acc += v - values.front();
  return values.front() + acc / static_cast<double>(values.size());
}

}  // namespace gamut
