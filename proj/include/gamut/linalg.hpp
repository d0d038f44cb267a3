#pragma once

#include <Eigen/Dense>

namespace gamut {

// Points of the polytope engine never exceed six coordinates, so the
// storage stays on the stack.
inline constexpr int kMaxDim = 6;
using PointD = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;

// The constraint normal·x <= offset.
struct Halfspace {
  PointD normal;
  double offset = 0.0;

  int dim() const { return static_cast<int>(normal.size()); }
  double slack(const PointD& x) const { return offset - normal.dot(x); }
};

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

}  // namespace gamut
