#include "gamut/stone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gamut/error.hpp"

namespace gamut {

namespace {

constexpr double kChromaTol = 1e-12;

double cross(const Chroma& o, const Chroma& a, const Chroma& b) {
  return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}

double triangle_area(const Chroma& a, const Chroma& b, const Chroma& c) { return 0.5 * std::abs(cross(a, b, c)); }

std::vector<Chroma> ccw_triangle(const Gamut& g) {
  const auto t = primary_chromas(g);
  std::vector<Chroma> out(t.begin(), t.end());
  if (cross(out[0], out[1], out[2]) < 0) std::swap(out[1], out[2]);
  return out;
}

// Sutherland-Hodgman against the left side of the directed edge a->b.
std::vector<Chroma> clip(const std::vector<Chroma>& poly, const Chroma& a, const Chroma& b) {
  std::vector<Chroma> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Chroma& p = poly[i];
    const Chroma& q = poly[(i + 1) % n];
    const double sp = cross(a, b, p), sq = cross(a, b, q);
    const bool pin = sp >= -kChromaTol, qin = sq >= -kChromaTol;
    if (pin) out.push_back(p);
    if (pin != qin) {
      const double s = sp / (sp - sq);
      out.push_back({p.u + s * (q.u - p.u), p.v + s * (q.v - p.v)});
    }
  }
  return out;
}

std::vector<Chroma> dedupe(const std::vector<Chroma>& poly) {
  std::vector<Chroma> out;
  for (const auto& c : poly) {
    if (!out.empty() && std::hypot(c.u - out.back().u, c.v - out.back().v) <= 1e-12) continue;
    out.push_back(c);
  }
  while (out.size() > 1 && std::hypot(out.front().u - out.back().u, out.front().v - out.back().v) <= 1e-12)
    out.pop_back();
  return out;
}

}  // namespace

double ChromaPolygon::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Chroma& p = vertices[i];
    const Chroma& q = vertices[(i + 1) % vertices.size()];
    a += p.u * q.v - q.u * p.v;
  }
  return 0.5 * a;
}

std::array<Chroma, 3> primary_chromas(const Gamut& g) {
  return {chromaticity(g.R - g.K), chromaticity(g.G - g.K), chromaticity(g.B - g.K)};
}

ChromaPolygon chroma_intersection(std::span<const Gamut> gamuts) {
  if (gamuts.empty()) throw GamutError(ErrorCode::EmptyChromaIntersection, "no gamuts");
  std::vector<Chroma> poly = ccw_triangle(gamuts.front());
  for (const auto& g : gamuts.subspan(1)) {
    const auto tri = ccw_triangle(g);
    for (int e = 0; e < 3 && !poly.empty(); ++e) poly = clip(poly, tri[e], tri[(e + 1) % 3]);
    poly = dedupe(poly);
  }
  ChromaPolygon out{dedupe(poly)};
  if (out.vertices.size() < 3 || out.area() <= kChromaTol)
    throw GamutError(ErrorCode::EmptyChromaIntersection, "chromaticity triangles do not overlap");
  return out;
}

std::array<int, 3> largest_triangle_indices(const ChromaPolygon& poly) {
  const int n = static_cast<int>(poly.vertices.size());
  if (n < 3) throw GamutError(ErrorCode::TooFewVertices, "polygon has fewer than 3 vertices");
  std::array<int, 3> best{0, 1, 2};
  double best_area = -1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double a = triangle_area(poly.vertices[i], poly.vertices[j], poly.vertices[k]);
        if (a > best_area) {
          best_area = a;
          best = {i, j, k};
        }
      }
  return best;
}

std::array<Chroma, 3> largest_triangle(const ChromaPolygon& poly) {
  const auto idx = largest_triangle_indices(poly);
  return {poly.vertices[idx[0]], poly.vertices[idx[1]], poly.vertices[idx[2]]};
}

std::array<double, 3> solve_primaries(const Chroma& cR, const Chroma& cG, const Chroma& cB, const Color& K,
                                      const Color& W) {
  Mat3 d;
  d.col(0) = cR.direction();
  d.col(1) = cG.direction();
  d.col(2) = cB.direction();
  const double scale = d.col(0).norm() * d.col(1).norm() * d.col(2).norm();
  if (std::abs(d.determinant()) <= 1e-12 * scale)
    throw GamutError(ErrorCode::SingularChromaBasis, "primary chromaticities are collinear");
  const Vec3 s = d.partialPivLu().solve(W - K);
  if (s.minCoeff() <= 0.0) throw GamutError(ErrorCode::NegativeScale, "W - K lies outside the primary cone");
  return {s[0], s[1], s[2]};
}

double max_feasible_scale(const Color& K, const std::array<Vec3, 3>& directions, const std::array<double, 3>& scales,
                          const Polytope& p) {
  double alpha = 1.0;
  for (int mask = 1; mask < 8; ++mask) {
    Vec3 v = Vec3::Zero();
    for (int i = 0; i < 3; ++i)
      if ((mask >> i) & 1) v += scales[i] * directions[i];
    for (const auto& f : p.facets) {
      const Vec3 n = f.normal;
      const double rate = n.dot(v);
      if (rate <= 1e-12 * v.norm()) continue;
      alpha = std::min(alpha, std::max(0.0, f.slack(K)) / rate);
    }
  }
  if (!(alpha > 1e-12)) throw GamutError(ErrorCode::NoPositiveScale, "no positive primary scale fits");
  return alpha;
}

std::pair<GamutResult, StoneTrace> stone_gamut(std::span<const Gamut> gamuts, const LuminosityWeights& w) {
  const Polytope p = gamut_intersection(gamuts);
  StoneTrace trace;

  // Step 1: a large triangle inside the common chromaticities, labelled by
  // the even permutation closest to the mean projector primaries.
  const auto tri = largest_triangle(chroma_intersection(gamuts));
  std::array<std::vector<Vec3>, 3> per_primary;
  std::vector<Vec3> blacks;
  for (const auto& g : gamuts) {
    const auto pc = primary_chromas(g);
    for (int i = 0; i < 3; ++i) per_primary[i].push_back({pc[i].u, pc[i].v, 0.0});
    const Chroma k = chromaticity(g.K);
    blacks.push_back({k.u, k.v, 0.0});
  }
  std::array<Vec3, 3> mean;
  for (int i = 0; i < 3; ++i) mean[i] = stable_mean(per_primary[i]);
  const bool ccw = cross(tri[0], tri[1], tri[2]) > 0;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < 3; ++r) {
    // Rotations of a counterclockwise triangle give right-handed gamuts.
    std::array<Chroma, 3> cand{tri[r], tri[(r + 1) % 3], tri[(r + 2) % 3]};
    if (!ccw) std::swap(cand[1], cand[2]);
    double dist = 0.0;
    for (int i = 0; i < 3; ++i) dist += std::hypot(cand[i].u - mean[i].x(), cand[i].v - mean[i].y());
    if (dist < best) {
      best = dist;
      trace.chroma_triangle = cand;
    }
  }

  // Steps 2 and 3: darkest and brightest points on the mean black chromaticity.
  const Vec3 bc = stable_mean(blacks);
  trace.black_chroma = {bc.x(), bc.y()};
  const RayExtent ray = ray_extent(p, trace.black_chroma);
  trace.K = ray.lambda_minus;
  trace.W = ray.lambda_plus;

  // Step 4: lift the triangle so the primaries sum to W.
  const auto& ct = trace.chroma_triangle;
  trace.primary_scales = solve_primaries(ct[0], ct[1], ct[2], trace.K, trace.W);

  // Step 5: shrink the primaries together until every corner fits.
  const std::array<Vec3, 3> dirs{ct[0].direction(), ct[1].direction(), ct[2].direction()};
  trace.alpha = max_feasible_scale(trace.K, dirs, trace.primary_scales, p);
  Gamut g;
  g.K = trace.K;
  g.R = trace.K + trace.alpha * trace.primary_scales[0] * dirs[0];
  g.G = trace.K + trace.alpha * trace.primary_scales[1] * dirs[1];
  g.B = trace.K + trace.alpha * trace.primary_scales[2] * dirs[2];
  trace.gamut = g;

  GamutResult out;
  out.method = "stone";
  out.gamut = derive_corners(g);
  out.volume = std::abs(g.signed_volume());
  const double lk = luminosity(out.gamut.K, w);
  out.luminosity_ratio = lk > 0.0 ? luminosity(out.gamut.W, w) / lk : std::numeric_limits<double>::quiet_NaN();
  out.note("alpha", trace.alpha);
  out.note("black_chroma_u", trace.black_chroma.u);
  out.note("black_chroma_v", trace.black_chroma.v);
  return {out, trace};
}

}  // namespace gamut
