#include "gamut/blackwhite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "gamut/error.hpp"

namespace gamut {

namespace {

using Vec2 = Eigen::Vector2d;

Vec2 project(const Color& x) {
  const Chroma c = chromaticity(x);
  return {c.u, c.v};
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Point of the segment [a, b] lying on the ray through `dir`.
Color point_on_ray(const Color& a, const Color& b, const Vec3& dir) {
  const Vec3 ad = a.cross(dir);
  const Vec3 bd = (b - a).cross(dir);
  const double alpha = std::clamp(-ad.dot(bd) / bd.squaredNorm(), 0.0, 1.0);
  return a + alpha * (b - a);
}

bool same_chroma(const Color& a, const Color& b) {
  const Chroma ca = chromaticity(a), cb = chromaticity(b);
  return std::abs(ca.u - cb.u) <= 1e-9 && std::abs(ca.v - cb.v) <= 1e-9;
}

struct Edge {
  int a, b;
  bool lower, upper;
};

std::vector<Edge> classified_edges(const Polytope& p, const std::vector<bool>& is_lower) {
  std::vector<Edge> out;
  const FaceLattice lat = face_lattice(p);
  for (const auto& face : lat.faces[1]) {
    const int a = face.vertices[0], b = face.vertices[1];
    Edge e{a, b, false, false};
    // Facets containing both endpoints.
    for (int f : p.vertex_facets[a]) {
      if (!std::binary_search(p.vertex_facets[b].begin(), p.vertex_facets[b].end(), f)) continue;
      (is_lower[f] ? e.lower : e.upper) = true;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<CandidateChroma> candidate_chromaticities(const Polytope& p) {
  const FacetClass fc = classify_facets(p);
  std::vector<bool> is_lower(p.facets.size(), false);
  for (int f : fc.lower) is_lower[f] = true;

  std::vector<CandidateChroma> out;
  auto keep = [&](CandidateChroma c) {
    if (!(c.lambda_minus.sum() > 0.0) || !(c.lambda_plus.sum() > 0.0)) return;
    if (!contains_point(p, c.lambda_minus) || !contains_point(p, c.lambda_plus)) return;
    if (!same_chroma(c.lambda_minus, c.lambda_plus)) return;
    out.push_back(std::move(c));
  };

  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    const Color x = p.vertices[v];
    bool on_lower = false, on_upper = false;
    for (int f : p.vertex_facets[v]) (is_lower[f] ? on_lower : on_upper) = true;

    if (on_lower) {
      // x is the near point of its ray; the far point is the closest crossing
      // with an upper facet plane.
      double t = std::numeric_limits<double>::infinity();
      for (int f : fc.upper) {
        const double nd = p.facets[f].normal.dot(PointD(x));
        if (nd > 0) t = std::min(t, p.facets[f].offset / nd);
      }
      if (std::isfinite(t)) keep({chromaticity(x), CandidateSource::LowerVertex, x, std::max(t, 1.0) * x});
    }
    if (on_upper) {
      double t = 0.0;
      for (int f : fc.lower) {
        const double nd = p.facets[f].normal.dot(PointD(x));
        if (nd < 0) t = std::max(t, p.facets[f].offset / nd);
      }
      if (t > 0.0) keep({chromaticity(x), CandidateSource::UpperVertex, std::min(t, 1.0) * x, x});
    }
  }

  const auto edges = classified_edges(p, is_lower);
  for (const auto& s : edges) {
    if (!s.lower) continue;
    const Color sa = p.vertices[s.a], sb = p.vertices[s.b];
    const Vec2 pa = project(sa), pb = project(sb);
    for (const auto& t : edges) {
      if (!t.upper || (t.a == s.a && t.b == s.b)) continue;
      const Color ta = p.vertices[t.a], tb = p.vertices[t.b];
      const Vec2 qa = project(ta), qb = project(tb);
      const Vec2 r = pb - pa, q = qb - qa;
      const double den = cross2(r, q);
      if (std::abs(den) <= 1e-14 * std::max(1.0, r.norm() * q.norm())) continue;  // parallel: no single point
      const double alpha = cross2(qa - pa, q) / den;
      const double beta = cross2(qa - pa, r) / den;
      constexpr double slop = 1e-12;
      if (alpha < -slop || alpha > 1 + slop || beta < -slop || beta > 1 + slop) continue;
      const Vec2 c2 = pa + std::clamp(alpha, 0.0, 1.0) * r;
      const Chroma c{c2.x(), c2.y()};
      const Vec3 dir = c.direction();
      keep({c, CandidateSource::EdgeCrossing, point_on_ray(sa, sb, dir), point_on_ray(ta, tb, dir)});
    }
  }
  return out;
}

BWSelection select_black_white(const Polytope& p, const LuminosityWeights& w) {
  const auto cands = candidate_chromaticities(p);
  if (cands.empty()) throw GamutError(ErrorCode::NoCandidates, "no black/white candidate pair found");

  auto better = [](const CandidateChroma& a, const CandidateChroma& b) {
    const double ra = a.ratio(), rb = b.ratio();
    if (std::abs(ra - rb) > 1e-12 * std::max(ra, rb)) return ra > rb;
    const double wa = a.lambda_plus.sum(), wb = b.lambda_plus.sum();
    if (std::abs(wa - wb) > 1e-12 * std::max(wa, wb)) return wa > wb;
    if (a.chroma.u != b.chroma.u) return a.chroma.u < b.chroma.u;
    return a.chroma.v < b.chroma.v;
  };
  const CandidateChroma* best = &cands.front();
  for (const auto& c : cands)
    if (better(c, *best)) best = &c;

  BWSelection sel;
  sel.K = best->lambda_minus;
  sel.W = best->lambda_plus;
  sel.chroma = best->chroma;
  const double lk = luminosity(sel.K, w);
  sel.ratio = lk > 0.0 ? luminosity(sel.W, w) / lk : best->ratio();
  sel.candidate_count = static_cast<int>(cands.size());
  return sel;
}

}  // namespace gamut
