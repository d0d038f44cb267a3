#include "gamut/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gamut/error.hpp"

namespace gamut {

namespace {

// Incidence bitset over the constraint list.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
    return r;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  int count_and(const Bits& o) const {
    int c = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) c += std::popcount(words_[w] & o.words_[w]);
    return c;
  }

  bool contains(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if ((o.words_[w] & ~words_[w]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct DDVertex {
  PointD x;
  Bits tight;
};

double vertex_eps(const PointD& x, double tol) { return tol * std::max(1.0, x.cwiseAbs().maxCoeff()); }

std::vector<Halfspace> normalize_and_dedupe(std::span<const Halfspace> hs, int dim) {
  std::vector<Halfspace> out;
  out.reserve(hs.size());
  for (const auto& h : hs) {
    if (h.dim() != dim) throw std::invalid_argument("halfspace dimension mismatch");
    const double norm = h.normal.norm();
    if (!(norm > 1e-14) || !std::isfinite(norm) || !std::isfinite(h.offset))
      throw std::invalid_argument("halfspace normal must be nonzero and finite");
    Halfspace n{h.normal / norm, h.offset / norm};
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Halfspace& o) {
      return (o.normal - n.normal).cwiseAbs().maxCoeff() <= 1e-12 &&
             std::abs(o.offset - n.offset) <= 1e-12 * std::max(1.0, std::abs(n.offset));
    });
    if (!dup) out.push_back(std::move(n));
  }
  return out;
}

std::vector<Halfspace> box_halfspaces(const Box& box) {
  const int d = static_cast<int>(box.lo.size());
  std::vector<Halfspace> out;
  for (int i = 0; i < d; ++i) {
    PointD e = PointD::Zero(d);
    e[i] = -1.0;
    out.push_back({e, -box.lo[i]});
    e[i] = 1.0;
    out.push_back({e, box.hi[i]});
  }
  return out;
}

Box seed_box(std::span<const Halfspace> hs, int dim, const std::optional<Box>& bounds) {
  Box box;
  if (bounds) {
    const PointD range = bounds->hi - bounds->lo;
    double margin = 0.5 * range.maxCoeff();
    if (!(margin > 0.0)) margin = 1.0;
    box.lo = bounds->lo.array() - margin;
    box.hi = bounds->hi.array() + margin;
    return box;
  }
  double big = 1.0;
  for (const auto& h : hs) big = std::max(big, std::abs(h.offset));
  big *= 1e6;
  box.lo = PointD::Constant(dim, -big);
  box.hi = PointD::Constant(dim, big);
  return box;
}

}  // namespace

int affine_rank(std::span<const PointD> pts, double tol) {
  if (pts.empty()) return -1;
  const int d = static_cast<int>(pts.front().size());
  if (pts.size() == 1) return 0;
  Eigen::MatrixXd m(d, static_cast<Eigen::Index>(pts.size() - 1));
  for (std::size_t i = 1; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i - 1)) = pts[i] - pts[0];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

Polytope intersect_halfspaces(std::span<const Halfspace> input, int dim, double tol,
                              const std::optional<Box>& bounds) {
  if (dim != 2 && dim != 3 && dim != 6) throw std::invalid_argument("supported dimensions are 2, 3 and 6");
  if (input.empty()) throw std::invalid_argument("no halfspaces given");

  const std::vector<Halfspace> hs = normalize_and_dedupe(input, dim);
  const Box box = seed_box(hs, dim, bounds);
  std::vector<Halfspace> all = box_halfspaces(box);
  const std::size_t n_box = all.size();
  all.insert(all.end(), hs.begin(), hs.end());

  // Seed: the 2^dim box corners, each tight on one of the two planes per axis.
  std::vector<DDVertex> verts;
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    DDVertex v{PointD(dim), Bits(all.size())};
    for (int i = 0; i < dim; ++i) {
      const bool high = (mask >> i) & 1u;
      v.x[i] = high ? box.hi[i] : box.lo[i];
      v.tight.set(2 * static_cast<std::size_t>(i) + (high ? 1 : 0));
    }
    verts.push_back(std::move(v));
  }

  std::vector<double> s;
  std::vector<int> plus, minus, zero;
  for (std::size_t j = n_box; j < all.size(); ++j) {
    const Halfspace& h = all[j];
    s.assign(verts.size(), 0.0);
    plus.clear();
    minus.clear();
    zero.clear();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      s[i] = h.normal.dot(verts[i].x) - h.offset;
      const double eps = vertex_eps(verts[i].x, tol);
      if (s[i] > eps) plus.push_back(static_cast<int>(i));
      else if (s[i] < -eps) minus.push_back(static_cast<int>(i));
      else zero.push_back(static_cast<int>(i));
    }
    for (int i : zero) verts[i].tight.set(j);
    if (plus.empty()) continue;
    if (minus.empty() && zero.empty())
      throw GamutError(ErrorCode::EmptyIntersection, "halfspaces have no common point");

    std::vector<DDVertex> created;
    for (int u : plus) {
      for (int w : minus) {
        if (verts[u].tight.count_and(verts[w].tight) < dim - 1) continue;
        const Bits common = verts[u].tight & verts[w].tight;
        bool adjacent = true;
        for (std::size_t y = 0; y < verts.size() && adjacent; ++y) {
          if (static_cast<int>(y) == u || static_cast<int>(y) == w) continue;
          if (verts[y].tight.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        const double lambda = s[u] / (s[u] - s[w]);
        DDVertex nv{verts[u].x + lambda * (verts[w].x - verts[u].x), common};
        nv.tight.set(j);
        created.push_back(std::move(nv));
      }
    }
    std::vector<DDVertex> next;
    next.reserve(verts.size() - plus.size() + created.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (!(s[i] > vertex_eps(verts[i].x, tol))) next.push_back(std::move(verts[i]));
    for (auto& v : created) next.push_back(std::move(v));
    verts = std::move(next);
    if (verts.empty()) throw GamutError(ErrorCode::EmptyIntersection, "halfspaces have no common point");
  }

  // Polish: re-solve each vertex from its tight input constraints. A vertex
  // that still needs a seed-box plane marks an unbounded direction.
  std::vector<PointD> pts;
  pts.reserve(verts.size());
  for (const auto& v : verts) {
    std::vector<int> rows;
    for (std::size_t j = n_box; j < all.size(); ++j)
      if (v.tight.test(j)) rows.push_back(static_cast<int>(j));
    if (static_cast<int>(rows.size()) < dim)
      throw GamutError(ErrorCode::UnboundedRegion, "feasible region reaches the seed bounding box");
    Eigen::MatrixXd a(rows.size(), dim);
    Eigen::VectorXd b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      a.row(static_cast<Eigen::Index>(r)) = all[rows[r]].normal.transpose();
      b[static_cast<Eigen::Index>(r)] = all[rows[r]].offset;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < dim)
      throw GamutError(ErrorCode::UnboundedRegion, "feasible region reaches the seed bounding box");
    pts.push_back(PointD(qr.solve(b)));
  }

  double scale = 1.0;
  for (const auto& x : pts) scale = std::max(scale, x.cwiseAbs().maxCoeff());

  // Deduplicate at kDedupeTol relative to the instance diameter.
  PointD lo = pts.front(), hi = pts.front();
  for (const auto& x : pts) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  const double diameter = std::max((hi - lo).maxCoeff(), tol * scale);
  std::sort(pts.begin(), pts.end(), [](const PointD& a, const PointD& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  std::vector<PointD> unique;
  for (const auto& x : pts) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const PointD& u) {
      return (u - x).cwiseAbs().maxCoeff() <= kDedupeTol * diameter;
    });
    if (!dup) unique.push_back(x);
  }

  const int rank = affine_rank(unique, 1e-9 * diameter);
  if (rank < dim) {
    std::ostringstream msg;
    msg << "feasible set has affine dimension " << rank << " < " << dim;
    throw GamutError(ErrorCode::DegenerateIntersection, msg.str());
  }

  Polytope p;
  p.dim = dim;
  p.scale = scale;
  p.vertices = std::move(unique);
  p.vertex_facets.assign(p.vertices.size(), {});
  std::vector<std::vector<int>> seen;
  for (const auto& h : hs) {
    std::vector<int> on;
    std::vector<PointD> on_pts;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      if (std::abs(h.normal.dot(p.vertices[i]) - h.offset) <= vertex_eps(p.vertices[i], tol)) {
        on.push_back(static_cast<int>(i));
        on_pts.push_back(p.vertices[i]);
      }
    }
    if (static_cast<int>(on.size()) < dim) continue;
    if (affine_rank(on_pts, 1e-9 * diameter) != dim - 1) continue;
    if (std::find(seen.begin(), seen.end(), on) != seen.end()) continue;
    seen.push_back(on);
    const int id = static_cast<int>(p.facets.size());
    p.facets.push_back(h);
    for (int v : on) p.vertex_facets[v].push_back(id);
    p.facet_vertices.push_back(std::move(on));
  }
  return p;
}

bool contains_point(const Polytope& p, const PointD& x, double tol) {
  const double scale = std::max(1.0, x.norm());
  for (const auto& h : p.facets)
    if (h.normal.dot(x) > h.offset + tol * h.normal.norm() * scale) return false;
  return true;
}

FacetClass classify_facets(const Polytope& p, double tol) {
  if (p.dim != 3) throw std::invalid_argument("classify_facets needs a 3-polytope");
  FacetClass out;
  const double eps = tol * p.scale;
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    const double h = p.facets[i].offset;
    if (std::abs(h) <= eps) throw GamutError(ErrorCode::OriginOnFacetPlane, "a facet plane passes through the origin");
    (h < 0 ? out.lower : out.upper).push_back(static_cast<int>(i));
  }
  if (out.lower.empty()) throw GamutError(ErrorCode::OriginInside, "the origin lies inside the polytope");
  return out;
}

std::optional<RayExtent> try_ray_extent(const Polytope& p, const Chroma& c, double tol) {
  if (p.dim != 3) throw std::invalid_argument("ray_extent needs a 3-polytope");
  const Vec3 d = c.direction();
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& f : p.facets) {
    const double nd = f.normal.dot(d);
    if (std::abs(nd) <= 1e-15) {
      if (f.offset < -tol * p.scale) return std::nullopt;
      continue;
    }
    const double t = f.offset / nd;
    if (nd > 0) hi = std::min(hi, t);
    else lo = std::max(lo, t);
  }
  if (!std::isfinite(hi)) throw GamutError(ErrorCode::UnboundedRegion, "ray never leaves the polytope");
  if (lo > hi + tol * std::max(1.0, hi)) return std::nullopt;
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  return RayExtent{lo * d, hi * d, lo, hi};
}

RayExtent ray_extent(const Polytope& p, const Chroma& c, double tol) {
  auto r = try_ray_extent(p, c, tol);
  if (!r) throw GamutError(ErrorCode::RayMisses, "chromaticity ray does not meet the polytope");
  return *r;
}

Polytope gamut_intersection(std::span<const Gamut> gamuts, double tol) {
  if (gamuts.empty()) throw std::invalid_argument("no gamuts given");
  std::vector<Halfspace> hs;
  Box bounds{PointD(gamuts.front().K), PointD(gamuts.front().K)};
  for (const auto& g : gamuts) {
    for (const auto& h : gamut_halfspaces(g)) hs.push_back(h);
    for (const auto& c : derive_corners(g).all()) {
      bounds.lo = bounds.lo.cwiseMin(PointD(c));
      bounds.hi = bounds.hi.cwiseMax(PointD(c));
    }
  }
  return intersect_halfspaces(hs, 3, tol, bounds);
}

}  // namespace gamut
