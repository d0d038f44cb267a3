#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <map>
#include <set>
#include <unordered_map>

#include "gamut/polytope.hpp"

namespace gamut {

std::vector<std::size_t> FaceLattice::counts() const {
  std::vector<std::size_t> out;
  for (const auto& level : faces) out.push_back(level.size());
  return out;
}

FaceLattice face_lattice(const Polytope& p) {
  FaceLattice lat;
  lat.dim = p.dim;
  lat.faces.assign(static_cast<std::size_t>(p.dim), {});
  if (p.dim == 0) return lat;

  std::map<std::vector<int>, int> index;
  for (const auto& fv : p.facet_vertices) {
    if (index.emplace(fv, static_cast<int>(lat.faces[p.dim - 1].size())).second)
      lat.faces[p.dim - 1].push_back({fv, {}});
  }

  // The facets of a face F are the inclusion-maximal proper intersections of F
  // with facets of the polytope.
  for (int k = p.dim - 1; k >= 1; --k) {
    std::map<std::vector<int>, int> below;
    auto& level = lat.faces[k];
    auto& next = lat.faces[k - 1];
    for (auto& face : level) {
      std::vector<std::vector<int>> cand;
      for (const auto& fv : p.facet_vertices) {
        std::vector<int> meet;
        std::set_intersection(face.vertices.begin(), face.vertices.end(), fv.begin(), fv.end(),
                              std::back_inserter(meet));
        if (meet.empty() || meet.size() == face.vertices.size()) continue;
        cand.push_back(std::move(meet));
      }
      std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
      });
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      std::vector<std::vector<int>> maximal;
      for (auto& c : cand) {
        const bool covered = std::any_of(maximal.begin(), maximal.end(), [&](const auto& m) {
          return std::includes(m.begin(), m.end(), c.begin(), c.end());
        });
        if (!covered) maximal.push_back(std::move(c));
      }
      std::sort(maximal.begin(), maximal.end());
      for (auto& m : maximal) {
        auto [it, inserted] = below.emplace(m, static_cast<int>(next.size()));
        if (inserted) next.push_back({std::move(m), {}});
        face.children.push_back(it->second);
      }
    }
  }
  return lat;
}

namespace {

class Puller {
 public:
  explicit Puller(const FaceLattice& lat) : lat_(lat), memo_(lat.faces.size()) {
    for (std::size_t k = 0; k < lat.faces.size(); ++k) memo_[k].resize(lat.faces[k].size());
  }

  // Top-dimensional simplices of the pulling triangulation of one face.
  const std::vector<std::vector<int>>& top(int k, int id) {
    auto& slot = memo_[k][id];
    if (slot) return *slot;
    const Face& f = lat_.faces[k][id];
    std::vector<std::vector<int>> out;
    if (k == 0) {
      out.push_back(f.vertices);
    } else {
      // Vertex ids follow lexicographic coordinate order, so the apex is the
      // smallest id.
      const int apex = f.vertices.front();
      for (int child : f.children) {
        const auto& cv = lat_.faces[k - 1][child].vertices;
        if (std::binary_search(cv.begin(), cv.end(), apex)) continue;
        for (const auto& s : top(k - 1, child)) {
          std::vector<int> cone;
          cone.reserve(s.size() + 1);
          cone.push_back(apex);
          cone.insert(cone.end(), s.begin(), s.end());
          out.push_back(std::move(cone));
        }
      }
    }
    slot = std::move(out);
    return *slot;
  }

 private:
  const FaceLattice& lat_;
  std::vector<std::vector<std::optional<std::vector<std::vector<int>>>>> memo_;
};

}  // namespace

std::vector<Simplex> pulling_triangulation(const Polytope& p, const FaceLattice& lattice) {
  Puller puller(lattice);
  std::set<std::vector<int>> complex;
  const int top_dim = p.dim - 1;
  for (std::size_t f = 0; f < lattice.faces[top_dim].size(); ++f) {
    for (const auto& s : puller.top(top_dim, static_cast<int>(f))) {
      const unsigned n = static_cast<unsigned>(s.size());
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        for (unsigned i = 0; i < n; ++i)
          if ((mask >> i) & 1u) sub.push_back(s[i]);
        complex.insert(std::move(sub));
      }
    }
  }
  std::vector<Simplex> out;
  out.reserve(complex.size());
  for (const auto& ids : complex) out.push_back({ids});
  std::stable_sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) { return a.k() < b.k(); });
  return out;
}

std::vector<Simplex> pulling_triangulation(const Polytope& p) { return pulling_triangulation(p, face_lattice(p)); }

double simplex_volume(const Polytope& p, const Simplex& s) {
  const int k = s.k();
  if (k <= 0) return k == 0 ? 1.0 : 0.0;
  Eigen::MatrixXd e(p.dim, k);
  const PointD& base = p.vertices[s.vertex_ids[0]];
  for (int i = 1; i <= k; ++i) e.col(i - 1) = p.vertices[s.vertex_ids[i]] - base;
  const double gram = (e.transpose() * e).determinant();
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::sqrt(std::max(0.0, gram)) / fact;
}

namespace {

struct FacetMask {
  std::vector<std::uint64_t> words;

  bool operator==(const FacetMask&) const = default;
  bool empty() const {
    return std::all_of(words.begin(), words.end(), [](std::uint64_t w) { return w == 0; });
  }
  bool contains(const FacetMask& o) const {
    for (std::size_t i = 0; i < words.size(); ++i)
      if ((o.words[i] & ~words[i]) != 0) return false;
    return true;
  }
  FacetMask operator&(const FacetMask& o) const {
    FacetMask r = *this;
    for (std::size_t i = 0; i < words.size(); ++i) r.words[i] &= o.words[i];
    return r;
  }
};

struct MaskHash {
  std::size_t operator()(const FacetMask& m) const {
    std::size_t h = 0x9E3779B97F4A7C15ull;
    for (auto w : m.words) h = (h ^ w) * 0x100000001B3ull;
    return h;
  }
};

class Carriers {
 public:
  explicit Carriers(const Polytope& p) {
    const std::size_t words = (p.facets.size() + 63) / 64;
    masks_.reserve(p.vertices.size());
    for (const auto& vf : p.vertex_facets) {
      FacetMask m{std::vector<std::uint64_t>(words, 0)};
      for (int f : vf) m.words[f / 64] |= std::uint64_t{1} << (f % 64);
      masks_.push_back(std::move(m));
    }
  }

  const FacetMask& of(int v) const { return masks_[v]; }

  // Smallest vertex id on every facet of the mask.
  int min_vertex(const FacetMask& m) {
    auto it = min_.find(m);
    if (it != min_.end()) return it->second;
    int best = -1;
    for (std::size_t v = 0; v < masks_.size(); ++v) {
      if (masks_[v].contains(m)) {
        best = static_cast<int>(v);
        break;
      }
    }
    min_.emplace(m, best);
    return best;
  }

 private:
  std::vector<FacetMask> masks_;
  std::unordered_map<FacetMask, int, MaskHash> min_;
};

}  // namespace

std::vector<Simplex> pulling_skeleton(const Polytope& p, int max_dim) {
  Carriers carriers(p);
  std::vector<Simplex> out;
  struct Entry {
    std::vector<int> ids;
    FacetMask mask;  // facets containing every vertex: the carrier face
  };
  std::vector<Entry> level;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    level.push_back({{static_cast<int>(v)}, carriers.of(static_cast<int>(v))});
    out.push_back({{static_cast<int>(v)}});
  }
  for (int k = 1; k <= std::min(max_dim, p.dim - 1); ++k) {
    std::vector<Entry> next;
    for (const auto& e : level) {
      const int head = e.ids.front();
      for (int a = 0; a < head; ++a) {
        const FacetMask& fa = carriers.of(a);
        if (fa.contains(e.mask)) continue;  // a lies on the carrier of the rest
        FacetMask m = fa & e.mask;
        if (m.empty()) continue;  // not on the boundary
        if (carriers.min_vertex(m) != a) continue;
        std::vector<int> ids;
        ids.reserve(e.ids.size() + 1);
        ids.push_back(a);
        ids.insert(ids.end(), e.ids.begin(), e.ids.end());
        next.push_back({std::move(ids), std::move(m)});
      }
    }
    std::sort(next.begin(), next.end(), [](const Entry& x, const Entry& y) { return x.ids < y.ids; });
    for (const auto& e : next) out.push_back({e.ids});
    level = std::move(next);
  }
  return out;
}

}  // namespace gamut
