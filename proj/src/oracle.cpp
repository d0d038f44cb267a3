#include "gamut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gamut/error.hpp"
#include "gamut/rng.hpp"

namespace gamut {

std::vector<PointD> subset_vertex_oracle(std::span<const Halfspace> hs, int dim) {
  const std::size_t m = hs.size();
  double subsets = 1.0;
  for (int i = 0; i < dim; ++i) subsets = subsets * static_cast<double>(m - i) / (i + 1);
  if (static_cast<int>(m) < dim) return {};
  if (subsets > 1e6) throw GamutError(ErrorCode::TooManySubsets, "more than 10^6 subsets");

  double scale = 1.0;
  for (const auto& h : hs) scale = std::max(scale, std::abs(h.offset) / h.normal.norm());

  std::vector<PointD> out;
  std::vector<int> idx(dim);
  for (int i = 0; i < dim; ++i) idx[i] = i;
  while (true) {
    Eigen::MatrixXd a(dim, dim);
    Eigen::VectorXd b(dim);
    for (int r = 0; r < dim; ++r) {
      const double n = hs[idx[r]].normal.norm();
      a.row(r) = hs[idx[r]].normal.transpose() / n;
      b[r] = hs[idx[r]].offset / n;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-10);
    if (lu.isInvertible()) {
      const PointD x = lu.solve(b);
      const double tol = kFeasTol * std::max(1.0, x.cwiseAbs().maxCoeff());
      bool feasible = true;
      for (const auto& h : hs) feasible = feasible && h.normal.dot(x) - h.offset <= tol * h.normal.norm();
      if (feasible) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const PointD& y) {
          return (x - y).cwiseAbs().maxCoeff() <= kDedupeTol * scale;
        });
        if (!dup) out.push_back(x);
      }
    }
    int i = dim - 1;
    while (i >= 0 && idx[i] == static_cast<int>(m) - dim + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), [](const PointD& a, const PointD& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return out;
}

}  // namespace gamut

namespace gamut {

OracleReport grid_bw_oracle(const Polytope& p, int resolution) {
  OracleReport rep;
  rep.best_value = 0.0;
  rep.best_witness = {0.0, 0.0};
  const double n = resolution;
  auto visit = [&](double u, double v) {
    const auto r = try_ray_extent(p, {u, v});
    if (!r || !(r->t_minus > 0.0)) return;
    ++rep.samples_or_cells;
    const double ratio = r->t_plus / r->t_minus;
    if (ratio > rep.best_value) {
      rep.best_value = ratio;
      rep.best_witness = {u, v};
    }
  };
  // Centroids of the two triangle orientations of each grid square.
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; i + j < resolution; ++j) {
      visit((i + 1.0 / 3.0) / n, (j + 1.0 / 3.0) / n);
      if (i + j < resolution - 1) visit((i + 2.0 / 3.0) / n, (j + 2.0 / 3.0) / n);
    }
  }
  return rep;
}

}  // namespace gamut

#include "gamut/volmax.hpp"

namespace gamut {

OracleReport sample_volume_oracle(std::span<const Gamut> gamuts, const Color& K, const Color& W,
                                  std::int64_t samples, std::uint64_t seed) {
  const auto hs = gamma_halfspaces(gamuts, K, W);
  const QuadraticObjective q = vol_objective(K, W);
  const Polytope p = gamut_intersection(gamuts);
  PointD lo = p.vertices.front(), hi = p.vertices.front();
  for (const auto& v : p.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }

  OracleReport rep;
  rep.seed = seed;
  rep.best_value = 0.0;
  PointD best = RBPoint{K, K}.coords();
  rep.samples_or_cells = 1;

  const double scale = std::max(1.0, hi.cwiseAbs().maxCoeff());
  Xorshift64Star rng(seed);
  PointD x(6);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < 6; ++i) x[i] = rng.uniform(lo[i % 3], hi[i % 3]);
    bool feasible = true;
    for (const auto& h : hs) {
      if (h.normal.dot(x) - h.offset > kFeasTol * scale) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    ++rep.samples_or_cells;
    const double v = q.value(x);
    if (v > rep.best_value) {
      rep.best_value = v;
      best = x;
    }
  }
  rep.best_witness.assign(best.data(), best.data() + best.size());
  return rep;
}

}  // namespace gamut
