#include "gamut/volmax.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gamut/error.hpp"

namespace gamut {

namespace {

Mat3 cross_matrix(const Vec3& w) {
  Mat3 m;
  m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return m;
}

bool lex_greater(const PointD& a, const PointD& b) {
  return std::lexicographical_compare(b.data(), b.data() + b.size(), a.data(), a.data() + a.size());
}

// Corners as alpha*R + beta*B + offset(K, W).
struct CornerForm {
  double alpha;
  double beta;
  Color (*offset)(const Color& K, const Color& W);
};

constexpr std::array<CornerForm, 6> kCornerForms{{
    {1, 0, [](const Color&, const Color&) -> Color { return Color::Zero(); }},          // R
    {-1, -1, [](const Color& K, const Color& W) -> Color { return W + 2.0 * K; }},  // G
    {0, 1, [](const Color&, const Color&) -> Color { return Color::Zero(); }},          // B
    {-1, 0, [](const Color& K, const Color& W) -> Color { return W + K; }},         // C
    {1, 1, [](const Color& K, const Color&) -> Color { return -K; }},                // M
    {0, -1, [](const Color& K, const Color& W) -> Color { return W + K; }},         // Y
}};

}  // namespace

PointD RBPoint::coords() const {
  PointD x(6);
  x << R, B;
  return x;
}

RBPoint RBPoint::from(const PointD& x) { return {x.head<3>(), x.tail<3>()}; }

double QuadraticObjective::value(const PointD& x) const {
  const Eigen::VectorXd v = x;
  return 0.5 * v.dot(hessian * v) + gradient.dot(v) + constant;
}

Gamut gamut_from_rb(const Color& K, const Color& W, const RBPoint& rb) {
  return {K, rb.R, W + 2.0 * K - rb.R - rb.B, rb.B};
}

std::vector<Halfspace> gamma_halfspaces(std::span<const Gamut> gamuts, const Color& K, const Color& W) {
  std::vector<Halfspace> out;
  out.reserve(36 * gamuts.size());
  for (const auto& g : gamuts) {
    const auto facets = gamut_halfspaces(g);
    const double scale = std::max({1.0, K.cwiseAbs().maxCoeff(), W.cwiseAbs().maxCoeff()});
    for (const auto& f : facets) {
      if (f.slack(K) < -kFeasTol * scale || f.slack(W) < -kFeasTol * scale)
        throw GamutError(ErrorCode::InfeasibleAnchor, "black or white point lies outside a projector gamut");
    }
    for (const auto& f : facets) {
      const Vec3 n = f.normal;
      for (const auto& form : kCornerForms) {
        PointD normal(6);
        normal << form.alpha * n, form.beta * n;
        out.push_back({normal, f.offset - n.dot(form.offset(K, W))});
      }
    }
  }
  return out;
}

QuadraticObjective vol_objective(const Color& K, const Color& W) {
  // (R-K)' S (B-K) with S = [W-K]x; the K'SK term vanishes.
  const Mat3 s = cross_matrix(W - K);
  QuadraticObjective q;
  q.hessian = Eigen::MatrixXd::Zero(6, 6);
  q.hessian.topRightCorner<3, 3>() = s;
  q.hessian.bottomLeftCorner<3, 3>() = s.transpose();
  q.gradient.resize(6);
  q.gradient << -s * K, -s.transpose() * K;
  q.constant = 0.0;
  return q;
}

std::optional<std::pair<PointD, double>> restricted_max(std::span<const PointD> verts, const QuadraticObjective& q) {
  if (verts.empty()) return std::nullopt;
  const PointD& p0 = verts[0];
  if (verts.size() == 1) return std::make_pair(p0, q.value(p0));

  const int k = static_cast<int>(verts.size()) - 1;
  const int d = static_cast<int>(p0.size());
  Eigen::MatrixXd span(d, k);
  for (int i = 1; i <= k; ++i) span.col(i - 1) = verts[i] - p0;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
  const Eigen::MatrixXd basis = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
  const Eigen::MatrixXd upper = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();

  const Eigen::MatrixXd h = basis.transpose() * q.hessian * basis;
  const Eigen::VectorXd g = basis.transpose() * (q.hessian * Eigen::VectorXd(p0) + q.gradient);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::VectorXd lambda = eig.eigenvalues();
  const double largest = lambda.cwiseAbs().maxCoeff();
  if (!(largest > 0.0) || lambda.maxCoeff() >= -1e-10 * largest) return std::nullopt;

  // Critical point y* = -H^{-1} g, then barycentric coordinates from R b = y*.
  const Eigen::VectorXd y = -eig.eigenvectors() * (eig.eigenvalues().cwiseInverse().asDiagonal() *
                                                   (eig.eigenvectors().transpose() * g));
  Eigen::VectorXd bary(k + 1);
  bary.tail(k) = upper.triangularView<Eigen::Upper>().solve(y);
  bary[0] = 1.0 - bary.tail(k).sum();
  if (bary.minCoeff() < -1e-9) return std::nullopt;

  bary = bary.cwiseMax(0.0);
  bary /= bary.sum();
  PointD x = PointD::Zero(d);
  for (int i = 0; i <= k; ++i) x += bary[i] * verts[i];
  return std::make_pair(x, q.value(x));
}

std::optional<SimplexCandidate> restricted_max(const Polytope& gamma, const Simplex& s, const QuadraticObjective& q) {
  std::vector<PointD> verts;
  verts.reserve(s.vertex_ids.size());
  for (int id : s.vertex_ids) verts.push_back(gamma.vertices[id]);
  auto r = restricted_max(verts, q);
  if (!r) return std::nullopt;
  return SimplexCandidate{s, RBPoint::from(r->first), r->second};
}

GamutResult maximize_volume(std::span<const Gamut> gamuts, const Color& K, const Color& W, double tol) {
  const auto hs = gamma_halfspaces(gamuts, K, W);

  // R and B are corners of the standard gamut, so both stay in the bounding
  // box of the projector corners.
  Vec3 lo = K, hi = K;
  for (const auto& g : gamuts) {
    for (const auto& c : derive_corners(g).all()) {
      lo = lo.cwiseMin(c);
      hi = hi.cwiseMax(c);
    }
  }
  Box bounds{PointD(6), PointD(6)};
  bounds.lo << lo, lo;
  bounds.hi << hi, hi;

  const Polytope gamma = intersect_halfspaces(hs, 6, tol, bounds);
  const QuadraticObjective q = vol_objective(K, W);

  // A restriction can only be negative definite on a subspace no larger than
  // the Hessian's negative index (2 for this bilinear form); higher simplices
  // never hold an interior maximum.
  const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q.hessian).eigenvalues();
  const double largest = eig.cwiseAbs().maxCoeff();
  const int negative_index = static_cast<int>((eig.array() < -1e-10 * largest).count());
  const auto simplices = pulling_skeleton(gamma, negative_index);

  const double scale3 = std::pow((W - K).norm(), 3);
  std::optional<SimplexCandidate> best;
  std::size_t candidates = 0;
  for (const auto& s : simplices) {
    auto c = restricted_max(gamma, s, q);
    if (!c) continue;
    ++candidates;
    if (!best) {
      best = std::move(c);
      continue;
    }
    const double gap = c->value - best->value;
    if (gap > 1e-12 * scale3 || (gap >= -1e-12 * scale3 && lex_greater(c->point.coords(), best->point.coords())))
      best = std::move(c);
  }
  if (!best || best->value <= 1e-12 * scale3)
    throw GamutError(ErrorCode::DegenerateOptimum, "only collapsed gamuts fit between K and W");

  GamutResult out;
  out.method = "volmax";
  out.gamut = derive_corners(gamut_from_rb(K, W, best->point));
  out.gamut.W = W;
  out.volume = std::abs(out.gamut.gamut().signed_volume());
  out.note("gamma_halfspaces", static_cast<double>(hs.size()));
  out.note("gamma_vertices", static_cast<double>(gamma.vertices.size()));
  out.note("gamma_facets", static_cast<double>(gamma.facets.size()));
  out.note("simplices_scanned", static_cast<double>(simplices.size()));
  out.note("max_simplex_dim", static_cast<double>(negative_index));
  out.note("simplex_candidates", static_cast<double>(candidates));
  out.note("best_simplex_dim", static_cast<double>(best->simplex.k()));
  return out;
}

}  // namespace gamut
