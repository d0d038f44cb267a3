#include "gamut/qcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gamut/error.hpp"

namespace gamut {

namespace {

using Vec12 = GamutParams;

struct Plane {
  Vec12 a;
  double b = 0.0;
  double norm2 = 1.0;
};

struct Ball {
  Eigen::Vector4d coef;
  Color center;
  double radius = 0.0;
};

Vec12 lift(const Eigen::Vector4d& coef, const Vec3& v) {
  Vec12 out;
  for (int i = 0; i < 4; ++i) out.segment<3>(3 * i) = coef[i] * v;
  return out;
}

Color apply(const Eigen::Vector4d& coef, const Vec12& x) {
  Color out = Color::Zero();
  for (int i = 0; i < 4; ++i) out += coef[i] * x.segment<3>(3 * i);
  return out;
}

constexpr std::array<Corner, 8> kCorners{Corner::K, Corner::R, Corner::G, Corner::B,
                                         Corner::C, Corner::M, Corner::Y, Corner::W};

double problem_scale(const Polytope& p) { return std::max(1.0, p.scale); }

struct Containment {
  std::vector<Plane> planes;  // tightened by the margin
  std::vector<Plane> exact;
};

Containment containment(const Polytope& p, double margin) {
  Containment out;
  for (const auto& f : p.facets) {
    const Vec3 n = f.normal;
    for (Corner c : kCorners) {
      const Eigen::Vector4d coef = corner_coefficients(c);
      Plane pl{lift(coef, n), f.offset, coef.squaredNorm() * n.squaredNorm()};
      out.exact.push_back(pl);
      pl.b -= margin;
      out.planes.push_back(pl);
    }
  }
  return out;
}

void project(const Plane& pl, Vec12& x) {
  const double excess = pl.a.dot(x) - pl.b;
  if (excess > 0.0) x -= (excess / pl.norm2) * pl.a;
}

void project(const Ball& ball, Vec12& x) {
  const Vec3 r = apply(ball.coef, x) - ball.center;
  const double dist = r.norm();
  if (dist <= ball.radius) return;
  x -= lift(ball.coef, r) * ((1.0 - ball.radius / dist) / ball.coef.squaredNorm());
}

GamutParams collapsed_at_centroid(const Polytope& p) {
  Vec3 c = Vec3::Zero();
  for (const auto& v : p.vertices) c += Vec3(v);
  c /= static_cast<double>(p.vertices.size());
  return to_params({c, c, c, c});
}

}  // namespace

GamutParams to_params(const Gamut& g) {
  GamutParams x;
  x << g.K, g.R, g.G, g.B;
  return x;
}

Gamut from_params(const GamutParams& x) { return {x.segment<3>(0), x.segment<3>(3), x.segment<3>(6), x.segment<3>(9)}; }

Eigen::Vector4d corner_coefficients(Corner c) {
  switch (c) {
    case Corner::K: return {1, 0, 0, 0};
    case Corner::R: return {0, 1, 0, 0};
    case Corner::G: return {0, 0, 1, 0};
    case Corner::B: return {0, 0, 0, 1};
    case Corner::C: return {-1, 0, 1, 1};
    case Corner::M: return {-1, 1, 0, 1};
    case Corner::Y: return {-1, 1, 1, 0};
    case Corner::W: return {-2, 1, 1, 1};
  }
  return Eigen::Vector4d::Zero();
}

Color corner_of(const GamutParams& x, Corner c) { return apply(corner_coefficients(c), x); }

double corner_quality(const CornerQualitySpec& spec, const Color& x) {
  if (spec.kind == QualityKind::Euclidean) return spec.weight * (x - spec.target).norm();
  return spec.weight * spec.direction.dot(x - spec.target);
}

double max_quality(std::span<const CornerQualitySpec> specs, const GamutParams& x) {
  double out = -std::numeric_limits<double>::infinity();
  for (const auto& s : specs) out = std::max(out, corner_quality(s, corner_of(x, s.corner)));
  return out;
}

namespace {

// Level test with one cap per spec: quality i must stay at or below caps[i].
LevelCheck check_caps(const Polytope& p, std::span<const CornerQualitySpec> specs, std::span<const double> caps,
                      double tol, const GamutParams& start) {
  const double scale = problem_scale(p);
  const double margin = 1e-10 * scale;
  const Containment box = containment(p, margin);

  std::vector<Plane> planes = box.planes;
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    const double t = caps[i];
    const Eigen::Vector4d coef = corner_coefficients(s.corner);
    if (s.kind == QualityKind::Euclidean) {
      if (t < 0.0) return {LevelStatus::Infeasible, start, 0};
      balls.push_back({coef, s.target, t / s.weight});
    } else {
      const Vec3 d = s.weight * s.direction;
      planes.push_back({lift(coef, d), t + d.dot(s.target), coef.squaredNorm() * d.squaredNorm()});
    }
  }

  auto feasible = [&](const Vec12& x) {
    for (const auto& pl : box.exact)
      if (pl.a.dot(x) - pl.b > margin) return false;
    for (std::size_t i = 0; i < specs.size(); ++i)
      if (corner_quality(specs[i], corner_of(x, specs[i].corner)) > caps[i] + tol) return false;
    return true;
  };

  LevelCheck out{LevelStatus::BudgetExceeded, start, 0};
  Vec12 x = start;
  if (feasible(x)) return {LevelStatus::Feasible, x, 0};
  for (int sweep = 1; sweep <= kSweepBudget; ++sweep) {
    const Vec12 before = x;
    for (const auto& pl : planes) project(pl, x);
    for (const auto& b : balls) project(b, x);
    out.sweeps = sweep;
    out.point = x;
    if (feasible(x)) {
      out.status = LevelStatus::Feasible;
      return out;
    }
    if ((x - before).norm() < 1e-12 * scale) {
      out.status = LevelStatus::Infeasible;
      return out;
    }
  }
  return out;
}

struct Bracket {
  double t_low = 0.0;
  double t_high = 0.0;
  GamutParams best;
  bool certified = false;
};

}  // namespace

LevelCheck check_level(const Polytope& p, std::span<const CornerQualitySpec> specs, double t, double tol,
                       const GamutParams& start) {
  const std::vector<double> caps(specs.size(), t);
  return check_caps(p, specs, caps, tol, start);
}

std::optional<GamutParams> feasible_at_level(std::span<const Gamut> gamuts, std::span<const CornerQualitySpec> specs,
                                             double t, double tol) {
  const Polytope p = gamut_intersection(gamuts);
  const LevelCheck r = check_level(p, specs, t, tol, collapsed_at_centroid(p));
  if (r.status == LevelStatus::BudgetExceeded)
    throw GamutError(ErrorCode::IterationBudgetExceeded, "projections did not settle at level " + std::to_string(t));
  if (r.status == LevelStatus::Infeasible) return std::nullopt;
  return r.point;
}

QcpSolution solve_qcp(std::span<const Gamut> gamuts, std::span<const CornerQualitySpec> specs, double tol) {
  if (specs.empty()) throw GamutError(ErrorCode::ValidationError, "no corner quality specs");
  for (const auto& s : specs) {
    if (!(s.weight > 0.0)) throw GamutError(ErrorCode::ValidationError, "spec weight must be positive");
    if (s.kind == QualityKind::Linear && !(s.direction.norm() > 0.0))
      throw GamutError(ErrorCode::ValidationError, "linear spec needs a nonzero direction");
  }
  const Polytope p = gamut_intersection(gamuts);
  const double scale = problem_scale(p);
  const GamutParams start = collapsed_at_centroid(p);
  const std::size_t n = specs.size();

  QcpSolution out;
  // Specs with a frozen cap keep it; the rest share the tested level. Every
  // level is tested from the same start, so a repeated test of either bracket
  // end reproduces its outcome exactly.
  std::vector<std::optional<double>> frozen(n);
  auto caps_at = [&](double t) {
    std::vector<double> caps(n);
    for (std::size_t i = 0; i < n; ++i) caps[i] = frozen[i] ? *frozen[i] : t;
    return caps;
  };
  auto test_caps = [&](const std::vector<double>& caps) {
    ++out.iterations;
    LevelCheck r = check_caps(p, specs, caps, tol, start);
    if (r.status == LevelStatus::BudgetExceeded) ++out.budget_exhausted;
    return r;
  };
  auto test = [&](double t) { return test_caps(caps_at(t)); };
  auto free_max = [&](const GamutParams& x) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      if (!frozen[i]) m = std::max(m, corner_quality(specs[i], corner_of(x, specs[i].corner)));
    return m;
  };

  // Bisects the shared level of the free specs, from a known feasible upper end.
  auto bisect = [&](double t_high, const GamutParams& feasible_point) {
    Bracket br{0.0, t_high, feasible_point, false};
    bool has_euclidean = false;
    for (std::size_t i = 0; i < n; ++i)
      if (!frozen[i] && specs[i].kind == QualityKind::Euclidean) has_euclidean = true;
    // 0 bounds every euclidean quality; otherwise step down until a test fails.
    if (!has_euclidean) {
      double step = std::max(std::abs(br.t_high), scale);
      while (true) {
        if (step > 1e12 * scale) throw GamutError(ErrorCode::NoFiniteLevel, "quality unbounded below");
        const double t = br.t_high - step;
        LevelCheck r = test(t);
        if (r.status != LevelStatus::Feasible) {
          br.t_low = t;
          br.certified = r.status == LevelStatus::Infeasible;
          break;
        }
        br.t_high = t;
        br.best = r.point;
        step *= 2.0;
      }
    }
    br.t_low = std::min(br.t_low, br.t_high);
    while (br.t_high - br.t_low > tol) {
      const double mid = 0.5 * (br.t_low + br.t_high);
      LevelCheck r = test(mid);
      if (r.status == LevelStatus::Feasible) {
        br.t_high = mid;
        br.best = r.point;
      } else {
        br.t_low = mid;
        br.certified = r.status == LevelStatus::Infeasible;
      }
    }
    return br;
  };

  // Upper end: the level of the start point, increased until a test succeeds.
  double t_high = max_quality(specs, start);
  GamutParams best = start;
  {
    double step = std::max(std::abs(t_high), scale);
    LevelCheck r = test(t_high);
    while (r.status != LevelStatus::Feasible) {
      if (step > 1e12 * scale) throw GamutError(ErrorCode::NoFiniteLevel, "no feasible level found");
      t_high += step;
      step *= 2.0;
      r = test(t_high);
    }
    best = r.point;
  }

  const Bracket first = bisect(t_high, best);
  out.t_low = first.t_low;
  out.t_high = first.t_high;
  out.low_certified = first.certified;

  // The worst quality alone leaves the other corners loose. Freeze the specs
  // that cannot go below the current level and minimize the rest, until every
  // spec is frozen.
  Bracket br = first;
  const double slack = std::max(1e3 * tol, 1e-7 * scale);
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::size_t> binding;
    std::size_t worst = n;
    double worst_q = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      const double q = corner_quality(specs[i], corner_of(br.best, specs[i].corner));
      if (q > worst_q) {
        worst_q = q;
        worst = i;
      }
      if (q < br.t_high - slack) continue;
      std::vector<double> caps = caps_at(br.t_high);
      caps[i] = br.t_high - slack;
      if (test_caps(caps).status != LevelStatus::Feasible) binding.push_back(i);
    }
    if (worst == n) break;
    if (binding.empty()) binding.push_back(worst);
    for (std::size_t i : binding) frozen[i] = br.t_high;
    if (std::all_of(frozen.begin(), frozen.end(), [](const auto& f) { return f.has_value(); })) break;

    br = bisect(free_max(br.best), br.best);
  }

  out.gamut = from_params(br.best);
  out.t_star = max_quality(specs, br.best);
  return out;
}

std::vector<CornerQualitySpec> default_specs(std::span<const Gamut> gamuts) {
  std::vector<CornerQualitySpec> out;
  std::vector<CornerSet> corners;
  for (const auto& g : gamuts) corners.push_back(derive_corners(g));
  for (Corner c : kCorners) {
    std::vector<Vec3> values;
    for (const auto& cs : corners) values.push_back(cs.all()[static_cast<int>(c)]);
    CornerQualitySpec s;
    s.corner = c;
    s.kind = QualityKind::Euclidean;
    s.target = stable_mean(values);
    s.weight = (c == Corner::K || c == Corner::W) ? 2.0 : 1.0;
    out.push_back(s);
  }
  return out;
}

GamutResult qcp_result(const QcpSolution& s, std::span<const CornerQualitySpec> specs, const LuminosityWeights& w) {
  GamutResult out;
  out.method = "qcp";
  // The optimum may be a collapsed gamut, so corners are taken directly.
  const GamutParams x = to_params(s.gamut);
  out.gamut = {corner_of(x, Corner::K), corner_of(x, Corner::R), corner_of(x, Corner::G), corner_of(x, Corner::B),
               corner_of(x, Corner::C), corner_of(x, Corner::M), corner_of(x, Corner::Y), corner_of(x, Corner::W)};
  out.volume = std::abs(s.gamut.signed_volume());
  const double lk = luminosity(out.gamut.K, w);
  out.luminosity_ratio = lk > 0.0 ? luminosity(out.gamut.W, w) / lk : std::numeric_limits<double>::quiet_NaN();
  out.note("specs", static_cast<double>(specs.size()));
  out.note("t_star", s.t_star);
  out.note("t_low", s.t_low);
  out.note("t_high", s.t_high);
  out.note("low_certified", s.low_certified ? 1.0 : 0.0);
  out.note("levels_tested", static_cast<double>(s.iterations));
  out.note("budget_exhausted", static_cast<double>(s.budget_exhausted));
  try {
    const Chroma k = chromaticity(out.gamut.K), wc = chromaticity(out.gamut.W);
    out.note("chroma_gap", std::hypot(k.u - wc.u, k.v - wc.v));
  } catch (const GamutError&) {
    out.note("chroma_gap", std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

}  // namespace gamut
