// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "gamut/blackwhite.hpp"
#include "gamut/error.hpp"
#include "gamut/oracle.hpp"
#include "gamut/pipeline.hpp"
#include "gamut/qcp.hpp"
#include "gamut/report.hpp"
#include "gamut/stone.hpp"
#include "gamut/volmax.hpp"

using namespace gamut;

namespace {

// Pinned tolerances.
constexpr double kValueTol = 1e-9;        // K, W, ratios, volumes
constexpr double kContainTol = 1e-9;      // corners inside gamuts
constexpr double kGridSlack = 1e-3;       // grid oracle below the analytic optimum
constexpr double kOracleRel = 1e-6;       // sampling oracle dominance
constexpr double kVertexTol = 1e-8;       // double description vs subset oracle
constexpr double kAreaRel = 1e-8;         // triangulation area sums
constexpr double kQcpZero = 1e-6;         // t* for zero-residual specs
constexpr double kDetRel = 1e-12;         // determinant identity
constexpr double kCubeSeconds = 1.0;

constexpr int kBwInstances = 100;
constexpr int kVolInstances = 50;
constexpr int kDdSystems = 100;
constexpr int kTriPolytopes = 50;
constexpr int kDetSamples = 10000;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool near(const Vec3& a, const Vec3& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

bool corners_inside(const CornerSet& c, std::span<const Gamut> gamuts, double tol) {
  for (const auto& g : gamuts)
    for (const auto& h : gamut_halfspaces(g))
      for (const auto& x : c.all())
        if (h.slack(x) < -tol * std::max(1.0, x.cwiseAbs().maxCoeff())) return false;
  return true;
}

Instance as_instance(const std::vector<Gamut>& gs) {
  Instance inst;
  for (std::size_t i = 0; i < gs.size(); ++i) inst.projectors.push_back({"p" + std::to_string(i + 1), gs[i]});
  return inst;
}

std::vector<CornerQualitySpec> own_corners(const Gamut& g) {
  std::vector<CornerQualitySpec> out;
  const auto c = derive_corners(g).all();
  for (int i = 0; i < 8; ++i) out.push_back({static_cast<Corner>(i), QualityKind::Euclidean, c[i], Vec3::Zero(), 1.0});
  return out;
}

// Criterion 4/9 instance family.
std::vector<Gamut> bw_instance(int i) { return fixtures::random_instance(1000 + i, 2 + i % 5); }

std::vector<Halfspace> random_hs(Xorshift64Star& rng, int count) {
  std::vector<Halfspace> out;
  for (int i = 0; i < count; ++i) {
    Vec3 n;
    do {
      n = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    } while (n.norm() < 0.1 || n.norm() > 1.0);
    out.push_back({PointD(n.normalized()), rng.uniform(0.5, 1.5)});
  }
  return out;
}

std::optional<Polytope> bounded(const std::vector<Halfspace>& hs) {
  try {
    return intersect_halfspaces(hs, 3);
  } catch (const GamutError& e) {
    if (e.code() == ErrorCode::UnboundedRegion) return std::nullopt;
    throw;
  }
}

std::vector<Halfspace> box_hs(double lo, double hi, int d) {
  std::vector<Halfspace> out;
  for (int i = 0; i < d; ++i) {
    PointD e = PointD::Zero(d);
    e[i] = 1.0;
    out.push_back({-e, -lo});
    out.push_back({e, hi});
  }
  return out;
}

// Facet polygon area: fan from the centroid over vertices sorted by angle.
double facet_area(const Polytope& p, int f) {
  const auto& ids = p.facet_vertices[f];
  const Vec3 n = p.facets[f].normal;
  Vec3 c = Vec3::Zero();
  for (int v : ids) c += p.vertices[v];
  c /= static_cast<double>(ids.size());
  const Vec3 a = (Vec3(p.vertices[ids[0]]) - c).normalized();
  const Vec3 b = n.cross(a);
  std::vector<std::pair<double, Vec3>> ring;
  for (int v : ids) {
    const Vec3 x = Vec3(p.vertices[v]) - c;
    ring.push_back({std::atan2(x.dot(b), x.dot(a)), x});
  }
  std::sort(ring.begin(), ring.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  double area = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) area += 0.5 * ring[i].second.cross(ring[(i + 1) % ring.size()].second).norm();
  return area;
}

double triangle_area_sum(const Polytope& p) {
  double sum = 0.0;
  for (const auto& s : pulling_triangulation(p))
    if (s.k() == 2) sum += simplex_volume(p, s);
  return sum;
}

Outcome cube_recovery() {
  Outcome o;
  const auto t0 = Clock::now();
  Instance inst = as_instance({fixtures::cube12()});
  inst.qcp_specs = own_corners(fixtures::cube12());
  PipelineConfig config;
  config.method = Method::All;
  const PipelineOutput out = run_pipeline(inst, config);
  const double elapsed = seconds_since(t0);
  o.require(out.black_white && near(out.black_white->K, Vec3(1, 1, 1), kValueTol), "K != (1,1,1)");
  o.require(out.black_white && near(out.black_white->W, Vec3(2, 2, 2), kValueTol), "W != (2,2,2)");
  o.require(std::abs(out.results[0].luminosity_ratio - 2.0) <= kValueTol, "ratio != 2");
  for (const auto& r : out.results) o.require(std::abs(r.volume - 1.0) <= kValueTol, r.method + " volume != 1");
  const QcpSolution s = solve_qcp(std::vector<Gamut>{fixtures::cube12()}, own_corners(fixtures::cube12()));
  o.require(s.t_star <= kQcpZero, "qcp t* too large");
  o.require(elapsed < kCubeSeconds, "runtime " + std::to_string(elapsed) + " s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "volumes %.12f/%.12f/%.12f, t*=%.2e, %.3f s", out.results[0].volume,
                out.results[1].volume, out.results[2].volume, s.t_star, elapsed);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome duplicate_idempotence() {
  Outcome o;
  PipelineConfig config;
  config.method = Method::All;
  auto report = [&](int copies) {
    const Instance inst = as_instance(std::vector<Gamut>(copies, fixtures::cube12()));
    auto j = nlohmann::ordered_json::parse(emit_report(inst, config, run_pipeline(inst, config)));
    j.erase("projector_count");
    for (auto& r : j["results"]) r.erase("matrices");
    return j.dump(2);
  };
  o.require(report(1) == report(4), "reports differ");
  if (o.ok) o.detail = "n=4 report equals n=1 report";
  return o;
}

Outcome pair_ratio() {
  Outcome o;
  const auto pair = fixtures::pair();
  const Polytope p = gamut_intersection(pair);
  const BWSelection s = select_black_white(p, {});
  const OracleReport g = grid_bw_oracle(p, 400);
  o.require(std::abs(s.ratio - 1.6) <= kValueTol, "ratio " + std::to_string(s.ratio));
  o.require(g.best_value <= 1.6 + kValueTol && g.best_value >= 1.6 - kGridSlack, "grid " + std::to_string(g.best_value));
  char buf[96];
  std::snprintf(buf, sizeof buf, "ratio %.15f, grid(400) %.6f", s.ratio, g.best_value);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome bw_dominance() {
  Outcome o;
  double worst = 1e9;
  for (int i = 0; i < kBwInstances; ++i) {
    const Polytope p = gamut_intersection(bw_instance(i));
    const BWSelection s = select_black_white(p, {});
    const OracleReport g = grid_bw_oracle(p, 200);
    worst = std::min(worst, s.ratio - g.best_value);
    o.require(s.ratio >= g.best_value - kValueTol, "instance " + std::to_string(i));
  }
  if (o.ok) o.detail = std::to_string(kBwInstances) + " instances, min(exact - grid) = " + sci(worst);
  return o;
}

Outcome volume_dominance() {
  Outcome o;
  double margin = 1e9;
  for (int i = 0; i < kVolInstances; ++i) {
    const auto inst = fixtures::random_instance(2000 + i, 2 + i % 5);
    const BWSelection s = select_black_white(gamut_intersection(inst), {});
    const GamutResult r = maximize_volume(inst, s.K, s.W);
    const OracleReport orc = sample_volume_oracle(inst, s.K, s.W, 100000, kDefaultOracleSeed);
    margin = std::min(margin, r.volume / std::max(orc.best_value, 1e-300) - 1.0);
    o.require(r.volume >= orc.best_value * (1 - kOracleRel), "instance " + std::to_string(i) + " below oracle");
    o.require(corners_inside(r.gamut, inst, kContainTol), "instance " + std::to_string(i) + " corner outside");
  }
  if (o.ok) o.detail = std::to_string(kVolInstances) + " instances, min volume/oracle - 1 = " + std::to_string(margin);
  return o;
}

Outcome double_description() {
  Outcome o;
  const Polytope cube6 = intersect_halfspaces(box_hs(0, 1, 6), 6);
  o.require(cube6.vertices.size() == 64 && cube6.facets.size() == 12, "6-cube counts");
  Xorshift64Star rng(31337);
  int checked = 0;
  while (checked < kDdSystems) {
    const auto hs = random_hs(rng, 4 + static_cast<int>(rng.next() % 9));
    const auto p = bounded(hs);
    if (!p) continue;
    ++checked;
    auto oracle = subset_vertex_oracle(hs, 3);
    bool match = oracle.size() == p->vertices.size();
    std::vector<bool> used(oracle.size(), false);
    for (const auto& v : p->vertices) {
      bool found = false;
      for (std::size_t j = 0; j < oracle.size() && !found; ++j)
        if (!used[j] && (v - oracle[j]).cwiseAbs().maxCoeff() <= kVertexTol) used[j] = found = true;
      match = match && found;
    }
    o.require(match, "system " + std::to_string(checked));
  }
  if (o.ok) o.detail = "64/12 on [0,1]^6; " + std::to_string(kDdSystems) + " random systems match";
  return o;
}

Outcome pulling_triangulation_check() {
  Outcome o;
  const Polytope cube = intersect_halfspaces(box_hs(1, 2, 3), 3);
  const auto tri = pulling_triangulation(cube);
  const auto triangles = std::count_if(tri.begin(), tri.end(), [](const Simplex& s) { return s.k() == 2; });
  o.require(triangles == 12, "cube triangles " + std::to_string(triangles));
  o.require(std::abs(triangle_area_sum(cube) - 6.0) <= kValueTol, "cube area");
  Xorshift64Star rng(4242);
  int checked = 0;
  double worst = 0.0;
  while (checked < kTriPolytopes) {
    const auto p = bounded(random_hs(rng, 12));
    if (!p) continue;
    ++checked;
    double facets = 0.0;
    for (std::size_t f = 0; f < p->facets.size(); ++f) facets += facet_area(*p, static_cast<int>(f));
    const double rel = std::abs(triangle_area_sum(*p) - facets) / facets;
    worst = std::max(worst, rel);
    o.require(rel <= kAreaRel, "polytope " + std::to_string(checked));
  }
  if (o.ok) o.detail = "12 triangles, area 6; worst relative area gap " + sci(worst);
  return o;
}

Outcome qcp_brackets() {
  Outcome o;
  const std::vector<Gamut> cube{fixtures::cube12()};
  auto bracket_ok = [&](std::span<const Gamut> gs, const std::vector<CornerQualitySpec>& specs, const QcpSolution& s,
                        const std::string& name) {
    o.require(s.t_high - s.t_low <= kQcpTol, name + ": bracket width");
    o.require(feasible_at_level(gs, specs, s.t_high).has_value(), name + ": tHigh infeasible");
    if (s.low_certified) {
      bool fails = false;
      try {
        fails = !feasible_at_level(gs, specs, s.t_low).has_value();
      } catch (const GamutError&) {
      }
      o.require(fails, name + ": tLow feasible");
    } else {
      // Uncertified lower ends are only the analytic bound 0 of euclidean specs.
      o.require(s.t_low == 0.0, name + ": uncertified tLow");
    }
  };

  const auto corners = own_corners(fixtures::cube12());
  const QcpSolution a = solve_qcp(cube, corners);
  o.require(a.t_star <= kQcpZero, "cube corners t*");
  bracket_ok(cube, corners, a, "cube corners");

  const std::vector<CornerQualitySpec> origin{{Corner::K, QualityKind::Euclidean, Color::Zero(), Vec3::Zero(), 1.0}};
  const QcpSolution b = solve_qcp(cube, origin);
  o.require(std::abs(b.t_star - std::sqrt(3.0)) <= kQcpZero, "origin t*");
  bracket_ok(cube, origin, b, "origin");

  const std::vector<CornerQualitySpec> lum{{Corner::K, QualityKind::Linear, Color::Zero(), Vec3(0, 1, 0), 1.0}};
  const QcpSolution c = solve_qcp(cube, lum);
  o.require(std::abs(c.t_star - 1.0) <= kQcpZero, "luminosity t*");
  bracket_ok(cube, lum, c, "luminosity");

  for (int i = 0; i < 10; ++i) {
    const auto inst = fixtures::random_instance(3000 + i, 2 + i % 5);
    const auto specs = default_specs(inst);
    const QcpSolution s = solve_qcp(inst, specs);
    bracket_ok(inst, specs, s, "random " + std::to_string(i));
    const GamutParams x = to_params(s.gamut);
    CornerSet c;
    c.K = corner_of(x, Corner::K);
    c.R = corner_of(x, Corner::R);
    c.G = corner_of(x, Corner::G);
    c.B = corner_of(x, Corner::B);
    c.C = corner_of(x, Corner::C);
    c.M = corner_of(x, Corner::M);
    c.Y = corner_of(x, Corner::Y);
    c.W = corner_of(x, Corner::W);
    o.require(corners_inside(c, inst, kContainTol), "random corners outside");
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "t* cube %.1e, origin %.12f, luminosity %.12f; 13 brackets", a.t_star, b.t_star,
                c.t_star);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome stone_check() {
  Outcome o;
  for (int i = 0; i < kBwInstances; ++i) {
    const auto inst = bw_instance(i);
    try {
      const auto [r, trace] = stone_gamut(inst, {});
      o.require(corners_inside(r.gamut, inst, kContainTol), "instance " + std::to_string(i) + " outside");
    } catch (const GamutError& e) {
      o.require(false, "instance " + std::to_string(i) + ": " + e.what());
    }
  }
  const auto [r, trace] = stone_gamut(std::vector<Gamut>{fixtures::cube12()}, {});
  o.require(trace.alpha == 1.0, "cube alpha " + std::to_string(trace.alpha));
  o.require(std::abs(r.volume - 1.0) <= kValueTol, "cube volume");
  if (o.ok) o.detail = std::to_string(kBwInstances) + " instances feasible; cube alpha 1, volume 1";
  return o;
}

Outcome equivariance() {
  Outcome o;
  constexpr double s = 2.5;
  std::vector<std::vector<Gamut>> cases{{fixtures::cube12()}, fixtures::pair()};
  for (int i = 0; i < 20; ++i) cases.push_back(fixtures::random_instance(4000 + i, 2 + i % 5));
  double worst = 0.0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& inst = cases[c];
    std::vector<Gamut> big;
    for (const auto& g : inst) big.push_back(fixtures::scaled(g, s));
    const std::string tag = "case " + std::to_string(c);

    const BWSelection a = select_black_white(gamut_intersection(inst), {});
    const BWSelection b = select_black_white(gamut_intersection(big), {});
    const double scale = a.W.norm();
    o.require((b.K - s * a.K).norm() <= kValueTol * s * scale, tag + ": K");
    o.require((b.W - s * a.W).norm() <= kValueTol * s * scale, tag + ": W");
    o.require(std::abs(b.ratio - a.ratio) <= kValueTol * a.ratio, tag + ": ratio");

    const GamutResult va = maximize_volume(inst, a.K, a.W);
    const GamutResult vb = maximize_volume(big, b.K, b.W);
    const double rel = std::abs(vb.volume - s * s * s * va.volume) / (s * s * s * va.volume);
    worst = std::max(worst, rel);
    o.require(rel <= kValueTol, tag + ": volume");

    const Polytope p = gamut_intersection(inst);
    for (const LuminosityWeights w : {LuminosityWeights{0, 1, 0}, LuminosityWeights{1, 1, 1},
                                      LuminosityWeights{0.2, 0.7, 0.1}}) {
      const BWSelection x = select_black_white(p, w);
      o.require(x.K == a.K && x.W == a.W, tag + ": weights change (K, W)");
    }
  }
  if (o.ok) o.detail = std::to_string(cases.size()) + " instances; worst volume rel error " + sci(worst);
  return o;
}

Outcome determinant_identity() {
  Outcome o;
  Xorshift64Star rng(11);
  double worst = 0.0;
  for (int i = 0; i < kDetSamples; ++i) {
    auto rnd = [&] { return Color(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)); };
    const Color K = rnd(), R = rnd(), G = rnd(), B = rnd();
    const Color W = R + G + B - 2.0 * K;
    const double lhs = det3(R - K, W - K, B - K);
    const double rhs = det3(R - K, G - K, B - K);
    const double quad = vol_objective(K, W).value(RBPoint{R, B}.coords());
    const double scale = (R - K).norm() * (W - K).norm() * (B - K).norm() + (R - K).norm() * (G - K).norm() * (B - K).norm();
    worst = std::max({worst, std::abs(lhs - rhs) / scale, std::abs(quad - rhs) / scale});
  }
  o.require(worst <= kDetRel, "worst relative gap " + std::to_string(worst));
  char buf[80];
  std::snprintf(buf, sizeof buf, "%d samples, worst relative gap %.2e", kDetSamples, worst);
  if (o.ok) o.detail = buf;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 cube recovery", cube_recovery},
      {"2 duplicate idempotence", duplicate_idempotence},
      {"3 pair ratio", pair_ratio},
      {"4 black/white oracle dominance", bw_dominance},
      {"5 volume oracle dominance", volume_dominance},
      {"6 double description", double_description},
      {"7 pulling triangulation", pulling_triangulation_check},
      {"8 qcp brackets", qcp_brackets},
      {"9 stone feasibility", stone_check},
      {"10 equivariance", equivariance},
      {"11 determinant identity", determinant_identity},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.ok ? 0 : 1;
    std::printf("%s criterion %-32s %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                seconds_since(t0));
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
