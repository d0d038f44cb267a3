#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "gamut/blackwhite.hpp"
#include "gamut/oracle.hpp"

using namespace gamut;

namespace {

Polytope cube_polytope() {
  const std::vector<Gamut> g{fixtures::cube12()};
  return gamut_intersection(g);
}

Gamut transformed(const Gamut& g, const Mat3& a) { return {a * g.K, a * g.R, a * g.G, a * g.B}; }

}  // namespace

TEST_CASE("cube candidates include the main diagonal") {
  const Polytope p = cube_polytope();
  const auto cands = candidate_chromaticities(p);
  bool diagonal = false;
  for (const auto& c : cands) {
    if ((c.lambda_minus - Vec3(1, 1, 1)).norm() < 1e-12 && (c.lambda_plus - Vec3(2, 2, 2)).norm() < 1e-12) {
      diagonal = true;
      CHECK(c.chroma.u == doctest::Approx(1.0 / 3));
      CHECK(c.chroma.v == doctest::Approx(1.0 / 3));
    }
  }
  CHECK(diagonal);
  for (const auto& c : cands) {
    CHECK(contains_point(p, c.lambda_minus));
    CHECK(contains_point(p, c.lambda_plus));
    const Chroma a = chromaticity(c.lambda_minus), b = chromaticity(c.lambda_plus);
    CHECK(std::abs(a.u - c.chroma.u) < 1e-9);
    CHECK(std::abs(a.v - c.chroma.v) < 1e-9);
    CHECK(std::abs(b.u - c.chroma.u) < 1e-9);
    CHECK(std::abs(b.v - c.chroma.v) < 1e-9);
    CHECK(c.ratio() >= 1.0 - 1e-12);
  }
}

TEST_CASE("cube selection") {
  const Polytope p = cube_polytope();
  const BWSelection a = select_black_white(p, {0, 1, 0});
  CHECK((a.K - Vec3(1, 1, 1)).norm() < 1e-12);
  CHECK((a.W - Vec3(2, 2, 2)).norm() < 1e-12);
  CHECK(a.ratio == doctest::Approx(2.0).epsilon(1e-12));
  const BWSelection b = select_black_white(p, {1, 1, 1});
  CHECK(a.K == b.K);
  CHECK(a.W == b.W);
}

TEST_CASE("pair selection hits the analytic bound") {
  const auto pair = fixtures::pair();
  const Polytope p = gamut_intersection(pair);
  bool found = false;
  for (const auto& c : candidate_chromaticities(p)) found = found || std::abs(c.ratio() - 1.6) < 1e-12;
  CHECK(found);
  for (const LuminosityWeights w : {LuminosityWeights{0, 1, 0}, LuminosityWeights{1, 1, 1}, LuminosityWeights{0.2, 0.7, 0.1}}) {
    const BWSelection s = select_black_white(p, w);
    CHECK(std::abs(s.ratio - 1.6) < 1e-9);
    // Tie among the continuum of optima resolves to the brightest white.
    CHECK((s.W - Vec3(2, 2, 2)).norm() < 1e-12);
    CHECK((s.K - Vec3(1.25, 1.25, 1.25)).norm() < 1e-12);
  }
}

TEST_CASE("grid oracle fixtures") {
  const OracleReport cube = grid_bw_oracle(cube_polytope(), 200);
  CHECK(cube.best_value <= 2.0 + 1e-12);
  CHECK(cube.best_value >= 2.0 - 1e-3);
  CHECK(cube.samples_or_cells > 0);

  const auto pair = fixtures::pair();
  const OracleReport pr = grid_bw_oracle(gamut_intersection(pair), 400);
  CHECK(pr.best_value <= 1.6 + 1e-12);
  CHECK(pr.best_value >= 1.6 - 1e-3);

  const std::vector<Gamut> negative{fixtures::translated(fixtures::cube12(), Vec3(-4, -4, -4))};
  const OracleReport none = grid_bw_oracle(gamut_intersection(negative), 50);
  CHECK(none.samples_or_cells == 0);
  CHECK(none.best_value == 0.0);
}

TEST_CASE("random instances dominate the grid oracle") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto inst = fixtures::random_instance(seed, 2 + static_cast<int>(seed % 4));
    const Polytope p = gamut_intersection(inst);
    const BWSelection s = select_black_white(p, {0, 1, 0});
    const OracleReport o = grid_bw_oracle(p, 100);
    CHECK(s.ratio >= o.best_value - 1e-9);
    CHECK(contains_point(p, s.K, 1e-9));
    CHECK(contains_point(p, s.W, 1e-9));
    CHECK(s.ratio >= 1.0);
  }
}

TEST_CASE("selection is weight invariant and linearly equivariant") {
  Xorshift64Star rng(404);
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const auto inst = fixtures::random_instance(seed, 3);
    const Polytope p = gamut_intersection(inst);
    const BWSelection a = select_black_white(p, {0, 1, 0});
    const BWSelection b = select_black_white(p, {1, 1, 1});
    const BWSelection c = select_black_white(p, {0.2, 0.7, 0.1});
    CHECK(a.K == b.K);
    CHECK(a.W == c.W);
    CHECK(a.chroma == c.chroma);

    Mat3 m = Mat3::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) += rng.uniform(0.0, 0.1);
    std::vector<Gamut> moved;
    for (const auto& g : inst) moved.push_back(transformed(g, m));
    const BWSelection t = select_black_white(gamut_intersection(moved), {0, 1, 0});
    const double ra = a.W.sum() / a.K.sum(), rt = t.W.sum() / t.K.sum();
    CHECK(rt == doctest::Approx(ra).epsilon(1e-9));
  }
}
