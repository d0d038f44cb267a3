#include "gamut/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "gamut/volmax.hpp"

namespace gamut {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool same_gamut(const Gamut& a, const Gamut& b) { return a.K == b.K && a.R == b.R && a.G == b.G && a.B == b.B; }

std::vector<Gamut> distinct(const std::vector<Gamut>& gs) {
  std::vector<Gamut> out;
  for (const auto& g : gs)
    if (std::none_of(out.begin(), out.end(), [&](const Gamut& o) { return same_gamut(o, g); })) out.push_back(g);
  return out;
}

void attach_matrices(GamutResult& r, const Instance& inst) {
  const Gamut standard = r.gamut.gamut();
  if (is_degenerate(standard)) return;
  for (const auto& p : inst.projectors) r.per_projector_matrix.emplace_back(p.id, device_transform(standard, p.gamut));
}

double worst_violation(const CornerSet& c, const std::vector<Gamut>& gamuts) {
  double worst = 0.0;
  for (const auto& g : gamuts)
    for (const auto& h : gamut_halfspaces(g))
      for (const auto& x : c.all()) worst = std::max(worst, -h.slack(x));
  return worst;
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "volmax") return Method::Volmax;
  if (name == "qcp") return Method::Qcp;
  if (name == "stone") return Method::Stone;
  if (name == "all") return Method::All;
  throw GamutError(ErrorCode::ValidationError, "unknown method '" + name + "'");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Volmax: return "volmax";
    case Method::Qcp: return "qcp";
    case Method::Stone: return "stone";
    case Method::All: return "all";
  }
  return "";
}

PipelineOutput run_pipeline(const Instance& inst, const PipelineConfig& config) {
  validate_instance(inst);
  const std::vector<Gamut> all_gamuts = inst.gamuts();
  const std::vector<Gamut> gamuts = distinct(all_gamuts);
  const bool volmax = config.method == Method::Volmax || config.method == Method::All;
  const bool qcp = config.method == Method::Qcp || config.method == Method::All;
  const bool stone = config.method == Method::Stone || config.method == Method::All;

  PipelineOutput out;
  const Polytope p = gamut_intersection(gamuts, config.tol);

  if (volmax || config.verify) {
    const auto t0 = Clock::now();
    out.black_white = select_black_white(p, inst.weights);
    if (volmax) {
      GamutResult r = maximize_volume(gamuts, out.black_white->K, out.black_white->W, config.tol);
      r.luminosity_ratio = out.black_white->ratio;
      r.diagnostics.insert(r.diagnostics.begin(),
                           {"bw_candidates", static_cast<double>(out.black_white->candidate_count)});
      if (config.timings) r.note("runtime_ms", ms_since(t0));
      out.results.push_back(std::move(r));
    }
  }
  if (qcp) {
    const auto t0 = Clock::now();
    const std::vector<CornerQualitySpec> specs = inst.qcp_specs ? *inst.qcp_specs : default_specs(all_gamuts);
    const QcpSolution s = solve_qcp(gamuts, specs, config.qcp_tol);
    GamutResult r = qcp_result(s, specs, inst.weights);
    r.note("default_specs", inst.qcp_specs ? 0.0 : 1.0);
    if (config.timings) r.note("runtime_ms", ms_since(t0));
    out.results.push_back(std::move(r));
  }
  if (stone) {
    const auto t0 = Clock::now();
    auto [r, trace] = stone_gamut(all_gamuts, inst.weights);
    if (config.timings) r.note("runtime_ms", ms_since(t0));
    out.results.push_back(std::move(r));
    out.stone = trace;
  }
  for (auto& r : out.results) attach_matrices(r, inst);

  if (config.method == Method::All) {
    const GamutResult& v = out.results[0];
    const GamutResult& s = out.results[2];
    for (const auto& r : out.results) out.comparison.emplace_back(r.method + "_volume", r.volume);
    const double scale = std::max(1.0, v.gamut.W.cwiseAbs().maxCoeff());
    const bool same_bw =
        (v.gamut.K - out.stone->K).norm() <= 1e-9 * scale && (v.gamut.W - out.stone->W).norm() <= 1e-9 * scale;
    out.comparison.emplace_back("volmax_stone_same_black_white", same_bw ? 1.0 : 0.0);
    if (same_bw) {
      const bool dominates = v.volume >= s.volume - 1e-9;
      out.comparison.emplace_back("volmax_dominates_stone", dominates ? 1.0 : 0.0);
      if (!dominates) out.violations.push_back("volmax volume below stone volume with identical black and white");
    }
  }

  if (config.verify) {
    const VerifyConfig& vc = *config.verify;
    for (const auto& r : out.results) {
      const double worst = worst_violation(r.gamut, all_gamuts);
      if (worst > 1e-9 * std::max(1.0, r.gamut.W.cwiseAbs().maxCoeff()))
        out.violations.push_back(r.method + " corner outside a projector gamut by " + std::to_string(worst));
    }

    OracleCheck bw{"black_white_grid", out.black_white->ratio, grid_bw_oracle(p, vc.grid_res), true};
    bw.ok = bw.report.best_value <= bw.exact + 1e-9;
    if (!bw.ok) out.violations.push_back("grid oracle beats the exact luminosity ratio");
    out.checks.push_back(std::move(bw));

    if (volmax) {
      const GamutResult& v = out.results.front();
      OracleCheck vol{"volume_sampling", v.volume,
                      sample_volume_oracle(gamuts, out.black_white->K, out.black_white->W, vc.samples, vc.seed), true};
      vol.ok = vol.report.best_value <= vol.exact * (1.0 + 1e-6) + 1e-12;
      if (!vol.ok) out.violations.push_back("sampling oracle beats the maximized volume");
      out.checks.push_back(std::move(vol));
    }
  }
  return out;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::DegenerateGamut:
    case ErrorCode::ZeroSum:
    case ErrorCode::OriginInside:
    case ErrorCode::OriginOnFacetPlane:
      return 2;
    case ErrorCode::EmptyIntersection:
    case ErrorCode::InfeasibleAnchor:
    case ErrorCode::NoCandidates:
    case ErrorCode::DegenerateOptimum:
    case ErrorCode::NoFiniteLevel:
    case ErrorCode::EmptyChromaIntersection:
    case ErrorCode::NegativeScale:
    case ErrorCode::NoPositiveScale:
    case ErrorCode::DegenerateIntersection:
      return 3;
    case ErrorCode::VerificationFailure:
      return 4;
    default:
      return 5;
  }
}

}  // namespace gamut
