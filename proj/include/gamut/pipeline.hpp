#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gamut/blackwhite.hpp"
#include "gamut/error.hpp"
#include "gamut/instance.hpp"
#include "gamut/oracle.hpp"
#include "gamut/qcp.hpp"
#include "gamut/result.hpp"
#include "gamut/stone.hpp"

namespace gamut {

enum class Method { Volmax, Qcp, Stone, All };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct VerifyConfig {
  int grid_res = 200;
  std::int64_t samples = 100000;
  std::uint64_t seed = kDefaultOracleSeed;
};

struct PipelineConfig {
  Method method = Method::Volmax;
  double tol = kFeasTol;
  double qcp_tol = kQcpTol;
  std::optional<VerifyConfig> verify;
  bool timings = false;
};

struct OracleCheck {
  std::string name;
  double exact = 0.0;
  OracleReport report;
  bool ok = true;
};

struct PipelineOutput {
  std::vector<GamutResult> results;
  std::optional<BWSelection> black_white;
  std::optional<StoneTrace> stone;
  std::vector<std::pair<std::string, double>> comparison;  // method "all" only
  std::vector<OracleCheck> checks;                         // verify mode only
  std::vector<std::string> violations;
  bool verification_failed() const { return !violations.empty(); }
};

// Runs the chosen methods on the instance. Exactly repeated projector gamuts
// are merged before any geometry is computed; averages still run over every
// projector. Matrices are attached per projector id.
PipelineOutput run_pipeline(const Instance& inst, const PipelineConfig& config);

// Process exit status for a library error.
int exit_code_for(ErrorCode code);

}  // namespace gamut
