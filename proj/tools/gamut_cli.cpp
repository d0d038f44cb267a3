#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "gamut/pipeline.hpp"
#include "gamut/report.hpp"

namespace {

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gamut::GamutError(gamut::ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << data;
  if (!out) throw gamut::GamutError(gamut::ErrorCode::ValidationError, "cannot write '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Common standard gamut for tiled projector displays"};
  std::string input, output, plot, method = "volmax";
  gamut::PipelineConfig config;
  gamut::VerifyConfig verify;
  bool do_verify = false;
  double perturb = 0.0;

  app.add_option("-i,--input", input, "instance JSON file, - for stdin")->required();
  app.add_option("-o,--output", output, "report file (default stdout)");
  app.add_option("--method", method, "volmax, qcp, stone or all")
      ->check(CLI::IsMember({"volmax", "qcp", "stone", "all"}));
  app.add_option("--tol", config.tol, "feasibility tolerance")->check(CLI::PositiveNumber);
  app.add_option("--qcp-tol", config.qcp_tol, "qcp bracket width")->check(CLI::PositiveNumber);
  app.add_option("--plot", plot, "write an SVG chromaticity plot");
  app.add_flag("--verify", do_verify, "check results against the brute-force oracles");
  app.add_option("--grid-res", verify.grid_res, "grid oracle resolution")->check(CLI::PositiveNumber);
  app.add_option("--samples", verify.samples, "sampling oracle sample count")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", verify.seed, "oracle and perturbation seed");
  app.add_option("--perturb", perturb, "move input corners by up to this fraction of the scale")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--timings", config.timings, "add runtimes to the diagnostics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    config.method = gamut::parse_method(method);
    if (do_verify) config.verify = verify;
    gamut::Instance inst = gamut::parse_instance(read_all(input));
    if (perturb > 0.0) inst = gamut::perturbed(inst, perturb, verify.seed);
    const gamut::PipelineOutput out = gamut::run_pipeline(inst, config);
    write_all(output, gamut::emit_report(inst, config, out));
    if (!plot.empty()) write_all(plot, gamut::emit_svg(inst, out));
    if (out.verification_failed()) {
      for (const auto& v : out.violations) std::cerr << "verification: " << v << "\n";
      return gamut::exit_code_for(gamut::ErrorCode::VerificationFailure);
    }
    return 0;
  } catch (const gamut::GamutError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gamut::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
