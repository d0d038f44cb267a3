#include "gamut/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace gamut {

namespace {

using nlohmann::ordered_json;

ordered_json vec(const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json pairs(const std::vector<std::pair<std::string, double>>& kv) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : kv) out[k] = number(v);
  return out;
}

ordered_json result_json(const GamutResult& r) {
  ordered_json j;
  j["method"] = r.method;
  const auto corners = r.gamut.all();
  ordered_json g = ordered_json::object();
  for (int c = 0; c < 8; ++c) g[corner_name(static_cast<Corner>(c))] = vec(corners[c]);
  j["gamut"] = g;
  j["volume"] = number(r.volume);
  j["luminosity_ratio"] = number(r.luminosity_ratio);
  j["diagnostics"] = pairs(r.diagnostics);
  ordered_json mats = ordered_json::object();
  for (const auto& [id, m] : r.per_projector_matrix) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
    mats[id] = rows;
  }
  j["matrices"] = mats;
  return j;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

constexpr double kPlot = 500.0;
constexpr double kMargin = 40.0;

struct Frame {
  double u0 = 0.0, v0 = 0.0, span = 1.0;
  std::string point(const Chroma& c) const {
    const double x = kMargin + (c.u - u0) / span * kPlot;
    const double y = kMargin + kPlot - (c.v - v0) / span * kPlot;
    return fmt(x) + "," + fmt(y);
  }
};

std::string polygon(const Frame& f, const std::vector<Chroma>& pts, const std::string& cls, const std::string& style) {
  std::string s = "  <polygon class=\"" + cls + "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + f.point(pts[i]);
  return s + "\" style=\"" + style + "\"/>\n";
}

std::string escape(const std::string& in) {
  std::string out;
  for (char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const std::array<const char*, 6> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

}  // namespace

std::string emit_report(const Instance& inst, const PipelineConfig& config, const PipelineOutput& out) {
  ordered_json j;
  j["projector_count"] = inst.projectors.size();
  j["luminosity_weights"] = vec(inst.weights.vec());
  j["method"] = method_name(config.method);
  j["tolerances"] = {{"feasibility", config.tol}, {"qcp_bracket", config.qcp_tol}};
  j["matrix_convention"] = kMatrixConvention;
  if (out.black_white) {
    const BWSelection& bw = *out.black_white;
    j["black_white"] = {{"K", vec(bw.K)},
                        {"W", vec(bw.W)},
                        {"chroma", {bw.chroma.u, bw.chroma.v}},
                        {"ratio", number(bw.ratio)},
                        {"candidates", bw.candidate_count}};
  }
  ordered_json results = ordered_json::array();
  for (const auto& r : out.results) results.push_back(result_json(r));
  j["results"] = results;
  if (out.stone) {
    const StoneTrace& t = *out.stone;
    ordered_json tri = ordered_json::array();
    for (const auto& c : t.chroma_triangle) tri.push_back({c.u, c.v});
    j["stone_trace"] = {{"chroma_triangle", tri},
                        {"black_chroma", {t.black_chroma.u, t.black_chroma.v}},
                        {"K", vec(t.K)},
                        {"W", vec(t.W)},
                        {"primary_scales", t.primary_scales},
                        {"alpha", t.alpha}};
  }
  if (!out.comparison.empty()) j["comparison"] = pairs(out.comparison);
  if (config.verify) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : out.checks) {
      checks.push_back({{"name", c.name},
                        {"exact", number(c.exact)},
                        {"oracle_best", number(c.report.best_value)},
                        {"oracle_witness", c.report.best_witness},
                        {"samples_or_cells", c.report.samples_or_cells},
                        {"seed", c.report.seed},
                        {"ok", c.ok}});
    }
    j["verification"] = {{"grid_res", config.verify->grid_res},
                         {"samples", config.verify->samples},
                         {"seed", config.verify->seed},
                         {"checks", checks},
                         {"violations", out.violations}};
  }
  return j.dump(2) + "\n";
}

std::string emit_svg(const Instance& inst, const PipelineOutput& out) {
  std::vector<std::vector<Chroma>> triangles;
  for (const auto& p : inst.projectors) {
    const auto t = primary_chromas(p.gamut);
    triangles.push_back({t.begin(), t.end()});
  }
  std::vector<Chroma> common;
  try {
    common = chroma_intersection(inst.gamuts()).vertices;
  } catch (const GamutError&) {
  }
  std::vector<std::pair<std::string, std::vector<Chroma>>> results;
  for (const auto& r : out.results) {
    try {
      const auto t = primary_chromas(r.gamut.gamut());
      results.push_back({r.method, {t.begin(), t.end()}});
    } catch (const GamutError&) {
    }
  }

  double umin = 0, umax = 1, vmin = 0, vmax = 1;
  auto grow = [&](const Chroma& c) {
    umin = std::min(umin, c.u);
    umax = std::max(umax, c.u);
    vmin = std::min(vmin, c.v);
    vmax = std::max(vmax, c.v);
  };
  for (const auto& t : triangles)
    for (const auto& c : t) grow(c);
  const Frame f{umin, vmin, std::max(umax - umin, vmax - vmin)};

  const double width = kPlot + 2 * kMargin + 200;
  const double height = kPlot + 2 * kMargin;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
    << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
    << polygon(f, {{0, 0}, {1, 0}, {0, 1}}, "simplex", "fill:none;stroke:#bbbbbb;stroke-dasharray:4 3");

  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const std::string color = kPalette[i % kPalette.size()];
    s << polygon(f, triangles[i], "projector", "fill:none;stroke:" + color + ";stroke-width:1.5");
    legend.push_back({"fill:none;stroke:" + color, "projector " + escape(inst.projectors[i].id)});
  }
  if (!common.empty()) {
    s << polygon(f, common, "intersection", "fill:#cccccc;fill-opacity:0.5;stroke:#555555");
    legend.push_back({"fill:#cccccc;stroke:#555555", "common chromaticities"});
  }
  const std::array<const char*, 3> result_styles{"stroke:#000000;stroke-width:2",
                                                 "stroke:#000000;stroke-width:2;stroke-dasharray:6 3",
                                                 "stroke:#000000;stroke-width:2;stroke-dasharray:2 2"};
  for (std::size_t i = 0; i < results.size(); ++i) {
    const std::string style = std::string("fill:none;") + result_styles[i % 3];
    s << polygon(f, results[i].second, "result", style);
    legend.push_back({style, "standard gamut (" + results[i].first + ")"});
  }
  if (out.black_white) {
    const std::string p = f.point(out.black_white->chroma);
    const auto comma = p.find(',');
    s << "  <circle class=\"black-white\" cx=\"" << p.substr(0, comma) << "\" cy=\"" << p.substr(comma + 1)
      << "\" r=\"4\" fill=\"#000000\"/>\n";
    legend.push_back({"fill:#000000", "black/white chromaticity"});
  }

  s << "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < legend.size(); ++i) {
    const double y = kMargin + 20.0 * static_cast<double>(i);
    s << "    <rect x=\"" << fmt(kPlot + 2 * kMargin) << "\" y=\"" << fmt(y) << "\" width=\"14\" height=\"10\" style=\""
      << legend[i].first << "\"/>\n"
      << "    <text x=\"" << fmt(kPlot + 2 * kMargin + 20) << "\" y=\"" << fmt(y + 10) << "\">" << legend[i].second
      << "</text>\n";
  }
  s << "  </g>\n</svg>\n";
  return s.str();
}

}  // namespace gamut
