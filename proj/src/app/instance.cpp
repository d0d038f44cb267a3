#include "gamut/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "gamut/error.hpp"
#include "gamut/rng.hpp"

namespace gamut {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 8> kCornerNames{"K", "R", "G", "B", "C", "M", "Y", "W"};

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw GamutError(ErrorCode::ParseError, field + ": " + what);
}

[[noreturn]] void invalid(const std::string& what) { throw GamutError(ErrorCode::ValidationError, what); }

Vec3 read_vec3(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) field_error(field, "expected an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) field_error(field, "expected an array of 3 numbers");
    out[i] = j[i].get<double>();
    if (!std::isfinite(out[i])) field_error(field, "non-finite value");
  }
  return out;
}

const json& member(const json& obj, const char* key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(field + "." + key, "missing");
  return *it;
}

int line_of(std::string_view bytes, std::size_t offset) {
  offset = std::min(offset, bytes.size());
  return 1 + static_cast<int>(std::count(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

Corner parse_corner(const json& j, const std::string& field) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    for (int i = 0; i < 8; ++i)
      if (name == kCornerNames[i]) return static_cast<Corner>(i);
  }
  field_error(field, "expected one of K, R, G, B, C, M, Y, W");
}

CornerQualitySpec parse_spec(const json& j, const std::string& field) {
  if (!j.is_object()) field_error(field, "expected an object");
  CornerQualitySpec s;
  s.corner = parse_corner(member(j, "corner", field), field + ".corner");
  const json& kind = member(j, "kind", field);
  if (kind == "euclidean")
    s.kind = QualityKind::Euclidean;
  else if (kind == "linear")
    s.kind = QualityKind::Linear;
  else
    field_error(field + ".kind", "expected \"euclidean\" or \"linear\"");
  s.target = read_vec3(member(j, "target", field), field + ".target");
  if (s.kind == QualityKind::Linear) s.direction = read_vec3(member(j, "direction", field), field + ".direction");
  if (auto it = j.find("weight"); it != j.end()) {
    if (!it->is_number()) field_error(field + ".weight", "expected a number");
    s.weight = it->get<double>();
  }
  return s;
}

}  // namespace

std::vector<Gamut> Instance::gamuts() const {
  std::vector<Gamut> out;
  out.reserve(projectors.size());
  for (const auto& p : projectors) out.push_back(p.gamut);
  return out;
}

std::string corner_name(Corner c) { return kCornerNames[static_cast<int>(c)]; }

Instance parse_instance(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw GamutError(ErrorCode::ParseError, "line " + std::to_string(line_of(bytes, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) field_error("$", "expected an object");

  Instance inst;
  if (auto it = doc.find("luminosity_weights"); it != doc.end()) {
    const Vec3 w = read_vec3(*it, "luminosity_weights");
    inst.weights = {w.x(), w.y(), w.z()};
  }
  const json& projectors = member(doc, "projectors", "$");
  if (!projectors.is_array()) field_error("projectors", "expected an array");
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const std::string field = "projectors[" + std::to_string(i) + "]";
    const json& p = projectors[i];
    if (!p.is_object()) field_error(field, "expected an object");
    const json& id = member(p, "id", field);
    if (!id.is_string()) field_error(field + ".id", "expected a string");
    Projector pr;
    pr.id = id.get<std::string>();
    pr.gamut.K = read_vec3(member(p, "K", field), field + ".K");
    pr.gamut.R = read_vec3(member(p, "R", field), field + ".R");
    pr.gamut.G = read_vec3(member(p, "G", field), field + ".G");
    pr.gamut.B = read_vec3(member(p, "B", field), field + ".B");
    inst.projectors.push_back(std::move(pr));
  }
  if (auto it = doc.find("qcp_specs"); it != doc.end()) {
    if (!it->is_array()) field_error("qcp_specs", "expected an array");
    std::vector<CornerQualitySpec> specs;
    for (std::size_t i = 0; i < it->size(); ++i)
      specs.push_back(parse_spec((*it)[i], "qcp_specs[" + std::to_string(i) + "]"));
    inst.qcp_specs = std::move(specs);
  }
  validate_instance(inst);
  return inst;
}

void validate_instance(const Instance& inst) {
  if (inst.projectors.empty()) invalid("at least one projector is required");
  const Vec3 w = inst.weights.vec();
  if (!w.allFinite() || w.minCoeff() < 0.0 || !(w.sum() > 0.0))
    invalid("luminosity weights must be nonnegative with a positive sum");
  std::set<std::string> ids;
  for (const auto& p : inst.projectors) {
    if (!ids.insert(p.id).second) invalid("duplicate projector id '" + p.id + "'");
    if (is_degenerate(p.gamut)) invalid("projector '" + p.id + "': degenerate gamut");
    if (p.gamut.signed_volume() < 0.0) invalid("projector '" + p.id + "': left-handed orientation (R, G, B)");
    const auto corners = derive_corners(p.gamut).all();
    for (int c = 0; c < 8; ++c) {
      const Vec3& x = corners[c];
      if (!(x.sum() > kZeroSumTol * std::max(1.0, x.cwiseAbs().maxCoeff())))
        invalid("projector '" + p.id + "': nonpositive channel sum at corner " + kCornerNames[c]);
    }
  }
  if (inst.qcp_specs) {
    if (inst.qcp_specs->empty()) invalid("qcp_specs must not be empty");
    for (const auto& s : *inst.qcp_specs) {
      if (!(s.weight > 0.0) || !std::isfinite(s.weight)) invalid("qcp spec weight must be positive");
      if (s.kind == QualityKind::Linear && !(s.direction.norm() > 0.0))
        invalid("linear qcp spec needs a nonzero direction");
    }
  }
}

Instance perturbed(const Instance& inst, double eps, std::uint64_t seed) {
  if (!(eps > 0.0)) return inst;
  double scale = 1.0;
  for (const auto& p : inst.projectors)
    for (const auto& c : {p.gamut.K, p.gamut.R, p.gamut.G, p.gamut.B}) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  Xorshift64Star rng(seed);
  Instance out = inst;
  for (auto& p : out.projectors)
    for (Color* c : {&p.gamut.K, &p.gamut.R, &p.gamut.G, &p.gamut.B})
      for (int i = 0; i < 3; ++i) (*c)[i] += eps * scale * rng.uniform(-1.0, 1.0);
  validate_instance(out);
  return out;
}

}  // namespace gamut
