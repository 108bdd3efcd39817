#include "curvelab/json_io.hpp"

#include <cmath>
#include <sstream>

namespace curvelab {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("cannot parse " + what + " '" + text + "': " + e.what());
  }
}

bool is_torus(const Triangulation& tri) { return tri.signature() == SurfaceSig{1, 1, true}; }

}  // namespace

IntMatrix parse_matrix(const std::string& text) {
  const Json j = parse_json(text, "matrix");
  try {
    const auto rows = j.get<std::array<std::array<std::int64_t, 2>, 2>>();
    const IntMatrix m = IntMatrix::from_rows(rows);
    if (m.det() != 1 && m.det() != -1) throw InvalidInput("matrix " + text + " is not in GL(2,Z)");
    return m;
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput("matrix must look like [[a,b],[c,d]]: " + text);
  }
}

std::vector<FareySlope> parse_slope_list(const std::string& text) {
  std::vector<FareySlope> out;
  for (const auto& part : split(text, ',')) out.push_back(FareySlope::parse(trim(part)));
  if (out.empty()) throw InvalidInput("empty slope list");
  return out;
}

NormalCurve parse_curve(const TriangulationPtr& tri, const std::string& raw) {
  const std::string text = trim(raw);
  if (text.find('/') != std::string::npos) {
    if (!is_torus(*tri)) throw InvalidInput("slope notation needs the once-punctured torus: " + text);
    const FareySlope s = FareySlope::parse(text);
    return torus_slope_curve(tri, s.p, s.q);
  }
  Weights w;
  if (!text.empty() && text.front() == '[') {
    try {
      w = parse_json(text, "weights").get<Weights>();
    } catch (const nlohmann::json::exception&) {
      throw InvalidInput("weights must be an integer array: " + text);
    }
  } else {
    for (const auto& part : split(text, ',')) {
      try {
        std::size_t used = 0;
        w.push_back(std::stoll(trim(part), &used));
        if (used != trim(part).size()) throw std::invalid_argument(part);
      } catch (const std::logic_error&) {
        throw InvalidInput("bad weight '" + part + "' in " + text);
      }
    }
  }
  if (static_cast<int>(w.size()) != tri->edge_count())
    throw InvalidInput("curve needs " + std::to_string(tri->edge_count()) + " weights: " + text);
  return NormalCurve::from_weights(tri, std::move(w));
}

std::vector<NormalCurve> parse_curve_list(const TriangulationPtr& tri, const std::string& text) {
  std::vector<NormalCurve> out;
  for (const auto& piece : split(text, ';')) out.push_back(parse_curve(tri, piece));
  return out;
}

MultiCurve parse_multicurve(const TriangulationPtr& tri, const std::string& text) {
  std::vector<MultiCurve::Part> parts;
  for (const auto& piece : split(text, ';')) parts.emplace_back(parse_curve(tri, piece), 1);
  if (parts.empty()) throw InvalidInput("empty multicurve");
  return MultiCurve::from_parts(std::move(parts));
}

MappingClassWord parse_twist_word(const TriangulationPtr& tri, const std::string& text) {
  MappingClassWord g;
  for (const auto& letter : split(text, ';')) {
    const auto caret = letter.find('^');
    int power = 1;
    if (caret != std::string::npos) {
      try {
        power = std::stoi(letter.substr(caret + 1));
      } catch (const std::logic_error&) {
        throw InvalidInput("bad twist power in '" + letter + "'");
      }
    }
    g.letters.emplace_back(parse_curve(tri, letter.substr(0, caret)), power);
  }
  return g;
}

FareyQmSpec qm_spec_from_json(const Json& j) {
  try {
    std::vector<FareySlope> w;
    for (const auto& v : j.at("w")) w.push_back(FareySlope::parse(v.get<std::string>()));
    std::optional<int> W;
    if (j.contains("W")) W = j.at("W").get<int>();
    const FareySlope x0 = FareySlope::parse(j.value("x0", std::string("0/1")));
    if (j.value("oracle", std::string("exact")) != "exact")
      throw InvalidInput("the Farey engine has an exact translate oracle");
    const TranslateGroup group = parse_translate_group(j.value("group", std::string("psl2z")));
    return FareyQmSpec::make(std::move(w), W, x0, group, j.value("halo", 2));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad qm spec: ") + e.what());
  }
}

CoveringSpec covering_from_json(const TriangulationPtr& base, const Json& j) {
  try {
    const int degree = j.at("degree").get<int>();
    if (j.contains("sheets") && j.at("sheets").get<int>() != degree)
      throw InvalidInput("sheets must equal the degree");
    return CoveringSpec::make(base, degree, j.at("edge_perms").get<std::vector<std::vector<int>>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad covering spec: ") + e.what());
  }
}

Json to_json(const SurfaceSig& sig) {
  return Json{{"genus", sig.genus}, {"punctures", sig.punctures}, {"orientable", sig.orientable}};
}

Json to_json(const Weights& w) { return Json(w); }

Json to_json(const NormalCurve& c) { return Json(c.weights()); }

Json to_json(const MultiCurve& m) {
  Json out = Json::array();
  for (const auto& [c, k] : m.parts()) out.push_back(Json{{"weights", c.weights()}, {"multiplicity", k}});
  return out;
}

Json to_json(const EdgePath& p) {
  Json out = Json::array();
  for (const auto& c : p.vertices) out.push_back(to_json(c));
  return out;
}

Json to_json(const std::vector<FareySlope>& path) {
  Json out = Json::array();
  for (const auto& v : path) out.push_back(v.str());
  return out;
}

Json to_json(const IntMatrix& m) { return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})}); }

Json to_json(const CoarseSet& s, const ComplexUniverse& u) {
  Json members = Json::array();
  for (int v : s.members) members.push_back(to_json(u.vertex(v)));
  return Json{{"count", s.members.size()}, {"cap", s.cap}, {"cap_saturated", s.cap_saturated},
              {"members", std::move(members)}};
}

Json to_json(const DeltaReport& r) {
  return Json{{"seed", r.seed},       {"weight_cap", r.cap},          {"samples", r.samples},
              {"skipped", r.skipped}, {"max_slimness", r.max_slimness}, {"histogram", histogram_json(r.histogram)}};
}

Json to_json(const CalibrationReport& r) {
  Json per = Json::array();
  for (std::size_t k = 0; k < r.per_pair.size(); ++k)
    per.push_back(Json{{"I", r.pair_I[k]}, {"R2", r.per_pair[k].str()}});
  return Json{{"seed", r.seed},
              {"weight_cap", r.cap},
              {"samples", r.per_pair.size()},
              {"attempts", r.attempts},
              {"R2", r.R2.str()},
              {"R", r.R2.value() > 0 ? std::sqrt(r.R2.value()) : 0.0},
              {"cap_saturated", r.cap_saturated},
              {"per_pair", std::move(per)}};
}

Json to_json(const ConstantReport& r) {
  return Json{{"name", r.name},
              {"samples", r.samples},
              {"skipped", r.skipped},
              {"max_constant", r.max_constant},
              {"histogram", histogram_json(r.histogram)}};
}

Json to_json(const AxiomReport& r) {
  Json axioms = Json::array();
  for (const auto& a : r.axioms) axioms.push_back(to_json(a));
  return Json{{"seed", r.seed},
              {"weight_cap", r.cap},
              {"R2", r.R2.str()},
              {"axioms", std::move(axioms)},
              {"symbolic_checks", r.symbolic_checks},
              {"symbolic_ok", r.symbolic_ok}};
}

Json to_json(const DiscountResult& r) {
  return Json{{"c", r.c},
              {"d", r.d},
              {"min_cost", r.min_cost},
              {"bound", r.bound},
              {"cap_exceeded", r.cap_exceeded},
              {"universe", r.universe}};
}

Json to_json(const FareyQmSpec& s) {
  return Json{{"w", to_json(s.w)}, {"W", s.W},        {"x0", s.x0.str()}, {"oracle", "exact"},
              {"group", to_string(s.group)}, {"halo", s.halo}};
}

Json to_json(const DefectReport& r) {
  return Json{{"seed", r.seed},
              {"samples", r.samples},
              {"max_word_length", r.max_word_length},
              {"search_cap", r.search_cap},
              {"max_defect", r.max_defect},
              {"cap_exceeded", r.cap_exceeded},
              {"histogram", histogram_json(r.histogram)}};
}

Json to_json(const StabilizerReport& r) {
  return Json{{"samples", r.samples}, {"bound", r.bound}, {"max_abs_h", r.max_abs_h}, {"cap_exceeded", r.cap_exceeded}};
}

Json to_json(const ScalingReport& r) {
  return Json{{"length_ratio", r.length_ratio}, {"intersection_ratio", r.intersection_ratio}};
}

Json to_json(const QuasiconvexReport& r) {
  return Json{{"seed", r.seed},
              {"weight_cap", r.cap},
              {"degree", r.degree},
              {"samples", r.samples},
              {"skipped", r.skipped},
              {"universe_size", r.universe_size},
              {"image_size", r.image_size},
              {"max_P", r.max_P},
              {"histogram", histogram_json(r.histogram)}};
}

Json to_json(const CoveringSpec& p) {
  return Json{{"degree", p.degree()}, {"sheets", p.degree()}, {"edge_perms", p.edge_perms()}};
}

std::string path_dot(const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "graph path {\n";
  for (std::size_t k = 0; k < labels.size(); ++k) out << "  v" << k << " [label=\"" << labels[k] << "\"];\n";
  for (std::size_t k = 1; k < labels.size(); ++k) out << "  v" << k - 1 << " -- v" << k << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace curvelab
