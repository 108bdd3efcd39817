#pragma once

// JSON encodings of inputs and reports. Objects keep insertion order so
// output is byte-stable.

#include <string>
#include <vector>

#include "json.hpp"

#include "curvelab/coarse.hpp"
#include "curvelab/complex.hpp"
#include "curvelab/covering.hpp"
#include "curvelab/curves.hpp"
#include "curvelab/farey.hpp"
#include "curvelab/qm.hpp"

namespace curvelab {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------ parsing

// "[[a,b],[c,d]]" with determinant ±1.
IntMatrix parse_matrix(const std::string& text);
// "0/1,1/1,3/2"
std::vector<FareySlope> parse_slope_list(const std::string& text);
// "p/q" on the once-punctured torus, otherwise comma-separated weights
// ("1,0,2") or a JSON array.
NormalCurve parse_curve(const TriangulationPtr& tri, const std::string& text);
// Ordered curves separated by ';' (a path or a generator list).
std::vector<NormalCurve> parse_curve_list(const TriangulationPtr& tri, const std::string& text);
// Components separated by ';'.
MultiCurve parse_multicurve(const TriangulationPtr& tri, const std::string& text);
// Letters "curve^k" separated by ';', rightmost acting first.
MappingClassWord parse_twist_word(const TriangulationPtr& tri, const std::string& text);

FareyQmSpec qm_spec_from_json(const Json& j);
// {"degree": d, "sheets": d, "edge_perms": [[...], ...]} over `base`.
CoveringSpec covering_from_json(const TriangulationPtr& base, const Json& j);

// ------------------------------------------------------------------ output

Json to_json(const SurfaceSig& sig);
Json to_json(const Weights& w);
Json to_json(const NormalCurve& c);
Json to_json(const MultiCurve& m);
Json to_json(const EdgePath& p);
Json to_json(const std::vector<FareySlope>& path);
Json to_json(const IntMatrix& m);
Json to_json(const CoarseSet& s, const ComplexUniverse& u);
Json to_json(const DeltaReport& r);
Json to_json(const CalibrationReport& r);
Json to_json(const ConstantReport& r);
Json to_json(const AxiomReport& r);
Json to_json(const DiscountResult& r);
Json to_json(const FareyQmSpec& s);
Json to_json(const DefectReport& r);
Json to_json(const StabilizerReport& r);
Json to_json(const ScalingReport& r);
Json to_json(const QuasiconvexReport& r);
Json to_json(const CoveringSpec& p);

// Histogram as [[value, count], ...] in increasing value order.
template <class K>
Json histogram_json(const std::map<K, int>& h) {
  Json out = Json::array();
  for (const auto& [k, v] : h) out.push_back(Json::array({k, v}));
  return out;
}

// Graphviz rendering of a path of curves or slopes.
std::string path_dot(const std::vector<std::string>& labels);

}  // namespace curvelab
