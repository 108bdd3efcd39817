#pragma once

// Finite covers of triangulated surfaces given by sheet permutations, and
// the pullback of curves.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "curvelab/coarse.hpp"
#include "curvelab/complex.hpp"
#include "curvelab/curves.hpp"

namespace curvelab {

// Cover triangle (t, s) is number s * T + t. For base edge e with canonical
// slot (t, i) and partner (t', i'), slot (t, i) on sheet s is glued to slot
// (t', i') on sheet edge_perms[e][s].
class CoveringSpec {
 public:
  // Validates that each entry is a permutation of 0..degree-1 and that the
  // total space is connected.
  static CoveringSpec make(TriangulationPtr base, int degree, std::vector<std::vector<int>> edge_perms);
  // Cyclic cover: edge e shifts sheets by shifts[e] mod degree.
  static CoveringSpec cyclic(TriangulationPtr base, int degree, const std::vector<int>& shifts);
  static CoveringSpec identity(TriangulationPtr base);

  int degree() const { return degree_; }
  const TriangulationPtr& base() const { return base_; }
  const TriangulationPtr& cover() const { return cover_; }
  const std::vector<std::vector<int>>& edge_perms() const { return perms_; }

  int cover_triangle(int t, int sheet) const { return sheet * base_->triangle_count() + t; }
  int base_edge(int cover_edge) const { return base_edge_[cover_edge]; }
  // Weights on the cover: every lifted edge carries its base weight.
  Weights lift(const Weights& w) const;

 private:
  TriangulationPtr base_;
  TriangulationPtr cover_;
  int degree_ = 1;
  std::vector<std::vector<int>> perms_;
  std::vector<int> base_edge_;
};

// Full preimage, decomposed into components with multiplicities.
MultiCurve pullback(const CoveringSpec& p, const MultiCurve& c);
MultiCurve pullback(const CoveringSpec& p, const NormalCurve& c);

// Degree of each component of p*(c) over c, in component order.
std::vector<int> component_degrees(const CoveringSpec& p, const NormalCurve& c);

struct ScalingReport {
  int degree = 1;
  std::int64_t base_intersection = 0;   // I(a, b)
  std::int64_t cover_intersection = 0;  // I(p*a, p*b)
  std::int64_t base_length = 0;         // l_ab(c)
  std::int64_t cover_length = 0;        // l_{p*a p*b}(p*c)
  std::int64_t intersection_ratio = 1;
  std::int64_t length_ratio = 1;
};

// Throws InvariantViolation unless both ratios equal the degree exactly.
ScalingReport scaling_check(const CoveringSpec& p, const FillingPair& fp, const MultiCurve& c);

// Lift of T_c^k is the product of twists about the components of p*(c)
// when every component maps with degree 1; nullopt otherwise. Returns
// whether p*(T_c^k(d)) equals that product applied to p*(d).
std::optional<bool> twist_lift_check(const CoveringSpec& p, const NormalCurve& c, int k, const NormalCurve& d);

struct QuasiconvexReport {
  int degree = 1;
  int cap = 0;
  std::uint64_t seed = 0;
  int samples = 0;
  int skipped = 0;        // attempts with endpoints disconnected inside the universe
  int universe_size = 0;  // curves on the cover with weights <= cap
  int image_size = 0;     // components of p*(c), c on the base with weights <= cap
  int max_P = 0;
  std::map<int, int> histogram;
};

// Geodesics in the capped cover universe between sampled image vertices,
// drawn until `samples` connected pairs are found or 20 * samples + 100
// attempts are used. P is the largest distance from a path vertex to the
// image set.
QuasiconvexReport quasiconvexity_probe(const CoveringSpec& p, int samples, int cap, std::uint64_t seed);

}  // namespace curvelab
