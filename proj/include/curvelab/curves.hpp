#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/surface.hpp"

namespace curvelab {

using Weights = std::vector<std::int64_t>;

// Closed path in the dual graph of a triangulation, stored as the sequence of
// slots through which it leaves successive triangles. Cyclic.
using DualPath = std::vector<int>;

// Isotopy class of an essential simple closed curve, in normal coordinates.
class NormalCurve {
 public:
  // Throws InvalidInput unless the weights describe one connected essential
  // curve in normal position.
  static NormalCurve from_weights(TriangulationPtr tri, Weights w);
  static std::optional<NormalCurve> try_from_weights(TriangulationPtr tri, Weights w,
                                                     std::string* why = nullptr);
  // Accepts any dual-graph loop; it is cyclically reduced and must be freely
  // homotopic to a simple essential curve.
  static NormalCurve from_path(TriangulationPtr tri, const DualPath& loop);
  static std::optional<NormalCurve> try_from_path(TriangulationPtr tri, const DualPath& loop);

  const Weights& weights() const { return weights_; }
  // Dual path of the normal representative, length = sum of weights.
  const DualPath& path() const { return path_; }
  const TriangulationPtr& triangulation() const { return tri_; }
  const Triangulation& tri() const { return *tri_; }
  std::int64_t total_weight() const;
  std::int64_t max_weight() const;

  bool operator==(const NormalCurve& o) const { return weights_ == o.weights_; }
  bool operator<(const NormalCurve& o) const { return weights_ < o.weights_; }

 private:
  TriangulationPtr tri_;
  Weights weights_;
  DualPath path_;
};

// Disjoint union of pairwise non-isotopic curves with positive multiplicities.
class MultiCurve {
 public:
  using Part = std::pair<NormalCurve, std::int64_t>;

  MultiCurve() = default;
  explicit MultiCurve(const NormalCurve& c, std::int64_t multiplicity = 1);
  // Merges repeated components and checks pairwise disjointness.
  static MultiCurve from_parts(std::vector<Part> parts);

  const std::vector<Part>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  MultiCurve scaled(std::int64_t k) const;
  // Componentwise weighted sum of normal coordinates.
  Weights weights() const;
  const TriangulationPtr& triangulation() const;
  bool contains(const NormalCurve& c) const;

  bool operator==(const MultiCurve& o) const { return parts_ == o.parts_; }

 private:
  std::vector<Part> parts_;  // sorted by curve
};

// Product of Dehn twist powers. Read as a composition: the rightmost letter
// acts first. Positive exponents are left twists.
struct MappingClassWord {
  std::vector<std::pair<NormalCurve, int>> letters;

  MappingClassWord inverse() const;
  MappingClassWord then(const MappingClassWord& after) const;  // after ∘ this
};

// Components of an arbitrary normal weight vector, with multiplicities.
// Fails on invalid weights; peripheral components are reported separately.
struct Decomposition {
  std::vector<std::pair<NormalCurve, std::int64_t>> essential;
  std::vector<std::pair<DualPath, std::int64_t>> peripheral;
};
Decomposition decompose(const TriangulationPtr& tri, const Weights& w);

// Checks triangle inequalities and parity in every triangle.
bool satisfies_matching(const Triangulation& tri, const Weights& w);

std::int64_t intersection_number(const NormalCurve& a, const NormalCurve& b);
std::int64_t intersection_number(const MultiCurve& a, const MultiCurve& b);

NormalCurve twist(const NormalCurve& about, int power, const NormalCurve& c);
NormalCurve apply_twist(const MappingClassWord& g, const NormalCurve& c);
MultiCurve apply_twist(const MappingClassWord& g, const MultiCurve& c);

bool is_filling(const MultiCurve& a, const MultiCurve& b);
bool is_filling(const NormalCurve& a, const NormalCurve& b);

// All essential simple closed curves with every weight <= weight_cap, ordered
// by maximum weight, then lexicographically, so a smaller cap yields a prefix.
std::vector<NormalCurve> enumerate_curves(const TriangulationPtr& tri, int weight_cap);

// Slope coordinates on the standard once-punctured torus triangulation.
// The curve of slope p/q crosses edge a |p| times, edge b |q| times and the
// diagonal |q - p| times.
NormalCurve torus_slope_curve(const TriangulationPtr& tri, std::int64_t p, std::int64_t q);
std::pair<std::int64_t, std::int64_t> torus_slope_of(const NormalCurve& c);

// Cyclic free reduction in the dual graph.
DualPath reduce_loop(const Triangulation& tri, DualPath loop);

}  // namespace curvelab
