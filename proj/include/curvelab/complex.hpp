#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/curves.hpp"

namespace curvelab {

enum class SmallDistance { Zero, One, Two, AtLeastThree };
std::string to_string(SmallDistance d);

// Exact classification of dist(a, b) into 0, 1, 2, >= 3. On the
// once-punctured torus the Farey adjacency (I = 1) is used. On the
// four-punctured sphere only 0 and 1 are decided; other pairs throw.
SmallDistance small_distance(const NormalCurve& a, const NormalCurve& b);

struct EdgePath {
  std::vector<NormalCurve> vertices;
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

// Consecutive vertices distinct and adjacent: I = 0, except I = 1 on the
// once-punctured torus and I = 2 on the four-punctured sphere.
bool is_valid_path(const EdgePath& path);

// Finite induced subgraph of the curve complex on all curves with weights at
// most `weight_cap`. Built once and read-only afterwards.
class ComplexUniverse {
 public:
  ComplexUniverse(TriangulationPtr tri, int weight_cap);

  int size() const { return static_cast<int>(vertices_.size()); }
  int cap() const { return cap_; }
  const TriangulationPtr& triangulation() const { return tri_; }
  const std::vector<NormalCurve>& vertices() const { return vertices_; }
  const NormalCurve& vertex(int i) const { return vertices_[i]; }
  std::optional<int> index_of(const NormalCurve& c) const;
  const std::vector<int>& neighbors(int i) const { return adj_[i]; }

  // -1 marks unreachable vertices.
  std::vector<int> distances_from(int src) const;
  std::vector<int> distances_from_set(const std::vector<int>& sources) const;
  // Lexicographically least shortest path (by vertex index); empty when
  // unreachable.
  std::vector<int> geodesic(int from, int to) const;

 private:
  TriangulationPtr tri_;
  int cap_;
  std::vector<NormalCurve> vertices_;
  std::map<Weights, int> index_;
  std::vector<std::vector<int>> adj_;
};

// nullopt = Unreachable inside the universe. Throws if a or b is not a
// universe vertex.
std::optional<int> bfs_distance(const NormalCurve& a, const NormalCurve& b, const ComplexUniverse& u);

enum class SurgeryStrategy { Basic, Log };

// Edge path from a to b by the surgery induction. `trace`, when given,
// receives I(a, c) for every intermediate surgery curve c in order.
EdgePath surgery_path(const NormalCurve& a, const NormalCurve& b, SurgeryStrategy strategy,
                      std::vector<std::int64_t>* trace = nullptr);

// Boundary of a regular neighbourhood of a ∪ b when I(a, b) = 1.
NormalCurve neighbourhood_boundary(const NormalCurve& a, const NormalCurve& b);

struct DeltaReport {
  int samples = 0;
  int skipped = 0;
  int max_slimness = 0;
  std::map<int, int> histogram;
  std::uint64_t seed = 0;
  int cap = 0;
};

// Slimness of geodesic triangles on uniformly sampled vertex triples, using
// lexicographically least geodesics.
DeltaReport probe_delta(const ComplexUniverse& u, int samples, std::uint64_t seed);

// Slimness of a triangle given its three sides as vertex sequences.
int triangle_slimness(const ComplexUniverse& u, const std::vector<int>& xy,
                      const std::vector<int>& yz, const std::vector<int>& zx);

// Deterministic uniform integer in [0, n) from a 64-bit generator.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

}  // namespace curvelab
