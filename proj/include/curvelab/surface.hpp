#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace curvelab {

// Raised when an input violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an internal identity or invariant fails; always a bug or a
// corrupted input that slipped past validation.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// For non-orientable signatures `genus` counts crosscaps.
struct SurfaceSig {
  int genus = 0;
  int punctures = 0;
  bool orientable = true;

  int euler_characteristic() const;
  bool operator==(const SurfaceSig&) const = default;
};

enum class ComplexClass {
  EmptyComplex,
  DiscreteComplex,
  FareyModel,
  Supported,
  NonOrientableSporadic,
  NonOrientableUnsupported,
};

ComplexClass classify(const SurfaceSig& sig);
std::string_view to_string(ComplexClass c);

// Ideal triangulation of a punctured orientable surface.
//
// Labeling: triangle t has corners V0, V1, V2 in counterclockwise order and
// side i runs from V_i to V_{i+1}. A slot is the integer 3*t + i. Gluings
// reverse orientation: when slot (t,i) is glued to slot (t',i'), corner V_i of
// t is identified with V_{i'+1} of t' and V_{i+1} of t with V_{i'}.
// Edge e is the glued slot pair; its canonical slot is the smaller one and
// edges are numbered in increasing order of canonical slot.
class Triangulation {
 public:
  // Validates and builds; every slot must appear in exactly one gluing.
  static Triangulation from_gluing(int triangles,
                                   const std::vector<std::array<int, 4>>& gluing);

  int triangle_count() const { return static_cast<int>(partner_.size()) / 3; }
  int edge_count() const { return static_cast<int>(edge_slots_.size()); }
  int slot_count() const { return static_cast<int>(partner_.size()); }
  int puncture_count() const { return punctures_; }
  int genus() const { return genus_; }
  SurfaceSig signature() const { return {genus_, punctures_, true}; }

  int partner(int slot) const { return partner_[slot]; }
  int edge_of(int slot) const { return edge_of_[slot]; }
  // Canonical (smaller) slot first.
  const std::array<int, 2>& slots_of_edge(int e) const { return edge_slots_[e]; }
  // Puncture containing corner V_k of triangle t.
  int puncture_of_corner(int t, int k) const { return corner_puncture_[3 * t + k]; }

  // One entry per edge, canonical slot first: [t, i, t', i'].
  std::vector<std::array<int, 4>> gluing_table() const;

  bool operator==(const Triangulation& o) const { return partner_ == o.partner_; }

 private:
  std::vector<int> partner_;
  std::vector<int> edge_of_;
  std::vector<std::array<int, 2>> edge_slots_;
  std::vector<int> corner_puncture_;
  int punctures_ = 0;
  int genus_ = 0;
};

using TriangulationPtr = std::shared_ptr<const Triangulation>;

inline int slot_triangle(int slot) { return slot / 3; }
inline int slot_side(int slot) { return slot % 3; }
inline int make_slot(int t, int i) { return 3 * t + i; }

// Fan triangulation of the polygon with boundary word
//   a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1 x1 x1^-1 ... x_{n-1} x_{n-1}^-1,
// rotated by one letter when n >= 2 so that no fan triangle is self-folded,
// coned from polygon vertex P0. Triangle k (0-based) is (P0, P_{k+1}, P_{k+2}).
// For the once-punctured torus this gives edge 0 = a (horizontal),
// edge 1 = b (vertical), edge 2 = the diagonal of slope 1.
Triangulation standard_triangulation(const SurfaceSig& sig);
TriangulationPtr make_standard(const SurfaceSig& sig);

}  // namespace curvelab
