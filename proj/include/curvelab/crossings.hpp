#pragma once

// Minimal-position data for pairs of curves. Curves are represented by their
// dual paths; lifts to the universal cover are bi-infinite paths in the dual
// tree and two lifts cross exactly when their ends are linked, which is read
// off from the turns at both ends of their common segment.

#include <cstdint>
#include <vector>

#include "curvelab/curves.hpp"

namespace curvelab {

// Edge `k` of a cyclic dual path traversed in direction eps (+1 or -1).
// For eps = -1, vertex t of the reversed path is vertex n - t of the path.
int path_edge(const Triangulation& tri, const DualPath& path, int eps, std::int64_t k);

// True when y follows x counterclockwise at their common triangle.
inline bool ccw_next(int x, int y) { return ((slot_side(y) - slot_side(x)) % 3 + 3) % 3 == 1; }

struct Crossing {
  std::int64_t a_pos = 0;  // vertex on a where the common segment starts
  std::int64_t length = 0; // common edges, >= 1
  std::int64_t b_pos = 0;  // matching vertex on b traversed in direction eps
  int eps = 1;
  // +1 when b, with its own orientation, crosses a from right to left.
  int sign = 1;
};

std::vector<Crossing> find_crossings(const Triangulation& tri, const DualPath& a,
                                     const DualPath& b);

// A crossing seen from the line L: the common segment starts at vertex
// `start` of L and at vertex `m_pos` of the other path M traversed in
// direction `eps`.
struct LineCrossing {
  std::int64_t start = 0;
  std::int64_t length = 0;
  const DualPath* m_path = nullptr;
  int eps = 1;
  std::int64_t m_pos = 0;
};

// Order of crossing points along L. Element r of `sequence` names a crossing;
// it sits at vertex cut + offset[r] of L (offsets nondecreasing, within
// [0, |L|]), which is vertex m_vertex[r] of M in direction eps. `from_left`
// records whether L arrives from the left side of M (oriented by eps).
struct CrossingOrder {
  std::int64_t cut = 0;
  std::vector<int> sequence;
  std::vector<std::int64_t> offset;
  std::vector<std::int64_t> m_vertex;
  std::vector<bool> from_left;
};

CrossingOrder order_crossings(const Triangulation& tri, const DualPath& L,
                              const std::vector<LineCrossing>& crossings);

// Crossing of a with b, seen from b.
LineCrossing swap_view(const Crossing& x, const DualPath& a, const DualPath& b);

// True when the reduced loop is trivial or one traversal of a puncture loop.
bool is_trivial_or_peripheral(const Triangulation& tri, const DualPath& reduced);

// Single loop around a puncture: all turns in one direction.
bool is_boundary_cycle(const Triangulation& tri, const DualPath& loop);

}  // namespace curvelab
