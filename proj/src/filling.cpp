#include <algorithm>
#include <array>

#include "curvelab/crossings.hpp"
#include "curvelab/curves.hpp"

namespace curvelab {

namespace {

std::int64_t pmod(std::int64_t x, std::int64_t n) {
  const std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

struct Point {
  int a_comp = 0, b_comp = 0;
  Crossing x;
  // Position of the crossing on each curve's sequence, and the vertex chosen
  // on the common segment by each curve, measured along a from x.a_pos.
  int a_rank = 0, b_rank = 0;
  std::int64_t a_off = 0, b_off = 0;
};

}  // namespace

// Builds the arrangement a ∪ b from the crossing orders along every
// component, traces its complementary regions, and checks that each one is a
// disk whose boundary loop is trivial or goes once around a puncture.
bool is_filling(const MultiCurve& A, const MultiCurve& B) {
  if (A.empty() || B.empty()) return false;
  const TriangulationPtr& tp = A.triangulation();
  if (!(*tp == *B.triangulation())) throw InvalidInput("curves live on different triangulations");
  const Triangulation& tri = *tp;

  std::vector<const NormalCurve*> as, bs;
  for (const auto& p : A.parts()) as.push_back(&p.first);
  for (const auto& p : B.parts()) bs.push_back(&p.first);
  for (auto* a : as)
    for (auto* b : bs)
      if (*a == *b) return false;

  std::vector<Point> pts;
  for (int i = 0; i < static_cast<int>(as.size()); ++i)
    for (int j = 0; j < static_cast<int>(bs.size()); ++j)
      for (const Crossing& x : find_crossings(tri, as[i]->path(), bs[j]->path()))
        pts.push_back({i, j, x});
  if (pts.empty()) return false;

  // Curves are indexed a-components first, then b-components.
  const int na = static_cast<int>(as.size());
  const int nc = na + static_cast<int>(bs.size());
  auto path_of = [&](int c) -> const DualPath& { return c < na ? as[c]->path() : bs[c - na]->path(); };

  std::vector<std::vector<LineCrossing>> lines(nc);
  std::vector<std::vector<int>> ids(nc);
  for (int g = 0; g < static_cast<int>(pts.size()); ++g) {
    const Point& p = pts[g];
    const DualPath& a = as[p.a_comp]->path();
    const DualPath& b = bs[p.b_comp]->path();
    lines[p.a_comp].push_back({p.x.a_pos, p.x.length, &b, p.x.eps, p.x.b_pos});
    ids[p.a_comp].push_back(g);
    lines[na + p.b_comp].push_back(swap_view(p.x, a, b));
    ids[na + p.b_comp].push_back(g);
  }
  std::vector<CrossingOrder> orders(nc);
  for (int c = 0; c < nc; ++c) {
    if (lines[c].empty()) return false;
    orders[c] = order_crossings(tri, path_of(c), lines[c]);
    for (std::size_t r = 0; r < orders[c].sequence.size(); ++r) {
      const int local = orders[c].sequence[r];
      Point& p = pts[ids[c][local]];
      const std::int64_t t = orders[c].m_vertex[r] - lines[c][local].m_pos;
      if (c < na) {
        p.a_rank = static_cast<int>(r);
        p.a_off = t;
      } else {
        p.b_rank = static_cast<int>(r);
        p.b_off = p.x.eps > 0 ? t : p.x.length - t;
      }
    }
  }

  // Arcs: arc r of curve c runs from sequence[r] to sequence[r+1].
  std::vector<int> arc_base(nc + 1, 0);
  for (int c = 0; c < nc; ++c) arc_base[c + 1] = arc_base[c] + static_cast<int>(orders[c].sequence.size());
  const int darts = 2 * arc_base[nc];
  auto arc_count = [&](int c) { return arc_base[c + 1] - arc_base[c]; };
  auto dart = [&](int c, int r, bool backward) { return 2 * (arc_base[c] + r) + (backward ? 1 : 0); };
  auto dart_curve = [&](int d) {
    const int arc = d / 2;
    return static_cast<int>(std::upper_bound(arc_base.begin(), arc_base.end(), arc) - arc_base.begin()) - 1;
  };
  auto seq_point = [&](int c, int r) {
    return ids[c][orders[c].sequence[pmod(r, arc_count(c))]];
  };
  auto dart_head = [&](int d) {
    const int c = dart_curve(d);
    const int r = d / 2 - arc_base[c];
    return (d % 2 == 0) ? seq_point(c, r + 1) : seq_point(c, r);
  };

  // Counterclockwise darts leaving each crossing.
  std::vector<std::array<int, 4>> rot(pts.size());
  for (int g = 0; g < static_cast<int>(pts.size()); ++g) {
    const Point& p = pts[g];
    const int ca = p.a_comp, cb = na + p.b_comp;
    const int a_out = dart(ca, p.a_rank, false);
    const int a_back = dart(ca, static_cast<int>(pmod(p.a_rank - 1, arc_count(ca))), true);
    const int b_out = dart(cb, p.b_rank, false);
    const int b_back = dart(cb, static_cast<int>(pmod(p.b_rank - 1, arc_count(cb))), true);
    if (p.x.sign > 0) {
      rot[g] = {a_out, b_out, a_back, b_back};
    } else {
      rot[g] = {a_out, b_back, a_back, b_out};
    }
  }
  auto next_dart = [&](int d) {
    const int g = dart_head(d);
    const int rev = d ^ 1;
    const auto& r = rot[g];
    const int k = static_cast<int>(std::find(r.begin(), r.end(), rev) - r.begin());
    if (k == 4) throw InvariantViolation("arrangement rotation is inconsistent");
    return r[(k + 3) % 4];
  };

  std::vector<std::vector<int>> faces;
  std::vector<char> used(darts, 0);
  for (int d0 = 0; d0 < darts; ++d0) {
    if (used[d0]) continue;
    std::vector<int> face;
    for (int d = d0; !used[d]; d = next_dart(d)) {
      used[d] = 1;
      face.push_back(d);
    }
    faces.push_back(std::move(face));
  }
  const std::int64_t chi = 2 - 2 * tri.genus();
  if (static_cast<std::int64_t>(faces.size()) != chi + static_cast<std::int64_t>(pts.size())) return false;

  auto append_arc = [&](DualPath& out, int d) {
    const int c = dart_curve(d);
    const int r = d / 2 - arc_base[c];
    const DualPath& P = path_of(c);
    const auto m = static_cast<std::int64_t>(P.size());
    const CrossingOrder& o = orders[c];
    const std::int64_t v0 = o.cut + o.offset[r];
    const std::int64_t v1 = (r + 1 < arc_count(c)) ? o.cut + o.offset[r + 1] : o.cut + m + o.offset[0];
    if (d % 2 == 0) {
      for (std::int64_t v = v0; v < v1; ++v) out.push_back(P[pmod(v, m)]);
    } else {
      for (std::int64_t v = v1; v > v0; --v) out.push_back(tri.partner(P[pmod(v - 1, m)]));
    }
  };
  // Moves along the common segment of crossing g between the vertices used
  // by the two curves.
  auto append_connector = [&](DualPath& out, int g, bool from_a) {
    const Point& p = pts[g];
    const DualPath& a = as[p.a_comp]->path();
    const auto m = static_cast<std::int64_t>(a.size());
    const std::int64_t from = from_a ? p.a_off : p.b_off;
    const std::int64_t to = from_a ? p.b_off : p.a_off;
    for (std::int64_t u = from; u < to; ++u) out.push_back(a[pmod(p.x.a_pos + u, m)]);
    for (std::int64_t u = from; u > to; --u) out.push_back(tri.partner(a[pmod(p.x.a_pos + u - 1, m)]));
  };

  for (const auto& face : faces) {
    DualPath loop;
    for (std::size_t k = 0; k < face.size(); ++k) {
      const int d = face[k];
      append_arc(loop, d);
      const bool on_a = dart_curve(d) < na;
      const bool next_on_a = dart_curve(face[(k + 1) % face.size()]) < na;
      if (on_a == next_on_a) throw InvariantViolation("face boundary does not alternate curves");
      append_connector(loop, dart_head(d), on_a);
    }
    if (!is_trivial_or_peripheral(tri, reduce_loop(tri, loop))) return false;
  }
  return true;
}

bool is_filling(const NormalCurve& a, const NormalCurve& b) {
  return is_filling(MultiCurve(a), MultiCurve(b));
}

}  // namespace curvelab
