#include "curvelab/crossings.hpp"

#include <algorithm>
#include <string>

namespace curvelab {

namespace {

std::int64_t pmod(std::int64_t x, std::int64_t n) {
  const std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

int path_edge(const Triangulation& tri, const DualPath& path, int eps, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(path.size());
  const std::int64_t kk = pmod(k, n);
  if (eps > 0) return path[kk];
  return tri.partner(path[n - 1 - kk]);
}

std::vector<Crossing> find_crossings(const Triangulation& tri, const DualPath& a,
                                     const DualPath& b) {
  std::vector<Crossing> out;
  const auto m = static_cast<std::int64_t>(a.size());
  const auto n = static_cast<std::int64_t>(b.size());
  if (m == 0 || n == 0) return out;

  for (int eps : {1, -1}) {
    DualPath be(n);
    for (std::int64_t j = 0; j < n; ++j) be[j] = path_edge(tri, b, eps, j);
    std::vector<std::vector<std::int64_t>> where(tri.slot_count());
    for (std::int64_t j = 0; j < n; ++j) where[be[j]].push_back(j);

    for (std::int64_t i = 0; i < m; ++i) {
      const int prev_a = a[pmod(i - 1, m)];
      for (std::int64_t j : where[a[i]]) {
        if (prev_a == be[pmod(j - 1, n)]) continue;  // not the start of the common segment
        std::int64_t k = 1;
        while (k < m + n && a[(i + k) % m] == be[(j + k) % n]) ++k;
        if (k >= m + n) continue;  // same line
        const int c = a[i];
        const bool start_ccw = ccw_next(c, tri.partner(prev_a));
        const int c_end = tri.partner(a[(i + k - 1) % m]);
        const bool end_ccw = ccw_next(c_end, a[(i + k) % m]);
        if (start_ccw != end_ccw) continue;
        Crossing x;
        x.a_pos = i;
        x.length = k;
        x.b_pos = j;
        x.eps = eps;
        // start_ccw: b arrives from the right of a and leaves to its left.
        x.sign = (start_ccw ? 1 : -1) * eps;
        out.push_back(x);
      }
    }
  }
  return out;
}

LineCrossing swap_view(const Crossing& x, const DualPath& a, const DualPath& b) {
  const auto m = static_cast<std::int64_t>(a.size());
  const auto n = static_cast<std::int64_t>(b.size());
  LineCrossing v;
  v.length = x.length;
  v.m_path = &a;
  v.eps = x.eps;
  if (x.eps > 0) {
    v.start = x.b_pos;
    v.m_pos = x.a_pos;
  } else {
    v.start = pmod(n - x.b_pos - x.length, n);
    v.m_pos = pmod(m - x.a_pos - x.length, m);
  }
  return v;
}

namespace {

struct Lift {
  int id;
  std::int64_t start;  // on the unrolled line L
  int period;
};

class LineOrder {
 public:
  LineOrder(const Triangulation& tri, const DualPath& L, const std::vector<LineCrossing>& xs)
      : tri_(tri), L_(L), xs_(xs), m_(static_cast<std::int64_t>(L.size())) {}

  int m_edge(const LineCrossing& x, std::int64_t p) const {
    return path_edge(tri_, *x.m_path, x.eps, p);
  }

  bool l_from_left(const LineCrossing& x) const {
    const int c = L_[pmod(x.start, m_)];
    const int l_in = tri_.partner(L_[pmod(x.start - 1, m_)]);
    return ccw_next(c, l_in);
  }

  // Whether the line through crossing y lies to the right of the one through
  // x, when both contain vertex v0 of L and are oriented along L there.
  bool right_of(const Lift& X, const Lift& Y, std::int64_t v0) const {
    const LineCrossing& x = xs_[X.id];
    const LineCrossing& y = xs_[Y.id];
    const std::int64_t px = x.m_pos + (v0 - X.start);
    const std::int64_t py = y.m_pos + (v0 - Y.start);
    if (m_edge(x, px) != L_[pmod(v0, m_)] || m_edge(y, py) != L_[pmod(v0, m_)])
      throw InvariantViolation("crossing segments misaligned with the line");
    const std::int64_t limit =
        static_cast<std::int64_t>(x.m_path->size() + y.m_path->size()) + 2;

    std::int64_t r = 1;
    while (m_edge(x, px - r) == m_edge(y, py - r)) {
      if (++r > limit) throw InvariantViolation("two crossing lines coincide");
    }
    const int common_out = m_edge(x, px - r + 1);
    const bool back = ccw_next(common_out, tri_.partner(m_edge(x, px - r)));

    std::int64_t f = 0;
    while (m_edge(x, px + f) == m_edge(y, py + f)) {
      if (++f > limit) throw InvariantViolation("two crossing lines coincide");
    }
    const int common_in = tri_.partner(m_edge(x, px + f - 1));
    const bool fwd = !ccw_next(common_in, m_edge(x, px + f));
    if (back != fwd) throw InvariantViolation("lines of a simple multicurve cross");
    return back;
  }

  bool before(const Lift& A, const Lift& B) const {
    if (A.id == B.id && A.start == B.start) return false;
    const std::int64_t ea = A.start + xs_[A.id].length;
    const std::int64_t eb = B.start + xs_[B.id].length;
    const std::int64_t v0 = std::max(A.start, B.start);
    if (v0 >= std::min(ea, eb)) return ea <= B.start;
    // A is crossed first iff its line is on the side L comes from.
    const bool a_right_of_b = right_of(B, A, v0);
    const bool from_left = l_from_left(xs_[B.id]);
    return a_right_of_b != from_left;
  }

 private:
  const Triangulation& tri_;
  const DualPath& L_;
  const std::vector<LineCrossing>& xs_;
  std::int64_t m_;
};

template <class Less>
void merge_sort(std::vector<Lift>& v, Less less) {
  if (v.size() < 2) return;
  std::vector<Lift> left(v.begin(), v.begin() + v.size() / 2);
  std::vector<Lift> right(v.begin() + v.size() / 2, v.end());
  merge_sort(left, less);
  merge_sort(right, less);
  std::size_t i = 0, j = 0, k = 0;
  while (i < left.size() && j < right.size())
    v[k++] = less(right[j], left[i]) ? right[j++] : left[i++];
  while (i < left.size()) v[k++] = left[i++];
  while (j < right.size()) v[k++] = right[j++];
}

}  // namespace

CrossingOrder order_crossings(const Triangulation& tri, const DualPath& L,
                              const std::vector<LineCrossing>& crossings) {
  CrossingOrder out;
  const int count = static_cast<int>(crossings.size());
  if (count == 0) return out;
  const auto m = static_cast<std::int64_t>(L.size());
  std::int64_t max_len = 0;
  for (const auto& x : crossings) max_len = std::max(max_len, x.length);
  const int spread = static_cast<int>(max_len / m) + 2;

  std::vector<Lift> lifts;
  for (int u = -spread; u <= spread + 3; ++u)
    for (int id = 0; id < count; ++id) lifts.push_back({id, crossings[id].start + u * m, u});

  LineOrder order(tri, L, crossings);
  auto less = [&](const Lift& x, const Lift& y) { return order.before(x, y); };
  merge_sort(lifts, less);
  for (std::size_t i = 1; i < lifts.size(); ++i) {
    if (less(lifts[i], lifts[i - 1]) || !less(lifts[i - 1], lifts[i]))
      throw InvariantViolation("crossing order along a curve is inconsistent");
  }

  std::size_t first = 0;
  while (first < lifts.size() && lifts[first].period != 1) ++first;
  if (first + count > lifts.size()) throw InvariantViolation("crossing window too small");
  std::vector<Lift> period(lifts.begin() + first, lifts.begin() + first + count);
  std::vector<char> seen(count, 0);
  for (const auto& lf : period) {
    if (seen[lf.id]) throw InvariantViolation("crossing repeated within one period");
    seen[lf.id] = 1;
  }

  // Earliest admissible insertion vertices, repeated until periodic.
  std::vector<std::vector<std::int64_t>> q;
  std::int64_t cur = period[0].start;
  int stable = -1;
  for (int rep = 0; rep < 8 && stable < 0; ++rep) {
    std::vector<std::int64_t> row(count);
    for (int r = 0; r < count; ++r) {
      const std::int64_t st = period[r].start + rep * m;
      cur = std::max(cur, st);
      if (cur > st + crossings[period[r].id].length)
        throw InvariantViolation("no consistent crossing positions along the curve");
      row[r] = cur;
    }
    q.push_back(std::move(row));
    if (rep >= 1) {
      bool same = true;
      for (int r = 0; r < count; ++r) same = same && q[rep][r] == q[rep - 1][r] + m;
      if (same) stable = rep;
    }
  }
  if (stable < 0) throw InvariantViolation("crossing positions never become periodic");

  out.cut = q[stable][0];
  for (int r = 0; r < count; ++r) {
    const LineCrossing& x = crossings[period[r].id];
    const std::int64_t st = period[r].start + stable * m;
    out.sequence.push_back(period[r].id);
    out.offset.push_back(q[stable][r] - out.cut);
    out.m_vertex.push_back(x.m_pos + (q[stable][r] - st));
    out.from_left.push_back(order.l_from_left(x));
  }
  out.cut = pmod(out.cut, m);
  return out;
}

bool is_boundary_cycle(const Triangulation& tri, const DualPath& loop) {
  const auto n = loop.size();
  if (n == 0) return false;
  int turn0 = -1;
  for (std::size_t k = 0; k < n; ++k) {
    const int in = tri.partner(loop[(k + n - 1) % n]);
    const int out = loop[k];
    if (slot_triangle(in) != slot_triangle(out) || in == out) return false;
    const int turn = ((slot_side(out) - slot_side(in)) % 3 + 3) % 3;
    if (turn0 < 0) turn0 = turn;
    if (turn != turn0) return false;
  }
  return true;
}

bool is_trivial_or_peripheral(const Triangulation& tri, const DualPath& reduced) {
  if (reduced.empty()) return true;
  if (!is_boundary_cycle(tri, reduced)) return false;
  // One traversal only: the loop must not be a proper power.
  const std::size_t n = reduced.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t k = p; k < n && periodic; ++k) periodic = reduced[k] == reduced[k - p];
    if (periodic) return false;
  }
  return true;
}

}  // namespace curvelab
