#include "curvelab/complex.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <random>

#include "curvelab/crossings.hpp"
#include "curvelab/farey.hpp"

namespace curvelab {

namespace {

std::int64_t pmod(std::int64_t x, std::int64_t n) {
  const std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

bool is_torus_model(const Triangulation& tri) {
  return classify(tri.signature()) == ComplexClass::FareyModel;
}

// Intersection number of adjacent vertices: 1 on the once-punctured torus,
// 2 on the four-punctured sphere, 0 elsewhere.
std::int64_t adjacency_number(const Triangulation& tri) {
  const SurfaceSig sig = tri.signature();
  if (is_torus_model(tri)) return 1;
  if (sig.genus == 0 && sig.punctures == 4) return 2;
  return 0;
}

bool adjacent_curves(const NormalCurve& a, const NormalCurve& b) {
  if (a == b) return false;
  return intersection_number(a, b) == adjacency_number(a.tri());
}

}  // namespace

std::string to_string(SmallDistance d) {
  switch (d) {
    case SmallDistance::Zero: return "0";
    case SmallDistance::One: return "1";
    case SmallDistance::Two: return "2";
    case SmallDistance::AtLeastThree: return ">=3";
  }
  return "?";
}

SmallDistance small_distance(const NormalCurve& a, const NormalCurve& b) {
  if (a == b) return SmallDistance::Zero;
  if (is_torus_model(a.tri())) {
    auto [p, q] = torus_slope_of(a);
    auto [r, s] = torus_slope_of(b);
    const int d = farey_distance(FareySlope::make(p, q), FareySlope::make(r, s));
    return d == 1 ? SmallDistance::One : d == 2 ? SmallDistance::Two : SmallDistance::AtLeastThree;
  }
  if (adjacency_number(a.tri()) == 2) {
    if (intersection_number(a, b) == 2) return SmallDistance::One;
    throw InvalidInput("small_distance beyond 1 on the four-punctured sphere is not supported; use bfs_distance");
  }
  if (intersection_number(a, b) == 0) return SmallDistance::One;
  return is_filling(a, b) ? SmallDistance::AtLeastThree : SmallDistance::Two;
}

bool is_valid_path(const EdgePath& path) {
  if (path.vertices.empty()) return false;
  for (std::size_t k = 1; k < path.vertices.size(); ++k)
    if (!adjacent_curves(path.vertices[k - 1], path.vertices[k])) return false;
  return true;
}

ComplexUniverse::ComplexUniverse(TriangulationPtr tri, int weight_cap)
    : tri_(std::move(tri)), cap_(weight_cap), vertices_(enumerate_curves(tri_, weight_cap)) {
  const std::int64_t target = adjacency_number(*tri_);
  adj_.resize(vertices_.size());
  for (int i = 0; i < size(); ++i) {
    index_[vertices_[i].weights()] = i;
    for (int j = i + 1; j < size(); ++j) {
      const std::int64_t I = intersection_number(vertices_[i], vertices_[j]);
      if (I == target) {
        adj_[i].push_back(j);
        adj_[j].push_back(i);
      }
    }
  }
  for (auto& row : adj_) std::sort(row.begin(), row.end());
}

std::optional<int> ComplexUniverse::index_of(const NormalCurve& c) const {
  auto it = index_.find(c.weights());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> ComplexUniverse::distances_from_set(const std::vector<int>& sources) const {
  std::vector<int> d(vertices_.size(), -1);
  std::queue<int> q;
  for (int s : sources)
    if (d[s] < 0) {
      d[s] = 0;
      q.push(s);
    }
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : adj_[x])
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(y);
      }
  }
  return d;
}

std::vector<int> ComplexUniverse::distances_from(int src) const { return distances_from_set({src}); }

std::vector<int> ComplexUniverse::geodesic(int from, int to) const {
  // Canonical per unordered pair so both orientations give the same side.
  if (from > to) {
    auto g = geodesic(to, from);
    std::reverse(g.begin(), g.end());
    return g;
  }
  const auto d = distances_from(to);
  if (d[from] < 0) return {};
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    for (int y : adj_[cur])
      if (d[y] == d[cur] - 1) {
        cur = y;
        break;
      }
    path.push_back(cur);
  }
  return path;
}

std::optional<int> bfs_distance(const NormalCurve& a, const NormalCurve& b, const ComplexUniverse& u) {
  const auto ia = u.index_of(a), ib = u.index_of(b);
  if (!ia || !ib) throw InvalidInput("curve is outside the universe (weight cap " + std::to_string(u.cap()) + ")");
  const int d = u.distances_from(*ia)[*ib];
  if (d < 0) return std::nullopt;
  return d;
}

NormalCurve neighbourhood_boundary(const NormalCurve& a, const NormalCurve& b) {
  const Triangulation& tri = a.tri();
  const auto xs = find_crossings(tri, a.path(), b.path());
  if (xs.size() != 1) throw InvalidInput("neighbourhood boundary needs I(a,b) = 1");
  const Crossing& x = xs[0];
  const DualPath& A = a.path();
  const DualPath& B = b.path();
  const auto m = static_cast<std::int64_t>(A.size());
  const auto n = static_cast<std::int64_t>(B.size());
  // Commutator of the two loops based at the crossing.
  DualPath word;
  for (std::int64_t t = 0; t < m; ++t) word.push_back(A[pmod(x.a_pos + t, m)]);
  for (std::int64_t t = 0; t < n; ++t) word.push_back(path_edge(tri, B, x.eps, x.b_pos + t));
  for (std::int64_t t = 0; t < m; ++t) word.push_back(tri.partner(A[pmod(x.a_pos - 1 - t, m)]));
  for (std::int64_t t = 0; t < n; ++t) word.push_back(tri.partner(path_edge(tri, B, x.eps, x.b_pos - 1 - t)));
  auto c = NormalCurve::try_from_path(a.triangulation(), word);
  if (!c) throw InvalidInput("neighbourhood boundary is not essential on this surface");
  if (intersection_number(*c, a) != 0 || intersection_number(*c, b) != 0)
    throw InvariantViolation("neighbourhood boundary meets a or b");
  return *c;
}

namespace {

struct SurgeryStep {
  bool bridge = false;  // two-point opposite-sign case: d is disjoint from a and b
  NormalCurve c;
  std::int64_t ia = 0;  // I(a, c)
  std::int64_t ib = 0;  // I(b, c)
};

class SurgeryPlanner {
 public:
  SurgeryPlanner(const NormalCurve& a, const NormalCurve& b)
      : a_(a), b_(b), tri_(a.tri()), A_(a.path()), B_(b.path()),
        m_(static_cast<std::int64_t>(A_.size())), n_(static_cast<std::int64_t>(B_.size())) {
    xs_ = find_crossings(tri_, A_, B_);
    std::vector<LineCrossing> on_a, on_b;
    for (const auto& x : xs_) {
      on_a.push_back({x.a_pos, x.length, &B_, x.eps, x.b_pos});
      on_b.push_back(swap_view(x, A_, B_));
    }
    const CrossingOrder oa = order_crossings(tri_, A_, on_a);
    const CrossingOrder ob = order_crossings(tri_, B_, on_b);
    count_ = static_cast<int>(oa.sequence.size());
    if (static_cast<int>(ob.sequence.size()) != count_) throw InvariantViolation("crossing orders disagree");
    seq_ = oa.sequence;
    pos_a_.resize(count_);
    pos_b_.assign(xs_.size(), 0);
    rank_b_.assign(xs_.size(), 0);
    shift_a_.assign(xs_.size(), 0);
    shift_b_.assign(xs_.size(), 0);
    for (int r = 0; r < count_; ++r) {
      const int id = oa.sequence[r];
      pos_a_[r] = oa.cut + oa.offset[r];
      shift_a_[id] = oa.m_vertex[r] - on_a[id].m_pos;
    }
    for (int r = 0; r < count_; ++r) {
      const int id = ob.sequence[r];
      rank_b_[id] = r;
      pos_b_[id] = ob.cut + ob.offset[r];
      const std::int64_t j = ob.m_vertex[r] - on_b[id].m_pos;
      // Shift along the common segment measured from its start on a.
      shift_b_[id] = xs_[id].eps > 0 ? j : xs_[id].length - j;
    }
  }

  int count() const { return count_; }
  int sign(int r) const { return xs_[seq_[pmod(r, count_)]].sign; }

  // Loops made of the arc of a from rank r1 to rank r2 (r1 < r2 <= r1 +
  // count) and either arc of b back to the start.
  std::vector<DualPath> loops(int r1, int r2) const {
    const int x1 = seq_[pmod(r1, count_)], x2 = seq_[pmod(r2, count_)];
    const std::int64_t from_a = pos_a_[pmod(r1, count_)];
    const std::int64_t to_a = pos_a_[pmod(r2, count_)] + (r2 >= count_ ? m_ : 0) + (r1 >= count_ ? -m_ : 0);
    DualPath head;
    for (std::int64_t v = from_a; v < to_a; ++v) head.push_back(A_[pmod(v, m_)]);
    segment_walk(head, x2, shift_a_[x2], shift_b_[x2]);

    const std::int64_t p2 = pos_b_[x2], p1 = pos_b_[x1];
    std::int64_t fwd = rank_b_[x1] > rank_b_[x2] ? p1 - p2 : p1 + n_ - p2;
    if (x1 == x2) fwd = n_;
    std::vector<DualPath> out;
    for (int dir : {1, -1}) {
      DualPath w = head;
      const std::int64_t len = dir > 0 ? fwd : n_ - fwd;
      for (std::int64_t t = 0; t < len; ++t)
        w.push_back(dir > 0 ? B_[pmod(p2 + t, n_)] : tri_.partner(B_[pmod(p2 - 1 - t, n_)]));
      segment_walk(w, x1, shift_b_[x1], shift_a_[x1]);
      if (!w.empty()) out.push_back(std::move(w));
    }
    return out;
  }

  std::optional<SurgeryStep> step_candidate(const DualPath& loop, std::int64_t I) const {
    auto c = NormalCurve::try_from_path(a_.triangulation(), loop);
    if (!c || *c == a_ || *c == b_) return std::nullopt;
    SurgeryStep s{false, *c, intersection_number(a_, *c), intersection_number(b_, *c)};
    if (s.ia >= I || s.ib > 1) return std::nullopt;
    return s;
  }

  std::optional<SurgeryStep> bridge_candidate(const DualPath& loop) const {
    auto c = NormalCurve::try_from_path(a_.triangulation(), loop);
    if (!c || *c == a_ || *c == b_) return std::nullopt;
    if (intersection_number(a_, *c) != 0 || intersection_number(b_, *c) != 0) return std::nullopt;
    return SurgeryStep{true, *c, 0, 0};
  }

 private:
  const NormalCurve& a_;
  const NormalCurve& b_;
  const Triangulation& tri_;
  const DualPath& A_;
  const DualPath& B_;
  std::int64_t m_, n_;
  std::vector<Crossing> xs_;
  int count_ = 0;
  std::vector<int> seq_;
  std::vector<std::int64_t> pos_a_;  // by rank on a
  std::vector<std::int64_t> pos_b_, rank_b_, shift_a_, shift_b_;  // by crossing id

  // Moves along the common segment of crossing x from shift i to shift j,
  // using the edges of a.
  void segment_walk(DualPath& w, int x, std::int64_t i, std::int64_t j) const {
    const std::int64_t base = xs_[x].a_pos;
    for (std::int64_t k = i; k < j; ++k) w.push_back(A_[pmod(base + k, m_)]);
    for (std::int64_t k = i; k > j; --k) w.push_back(tri_.partner(A_[pmod(base + k - 1, m_)]));
  }
};

SurgeryStep plan_step(const NormalCurve& a, const NormalCurve& b, std::int64_t I, SurgeryStrategy strategy) {
  SurgeryPlanner P(a, b);
  const int s = P.count();
  if (s != I) throw InvariantViolation("crossing order lost intersection points");

  // Two points of opposite sign: a boundary curve of the 4-holed sphere.
  if (s == 2 && P.sign(0) != P.sign(1)) {
    for (auto [r1, r2] : {std::pair{0, 1}, std::pair{1, 2}})
      for (const auto& loop : P.loops(r1, r2))
        if (auto st = P.bridge_candidate(loop)) return *st;
  }

  // Same-sign pairs: adjacent first, then with one point in between.
  for (int gap : {1, 2}) {
    std::optional<SurgeryStep> best;
    for (int r = 0; r < s; ++r) {
      if (gap >= s || P.sign(r) != P.sign(r + gap)) continue;
      for (const auto& loop : P.loops(r, r + gap)) {
        auto st = P.step_candidate(loop, I);
        if (!st) continue;
        if (strategy == SurgeryStrategy::Basic) return *st;
        if (!best || st->ia < best->ia) best = st;
      }
    }
    if (best) return *best;
  }

  // Not expected on orientable surfaces; kept so failures are explicit.
  std::optional<SurgeryStep> best;
  for (int r = 0; r < s; ++r)
    for (int gap = 1; gap < s; ++gap)
      for (const auto& loop : P.loops(r, r + gap))
        if (auto st = P.step_candidate(loop, I); st && (!best || st->ia < best->ia)) best = st;
  if (best) return *best;
  throw InvariantViolation("no surgery curve could be certified");
}

void extend(EdgePath& path, const NormalCurve& from, const NormalCurve& to) {
  // Appends a path from `from` (already the last vertex) to a curve meeting
  // it at most once.
  const std::int64_t I = intersection_number(from, to);
  if (I == 1) path.vertices.push_back(neighbourhood_boundary(from, to));
  else if (I != 0) throw InvariantViolation("surgery curve meets b more than once");
  path.vertices.push_back(to);
}

EdgePath surgery_rec(const NormalCurve& a, const NormalCurve& b, SurgeryStrategy strategy,
                     std::vector<std::int64_t>* trace) {
  EdgePath path{{a}};
  if (a == b) return path;
  const std::int64_t I = intersection_number(a, b);
  if (I <= 1) {
    extend(path, a, b);
    return path;
  }
  const SurgeryStep st = plan_step(a, b, I, strategy);
  if (trace) trace->push_back(st.ia);
  if (st.bridge) {
    path.vertices.push_back(st.c);
    path.vertices.push_back(b);
    return path;
  }
  path = surgery_rec(a, st.c, strategy, trace);
  extend(path, st.c, b);
  return path;
}

}  // namespace

EdgePath surgery_path(const NormalCurve& a, const NormalCurve& b, SurgeryStrategy strategy,
                      std::vector<std::int64_t>* trace) {
  if (!(a.tri() == b.tri())) throw InvalidInput("curves live on different triangulations");
  const ComplexClass cls = classify(a.tri().signature());
  if (cls != ComplexClass::Supported)
    throw InvalidInput(std::string("surgery paths need a non-sporadic surface; this one is ") +
                       std::string(to_string(cls)));
  EdgePath path = surgery_rec(a, b, strategy, trace);
  if (!is_valid_path(path)) throw InvariantViolation("surgery produced an invalid edge path");
  return path;
}

int triangle_slimness(const ComplexUniverse& u, const std::vector<int>& xy,
                      const std::vector<int>& yz, const std::vector<int>& zx) {
  const std::vector<const std::vector<int>*> sides{&xy, &yz, &zx};
  int worst = 0;
  for (int s = 0; s < 3; ++s) {
    std::vector<int> others(sides[(s + 1) % 3]->begin(), sides[(s + 1) % 3]->end());
    others.insert(others.end(), sides[(s + 2) % 3]->begin(), sides[(s + 2) % 3]->end());
    const auto d = u.distances_from_set(others);
    for (int v : *sides[s]) worst = std::max(worst, d[v]);
  }
  return worst;
}

DeltaReport probe_delta(const ComplexUniverse& u, int samples, std::uint64_t seed) {
  DeltaReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.cap = u.cap();
  if (u.size() == 0) throw InvalidInput("empty universe");
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    const int x = static_cast<int>(uniform_below(rng, u.size()));
    const int y = static_cast<int>(uniform_below(rng, u.size()));
    const int z = static_cast<int>(uniform_below(rng, u.size()));
    const auto xy = u.geodesic(x, y), yz = u.geodesic(y, z), zx = u.geodesic(z, x);
    if (xy.empty() || yz.empty() || zx.empty()) {
      ++rep.skipped;
      continue;
    }
    const int s = triangle_slimness(u, xy, yz, zx);
    rep.max_slimness = std::max(rep.max_slimness, s);
    ++rep.histogram[s];
  }
  return rep;
}

}  // namespace curvelab
