#include "curvelab/curves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "curvelab/crossings.hpp"

namespace curvelab {

namespace {

std::int64_t pmod(std::int64_t x, std::int64_t n) {
  const std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

// Follows normal arcs through triangles. A point on a side is indexed from
// the first corner of that side within the triangle under consideration.
class Tracer {
 public:
  Tracer(const Triangulation& tri, const Weights& w) : tri_(tri), w_(w), offset_(w.size() + 1, 0) {
    for (std::size_t e = 0; e < w.size(); ++e) offset_[e + 1] = offset_[e] + w[e];
    visited_.assign(offset_.back(), 0);
  }

  std::int64_t weight(int slot) const { return w_[tri_.edge_of(slot)]; }

  // Arcs cutting off corner V_j: between side j-1 and side j.
  std::int64_t corner(int t, int j) const {
    const std::int64_t prev = weight(make_slot(t, (j + 2) % 3));
    const std::int64_t here = weight(make_slot(t, j));
    const std::int64_t next = weight(make_slot(t, (j + 1) % 3));
    return (prev + here - next) / 2;
  }

  std::int64_t global_index(int slot, std::int64_t r) const {
    const int e = tri_.edge_of(slot);
    const std::int64_t canon = tri_.slots_of_edge(e)[0] == slot ? r : w_[e] - 1 - r;
    return offset_[e] + canon;
  }

  // Enters through slot s at point r; returns the exit slot and point.
  std::pair<int, std::int64_t> step(int s, std::int64_t r) const {
    const int t = slot_triangle(s), i = slot_side(s);
    const std::int64_t wi = weight(s);
    const std::int64_t k_next = corner(t, (i + 1) % 3);
    if (r >= wi - k_next) return {make_slot(t, (i + 1) % 3), wi - 1 - r};
    const int out = make_slot(t, (i + 2) % 3);
    return {out, weight(out) - 1 - r};
  }

  // Traces the component through canonical point c of edge e.
  DualPath trace(int e, std::int64_t c) {
    DualPath path;
    const int s0 = tri_.slots_of_edge(e)[0];
    int s = s0;
    std::int64_t r = c;
    do {
      const auto [out, ro] = step(s, r);
      path.push_back(out);
      visited_[global_index(out, ro)] = 1;
      s = tri_.partner(out);
      r = weight(out) - 1 - ro;
    } while (!(s == s0 && r == c));
    return path;
  }

  bool visited(int e, std::int64_t c) const { return visited_[offset_[e] + c] != 0; }

 private:
  const Triangulation& tri_;
  const Weights& w_;
  std::vector<std::int64_t> offset_;
  std::vector<char> visited_;
};

Weights weights_of_path(const Triangulation& tri, const DualPath& path) {
  Weights w(tri.edge_count(), 0);
  for (int s : path) ++w[tri.edge_of(s)];
  return w;
}

DualPath reversed(const Triangulation& tri, const DualPath& p) {
  DualPath r(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) r[k] = tri.partner(p[p.size() - 1 - k]);
  return r;
}

bool is_rotation(const DualPath& x, const DualPath& y) {
  if (x.size() != y.size()) return false;
  if (x.empty()) return true;
  DualPath doubled(x);
  doubled.insert(doubled.end(), x.begin(), x.end());
  return std::search(doubled.begin(), doubled.end(),
                     std::boyer_moore_searcher(y.begin(), y.end())) != doubled.end();
}

void require_same(const TriangulationPtr& a, const TriangulationPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw InvalidInput("curves live on different triangulations");
}

}  // namespace

bool satisfies_matching(const Triangulation& tri, const Weights& w) {
  if (static_cast<int>(w.size()) != tri.edge_count()) return false;
  for (auto x : w)
    if (x < 0) return false;
  for (int t = 0; t < tri.triangle_count(); ++t) {
    const std::int64_t x = w[tri.edge_of(make_slot(t, 0))];
    const std::int64_t y = w[tri.edge_of(make_slot(t, 1))];
    const std::int64_t z = w[tri.edge_of(make_slot(t, 2))];
    if (x > y + z || y > z + x || z > x + y || (x + y + z) % 2 != 0) return false;
  }
  return true;
}

std::optional<NormalCurve> NormalCurve::try_from_weights(TriangulationPtr tri, Weights w,
                                                         std::string* why) {
  auto fail = [&](const char* msg) -> std::optional<NormalCurve> {
    if (why) *why = msg;
    return std::nullopt;
  };
  if (!tri) return fail("missing triangulation");
  if (static_cast<int>(w.size()) != tri->edge_count()) return fail("wrong number of weights");
  if (!satisfies_matching(*tri, w)) return fail("weights violate the triangle conditions");
  const std::int64_t total = std::accumulate(w.begin(), w.end(), std::int64_t{0});
  if (total == 0) return fail("all weights are zero");
  int e0 = 0;
  while (w[e0] == 0) ++e0;
  Tracer tracer(*tri, w);
  DualPath path = tracer.trace(e0, 0);
  if (static_cast<std::int64_t>(path.size()) != total) return fail("weights describe several components");
  if (is_boundary_cycle(*tri, path)) return fail("curve is peripheral");
  NormalCurve c;
  c.tri_ = std::move(tri);
  c.weights_ = std::move(w);
  c.path_ = std::move(path);
  return c;
}

NormalCurve NormalCurve::from_weights(TriangulationPtr tri, Weights w) {
  std::string why;
  auto c = try_from_weights(std::move(tri), std::move(w), &why);
  if (!c) throw InvalidInput("invalid curve: " + why);
  return *std::move(c);
}

DualPath reduce_loop(const Triangulation& tri, DualPath loop) {
  DualPath st;
  st.reserve(loop.size());
  for (int s : loop) {
    if (!st.empty() && tri.partner(st.back()) == s) {
      st.pop_back();
    } else {
      st.push_back(s);
    }
  }
  std::size_t lo = 0, hi = st.size();
  while (hi - lo >= 2 && tri.partner(st[hi - 1]) == st[lo]) {
    ++lo;
    --hi;
  }
  return DualPath(st.begin() + lo, st.begin() + hi);
}

std::optional<NormalCurve> NormalCurve::try_from_path(TriangulationPtr tri, const DualPath& loop) {
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const int prev = loop[(k + loop.size() - 1) % loop.size()];
    if (slot_triangle(tri->partner(prev)) != slot_triangle(loop[k]))
      throw InvalidInput("dual path is not a closed loop");
  }
  DualPath red = reduce_loop(*tri, loop);
  if (red.empty()) return std::nullopt;
  Weights w = weights_of_path(*tri, red);
  auto c = try_from_weights(tri, std::move(w));
  if (!c) return std::nullopt;
  if (!is_rotation(c->path_, red) && !is_rotation(c->path_, reversed(*tri, red))) return std::nullopt;
  return c;
}

NormalCurve NormalCurve::from_path(TriangulationPtr tri, const DualPath& loop) {
  auto c = try_from_path(std::move(tri), loop);
  if (!c) throw InvalidInput("loop is not homotopic to an essential simple closed curve");
  return *std::move(c);
}

std::int64_t NormalCurve::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), std::int64_t{0});
}

std::int64_t NormalCurve::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

MultiCurve::MultiCurve(const NormalCurve& c, std::int64_t multiplicity) {
  if (multiplicity <= 0) throw InvalidInput("multiplicity must be positive");
  parts_.emplace_back(c, multiplicity);
}

MultiCurve MultiCurve::from_parts(std::vector<Part> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const Part& x, const Part& y) { return x.first < y.first; });
  MultiCurve out;
  for (auto& p : parts) {
    if (p.second <= 0) throw InvalidInput("multiplicity must be positive");
    if (!out.parts_.empty()) require_same(out.parts_.front().first.triangulation(), p.first.triangulation());
    if (!out.parts_.empty() && out.parts_.back().first == p.first) {
      out.parts_.back().second += p.second;
    } else {
      out.parts_.push_back(std::move(p));
    }
  }
  for (std::size_t i = 0; i < out.parts_.size(); ++i)
    for (std::size_t j = i + 1; j < out.parts_.size(); ++j)
      if (intersection_number(out.parts_[i].first, out.parts_[j].first) != 0)
        throw InvalidInput("multicurve components intersect");
  return out;
}

MultiCurve MultiCurve::scaled(std::int64_t k) const {
  if (k <= 0) throw InvalidInput("scale factor must be positive");
  MultiCurve out = *this;
  for (auto& p : out.parts_) p.second *= k;
  return out;
}

Weights MultiCurve::weights() const {
  if (parts_.empty()) return {};
  Weights w(parts_.front().first.weights().size(), 0);
  for (const auto& [c, k] : parts_)
    for (std::size_t e = 0; e < w.size(); ++e) w[e] += k * c.weights()[e];
  return w;
}

const TriangulationPtr& MultiCurve::triangulation() const {
  if (parts_.empty()) throw InvalidInput("empty multicurve has no triangulation");
  return parts_.front().first.triangulation();
}

bool MultiCurve::contains(const NormalCurve& c) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Part& p) { return p.first == c; });
}

MappingClassWord MappingClassWord::inverse() const {
  MappingClassWord out;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.emplace_back(it->first, -it->second);
  return out;
}

MappingClassWord MappingClassWord::then(const MappingClassWord& after) const {
  MappingClassWord out = after;
  out.letters.insert(out.letters.end(), letters.begin(), letters.end());
  return out;
}

Decomposition decompose(const TriangulationPtr& tri, const Weights& w) {
  if (!satisfies_matching(*tri, w)) throw InvalidInput("weights violate the triangle conditions");
  Decomposition out;
  Tracer tracer(*tri, w);
  std::map<Weights, std::int64_t> essential;
  std::map<DualPath, std::int64_t> peripheral;
  for (int e = 0; e < tri->edge_count(); ++e) {
    for (std::int64_t c = 0; c < w[e]; ++c) {
      if (tracer.visited(e, c)) continue;
      DualPath path = tracer.trace(e, c);
      if (is_boundary_cycle(*tri, path)) {
        // Canonical rotation so parallel copies merge.
        auto lo = std::min_element(path.begin(), path.end());
        std::rotate(path.begin(), lo, path.end());
        ++peripheral[path];
      } else {
        ++essential[weights_of_path(*tri, path)];
      }
    }
  }
  for (auto& [cw, k] : essential) out.essential.emplace_back(NormalCurve::from_weights(tri, cw), k);
  for (auto& [p, k] : peripheral) out.peripheral.emplace_back(p, k);
  return out;
}

std::int64_t intersection_number(const NormalCurve& a, const NormalCurve& b) {
  require_same(a.triangulation(), b.triangulation());
  return static_cast<std::int64_t>(find_crossings(a.tri(), a.path(), b.path()).size());
}

std::int64_t intersection_number(const MultiCurve& a, const MultiCurve& b) {
  std::int64_t total = 0;
  for (const auto& [x, kx] : a.parts())
    for (const auto& [y, ky] : b.parts()) total += kx * ky * intersection_number(x, y);
  return total;
}

NormalCurve twist(const NormalCurve& about, int power, const NormalCurve& c) {
  require_same(about.triangulation(), c.triangulation());
  if (power == 0) return c;
  const Triangulation& tri = c.tri();
  const DualPath& L = c.path();
  const DualPath& M = about.path();
  const auto m = static_cast<std::int64_t>(L.size());
  const auto n = static_cast<std::int64_t>(M.size());

  std::vector<LineCrossing> lines;
  for (const Crossing& x : find_crossings(tri, L, M))
    lines.push_back({x.a_pos, x.length, &M, x.eps, x.b_pos});
  if (lines.empty()) return c;
  const CrossingOrder order = order_crossings(tri, L, lines);

  DualPath word;
  std::int64_t pos = order.cut;
  const int reps = power > 0 ? power : -power;
  for (std::size_t r = 0; r < order.sequence.size(); ++r) {
    const std::int64_t at = order.cut + order.offset[r];
    for (; pos < at; ++pos) word.push_back(L[pmod(pos, m)]);
    const LineCrossing& x = lines[order.sequence[r]];
    const bool forward = order.from_left[r] == (power > 0);
    const std::int64_t v = order.m_vertex[r];
    for (int rep = 0; rep < reps; ++rep) {
      for (std::int64_t t = 0; t < n; ++t) {
        word.push_back(forward ? path_edge(tri, M, x.eps, v + t)
                               : tri.partner(path_edge(tri, M, x.eps, v - 1 - t)));
      }
    }
  }
  for (; pos < order.cut + m; ++pos) word.push_back(L[pmod(pos, m)]);
  auto out = NormalCurve::try_from_path(c.triangulation(), word);
  if (!out) throw InvariantViolation("twisted curve failed to be simple");
  return *std::move(out);
}

NormalCurve apply_twist(const MappingClassWord& g, const NormalCurve& c) {
  NormalCurve cur = c;
  for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) {
    if (it->second == 0) throw InvalidInput("twist word has a zero exponent");
    cur = twist(it->first, it->second, cur);
  }
  return cur;
}

MultiCurve apply_twist(const MappingClassWord& g, const MultiCurve& c) {
  std::vector<MultiCurve::Part> parts;
  for (const auto& [x, k] : c.parts()) parts.emplace_back(apply_twist(g, x), k);
  return MultiCurve::from_parts(std::move(parts));
}

std::vector<NormalCurve> enumerate_curves(const TriangulationPtr& tri, int weight_cap) {
  if (weight_cap < 1) throw InvalidInput("weight cap must be at least 1");
  const int E = tri->edge_count();
  // Triangles become checkable once their largest edge index is assigned.
  std::vector<std::vector<int>> ready(E);
  for (int t = 0; t < tri->triangle_count(); ++t) {
    int top = 0;
    for (int i = 0; i < 3; ++i) top = std::max(top, tri->edge_of(make_slot(t, i)));
    ready[top].push_back(t);
  }
  std::vector<NormalCurve> out;
  Weights w(E, 0);
  std::function<void(int)> rec = [&](int e) {
    if (e == E) {
      if (auto c = NormalCurve::try_from_weights(tri, w)) out.push_back(*std::move(c));
      return;
    }
    for (int v = 0; v <= weight_cap; ++v) {
      w[e] = v;
      bool ok = true;
      for (int t : ready[e]) {
        const std::int64_t x = w[tri->edge_of(make_slot(t, 0))];
        const std::int64_t y = w[tri->edge_of(make_slot(t, 1))];
        const std::int64_t z = w[tri->edge_of(make_slot(t, 2))];
        if (x > y + z || y > z + x || z > x + y || (x + y + z) % 2 != 0) {
          ok = false;
          break;
        }
      }
      if (ok) rec(e + 1);
    }
    w[e] = 0;
  };
  rec(0);
  std::stable_sort(out.begin(), out.end(), [](const NormalCurve& x, const NormalCurve& y) {
    const auto mx = x.max_weight(), my = y.max_weight();
    if (mx != my) return mx < my;
    return x.weights() < y.weights();
  });
  return out;
}

namespace {

void require_standard_torus(const TriangulationPtr& tri) {
  static const Triangulation standard = standard_triangulation({1, 1, true});
  if (!tri || !(*tri == standard))
    throw InvalidInput("slope coordinates need the standard once-punctured torus triangulation");
}

}  // namespace

NormalCurve torus_slope_curve(const TriangulationPtr& tri, std::int64_t p, std::int64_t q) {
  require_standard_torus(tri);
  if (std::gcd(p, q) != 1) throw InvalidInput("slope must be a reduced fraction");
  return NormalCurve::from_weights(tri, {std::abs(p), std::abs(q), std::abs(q - p)});
}

std::pair<std::int64_t, std::int64_t> torus_slope_of(const NormalCurve& c) {
  require_standard_torus(c.triangulation());
  const auto& w = c.weights();
  std::int64_t p = w[0], q = w[1];
  if (q == 0) return {1, 0};
  if (w[2] != std::abs(q - p)) p = -p;
  return {p, q};
}

}  // namespace curvelab
