#include <functional>
#include <random>

#include "doctest.h"
#include "curvelab/qm.hpp"
#include "oracles.hpp"

using namespace curvelab;

namespace {

const IntMatrix kM{2, 1, 1, 1};
const IntMatrix kT{1, 1, 0, 1};
const IntMatrix kU{1, 0, 1, 1};

FareySlope s(std::int64_t p, std::int64_t q) { return FareySlope::make(p, q); }

FareyQmSpec axis_spec(int edges, std::optional<int> W = std::nullopt,
                      TranslateGroup group = TranslateGroup::PSL2Z) {
  return FareyQmSpec::make(axis_segment(kM, s(0, 1), edges), W, s(0, 1), group);
}

// Random walk in the Farey graph: each step backtracks or moves to an apex
// of one of the two triangles on the last edge.
std::vector<FareySlope> random_walk(std::mt19937_64& rng, int len) {
  std::vector<FareySlope> path{s(0, 1), s(1, 0)};
  while (static_cast<int>(path.size()) <= len) {
    const auto& u = path[path.size() - 2];
    const auto& v = path.back();
    const auto ap = edge_apexes(u, v);
    const auto r = uniform_below(rng, 3);
    path.push_back(r == 0 ? u : ap[r - 1]);
  }
  path.resize(len + 1);
  return path;
}

// Pieces of the axis of kM, each followed by a one-step detour, so that
// matching windows overlap and compete.
std::vector<FareySlope> axis_walk(std::mt19937_64& rng, int len) {
  std::vector<FareySlope> path{s(0, 1)};
  while (static_cast<int>(path.size()) <= len) {
    const int piece = 1 + static_cast<int>(uniform_below(rng, 5));
    const IntMatrix g = to_infinity(path.back()).inverse() * to_infinity(s(0, 1));
    const auto seg = axis_segment(kM, s(0, 1), piece);
    for (std::size_t k = 1; k < seg.size(); ++k) path.push_back(act(g, seg[k]));
    path.push_back(edge_apexes(path[path.size() - 2], path.back())[uniform_below(rng, 2)]);
  }
  path.resize(len + 1);
  return path;
}

// Every walk x -> y of length <= max_len inside the region, minimum of
// |alpha| - W |alpha|_w with copies counted by count_copies.
std::int64_t brute_min_cost(const FareySlope& x, const FareySlope& y, const FareyQmSpec& spec, int max_len) {
  std::vector<FareySlope> verts;
  const auto g = farey_region(x, y, spec, &verts);
  const int n = static_cast<int>(verts.size());
  const int src = static_cast<int>(std::find(verts.begin(), verts.end(), x) - verts.begin());
  const int dst = static_cast<int>(std::find(verts.begin(), verts.end(), y) - verts.begin());
  std::vector<int> to_dst(n, -1);
  {
    std::vector<int> q{dst};
    to_dst[dst] = 0;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (int z : g.adj[q[h]])
        if (to_dst[z] < 0) {
          to_dst[z] = to_dst[q[h]] + 1;
          q.push_back(z);
        }
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<FareySlope> walk{x};
  std::function<void(int)> dfs = [&](int v) {
    const int len = static_cast<int>(walk.size()) - 1;
    if (v == dst) best = std::min<std::int64_t>(best, len - spec.W * count_copies(walk, spec).count);
    if (len == max_len) return;
    for (int z : g.adj[v]) {
      if (len + 1 + to_dst[z] > max_len) continue;
      walk.push_back(verts[z]);
      dfs(z);
      walk.pop_back();
    }
  };
  dfs(src);
  return best;
}

}  // namespace

TEST_CASE("qm spec validation") {
  const auto w = axis_segment(kM, s(0, 1), 4);
  CHECK(FareyQmSpec::make(w, std::nullopt, s(0, 1)).W == 2);
  CHECK(FareyQmSpec::make(axis_segment(kM, s(0, 1), 3), std::nullopt, s(0, 1)).W == 2);
  CHECK_THROWS_AS(FareyQmSpec::make(w, 0, s(0, 1)), InvalidInput);
  CHECK_THROWS_AS(FareyQmSpec::make(w, 4, s(0, 1)), InvalidInput);
  CHECK_THROWS_AS(FareyQmSpec::make({s(0, 1), s(1, 1)}, 1, s(0, 1)), InvalidInput);
  CHECK_THROWS_AS(FareyQmSpec::make({s(0, 1), s(1, 2), s(1, 0)}, 1, s(0, 1)), InvalidInput);
  CHECK(parse_translate_group(to_string(TranslateGroup::Commutator)) == TranslateGroup::Commutator);
  CHECK_THROWS_AS(parse_translate_group("sl3z"), InvalidInput);
  const auto r = FareyQmSpec::make(w, std::nullopt, s(0, 1)).reversed();
  CHECK(r.w.front() == w.back());
  CHECK(r.W == 2);
}

TEST_CASE("axis segment follows the orbit of 0/1") {
  const auto w = axis_segment(kM, s(0, 1), 5);
  REQUIRE(w.size() == 6);
  CHECK(w[0] == s(0, 1));
  CHECK(w[1] == s(1, 1));
  CHECK(w[2] == s(3, 2));
  CHECK(w[3] == s(8, 5));
  for (std::size_t k = 1; k < w.size(); ++k) CHECK(adjacent(w[k - 1], w[k]));
  CHECK(farey_distance(w.front(), w.back()) == 5);
  CHECK_THROWS_AS(axis_segment(kT, s(1, 0), 2), InvalidInput);
}

TEST_CASE("copy counting examples") {
  const auto spec = axis_spec(3);
  CHECK(count_copies({s(0, 1), s(1, 1)}, spec).count == 0);
  const auto one = count_copies(spec.w, spec);
  CHECK(one.count == 1);
  CHECK(one.witnesses.at(0) == IntMatrix::identity());

  // w followed by g w for g = [[1,5],[0,1]] joined by a geodesic.
  const IntMatrix g{1, 5, 0, 1};
  std::vector<FareySlope> gw;
  for (const auto& v : spec.w) gw.push_back(act(g, v));
  std::vector<FareySlope> alpha = spec.w;
  const auto bridge = farey_geodesic(spec.w.back(), gw.front());
  alpha.insert(alpha.end(), bridge.begin() + 1, bridge.end());
  alpha.insert(alpha.end(), gw.begin() + 1, gw.end());
  const auto two = count_copies(alpha, spec);
  CHECK(two.count == 2);
  CHECK(two.witnesses.at(1) == g);
  for (std::size_t k = 0; k < two.intervals.size(); ++k) {
    const auto [a, b] = two.intervals[k];
    for (int i = a; i <= b; ++i) CHECK(act(two.witnesses[k], spec.w[i - a]) == alpha[i]);
  }
}

TEST_CASE("greedy copy counting matches exhaustive placement") {
  std::mt19937_64 rng(71);
  for (int edges : {2, 3}) {
    const auto spec = axis_spec(edges);
    int with_overlap = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const int len = 1 + static_cast<int>(uniform_below(rng, 12));
      const auto alpha = trial % 2 ? random_walk(rng, len) : axis_walk(rng, len);
      std::vector<int> starts;
      for (int st = 0; st + edges < static_cast<int>(alpha.size()); ++st)
        if (translate_match(spec.w, {alpha.begin() + st, alpha.begin() + st + edges + 1}))
          starts.push_back(st);
      if (starts.size() >= 2 && starts[1] - starts[0] < edges) ++with_overlap;
      const auto cc = count_copies(alpha, spec);
      CHECK(cc.count == oracle::exhaustive_max_disjoint(starts, edges));
      for (std::size_t k = 1; k < cc.intervals.size(); ++k)
        CHECK(cc.intervals[k].first >= cc.intervals[k - 1].second);
    }
    CHECK(with_overlap > 0);
  }
  // Overlapping windows sharing only an endpoint are disjoint placements.
  CHECK(greedy_copies({0, 1, 2, 3, 4}, 2) == std::vector<int>{0, 2, 4});
  CHECK(oracle::exhaustive_max_disjoint({0, 1, 2, 3, 4}, 2) == 3);
}

TEST_CASE("translate groups") {
  const auto psl = axis_spec(2);
  const auto comm = axis_spec(2, std::nullopt, TranslateGroup::Commutator);
  const auto pgl = axis_spec(2, std::nullopt, TranslateGroup::PGL2Z);
  const IntMatrix S{0, -1, 1, 0};
  std::vector<FareySlope> sw;
  for (const auto& v : psl.w) sw.push_back(act(S, v));
  CHECK(farey_translate(psl, sw).has_value());
  CHECK_FALSE(farey_translate(comm, sw).has_value());
  CHECK(abelian_character(kM) == 0);
  std::vector<FareySlope> mw;
  for (const auto& v : psl.w) mw.push_back(act(kM, v));
  CHECK(farey_translate(comm, mw).has_value());
  const IntMatrix R{0, 1, 1, 0};  // reflection
  std::vector<FareySlope> rw;
  for (const auto& v : psl.w) rw.push_back(act(R, v));
  CHECK_FALSE(farey_translate(psl, rw).has_value());
  CHECK(farey_translate(pgl, rw).has_value());
}

TEST_CASE("discounted distance examples") {
  for (int W : {1, 2}) {
    const auto spec = axis_spec(3, W);
    CHECK(discounted_distance(s(2, 7), s(2, 7), spec, 100).c == 0);
    const auto r = discounted_distance(spec.w.front(), spec.w.back(), spec, 100);
    CHECK(r.d == 3);
    CHECK(r.c == W);
    CHECK(r.bound == 3 * 3 / (3 - W));
    CHECK_FALSE(r.cap_exceeded);
  }
  const auto spec = axis_spec(2);
  const auto r = discounted_distance(s(0, 1), s(55, 21), spec, 3);
  CHECK(r.cap_exceeded);
  CHECK(r.c >= 0);
}

TEST_CASE("discounted distance stays within [0, d]") {
  std::mt19937_64 rng(73);
  for (auto group : {TranslateGroup::PSL2Z, TranslateGroup::Commutator, TranslateGroup::PGL2Z}) {
    const auto spec = axis_spec(3, std::nullopt, group);
    for (int trial = 0; trial < 60; ++trial) {
      const auto y = random_walk(rng, 2 + static_cast<int>(uniform_below(rng, 8))).back();
      const auto r = discounted_distance(s(0, 1), y, spec, 200);
      CHECK(r.c >= 0);
      CHECK(r.c <= r.d);
      CHECK(r.d == farey_distance(s(0, 1), y));
    }
  }
}

TEST_CASE("discounted distance is translation invariant") {
  std::mt19937_64 rng(79);
  const std::vector<IntMatrix> gens{kT, kU, kT.inverse(), kU.inverse()};
  const auto spec = axis_spec(3);
  const auto comm = axis_spec(3, std::nullopt, TranslateGroup::Commutator);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_walk(rng, 3).back();
    const auto y = random_walk(rng, 7).back();
    const IntMatrix g = random_word(rng, gens, 6);
    CHECK(discounted_distance(act(g, x), act(g, y), spec, 200).c == discounted_distance(x, y, spec, 200).c);
    // The commutator subgroup is normal but the counting rule is only
    // equivariant under its own elements.
    const IntMatrix k = g * kM * g.inverse() * kM.inverse();
    REQUIRE(abelian_character(k) == 0);
    CHECK(discounted_distance(act(k, x), act(k, y), comm, 200).c == discounted_distance(x, y, comm, 200).c);
  }
}

TEST_CASE("pruned search agrees with unpruned enumeration") {
  std::mt19937_64 rng(83);
  int checked = 0;
  for (auto [edges, W] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}}) {
    const auto spec = axis_spec(edges, W);
    for (int trial = 0; trial < 12; ++trial) {
      const auto x = random_walk(rng, 2).back();
      const auto y = random_walk(rng, 4).back();
      const int d = farey_distance(x, y);
      if (d > 3) continue;
      const auto r = discounted_distance(x, y, spec, 100);
      REQUIRE_FALSE(r.cap_exceeded);
      // Walks two edges past the bound cannot do better.
      CHECK(brute_min_cost(x, y, spec, std::min(r.bound + 2, 8)) == r.min_cost);
      ++checked;
    }
  }
  CHECK(checked >= 15);
}

TEST_CASE("wider search regions do not change the value") {
  std::mt19937_64 rng(89);
  auto wide = axis_spec(3);
  wide.halo = 4;
  const auto narrow = axis_spec(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto y = random_walk(rng, 3 + static_cast<int>(uniform_below(rng, 6))).back();
    CHECK(discounted_distance(s(0, 1), y, narrow, 200).c == discounted_distance(s(0, 1), y, wide, 200).c);
  }
}

TEST_CASE("h_w basics") {
  const auto spec = axis_spec(4);
  CHECK(h_w(IntMatrix::identity(), spec, 200).h == 0);
  // Stabilizer of 0/1 = x0.
  CHECK(h_w(kU.power(7), spec, 200).h == 0);
  const auto v = h_w(kM.power(3), spec, 200);
  CHECK(v.h == v.forward.c - v.backward.c);
  CHECK(v.forward.d == v.backward.d);
}

TEST_CASE("stabilizer bound for parabolics") {
  const auto spec = axis_spec(4);
  std::vector<IntMatrix> parabolics;
  for (int n = -12; n <= 12; ++n) parabolics.push_back(kT.power(n));
  const auto rep = stabilizer_probe(spec, s(1, 0), parabolics, 200);
  CHECK(rep.bound == 2);
  CHECK(rep.samples == 25);
  CHECK(rep.max_abs_h <= 2);
  CHECK(stabilizer_probe(spec, s(1, 0), {IntMatrix::identity()}, 200).max_abs_h == 0);
  CHECK_THROWS_AS(stabilizer_probe(spec, s(1, 0), {kU}, 200), InvalidInput);
}

TEST_CASE("defect scan") {
  const auto spec = axis_spec(4);
  const auto a = defect_scan(spec, 150, 8, 200, 5);
  const auto b = defect_scan(spec, 150, 8, 200, 5);
  CHECK(a.max_defect == b.max_defect);
  CHECK(a.histogram == b.histogram);
  CHECK(a.samples == 150);
  CHECK(a.cap_exceeded == 0);
  // Identity pairs and inverse pairs contribute as stated.
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix g = random_word(rng, {kT, kU}, 8);
    const auto hg = h_w(g, spec, 200).h;
    CHECK(h_w(g * IntMatrix::identity(), spec, 200).h - hg == 0);
    CHECK(std::abs(hg + h_w(g.inverse(), spec, 200).h) <= 2 * a.max_defect + 2);
  }
}

TEST_CASE("curve engine on the five-punctured sphere") {
  const ComplexUniverse u(make_standard({0, 5, true}), 3);
  std::mt19937_64 rng(101);
  // A geodesic of length 2 as w.
  int a = 0, b = -1;
  {
    const auto d = u.distances_from(a);
    for (int v = 0; v < u.size() && b < 0; ++v)
      if (d[v] == 2) b = v;
  }
  REQUIRE(b >= 0);
  const auto w = u.geodesic(a, b);
  std::vector<NormalCurve> gens;
  for (int k = 0; k < 4; ++k) gens.push_back(u.vertex(static_cast<int>(uniform_below(rng, u.size()))));
  const CurveQmEngine engine(u, w, std::nullopt, a, gens, 1);
  CHECK(engine.approximate());
  CHECK(engine.W() == 1);
  CHECK(engine.translate_count() >= 1);
  CHECK(engine.count_copies(w).count == 1);
  CHECK(engine.count_copies({w[0], w[1]}).count == 0);
  CHECK(engine.discounted_distance(a, b, 50).c == 1);
  CHECK(engine.h(MappingClassWord{}, 50).h == 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int x = static_cast<int>(uniform_below(rng, u.size()));
    const int y = static_cast<int>(uniform_below(rng, u.size()));
    const auto r = engine.discounted_distance(x, y, 50);
    CHECK(r.c >= 0);
    CHECK(r.c <= r.d);
  }
  // Twists about alpha fix alpha; evaluate those that keep x0 in the universe.
  const int alpha = w[1];
  int evaluated = 0;
  for (int k = -3; k <= 3; ++k) {
    const MappingClassWord g{{{u.vertex(alpha), k}}};
    try {
      const auto v = engine.h(g, 50);
      CHECK(std::abs(v.h) <= 2 * u.distances_from(a)[alpha]);
      ++evaluated;
    } catch (const InvalidInput&) {
    }
  }
  CHECK(evaluated >= 1);
  CHECK_THROWS_AS(CurveQmEngine(u, {a, b}, std::nullopt, a, gens, 1), InvalidInput);
  CHECK_THROWS_AS(CurveQmEngine(u, w, 2, a, gens, 1), InvalidInput);
}
