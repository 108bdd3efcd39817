#include <random>

#include "doctest.h"
#include "curvelab/complex.hpp"
#include "curvelab/crossings.hpp"
#include "oracles.hpp"

using namespace curvelab;

namespace {

const ComplexUniverse& universe(int genus, int punctures, int cap) {
  static std::map<std::tuple<int, int, int>, std::unique_ptr<ComplexUniverse>> cache;
  auto& slot = cache[{genus, punctures, cap}];
  if (!slot) slot = std::make_unique<ComplexUniverse>(make_standard({genus, punctures, true}), cap);
  return *slot;
}

}  // namespace

TEST_CASE("small distance examples on the torus") {
  const auto tri = make_standard({1, 1, true});
  const auto c = [&](int p, int q) { return torus_slope_curve(tri, p, q); };
  CHECK(small_distance(c(0, 1), c(0, 1)) == SmallDistance::Zero);
  CHECK(small_distance(c(0, 1), c(1, 0)) == SmallDistance::One);
  CHECK(small_distance(c(0, 1), c(2, 5)) == SmallDistance::Two);
  CHECK(small_distance(c(0, 1), c(5, 13)) == SmallDistance::AtLeastThree);
  CHECK(to_string(SmallDistance::AtLeastThree) == ">=3");
}

TEST_CASE("small distance agrees with breadth-first search") {
  for (auto [g, n, cap] : {std::tuple{0, 5, 3}, std::tuple{1, 2, 2}}) {
    const auto& u = universe(g, n, cap);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 150; ++trial) {
      const int i = static_cast<int>(uniform_below(rng, u.size()));
      const int j = static_cast<int>(uniform_below(rng, u.size()));
      const auto sd = small_distance(u.vertex(i), u.vertex(j));
      const auto d = bfs_distance(u.vertex(i), u.vertex(j), u);
      // The universe is an induced subgraph, so it can only overestimate.
      if (sd == SmallDistance::Zero) CHECK(d == 0);
      if (sd == SmallDistance::One) CHECK(d == 1);
      if (d && *d <= 2) CHECK(static_cast<int>(sd) == *d);
      if (sd == SmallDistance::AtLeastThree && d) CHECK(*d >= 3);
    }
  }
}

TEST_CASE("universe distances are a metric") {
  const auto& u = universe(0, 5, 3);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int x = static_cast<int>(uniform_below(rng, u.size()));
    const int y = static_cast<int>(uniform_below(rng, u.size()));
    const auto dx = u.distances_from(x), dy = u.distances_from(y);
    CHECK(dx[y] == dy[x]);
    for (int z = 0; z < u.size(); ++z)
      if (dx[y] >= 0 && dy[z] >= 0) CHECK(dx[z] <= dx[y] + dy[z]);
  }
}

TEST_CASE("torus universe matches the Farey graph") {
  const auto& u = universe(1, 1, 6);
  for (int i = 0; i < u.size(); ++i)
    for (int j : u.neighbors(i)) {
      auto [p, q] = torus_slope_of(u.vertex(i));
      auto [r, s] = torus_slope_of(u.vertex(j));
      CHECK(oracle::torus_intersection({p, q}, {r, s}) == 1);
    }
}

TEST_CASE("four-punctured sphere uses the modified adjacency") {
  const auto& u = universe(0, 4, 3);
  REQUIRE(u.size() > 3);
  int edges = 0;
  for (int i = 0; i < u.size(); ++i)
    for (int j : u.neighbors(i)) {
      CHECK(intersection_number(u.vertex(i), u.vertex(j)) == 2);
      ++edges;
    }
  CHECK(edges > 0);
  const int j = u.neighbors(0).front();
  CHECK(small_distance(u.vertex(0), u.vertex(j)) == SmallDistance::One);
}

TEST_CASE("bfs rejects curves outside the universe") {
  const auto& u = universe(0, 5, 1);
  const auto tri = u.triangulation();
  const auto big = enumerate_curves(tri, 3).back();
  CHECK_THROWS_AS(bfs_distance(big, big, u), InvalidInput);
}

TEST_CASE("geodesics are shortest and canonical per pair") {
  const auto& u = universe(1, 2, 2);
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int x = static_cast<int>(uniform_below(rng, u.size()));
    const int y = static_cast<int>(uniform_below(rng, u.size()));
    const auto g = u.geodesic(x, y);
    const auto d = u.distances_from(x)[y];
    if (d < 0) {
      CHECK(g.empty());
      continue;
    }
    REQUIRE(static_cast<int>(g.size()) == d + 1);
    CHECK(g.front() == x);
    CHECK(g.back() == y);
    auto back = u.geodesic(y, x);
    std::reverse(back.begin(), back.end());
    CHECK(back == g);
  }
}

TEST_CASE("neighbourhood boundary of curves meeting once") {
  const auto tri = make_standard({1, 2, true});
  const auto curves = enumerate_curves(tri, 2);
  int seen = 0;
  for (std::size_t i = 0; i < curves.size() && seen < 30; ++i)
    for (std::size_t j = i + 1; j < curves.size() && seen < 30; ++j) {
      if (intersection_number(curves[i], curves[j]) != 1) continue;
      ++seen;
      const auto e = neighbourhood_boundary(curves[i], curves[j]);
      CHECK(intersection_number(e, curves[i]) == 0);
      CHECK(intersection_number(e, curves[j]) == 0);
      CHECK_FALSE(e == curves[i]);
      CHECK_FALSE(e == curves[j]);
      const EdgePath p = surgery_path(curves[i], curves[j], SurgeryStrategy::Basic);
      CHECK(p.length() == 2);
      CHECK(is_valid_path(p));
    }
  CHECK(seen > 0);
}

TEST_CASE("surgery paths: validity, bound and decreasing trace") {
  for (auto [g, n, cap] : {std::tuple{0, 5, 4}, std::tuple{1, 2, 3}, std::tuple{2, 1, 2}, std::tuple{0, 6, 2}}) {
    const auto tri = make_standard({g, n, true});
    const auto curves = enumerate_curves(tri, cap);
    std::mt19937_64 rng(53 + g * 7 + n);
    for (int trial = 0; trial < 60; ++trial) {
      const auto& a = curves[uniform_below(rng, curves.size())];
      const auto& b = curves[uniform_below(rng, curves.size())];
      const std::int64_t I = intersection_number(a, b);
      for (auto strategy : {SurgeryStrategy::Basic, SurgeryStrategy::Log}) {
        std::vector<std::int64_t> trace;
        const EdgePath p = surgery_path(a, b, strategy, &trace);
        REQUIRE(is_valid_path(p));
        CHECK(p.vertices.front() == a);
        CHECK(p.vertices.back() == b);
        if (I >= 1) CHECK(p.length() <= 2 * I);
        for (std::size_t k = 0; k < trace.size(); ++k) {
          CHECK(trace[k] < (k == 0 ? I : trace[k - 1]));
        }
        if (strategy == SurgeryStrategy::Log && I >= 2)
          CHECK(trace.size() <= static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(I)))) + 2);
      }
    }
  }
}

TEST_CASE("surgery paths are rejected on sporadic surfaces") {
  const auto tri = make_standard({1, 1, true});
  const auto a = torus_slope_curve(tri, 0, 1), b = torus_slope_curve(tri, 2, 5);
  CHECK_THROWS_AS(surgery_path(a, b, SurgeryStrategy::Basic), InvalidInput);
}

TEST_CASE("slimness of degenerate triangles is zero") {
  const auto& u = universe(0, 5, 3);
  for (int x : {0, 5, 17}) {
    CHECK(triangle_slimness(u, {x}, {x}, {x}) == 0);
    const int y = u.neighbors(x).front();
    const auto g = u.geodesic(x, y);
    CHECK(triangle_slimness(u, g, u.geodesic(y, y), u.geodesic(y, x)) == 0);
  }
}

TEST_CASE("delta probe is reproducible") {
  const auto& u = universe(0, 5, 3);
  const auto r1 = probe_delta(u, 40, 7), r2 = probe_delta(u, 40, 7);
  CHECK(r1.max_slimness == r2.max_slimness);
  CHECK(r1.histogram == r2.histogram);
  int total = r1.skipped;
  for (auto [s, c] : r1.histogram) total += c;
  CHECK(total == 40);
}
