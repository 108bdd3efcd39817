#include <random>

#include "doctest.h"
#include "curvelab/farey.hpp"
#include "oracles.hpp"

using namespace curvelab;

namespace {

FareySlope S(const char* s) { return FareySlope::parse(s); }

IntMatrix random_matrix(std::mt19937_64& rng, int letters) {
  const IntMatrix T{1, 1, 0, 1}, U{1, 0, 1, 1};
  IntMatrix m;
  for (int k = 0; k < letters; ++k) {
    switch (rng() % 4) {
      case 0: m = m * T; break;
      case 1: m = m * U; break;
      case 2: m = m * T.inverse(); break;
      default: m = m * U.inverse(); break;
    }
  }
  return m;
}

FareySlope random_slope(std::mt19937_64& rng, int bound) {
  while (true) {
    const std::int64_t p = static_cast<std::int64_t>(rng() % (2 * bound + 1)) - bound;
    const std::int64_t q = static_cast<std::int64_t>(rng() % (bound + 1));
    if (std::gcd(p, q) == 1) return FareySlope::make(p, q);
  }
}

}  // namespace

TEST_CASE("slope parsing and canonical form") {
  CHECK(S("2/-4") == FareySlope{-1, 2});
  CHECK(S("-1/0") == FareySlope{1, 0});
  CHECK(S("3") == FareySlope{3, 1});
  CHECK(S("5/13").str() == "5/13");
  CHECK_THROWS(S("0/0"));
  CHECK_THROWS(S("x/2"));
}

TEST_CASE("adjacency examples") {
  CHECK(adjacent(S("0/1"), S("1/0")));
  CHECK(adjacent(S("1/2"), S("1/3")));
  CHECK_FALSE(adjacent(S("0/1"), S("2/5")));
}

TEST_CASE("distance examples") {
  CHECK(farey_distance(S("3/7"), S("3/7")) == 0);
  CHECK(farey_distance(S("0/1"), S("2/5")) == 2);
  CHECK(farey_distance(S("0/1"), S("5/13")) == 3);
}

TEST_CASE("distance agrees with breadth-first search on a ball") {
  const oracle::FareyBall ball(15);
  const auto& vs = ball.vertices();
  for (std::size_t i = 0; i < vs.size(); i += 7) {
    const auto d = ball.distances_from(static_cast<int>(i));
    const auto u = FareySlope::make(vs[i].first, vs[i].second);
    for (std::size_t j = 0; j < vs.size(); ++j)
      REQUIRE(farey_distance(u, FareySlope::make(vs[j].first, vs[j].second)) == d[j]);
  }
}

TEST_CASE("geodesics are paths of the right length") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto u = random_slope(rng, 40), v = random_slope(rng, 40);
    const auto g = farey_geodesic(u, v);
    REQUIRE(!g.empty());
    CHECK(g.front() == u);
    CHECK(g.back() == v);
    CHECK(static_cast<int>(g.size()) - 1 == farey_distance(u, v));
    for (std::size_t k = 1; k < g.size(); ++k) CHECK(adjacent(g[k - 1], g[k]));
  }
}

TEST_CASE("action examples and invariance") {
  CHECK(act(IntMatrix::identity(), S("4/9")) == S("4/9"));
  CHECK(act(IntMatrix{1, 1, 0, 1}, S("0/1")) == S("1/1"));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = random_matrix(rng, 6);
    const auto u = random_slope(rng, 30);
    const auto v = random_slope(rng, 30);
    const auto n = random_matrix(rng, 4);
    CHECK(act(m * n, u) == act(m, act(n, u)));
    CHECK(farey_distance(act(m, u), act(m, v)) == farey_distance(u, v));
    // An edge at u: the image of 1/0 -- k/1 under a map taking 1/0 to u.
    const auto e = act(to_infinity(u).inverse(), FareySlope::make(static_cast<std::int64_t>(rng() % 9) - 4, 1));
    REQUIRE(adjacent(u, e));
    CHECK(adjacent(act(m, u), act(m, e)));
  }
}

TEST_CASE("metric axioms on sampled triples") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_slope(rng, 50), b = random_slope(rng, 50), c = random_slope(rng, 50);
    CHECK(farey_distance(a, b) == farey_distance(b, a));
    CHECK(farey_distance(a, c) <= farey_distance(a, b) + farey_distance(b, c));
  }
}

TEST_CASE("translate matching") {
  const std::vector<FareySlope> w{S("1/0"), S("0/1"), S("1/1"), S("2/1")};
  CHECK(translate_match(w, w) == IntMatrix::identity());
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_matrix(rng, 8);
    std::vector<FareySlope> s;
    for (const auto& x : w) s.push_back(act(m, x));
    const auto g = translate_match(w, s);
    REQUIRE(g);
    CHECK(*g == m);
  }
  // Different shape: 1/0, 0/1, 1/1 turns the other way from 1/0, 0/1, -1/1.
  const std::vector<FareySlope> other{S("1/0"), S("0/1"), S("-1/1"), S("-1/2")};
  CHECK_FALSE(translate_match(w, other));
  // A reflection matches it when allowed.
  const std::vector<FareySlope> w3{S("1/0"), S("0/1"), S("1/1")};
  const std::vector<FareySlope> r3{S("1/0"), S("0/1"), S("-1/1")};
  CHECK_FALSE(translate_match(w3, r3));
  const auto refl = translate_match(w3, r3, true);
  REQUIRE(refl);
  CHECK(refl->det() == -1);
}

TEST_CASE("abelian character is a homomorphism onto Z/6") {
  CHECK(abelian_character(IntMatrix{1, 1, 0, 1}) == 1);
  CHECK(abelian_character(IntMatrix{0, -1, 1, 0}) == 3);
  CHECK(abelian_character(IntMatrix{1, 0, 1, 1}) == 5);
  CHECK(abelian_character(IntMatrix{2, 1, 1, 1}) == 0);
  CHECK(abelian_character(IntMatrix{-1, 0, 0, -1}) == 0);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_matrix(rng, 7), h = random_matrix(rng, 7);
    CHECK(abelian_character(g * h) == (abelian_character(g) + abelian_character(h)) % 6);
  }
}

TEST_CASE("ladder triangles are Farey triangles") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_slope(rng, 30), v = random_slope(rng, 30);
    for (const auto& t : ladder_triangles(u, v)) {
      CHECK(adjacent(t[0], t[1]));
      CHECK(adjacent(t[1], t[2]));
      CHECK(adjacent(t[0], t[2]));
    }
  }
}
