#include <random>

#include "doctest.h"
#include "curvelab/coarse.hpp"

using namespace curvelab;

namespace {

struct Fixture {
  ComplexUniverse u{make_standard({0, 5, true}), 4};
  CoarseSpace space{u};
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

// First few filling pairs among universe vertices, scanning in index order.
std::vector<std::pair<int, int>> filling_pairs(const ComplexUniverse& u, std::size_t want) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < u.size() && out.size() < want; ++i)
    for (int j = i + 1; j < u.size() && out.size() < want; j += 3)
      if (intersection_number(u.vertex(i), u.vertex(j)) > 0 && is_filling(u.vertex(i), u.vertex(j)))
        out.emplace_back(i, j);
  return out;
}

FillingPair pair_of(const ComplexUniverse& u, std::pair<int, int> ij) {
  return FillingPair::make(MultiCurve(u.vertex(ij.first)), MultiCurve(u.vertex(ij.second)));
}

}  // namespace

TEST_CASE("ratio arithmetic") {
  CHECK(Ratio::make(6, 4) == Ratio{3, 2});
  CHECK(Ratio::parse("8/3") == Ratio{8, 3});
  CHECK(Ratio::parse("2") == Ratio{2, 1});
  CHECK(Ratio{1, 3} < Ratio{1, 2});
  CHECK(Ratio::make(2, 4).str() == "1/2");
  CHECK_THROWS_AS(Ratio::make(1, 0), InvalidInput);
  CHECK_THROWS_AS(Ratio::parse("1/x"), InvalidInput);
}

TEST_CASE("filling pairs are validated") {
  auto& f = fixture();
  const auto& u = f.u;
  // A curve and a disjoint neighbour do not fill.
  const int v = 0, w = u.neighbors(0).front();
  CHECK_THROWS_AS(FillingPair::make(MultiCurve(u.vertex(v)), MultiCurve(u.vertex(w))), NonFillingPair);
  const auto pairs = filling_pairs(u, 1);
  REQUIRE(!pairs.empty());
  const auto fp = pair_of(u, pairs[0]);
  CHECK(fp.I == intersection_number(u.vertex(pairs[0].first), u.vertex(pairs[0].second)));
}

TEST_CASE("length: components, scaling and the universe cache") {
  auto& f = fixture();
  const auto pairs = filling_pairs(f.u, 10);
  for (auto ij : pairs) {
    const auto fp = pair_of(f.u, ij);
    const WeightedPair wp{fp, 1, 1};
    // A component of a has length I(b, a).
    CHECK(length(fp.a, wp) == fp.I);
    for (int v = 0; v < f.u.size(); v += 5) {
      const MultiCurve c(f.u.vertex(v));
      const std::int64_t direct = intersection_number(fp.a, c) + intersection_number(fp.b, c);
      CHECK(length(c, wp) == direct);
      CHECK(f.space.length(v, wp) == direct);
      for (std::int64_t N : {2, 3}) CHECK(length(c, WeightedPair{fp, N, N}) == N * direct);
    }
  }
}

TEST_CASE("modulus lower bounds") {
  auto& f = fixture();
  const auto fp = pair_of(f.u, filling_pairs(f.u, 1)[0]);
  const WeightedPair wp{fp, 1, 1};
  const NormalCurve& c = f.u.vertex(3);
  CHECK(modulus_lower(MultiCurve(c), wp, {c}) == Ratio{0, 1});
  std::vector<NormalCurve> cands;
  Ratio prev{0, 1};
  for (int v = 0; v < f.u.size(); v += 4) {
    if (length(MultiCurve(f.u.vertex(v)), wp) == 0) continue;
    cands.push_back(f.u.vertex(v));
    const Ratio m = modulus_lower(MultiCurve(c), wp, cands);
    CHECK(prev <= m);
    // I(c, d) <= l(d) m(c) for every candidate d.
    for (const auto& d : cands) {
      const std::int64_t l = length(MultiCurve(d), wp);
      CHECK(Ratio::make(intersection_number(c, d), 1) <= Ratio::make(l * m.num, m.den));
    }
    prev = m;
  }
  CHECK_THROWS_AS(modulus_lower(MultiCurve(c), wp, {}), InvalidInput);
}

TEST_CASE("Mid' membership matches a brute-force scan") {
  auto& f = fixture();
  const Ratio R2{3, 1};
  const auto curves = enumerate_curves(f.u.triangulation(), f.u.cap());
  for (auto ij : filling_pairs(f.u, 6)) {
    const auto fp = pair_of(f.u, ij);
    for (auto [q, p] : {std::pair{1, 1}, std::pair{1, 3}, std::pair{2, 1}}) {
      const CoarseSet s = f.space.mid_prime_or_empty(WeightedPair{fp, q, p}, R2);
      std::vector<int> expect;
      for (std::size_t v = 0; v < curves.size(); ++v) {
        const double l = q * intersection_number(fp.a, MultiCurve(curves[v])) +
                         p * intersection_number(fp.b, MultiCurve(curves[v]));
        if (l * l <= 3.0 * q * p * fp.I + 1e-9) expect.push_back(static_cast<int>(v));
      }
      CHECK(s.members == expect);
    }
  }
}

TEST_CASE("Mid'(Na, Nb) = Mid'(a, b)") {
  auto& f = fixture();
  const Ratio R2{2, 1};
  for (auto ij : filling_pairs(f.u, 8)) {
    const auto fp = pair_of(f.u, ij);
    const CoarseSet base = f.space.mid_prime_or_empty(WeightedPair{fp, 1, 1}, R2);
    for (std::int64_t N = 2; N <= 5; ++N) {
      const auto scaled = FillingPair::make(fp.a.scaled(N), fp.b.scaled(N));
      CHECK(scaled.I == N * N * fp.I);
      CHECK(f.space.mid_prime_or_empty(WeightedPair{scaled, 1, 1}, R2) == base);
    }
  }
}

TEST_CASE("empty midpoint sets raise with a diagnostic") {
  auto& f = fixture();
  const auto fp = pair_of(f.u, filling_pairs(f.u, 1)[0]);
  try {
    (void)f.space.mid_prime(WeightedPair{fp, 1, 1}, Ratio{1, 1000});
    FAIL("expected EmptyAtThisR");
  } catch (const EmptyAtThisR& e) {
    CHECK(Ratio{1, 1000} < e.best);
  }
}

TEST_CASE("coarse geodesic order and endpoints") {
  auto& f = fixture();
  const Ratio R2{4, 1};
  const auto fp = pair_of(f.u, filling_pairs(f.u, 3)[2]);
  const std::vector<Ratio> slopes{{1, 1}, {1, 4}, {3, 1}, {1, 2}};
  const auto geo = f.space.coarse_geodesic(fp, R2, slopes);
  REQUIRE(geo.size() == 4);
  for (std::size_t k = 1; k < geo.size(); ++k) CHECK(geo[k - 1].first < geo[k].first);
  CHECK(geo[2].second == f.space.mid_prime(WeightedPair{fp, 1, 1}, R2));
  // Lambda_ba is Lambda_ab with the order reversed.
  std::vector<Ratio> inv;
  for (const auto& s : slopes) inv.push_back(Ratio::make(s.den, s.num));
  const auto back = f.space.coarse_geodesic(fp.swapped(), R2, inv);
  REQUIRE(back.size() == geo.size());
  for (std::size_t k = 0; k < geo.size(); ++k) CHECK(back[geo.size() - 1 - k].second == geo[k].second);
  // For small slopes the components of a appear.
  const auto near_a = f.space.mid_prime_or_empty(WeightedPair{fp, 64, 1}, R2);
  CHECK(std::binary_search(near_a.members.begin(), near_a.members.end(), *f.u.index_of(fp.a.parts()[0].first)));
}

TEST_CASE("center is symmetric and checks filling") {
  auto& f = fixture();
  const Ratio R2{3, 1};
  std::mt19937_64 rng(61);
  int done = 0;
  for (int trial = 0; trial < 4000 && done < 10; ++trial) {
    const int a = static_cast<int>(uniform_below(rng, f.u.size()));
    const int b = static_cast<int>(uniform_below(rng, f.u.size()));
    const int c = static_cast<int>(uniform_below(rng, f.u.size()));
    const MultiCurve A(f.u.vertex(a)), B(f.u.vertex(b)), C(f.u.vertex(c));
    CoarseSet abc;
    try {
      abc = f.space.center(A, B, C, R2);
    } catch (const NonFillingPair&) {
      continue;
    }
    ++done;
    CHECK(f.space.center(C, A, B, R2) == abc);
    CHECK(f.space.center(B, A, C, R2) == abc);
  }
  CHECK(done == 10);
  CHECK_THROWS_AS(f.space.center(MultiCurve(f.u.vertex(0)), MultiCurve(f.u.vertex(0)), MultiCurve(f.u.vertex(1)), R2),
                  NonFillingPair);
}

TEST_CASE("side of center") {
  CHECK(side_of_center(3, 2, 4, 6) == Side::Balanced);
  CHECK(side_of_center(5, 2, 4, 4) == Side::XSide);
  CHECK(side_of_center(1, 2, 4, 4) == Side::YSide);
  CHECK(to_string(Side::XSide) == "x-side");
}

TEST_CASE("transfer condition reduces to I(a,c) >= I(b,c)") {
  for (std::int64_t I = 1; I <= 12; ++I)
    for (std::int64_t iac = 1; iac <= 12; ++iac)
      for (std::int64_t ibc = 1; ibc <= 12; ++ibc)
        for (std::int64_t k = 0; k <= 6; ++k) CHECK(transfer_condition_reduces(I, iac, ibc, Ratio::make(k, 6)));
}

TEST_CASE("calibration is reproducible and monotone in the cap") {
  auto& f = fixture();
  const auto r1 = calibrate_R(f.space, 30, 5), r2 = calibrate_R(f.space, 30, 5);
  CHECK(r1.R2 == r2.R2);
  CHECK(r1.per_pair == r2.per_pair);
  CHECK(r1.per_pair.size() == 30);
  // Each per-pair minimum can only drop when the universe grows.
  const ComplexUniverse big(f.u.triangulation(), f.u.cap() + 1);
  const CoarseSpace bigger(big);
  for (auto ij : filling_pairs(f.u, 5)) {
    const auto fp = pair_of(f.u, ij);
    auto best = [&](const CoarseSpace& s) {
      std::optional<Ratio> m;
      for (int v = 0; v < s.universe().size(); ++v) {
        const std::int64_t l = s.length(v, WeightedPair{fp, 1, 1});
        const Ratio r = Ratio::make(l * l, fp.I);
        if (!m || r < *m) m = r;
      }
      return *m;
    };
    CHECK(best(bigger) <= best(f.space));
  }
}

TEST_CASE("axiom and lemma harnesses report finite constants") {
  auto& f = fixture();
  const Ratio R2 = calibrate_R(f.space, 30, 9).R2;
  const auto ax = check_bowditch_axioms(f.space, R2, 20, 9);
  REQUIRE(ax.axioms.size() == 3);
  for (const auto& a : ax.axioms) CHECK(a.samples == 20);
  CHECK(ax.symbolic_ok);
  CHECK(ax.symbolic_checks > 0);
  const auto again = check_bowditch_axioms(f.space, R2, 20, 9);
  for (std::size_t k = 0; k < 3; ++k) CHECK(again.axioms[k].histogram == ax.axioms[k].histogram);
  const auto lemmas = check_lemmas(f.space, R2, 10, 9);
  REQUIRE(lemmas.size() == 4);
  for (const auto& l : lemmas) CHECK(l.samples == 10);
}

TEST_CASE("diameter and Hausdorff distance") {
  auto& f = fixture();
  const CoarseSet one{{0}, f.u.cap(), false};
  CHECK(f.space.diameter(one) == 0);
  CHECK(f.space.hausdorff(one, one) == 0);
  const int w = f.u.neighbors(0).front();
  const CoarseSet two{{std::min(0, w), std::max(0, w)}, f.u.cap(), false};
  CHECK(f.space.diameter(two) == 1);
  CHECK(f.space.hausdorff(one, two) == 1);
  CHECK_FALSE(f.space.hausdorff(one, CoarseSet{}));
}
