#include <fstream>

#include "doctest.h"
#include "curvelab/surface.hpp"
#include "json.hpp"

using namespace curvelab;

TEST_CASE("classify examples") {
  CHECK(classify({0, 3, true}) == ComplexClass::EmptyComplex);
  CHECK(classify({1, 1, true}) == ComplexClass::FareyModel);
  CHECK(classify({0, 5, true}) == ComplexClass::Supported);
  CHECK(classify({0, 4, true}) == ComplexClass::DiscreteComplex);
  CHECK(classify({1, 2, false}) == ComplexClass::NonOrientableSporadic);
  CHECK(classify({2, 1, false}) == ComplexClass::NonOrientableSporadic);
  CHECK(classify({2, 2, false}) == ComplexClass::NonOrientableUnsupported);
}

TEST_CASE("classify matches the golden table") {
  std::ifstream in(std::string(CURVELAB_GOLDEN_DIR) + "/classify.json");
  REQUIRE(in.good());
  const auto rows = nlohmann::json::parse(in);
  CHECK(rows.size() == 132);
  for (const auto& r : rows) {
    const SurfaceSig sig{r["genus"].get<int>(), r["punctures"].get<int>(), r["orientable"].get<bool>()};
    CHECK(std::string(to_string(classify(sig))) == r["class"].get<std::string>());
  }
}

TEST_CASE("euler characteristic") {
  CHECK(SurfaceSig{2, 1, true}.euler_characteristic() == -3);
  CHECK(SurfaceSig{3, 1, false}.euler_characteristic() == -2);
}

TEST_CASE("standard triangulation counts") {
  auto t11 = standard_triangulation({1, 1, true});
  CHECK(t11.triangle_count() == 2);
  CHECK(t11.edge_count() == 3);
  auto t05 = standard_triangulation({0, 5, true});
  CHECK(t05.triangle_count() == 6);
  CHECK(t05.edge_count() == 9);
  CHECK_THROWS_AS(standard_triangulation({0, 2, true}), InvalidInput);
  CHECK(standard_triangulation({0, 4, true}).triangle_count() == 4);
  CHECK_THROWS_AS(standard_triangulation({0, 3, true}), InvalidInput);
  CHECK_THROWS_AS(standard_triangulation({2, 0, true}), InvalidInput);
  CHECK_THROWS_AS(standard_triangulation({1, 1, false}), InvalidInput);
}

TEST_CASE("standard triangulations validate for all supported small signatures") {
  for (int g = 0; g <= 3; ++g) {
    for (int n = 1; n <= 7; ++n) {
      const SurfaceSig sig{g, n, true};
      const auto cls = classify(sig);
      if (cls != ComplexClass::Supported && cls != ComplexClass::FareyModel) continue;
      const auto t = standard_triangulation(sig);
      CHECK(t.signature() == sig);
      CHECK(t.triangle_count() == 4 * g - 4 + 2 * n);
      CHECK(t.edge_count() == 6 * g - 6 + 3 * n);
      CHECK(t.puncture_count() == n);
      CHECK(t == standard_triangulation(sig));
      // Round trip through the gluing table.
      const auto again = Triangulation::from_gluing(t.triangle_count(), t.gluing_table());
      CHECK(again == t);
    }
  }
}

TEST_CASE("gluing validation rejects malformed tables") {
  CHECK_THROWS_AS(Triangulation::from_gluing(2, {{0, 0, 1, 1}, {0, 1, 1, 2}}), InvalidInput);
  CHECK_THROWS_AS(Triangulation::from_gluing(2, {{0, 0, 1, 1}, {0, 1, 1, 2}, {0, 2, 1, 1}}),
                  InvalidInput);
  CHECK_THROWS_AS(Triangulation::from_gluing(2, {{0, 0, 0, 1}, {0, 2, 1, 0}, {1, 1, 1, 2}}),
                  InvalidInput);
  CHECK_THROWS_AS(Triangulation::from_gluing(2, {{0, 0, 1, 1}, {0, 1, 1, 2}, {0, 2, 7, 0}}),
                  InvalidInput);
  const auto t = Triangulation::from_gluing(2, {{0, 0, 1, 1}, {0, 1, 1, 2}, {0, 2, 1, 0}});
  CHECK(t.signature() == SurfaceSig{1, 1, true});
}

TEST_CASE("once-punctured torus corners all meet the single puncture") {
  const auto t = standard_triangulation({1, 1, true});
  for (int tri = 0; tri < 2; ++tri)
    for (int k = 0; k < 3; ++k) CHECK(t.puncture_of_corner(tri, k) == 0);
}
