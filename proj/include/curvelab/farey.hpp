#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curvelab {

// Reduced fraction p/q with q > 0, or 1/0.
struct FareySlope {
  std::int64_t p = 1;
  std::int64_t q = 0;

  static FareySlope make(std::int64_t p, std::int64_t q);  // reduces and normalizes sign
  static FareySlope parse(const std::string& text);        // "p/q"
  std::string str() const;

  bool operator==(const FareySlope&) const = default;
  auto operator<=>(const FareySlope&) const = default;
};

// Integer matrix of determinant ±1 taken up to sign. Acts on slopes by
// (p, q) -> (a p + b q, c p + d q).
struct IntMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static IntMatrix identity() { return {}; }
  static IntMatrix from_rows(const std::array<std::array<std::int64_t, 2>, 2>& rows);
  std::int64_t det() const { return a * d - b * c; }
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix inverse() const;
  // Representative with the first nonzero entry positive.
  IntMatrix canonical() const;
  IntMatrix power(int n) const;
  std::string str() const;  // [[a,b],[c,d]]

  // Equality up to sign.
  bool operator==(const IntMatrix& o) const;
};

bool adjacent(const FareySlope& u, const FareySlope& v);
FareySlope act(const IntMatrix& m, const FareySlope& v);

// Graph distance via the continued fraction ladder between u and v.
int farey_distance(const FareySlope& u, const FareySlope& v);
// A geodesic from u to v (inclusive) through ladder vertices.
std::vector<FareySlope> farey_geodesic(const FareySlope& u, const FareySlope& v);

// Some element g with g(u) = 1/0, with determinant 1.
IntMatrix to_infinity(const FareySlope& u);

// The triangles of the ladder from u to v: every Farey triangle crossed by
// the straight line between them, as vertex triples.
std::vector<std::array<FareySlope, 3>> ladder_triangles(const FareySlope& u, const FareySlope& v);

// Third vertices of the two Farey triangles on the edge {u, v}.
std::array<FareySlope, 2> edge_apexes(const FareySlope& u, const FareySlope& v);

// The unique g (up to sign) with g·w = sigma vertexwise, if any. Reflections
// (determinant -1) are considered only when allowed.
std::optional<IntMatrix> translate_match(const std::vector<FareySlope>& w,
                                         const std::vector<FareySlope>& sigma,
                                         bool allow_reflections = false);

// Abelianization character PSL(2,Z) -> Z/6 sending [[1,1],[0,1]] to 1 and
// [[0,-1],[1,0]] to 3. Its kernel is the commutator subgroup.
int abelian_character(const IntMatrix& g);

}  // namespace curvelab
