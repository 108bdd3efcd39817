#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/complex.hpp"
#include "curvelab/curves.hpp"

namespace curvelab {

// Nonnegative exact fraction, always reduced.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio make(std::int64_t num, std::int64_t den);
  static Ratio parse(const std::string& text);  // "n" or "n/d"
  std::string str() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  bool operator==(const Ratio& o) const { return num == o.num && den == o.den; }
  std::strong_ordering operator<=>(const Ratio& o) const;
};

class NonFillingPair : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class EmptyAtThisR : public InvalidInput {
 public:
  // best: smallest length^2 / I(qa, pb) over the universe. cap_saturated:
  // the best curve uses the full weight cap, so a larger cap may do better.
  EmptyAtThisR(Ratio best, bool cap_saturated);
  Ratio best;
  bool cap_saturated;
};

struct FillingPair {
  MultiCurve a, b;
  std::int64_t I = 0;

  // Throws NonFillingPair mentioning `names` when a, b do not fill.
  static FillingPair make(MultiCurve a, MultiCurve b, const std::string& names = "(a, b)");
  FillingPair swapped() const { return {b, a, I}; }
};

// The system (q a, p b).
struct WeightedPair {
  FillingPair pair;
  std::int64_t q = 1;
  std::int64_t p = 1;

  std::int64_t intersection() const { return q * p * pair.I; }
};

// q I(a, c) + p I(b, c).
std::int64_t length(const MultiCurve& c, const WeightedPair& wp);

// max over candidates x of I(c, x) / l(x); a lower bound for the modulus.
Ratio modulus_lower(const MultiCurve& c, const WeightedPair& wp, const std::vector<NormalCurve>& candidates);

// Universe vertices, sorted by index.
struct CoarseSet {
  std::vector<int> members;
  int cap = 0;
  bool cap_saturated = false;  // some member has a weight equal to the cap

  bool empty() const { return members.empty(); }
  bool operator==(const CoarseSet& o) const { return members == o.members; }
};

CoarseSet set_union(const CoarseSet& x, const CoarseSet& y);

enum class Side { XSide, YSide, Balanced };
std::string to_string(Side s);

// Whether alpha x + beta y lies on the x-side of the center of xyz: compares
// alpha I(x, z) with beta I(y, z).
Side side_of_center(std::int64_t alpha, std::int64_t beta, std::int64_t i_xz, std::int64_t i_yz);
Side side_of_center(std::int64_t alpha, std::int64_t beta, const MultiCurve& x, const MultiCurve& y,
                    const MultiCurve& z);

// The transfer condition for c_t = t c + (1 - t) d in the triangle c_t a b,
// normalized so that I(a,b) = I(a,d) = I(b,d) = I:
//   I I(a,c) (t I(b,c) + (1-t) I) >= I(b,c) I (t I(a,c) + (1-t) I).
// Returns true when both sides differ by exactly (1-t) I^2 (I(a,c) - I(b,c))
// and, for t < 1, the inequality holds iff I(a,c) >= I(b,c).
bool transfer_condition_reduces(std::int64_t I, std::int64_t i_ac, std::int64_t i_bc, Ratio t);

// Intersection data of a universe against arbitrary multicurves, cached per
// component.
class CoarseSpace {
 public:
  explicit CoarseSpace(const ComplexUniverse& u) : u_(u) {}

  const ComplexUniverse& universe() const { return u_; }
  std::int64_t intersection(const MultiCurve& m, int v) const;
  std::int64_t length(int v, const WeightedPair& wp) const;

  // Curves c in the universe with l(c)^2 <= R^2 I(qa, pb). R2 is R squared.
  CoarseSet mid_prime(const WeightedPair& wp, Ratio R2) const;  // throws EmptyAtThisR
  CoarseSet mid_prime_or_empty(const WeightedPair& wp, Ratio R2) const;

  // Weighted midpoints Mid'(a, b; p/q), ordered by slope.
  std::vector<std::pair<Ratio, CoarseSet>> coarse_geodesic(const FillingPair& fp, Ratio R2,
                                                            std::vector<Ratio> slopes) const;

  // Union of the midpoints of the rescaled pairs I(b,c)a, I(c,a)b, I(a,b)c.
  CoarseSet center(const MultiCurve& a, const MultiCurve& b, const MultiCurve& c, Ratio R2) const;

  // Universe components of a multicurve (those inside the cap).
  CoarseSet components(const MultiCurve& m) const;

  // nullopt when some pair is disconnected inside the universe.
  std::optional<int> diameter(const CoarseSet& s) const;
  std::optional<int> hausdorff(const CoarseSet& x, const CoarseSet& y) const;
  std::optional<int> distance_to(int v, const CoarseSet& s) const;

 private:
  const std::vector<std::int64_t>& row(const NormalCurve& c) const;

  const ComplexUniverse& u_;
  mutable std::map<Weights, std::vector<std::int64_t>> rows_;
};

struct CalibrationReport {
  Ratio R2;                       // max over pairs of the per-pair minimum
  std::vector<Ratio> per_pair;    // min l(c)^2 / I(a,b) for each sampled pair
  std::vector<std::int64_t> pair_I;
  int attempts = 0;
  int cap = 0;
  std::uint64_t seed = 0;
  bool cap_saturated = false;
};

// Samples filling pairs of universe vertices. Throws InvalidInput if no
// filling pair turns up within a bounded number of attempts.
CalibrationReport calibrate_R(const CoarseSpace& space, int samples, std::uint64_t seed);

// Observed constant of one axiom or lemma over a sampling campaign.
struct ConstantReport {
  std::string name;
  int samples = 0;
  int skipped = 0;
  int max_constant = 0;
  std::map<int, int> histogram;
};

struct AxiomReport {
  std::vector<ConstantReport> axioms;  // (1), (2), (3)
  std::int64_t symbolic_checks = 0;
  bool symbolic_ok = true;
  Ratio R2;
  std::uint64_t seed = 0;
  int cap = 0;
};

// Hyperbolicity-criterion axioms with phi = Center and the slope order on
// Lambda_ab; segments are sampled at finitely many slopes.
AxiomReport check_bowditch_axioms(const CoarseSpace& space, Ratio R2, int samples, std::uint64_t seed);

// Closeness constants for the fellow travel, centers, thin triangles and
// interpolation lemmas.
std::vector<ConstantReport> check_lemmas(const CoarseSpace& space, Ratio R2, int samples, std::uint64_t seed);

}  // namespace curvelab
