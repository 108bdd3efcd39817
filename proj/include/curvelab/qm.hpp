#pragma once

// Counting quasi-homomorphisms: copies of a path w inside paths, the
// discounted distance c_{w,W}(x, y) = d(x, y) - inf_alpha (|alpha| - W |alpha|_w)
// and h_w(g) = c_{w,W}(x0, g x0) - c_{w^-1,W}(x0, g x0).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "curvelab/complex.hpp"
#include "curvelab/curves.hpp"
#include "curvelab/farey.hpp"

namespace curvelab {

// Finite graph with a list of translates of w (vertex sequences) keyed by
// their first vertex. Shared by the Farey and curve-complex engines.
struct TranslateGraph {
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<std::vector<int>>> translates_from;  // by start vertex
};

struct DiscountResult {
  std::int64_t c = 0;        // d - min cost; a lower bound for c when cap_exceeded
  int d = 0;                 // graph distance in the search universe
  std::int64_t min_cost = 0; // min over searched paths of |alpha| - W |alpha|_w
  int bound = 0;             // pruning bound floor(d |w| / (|w| - W))
  bool cap_exceeded = false; // bound > search_cap; paths were cut at the cap
  int universe = 0;          // vertices searched
};

// Minimum of |alpha| - W |alpha|_w over paths src -> dst of length at most
// min(bound, cap); translates are taken as shortcuts of cost |w| - W.
DiscountResult discount_search(const TranslateGraph& g, int src, int dst, int w_len, int W, int search_cap);

// Maximal set of non-overlapping windows (as [start, start + len] vertex
// intervals) chosen greedily by earliest end among the matching positions.
std::vector<int> greedy_copies(const std::vector<int>& match_starts, int len);

struct CopyCount {
  int count = 0;
  std::vector<std::pair<int, int>> intervals;  // vertex index ranges in alpha
  std::vector<IntMatrix> witnesses;            // g with g w = alpha[interval] (Farey engine)
};

// ---------------------------------------------------------------- Farey engine

enum class TranslateGroup { PSL2Z, PGL2Z, Commutator };
std::string to_string(TranslateGroup g);
TranslateGroup parse_translate_group(const std::string& s);

struct FareyQmSpec {
  std::vector<FareySlope> w;
  int W = 0;
  FareySlope x0;
  TranslateGroup group = TranslateGroup::PSL2Z;
  int halo = 2;  // dual-tree depth of the search region around the ladder

  // Validates w as a path, 0 < W < |w|; W defaults to ceil(|w| / 2).
  static FareyQmSpec make(std::vector<FareySlope> w, std::optional<int> W, FareySlope x0,
                          TranslateGroup group = TranslateGroup::PSL2Z, int halo = 2);
  int length() const { return static_cast<int>(w.size()) - 1; }
  FareyQmSpec reversed() const;  // w^-1, same W and x0
  bool in_group(const IntMatrix& g) const;
};

// Path v, m v, m^2 v, ... (geodesics between consecutive points when they
// are not adjacent), truncated to `edges` edges.
std::vector<FareySlope> axis_segment(const IntMatrix& m, const FareySlope& v, int edges);

// The translate g with g w = sigma and g in the translate group of the FareyQmSpec, if any.
std::optional<IntMatrix> farey_translate(const FareyQmSpec& spec, const std::vector<FareySlope>& sigma);

CopyCount count_copies(const std::vector<FareySlope>& alpha, const FareyQmSpec& spec);

// Search region: the ladder triangles from x to y plus `halo` layers of
// neighbouring triangles, with every translate of w lying inside it.
TranslateGraph farey_region(const FareySlope& x, const FareySlope& y, const FareyQmSpec& spec,
                            std::vector<FareySlope>* vertices = nullptr);

DiscountResult discounted_distance(const FareySlope& x, const FareySlope& y, const FareyQmSpec& spec,
                                   int search_cap);

struct HValue {
  std::int64_t h = 0;
  DiscountResult forward;   // c_{w,W}(x0, g x0)
  DiscountResult backward;  // c_{w^-1,W}(x0, g x0)
  bool cap_exceeded() const { return forward.cap_exceeded || backward.cap_exceeded; }
};

HValue h_w(const IntMatrix& g, const FareyQmSpec& spec, int search_cap);

struct DefectReport {
  int samples = 0;
  std::int64_t max_defect = 0;
  std::map<std::int64_t, int> histogram;
  int cap_exceeded = 0;
  std::uint64_t seed = 0;
  int max_word_length = 0;
  int search_cap = 0;
};

// Random word of length 1..max_word_length in the given generators.
IntMatrix random_word(std::mt19937_64& rng, const std::vector<IntMatrix>& gens, int max_word_length);

// max |h(g1 g2) - h(g1) - h(g2)| over sampled pairs of positive words in
// [[1,1],[0,1]] and [[1,0],[1,1]].
DefectReport defect_scan(const FareyQmSpec& spec, int pairs, int max_word_length, int search_cap,
                         std::uint64_t seed);

struct StabilizerReport {
  int samples = 0;
  std::int64_t max_abs_h = 0;
  int bound = 0;  // 2 d(x0, x)
  int cap_exceeded = 0;
};

// Every element must fix x; throws InvalidInput otherwise and
// InvariantViolation if |h| exceeds 2 d(x0, x).
StabilizerReport stabilizer_probe(const FareyQmSpec& spec, const FareySlope& x,
                                  const std::vector<IntMatrix>& elements, int search_cap);

// ---------------------------------------------------- curve complex engine

// Translates are images of w under twist words of bounded length in the
// given generators, so every answer is approximate.
class CurveQmEngine {
 public:
  CurveQmEngine(const ComplexUniverse& u, std::vector<int> w, std::optional<int> W, int x0,
                std::vector<NormalCurve> generators, int word_length);

  int length() const { return static_cast<int>(w_.size()) - 1; }
  int W() const { return W_; }
  int x0() const { return x0_; }
  bool approximate() const { return true; }
  int translate_count() const { return static_cast<int>(translates_.size()); }

  CopyCount count_copies(const std::vector<int>& alpha) const;
  DiscountResult discounted_distance(int x, int y, int search_cap) const;
  DiscountResult discounted_distance_reversed(int x, int y, int search_cap) const;

  struct Value {
    std::int64_t h = 0;
    DiscountResult forward, backward;
  };
  // Throws InvalidInput when g(x0) leaves the universe.
  Value h(const MappingClassWord& g, int search_cap) const;

 private:
  TranslateGraph graph(bool reversed) const;

  const ComplexUniverse& u_;
  std::vector<int> w_;
  int W_;
  int x0_;
  std::vector<std::vector<int>> translates_;  // images of w inside the universe
};

}  // namespace curvelab
