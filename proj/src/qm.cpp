#include "curvelab/qm.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

namespace curvelab {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

int ceil_half(int n) { return (n + 1) / 2; }

void check_W(int len, int W) {
  if (len < 2) throw InvalidInput("w must have at least 2 edges");
  if (W <= 0 || W >= len) throw InvalidInput("W must satisfy 0 < W < |w|");
}

std::vector<int> bfs(const TranslateGraph& g, int src) {
  std::vector<int> d(g.adj.size(), -1);
  std::queue<int> q;
  d[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : g.adj[x])
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(y);
      }
  }
  return d;
}

using Triangle = std::array<FareySlope, 3>;

Triangle sorted(Triangle t) {
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

DiscountResult discount_search(const TranslateGraph& g, int src, int dst, int w_len, int W, int search_cap) {
  DiscountResult r;
  r.universe = static_cast<int>(g.adj.size());
  const auto dist = bfs(g, src);
  if (dist[dst] < 0) throw InvalidInput("endpoints are not connected in the search universe");
  r.d = dist[dst];
  // Any minimizer has |alpha| (1 - W/|w|) <= |alpha| - W |alpha|_w <= d.
  r.bound = r.d * w_len / (w_len - W);
  const int L = std::min(r.bound, search_cap);
  r.cap_exceeded = r.bound > search_cap;
  const int n = static_cast<int>(g.adj.size());
  // best[len][v]: min cost of a path of exactly `len` edges from src to v.
  std::vector<std::vector<std::int64_t>> best(L + 1, std::vector<std::int64_t>(n, kInf));
  best[0][src] = 0;
  std::int64_t answer = r.d;  // the geodesic
  for (int len = 0; len <= L; ++len) {
    for (int v = 0; v < n; ++v) {
      const std::int64_t c = best[len][v];
      if (c >= kInf) continue;
      // Remaining length must still reach dst.
      if (len + dist[v] > L + r.d) continue;
      if (v == dst) answer = std::min(answer, c);
      if (len + 1 <= L)
        for (int y : g.adj[v]) best[len + 1][y] = std::min(best[len + 1][y], c + 1);
      if (len + w_len <= L)
        for (const auto& t : g.translates_from[v]) {
          auto& slot = best[len + w_len][t.back()];
          slot = std::min(slot, c + w_len - W);
        }
    }
  }
  r.min_cost = answer;
  r.c = r.d - answer;
  if (r.c < 0 || r.c > r.d) throw InvariantViolation("discounted distance outside [0, d]");
  return r;
}

std::vector<int> greedy_copies(const std::vector<int>& match_starts, int len) {
  std::vector<int> starts = match_starts;
  std::sort(starts.begin(), starts.end());
  std::vector<int> chosen;
  int free_from = std::numeric_limits<int>::min();
  for (int s : starts)
    if (s >= free_from) {
      chosen.push_back(s);
      free_from = s + len;
    }
  return chosen;
}

std::string to_string(TranslateGroup g) {
  switch (g) {
    case TranslateGroup::PSL2Z: return "psl2z";
    case TranslateGroup::PGL2Z: return "pgl2z";
    case TranslateGroup::Commutator: return "commutator";
  }
  return "?";
}

TranslateGroup parse_translate_group(const std::string& s) {
  if (s == "psl2z") return TranslateGroup::PSL2Z;
  if (s == "pgl2z") return TranslateGroup::PGL2Z;
  if (s == "commutator") return TranslateGroup::Commutator;
  throw InvalidInput("unknown translate group '" + s + "' (psl2z, pgl2z, commutator)");
}

FareyQmSpec FareyQmSpec::make(std::vector<FareySlope> w, std::optional<int> W, FareySlope x0,
                              TranslateGroup group, int halo) {
  for (std::size_t k = 1; k < w.size(); ++k)
    if (!adjacent(w[k - 1], w[k])) throw InvalidInput("w is not a path in the Farey graph");
  const int len = static_cast<int>(w.size()) - 1;
  const int weight = W.value_or(ceil_half(len));
  check_W(len, weight);
  if (halo < 0) throw InvalidInput("halo must be nonnegative");
  return {std::move(w), weight, x0, group, halo};
}

FareyQmSpec FareyQmSpec::reversed() const {
  FareyQmSpec r = *this;
  std::reverse(r.w.begin(), r.w.end());
  return r;
}

bool FareyQmSpec::in_group(const IntMatrix& g) const {
  switch (group) {
    case TranslateGroup::PSL2Z: return g.det() == 1;
    case TranslateGroup::PGL2Z: return true;
    case TranslateGroup::Commutator: return g.det() == 1 && abelian_character(g) == 0;
  }
  return false;
}

std::vector<FareySlope> axis_segment(const IntMatrix& m, const FareySlope& v, int edges) {
  if (edges < 1) throw InvalidInput("axis segment needs at least one edge");
  std::vector<FareySlope> out{v};
  FareySlope cur = v;
  for (int guard = 0; static_cast<int>(out.size()) <= edges; ++guard) {
    const FareySlope next = act(m, cur);
    if (next == cur || guard > edges) throw InvalidInput("matrix does not translate the vertex");
    const auto g = farey_geodesic(cur, next);
    out.insert(out.end(), g.begin() + 1, g.end());
    cur = next;
  }
  out.resize(edges + 1);
  return out;
}

std::optional<IntMatrix> farey_translate(const FareyQmSpec& spec, const std::vector<FareySlope>& sigma) {
  auto g = translate_match(spec.w, sigma, spec.group == TranslateGroup::PGL2Z);
  if (g && spec.in_group(*g)) return g;
  return std::nullopt;
}

CopyCount count_copies(const std::vector<FareySlope>& alpha, const FareyQmSpec& spec) {
  CopyCount out;
  const int n = spec.length();
  std::vector<int> starts;
  std::map<int, IntMatrix> witness;
  for (int s = 0; s + n < static_cast<int>(alpha.size()); ++s) {
    const std::vector<FareySlope> window(alpha.begin() + s, alpha.begin() + s + n + 1);
    if (auto g = farey_translate(spec, window)) {
      starts.push_back(s);
      witness.emplace(s, *g);
    }
  }
  for (int s : greedy_copies(starts, n)) {
    out.intervals.emplace_back(s, s + n);
    out.witnesses.push_back(witness.at(s));
  }
  out.count = static_cast<int>(out.intervals.size());
  return out;
}

TranslateGraph farey_region(const FareySlope& x, const FareySlope& y, const FareyQmSpec& spec,
                            std::vector<FareySlope>* vertices) {
  std::set<Triangle> tris;
  std::vector<Triangle> frontier;
  auto seeds = ladder_triangles(x, y);
  if (seeds.empty()) {
    // x = y: the two triangles on an edge at x.
    const FareySlope e = act(to_infinity(x).inverse(), FareySlope::make(0, 1));
    const auto ap = edge_apexes(x, e);
    seeds = {Triangle{x, e, ap[0]}, Triangle{x, e, ap[1]}};
  }
  for (auto t : seeds)
    if (tris.insert(sorted(t)).second) frontier.push_back(sorted(t));
  for (int layer = 0; layer < spec.halo; ++layer) {
    std::vector<Triangle> next;
    for (const auto& t : frontier)
      for (int k = 0; k < 3; ++k) {
        const FareySlope& u = t[k];
        const FareySlope& v = t[(k + 1) % 3];
        for (const auto& apex : edge_apexes(u, v)) {
          const Triangle n = sorted({u, v, apex});
          if (tris.insert(n).second) next.push_back(n);
        }
      }
    frontier = std::move(next);
  }
  std::map<FareySlope, int> index;
  std::vector<FareySlope> verts;
  for (const auto& t : tris)
    for (const auto& v : t)
      if (index.emplace(v, static_cast<int>(verts.size())).second) verts.push_back(v);
  TranslateGraph g;
  const int n = static_cast<int>(verts.size());
  g.adj.resize(n);
  g.translates_from.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adjacent(verts[i], verts[j])) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
  // Every translate of w whose first edge is an oriented edge of the region.
  const IntMatrix A{spec.w[0].p, spec.w[1].p, spec.w[0].q, spec.w[1].q};
  const IntMatrix Ainv = A.inverse();
  for (int i = 0; i < n; ++i)
    for (int j : g.adj[i])
      for (int delta : {1, -1}) {
        const IntMatrix B{verts[i].p, delta * verts[j].p, verts[i].q, delta * verts[j].q};
        const IntMatrix h = B * Ainv;
        if (!spec.in_group(h)) continue;
        std::vector<int> path{i, j};
        bool inside = true;
        for (std::size_t k = 2; k < spec.w.size() && inside; ++k) {
          auto it = index.find(act(h, spec.w[k]));
          if (it == index.end()) inside = false;
          else path.push_back(it->second);
        }
        if (inside) g.translates_from[i].push_back(std::move(path));
      }
  if (vertices) *vertices = std::move(verts);
  return g;
}

DiscountResult discounted_distance(const FareySlope& x, const FareySlope& y, const FareyQmSpec& spec,
                                   int search_cap) {
  std::vector<FareySlope> verts;
  const TranslateGraph g = farey_region(x, y, spec, &verts);
  const auto find = [&](const FareySlope& v) {
    return static_cast<int>(std::find(verts.begin(), verts.end(), v) - verts.begin());
  };
  DiscountResult r = discount_search(g, find(x), find(y), spec.length(), spec.W, search_cap);
  if (r.d != farey_distance(x, y)) throw InvariantViolation("search region lost a geodesic");
  return r;
}

HValue h_w(const IntMatrix& g, const FareyQmSpec& spec, int search_cap) {
  const FareySlope gx = act(g, spec.x0);
  HValue v;
  v.forward = discounted_distance(spec.x0, gx, spec, search_cap);
  v.backward = discounted_distance(spec.x0, gx, spec.reversed(), search_cap);
  v.h = v.forward.c - v.backward.c;
  return v;
}

IntMatrix random_word(std::mt19937_64& rng, const std::vector<IntMatrix>& gens, int max_word_length) {
  if (gens.empty() || max_word_length < 1) throw InvalidInput("random words need generators and a length");
  const int len = 1 + static_cast<int>(uniform_below(rng, max_word_length));
  IntMatrix m;
  for (int k = 0; k < len; ++k) m = m * gens[uniform_below(rng, gens.size())];
  return m;
}

DefectReport defect_scan(const FareyQmSpec& spec, int pairs, int max_word_length, int search_cap,
                         std::uint64_t seed) {
  DefectReport rep;
  rep.seed = seed;
  rep.max_word_length = max_word_length;
  rep.search_cap = search_cap;
  const std::vector<IntMatrix> gens{{1, 1, 0, 1}, {1, 0, 1, 1}};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < pairs; ++k) {
    const IntMatrix g1 = random_word(rng, gens, max_word_length);
    const IntMatrix g2 = random_word(rng, gens, max_word_length);
    const HValue a = h_w(g1, spec, search_cap), b = h_w(g2, spec, search_cap), ab = h_w(g1 * g2, spec, search_cap);
    const std::int64_t defect = std::abs(ab.h - a.h - b.h);
    ++rep.samples;
    ++rep.histogram[defect];
    rep.max_defect = std::max(rep.max_defect, defect);
    if (a.cap_exceeded() || b.cap_exceeded() || ab.cap_exceeded()) ++rep.cap_exceeded;
  }
  return rep;
}

StabilizerReport stabilizer_probe(const FareyQmSpec& spec, const FareySlope& x,
                                  const std::vector<IntMatrix>& elements, int search_cap) {
  StabilizerReport rep;
  rep.bound = 2 * farey_distance(spec.x0, x);
  for (const auto& g : elements) {
    if (!(act(g, x) == x)) throw InvalidInput("element " + g.str() + " does not fix " + x.str());
    const HValue v = h_w(g, spec, search_cap);
    ++rep.samples;
    if (v.cap_exceeded()) ++rep.cap_exceeded;
    rep.max_abs_h = std::max(rep.max_abs_h, std::abs(v.h));
    if (std::abs(v.h) > rep.bound)
      throw InvariantViolation("|h_w(" + g.str() + ")| = " + std::to_string(std::abs(v.h)) +
                               " exceeds 2 d(x0, x) = " + std::to_string(rep.bound));
  }
  return rep;
}

CurveQmEngine::CurveQmEngine(const ComplexUniverse& u, std::vector<int> w, std::optional<int> W, int x0,
                             std::vector<NormalCurve> generators, int word_length)
    : u_(u), w_(std::move(w)), x0_(x0) {
  W_ = W.value_or(ceil_half(length()));
  check_W(length(), W_);
  for (int v : w_)
    if (v < 0 || v >= u_.size()) throw InvalidInput("w leaves the universe");
  if (x0_ < 0 || x0_ >= u_.size()) throw InvalidInput("x0 is not a universe vertex");
  EdgePath wp;
  for (int v : w_) wp.vertices.push_back(u_.vertex(v));
  if (!is_valid_path(wp)) throw InvalidInput("w is not a path in the curve complex");
  if (word_length < 0) throw InvalidInput("word length must be nonnegative");

  // Breadth-first over reduced twist words.
  std::set<std::vector<int>> seen;
  struct Word {
    std::vector<NormalCurve> image;  // g applied to the vertices of w
    int last_gen = -1, last_sign = 0;
  };
  std::vector<Word> layer;
  {
    Word id;
    for (int v : w_) id.image.push_back(u_.vertex(v));
    layer.push_back(std::move(id));
  }
  auto record = [&](const Word& word) {
    std::vector<int> path;
    for (const auto& c : word.image) {
      auto i = u_.index_of(c);
      if (!i) return;
      path.push_back(*i);
    }
    if (seen.insert(path).second) translates_.push_back(path);
  };
  record(layer.front());
  for (int len = 1; len <= word_length; ++len) {
    std::vector<Word> next;
    for (const auto& word : layer)
      for (int gi = 0; gi < static_cast<int>(generators.size()); ++gi)
        for (int sign : {1, -1}) {
          if (word.last_gen == gi && word.last_sign == -sign) continue;
          Word nw{{}, gi, sign};
          for (const auto& c : word.image) nw.image.push_back(twist(generators[gi], sign, c));
          record(nw);
          next.push_back(std::move(nw));
        }
    layer = std::move(next);
  }
}

TranslateGraph CurveQmEngine::graph(bool reversed) const {
  TranslateGraph g;
  g.adj.resize(u_.size());
  g.translates_from.resize(u_.size());
  for (int v = 0; v < u_.size(); ++v) g.adj[v] = u_.neighbors(v);
  for (auto t : translates_) {
    if (reversed) std::reverse(t.begin(), t.end());
    g.translates_from[t.front()].push_back(std::move(t));
  }
  return g;
}

CopyCount CurveQmEngine::count_copies(const std::vector<int>& alpha) const {
  const std::set<std::vector<int>> known(translates_.begin(), translates_.end());
  const int n = length();
  std::vector<int> starts;
  for (int s = 0; s + n < static_cast<int>(alpha.size()); ++s)
    if (known.count(std::vector<int>(alpha.begin() + s, alpha.begin() + s + n + 1))) starts.push_back(s);
  CopyCount out;
  for (int s : greedy_copies(starts, n)) out.intervals.emplace_back(s, s + n);
  out.count = static_cast<int>(out.intervals.size());
  return out;
}

DiscountResult CurveQmEngine::discounted_distance(int x, int y, int search_cap) const {
  return discount_search(graph(false), x, y, length(), W_, search_cap);
}

DiscountResult CurveQmEngine::discounted_distance_reversed(int x, int y, int search_cap) const {
  return discount_search(graph(true), x, y, length(), W_, search_cap);
}

CurveQmEngine::Value CurveQmEngine::h(const MappingClassWord& g, int search_cap) const {
  const auto gx = u_.index_of(apply_twist(g, u_.vertex(x0_)));
  if (!gx) throw InvalidInput("g(x0) lies outside the universe");
  Value v;
  v.forward = discounted_distance(x0_, *gx, search_cap);
  v.backward = discounted_distance_reversed(x0_, *gx, search_cap);
  v.h = v.forward.c - v.backward.c;
  return v;
}

}  // namespace curvelab
