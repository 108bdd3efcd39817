#include "curvelab/coarse.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace curvelab {

namespace {

using i128 = __int128;

Ratio slope(std::int64_t p, std::int64_t q) { return Ratio::make(p, q); }

bool saturated(const ComplexUniverse& u, int v) { return u.vertex(v).max_weight() == u.cap(); }

// Finite samples of a slope interval, endpoints included.
std::vector<Ratio> interval_slopes(Ratio s, Ratio t, int steps = 4) {
  if (t < s) std::swap(s, t);
  std::vector<Ratio> out;
  for (int k = 0; k <= steps; ++k) {
    // s + (t - s) k / steps
    const i128 num = static_cast<i128>(s.num) * t.den * (steps - k) + static_cast<i128>(t.num) * s.den * k;
    const i128 den = static_cast<i128>(s.den) * t.den * steps;
    const i128 g = std::gcd(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    out.push_back(Ratio::make(static_cast<std::int64_t>(num / g), static_cast<std::int64_t>(den / g)));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Slopes from s down towards 0, where Lambda_ab approaches a.
std::vector<Ratio> toward_a(Ratio s, int steps = 5) {
  std::vector<Ratio> out;
  for (int k = 0; k <= steps; ++k) out.push_back(Ratio::make(s.num, s.den << k));
  return out;
}

// Draws universe vertices and remembers which pairs fill.
class Sampler {
 public:
  Sampler(const CoarseSpace& space, std::uint64_t seed) : space_(space), rng_(seed) {}

  int vertex() { return static_cast<int>(uniform_below(rng_, space_.universe().size())); }
  std::uint64_t below(std::uint64_t n) { return uniform_below(rng_, n); }

  const NormalCurve& curve(int v) const { return space_.universe().vertex(v); }

  bool fills(int x, int y) {
    if (x == y) return false;
    const auto key = std::minmax(x, y);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const bool f = intersection_number(curve(x), curve(y)) > 0 && is_filling(curve(x), curve(y));
    cache_[key] = f;
    return f;
  }

  std::optional<std::pair<int, int>> filling_pair(int attempts = 4000) {
    for (int k = 0; k < attempts; ++k) {
      const int x = vertex(), y = vertex();
      if (fills(x, y)) return std::pair{x, y};
    }
    return std::nullopt;
  }

  std::optional<std::array<int, 3>> filling_triple(int attempts = 4000) {
    for (int k = 0; k < attempts; ++k) {
      auto ab = filling_pair();
      if (!ab) return std::nullopt;
      const int c = vertex();
      if (fills(ab->first, c) && fills(ab->second, c)) return std::array{ab->first, ab->second, c};
    }
    return std::nullopt;
  }

 private:
  const CoarseSpace& space_;
  std::mt19937_64 rng_;
  std::map<std::pair<int, int>, bool> cache_;
};

MultiCurve mc(const NormalCurve& c) { return MultiCurve(c); }

void record(ConstantReport& r, std::optional<int> value) {
  if (!value) {
    ++r.skipped;
    return;
  }
  ++r.samples;
  ++r.histogram[*value];
  r.max_constant = std::max(r.max_constant, *value);
}

}  // namespace

Ratio Ratio::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInput("ratio with zero denominator");
  if (num < 0 || den < 0) {
    if (num < 0 && den < 0) {
      num = -num;
      den = -den;
    } else {
      throw InvalidInput("ratio must be nonnegative");
    }
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Ratio Ratio::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const std::int64_t n = std::stoll(text, &used);
      if (used != text.size()) throw InvalidInput("bad ratio");
      return make(n, 1);
    }
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    std::size_t ub = 0;
    const std::int64_t n = std::stoll(a, &used), d = std::stoll(b, &ub);
    if (used != a.size() || ub != b.size()) throw InvalidInput("bad ratio");
    return make(n, d);
  } catch (const std::logic_error&) {
    throw InvalidInput("cannot parse ratio '" + text + "'");
  }
}

std::string Ratio::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

std::strong_ordering Ratio::operator<=>(const Ratio& o) const {
  const i128 l = static_cast<i128>(num) * o.den, r = static_cast<i128>(o.num) * den;
  return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
}

EmptyAtThisR::EmptyAtThisR(Ratio best_, bool cap_saturated_)
    : InvalidInput("midpoint set is empty at this R (smallest l^2/I in the universe is " + best_.str() +
                   (cap_saturated_ ? ", attained at the weight cap" : "") + ")"),
      best(best_),
      cap_saturated(cap_saturated_) {}

FillingPair FillingPair::make(MultiCurve a, MultiCurve b, const std::string& names) {
  if (a.empty() || b.empty()) throw NonFillingPair("empty curve system in pair " + names);
  const std::int64_t I = intersection_number(a, b);
  if (I == 0 || !is_filling(a, b)) throw NonFillingPair("pair " + names + " does not fill");
  return {std::move(a), std::move(b), I};
}

std::int64_t length(const MultiCurve& c, const WeightedPair& wp) {
  return wp.q * intersection_number(wp.pair.a, c) + wp.p * intersection_number(wp.pair.b, c);
}

Ratio modulus_lower(const MultiCurve& c, const WeightedPair& wp, const std::vector<NormalCurve>& candidates) {
  if (candidates.empty()) throw InvalidInput("modulus needs at least one candidate");
  Ratio best{0, 1};
  for (const auto& x : candidates) {
    const MultiCurve mx(x);
    const std::int64_t l = length(mx, wp);
    if (l == 0) throw InvalidInput("modulus candidate has zero length");
    best = std::max(best, Ratio::make(intersection_number(c, mx), l));
  }
  return best;
}

CoarseSet set_union(const CoarseSet& x, const CoarseSet& y) {
  CoarseSet out;
  std::set_union(x.members.begin(), x.members.end(), y.members.begin(), y.members.end(),
                 std::back_inserter(out.members));
  out.cap = std::max(x.cap, y.cap);
  out.cap_saturated = x.cap_saturated || y.cap_saturated;
  return out;
}

std::string to_string(Side s) {
  switch (s) {
    case Side::XSide: return "x-side";
    case Side::YSide: return "y-side";
    case Side::Balanced: return "balanced";
  }
  return "?";
}

Side side_of_center(std::int64_t alpha, std::int64_t beta, std::int64_t i_xz, std::int64_t i_yz) {
  const i128 l = static_cast<i128>(alpha) * i_xz, r = static_cast<i128>(beta) * i_yz;
  return l > r ? Side::XSide : l < r ? Side::YSide : Side::Balanced;
}

Side side_of_center(std::int64_t alpha, std::int64_t beta, const MultiCurve& x, const MultiCurve& y,
                    const MultiCurve& z) {
  return side_of_center(alpha, beta, intersection_number(x, z), intersection_number(y, z));
}

bool transfer_condition_reduces(std::int64_t I, std::int64_t i_ac, std::int64_t i_bc, Ratio t) {
  if (t.num > t.den) throw InvalidInput("t must lie in [0, 1]");
  // Multiply through by t.den: t -> tn, (1 - t) -> un.
  const i128 tn = t.num, un = t.den - t.num;
  const i128 lhs = static_cast<i128>(I) * i_ac * (tn * i_bc + un * I);
  const i128 rhs = static_cast<i128>(i_bc) * I * (tn * i_ac + un * I);
  if (lhs - rhs != un * I * I * (i_ac - i_bc)) return false;
  if (un > 0 && ((lhs >= rhs) != (i_ac >= i_bc))) return false;
  return true;
}

const std::vector<std::int64_t>& CoarseSpace::row(const NormalCurve& c) const {
  auto it = rows_.find(c.weights());
  if (it != rows_.end()) return it->second;
  std::vector<std::int64_t> r(u_.size());
  for (int v = 0; v < u_.size(); ++v) r[v] = intersection_number(c, u_.vertex(v));
  return rows_.emplace(c.weights(), std::move(r)).first->second;
}

std::int64_t CoarseSpace::intersection(const MultiCurve& m, int v) const {
  std::int64_t s = 0;
  for (const auto& [c, k] : m.parts()) s += k * row(c)[v];
  return s;
}

std::int64_t CoarseSpace::length(int v, const WeightedPair& wp) const {
  return wp.q * intersection(wp.pair.a, v) + wp.p * intersection(wp.pair.b, v);
}

CoarseSet CoarseSpace::mid_prime_or_empty(const WeightedPair& wp, Ratio R2) const {
  CoarseSet out;
  out.cap = u_.cap();
  const i128 bound = static_cast<i128>(R2.num) * wp.intersection();
  for (int v = 0; v < u_.size(); ++v) {
    const i128 l = length(v, wp);
    if (l * l * R2.den <= bound) {
      out.members.push_back(v);
      out.cap_saturated = out.cap_saturated || saturated(u_, v);
    }
  }
  return out;
}

CoarseSet CoarseSpace::mid_prime(const WeightedPair& wp, Ratio R2) const {
  CoarseSet s = mid_prime_or_empty(wp, R2);
  if (!s.empty()) return s;
  std::optional<Ratio> best;
  bool sat = false;
  for (int v = 0; v < u_.size(); ++v) {
    const std::int64_t l = length(v, wp);
    const Ratio r = Ratio::make(l * l, wp.intersection());
    if (!best || r < *best) {
      best = r;
      sat = saturated(u_, v);
    }
  }
  throw EmptyAtThisR(best.value_or(Ratio{0, 1}), sat);
}

std::vector<std::pair<Ratio, CoarseSet>> CoarseSpace::coarse_geodesic(const FillingPair& fp, Ratio R2,
                                                                      std::vector<Ratio> slopes) const {
  std::sort(slopes.begin(), slopes.end());
  slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
  std::vector<std::pair<Ratio, CoarseSet>> out;
  for (const Ratio& s : slopes) {
    if (s.num == 0) throw InvalidInput("slopes must be positive");
    out.emplace_back(s, mid_prime(WeightedPair{fp, s.den, s.num}, R2));
  }
  return out;
}

CoarseSet CoarseSpace::center(const MultiCurve& a, const MultiCurve& b, const MultiCurve& c, Ratio R2) const {
  const FillingPair ab = FillingPair::make(a, b, "(a, b)");
  const FillingPair bc = FillingPair::make(b, c, "(b, c)");
  const FillingPair ca = FillingPair::make(c, a, "(c, a)");
  const std::int64_t tilde = ab.I * bc.I * ca.I;
  const MultiCurve ta = a.scaled(bc.I), tb = b.scaled(ca.I), tc = c.scaled(ab.I);
  if (intersection_number(ta, tb) != tilde || intersection_number(tb, tc) != tilde ||
      intersection_number(tc, ta) != tilde)
    throw InvariantViolation("rescaled systems do not have equal intersection numbers");
  CoarseSet out = mid_prime_or_empty(WeightedPair{ab, bc.I, ca.I}, R2);
  out = set_union(out, mid_prime_or_empty(WeightedPair{bc, ca.I, ab.I}, R2));
  out = set_union(out, mid_prime_or_empty(WeightedPair{ca, ab.I, bc.I}, R2));
  return out;
}

CoarseSet CoarseSpace::components(const MultiCurve& m) const {
  CoarseSet out;
  out.cap = u_.cap();
  for (const auto& [c, k] : m.parts())
    if (auto v = u_.index_of(c)) out.members.push_back(*v);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

std::optional<int> CoarseSpace::diameter(const CoarseSet& s) const {
  int d = 0;
  for (int v : s.members) {
    const auto dist = u_.distances_from(v);
    for (int w : s.members) {
      if (dist[w] < 0) return std::nullopt;
      d = std::max(d, dist[w]);
    }
  }
  return d;
}

std::optional<int> CoarseSpace::distance_to(int v, const CoarseSet& s) const {
  if (s.empty()) return std::nullopt;
  const int d = u_.distances_from_set(s.members)[v];
  if (d < 0) return std::nullopt;
  return d;
}

std::optional<int> CoarseSpace::hausdorff(const CoarseSet& x, const CoarseSet& y) const {
  if (x.empty() || y.empty()) return std::nullopt;
  int h = 0;
  for (auto [from, to] : {std::pair{&x, &y}, std::pair{&y, &x}}) {
    const auto d = u_.distances_from_set(to->members);
    for (int v : from->members) {
      if (d[v] < 0) return std::nullopt;
      h = std::max(h, d[v]);
    }
  }
  return h;
}

CalibrationReport calibrate_R(const CoarseSpace& space, int samples, std::uint64_t seed) {
  if (samples <= 0) throw InvalidInput("calibration needs a positive sample count");
  const ComplexUniverse& u = space.universe();
  CalibrationReport rep;
  rep.cap = u.cap();
  rep.seed = seed;
  Sampler sampler(space, seed);
  const int max_attempts = 200 * samples + 1000;
  while (static_cast<int>(rep.per_pair.size()) < samples) {
    if (rep.attempts >= max_attempts) break;
    ++rep.attempts;
    const int x = sampler.vertex(), y = sampler.vertex();
    if (!sampler.fills(x, y)) continue;
    const FillingPair fp{mc(u.vertex(x)), mc(u.vertex(y)), intersection_number(u.vertex(x), u.vertex(y))};
    const WeightedPair wp{fp, 1, 1};
    std::optional<Ratio> best;
    bool sat = false;
    for (int v = 0; v < u.size(); ++v) {
      const std::int64_t l = space.length(v, wp);
      const Ratio r = Ratio::make(l * l, fp.I);
      if (!best || r < *best) {
        best = r;
        sat = saturated(u, v);
      }
    }
    rep.per_pair.push_back(*best);
    rep.pair_I.push_back(fp.I);
    if (*best > rep.R2 || rep.per_pair.size() == 1) {
      rep.R2 = *best;
      rep.cap_saturated = sat;
    }
  }
  if (rep.per_pair.empty()) throw InvalidInput("no filling pairs found in the universe; raise the weight cap");
  return rep;
}

AxiomReport check_bowditch_axioms(const CoarseSpace& space, Ratio R2, int samples, std::uint64_t seed) {
  const ComplexUniverse& u = space.universe();
  AxiomReport rep;
  rep.R2 = R2;
  rep.seed = seed;
  rep.cap = u.cap();
  for (const char* name : {"axiom1", "axiom2", "axiom3"}) rep.axioms.push_back(ConstantReport{name, 0, 0, 0, {}});
  Sampler sampler(space, seed);
  const std::vector<Ratio> ts{{0, 1}, {1, 4}, {1, 2}, {3, 4}, {1, 1}};
  auto symbolic = [&](std::int64_t I, std::int64_t iac, std::int64_t ibc) {
    for (const Ratio& t : ts) {
      ++rep.symbolic_checks;
      rep.symbolic_ok = rep.symbolic_ok && transfer_condition_reduces(I, iac, ibc, t);
    }
  };
  // Union of Mid'(a, b; s) over the given slopes.
  auto lambda = [&](const FillingPair& fp, const std::vector<Ratio>& slopes) {
    CoarseSet out;
    out.cap = u.cap();
    for (const Ratio& s : slopes) out = set_union(out, space.mid_prime_or_empty(WeightedPair{fp, s.den, s.num}, R2));
    return out;
  };
  auto I = [&](int x, int y) { return intersection_number(u.vertex(x), u.vertex(y)); };
  const int budget = 50 * samples + 500;

  // (1) Lambda_ab[a, phi] against Lambda_ac[a, phi].
  for (int k = 0; k < budget && rep.axioms[0].samples < samples; ++k) {
    auto t = sampler.filling_triple();
    if (!t) break;
    auto [a, b, c] = *t;
    const FillingPair ab{mc(u.vertex(a)), mc(u.vertex(b)), I(a, b)};
    const FillingPair ac{mc(u.vertex(a)), mc(u.vertex(c)), I(a, c)};
    symbolic(ab.I, ac.I, I(b, c));
    // phi(a,b,c) sits at slope I(c,a)/I(b,c) on Lambda_ab and I(a,b)/I(b,c) on Lambda_ac.
    CoarseSet s1 = set_union(lambda(ab, toward_a(slope(ac.I, I(b, c)))), space.components(ab.a));
    CoarseSet s2 = set_union(lambda(ac, toward_a(slope(ab.I, I(b, c)))), space.components(ac.a));
    record(rep.axioms[0], space.hausdorff(s1, s2));
  }

  // (2) c, d adjacent: diam Lambda_ab[phi(a,b,c), phi(a,b,d)].
  for (int k = 0; k < budget && rep.axioms[1].samples < samples; ++k) {
    auto ab = sampler.filling_pair();
    if (!ab) break;
    auto [a, b] = *ab;
    const int c = sampler.vertex();
    const auto& nb = u.neighbors(c);
    if (nb.empty()) continue;
    const int d = nb[sampler.below(nb.size())];
    if (!sampler.fills(a, c) || !sampler.fills(b, c) || !sampler.fills(a, d) || !sampler.fills(b, d)) continue;
    const FillingPair fp{mc(u.vertex(a)), mc(u.vertex(b)), I(a, b)};
    symbolic(fp.I, I(a, c), I(b, c));
    const Ratio sc = slope(I(c, a), I(b, c)), sd = slope(I(d, a), I(b, d));
    record(rep.axioms[1], space.diameter(lambda(fp, interval_slopes(sc, sd))));
  }

  // (3) x in Lambda_ab: diam Lambda_ab[x, phi(a,b,x)], with x drawn from Mid'(a,b;1).
  for (int k = 0; k < budget && rep.axioms[2].samples < samples; ++k) {
    auto ab = sampler.filling_pair();
    if (!ab) break;
    auto [a, b] = *ab;
    const FillingPair fp{mc(u.vertex(a)), mc(u.vertex(b)), I(a, b)};
    const CoarseSet mid = space.mid_prime_or_empty(WeightedPair{fp, 1, 1}, R2);
    if (mid.empty()) {
      ++rep.axioms[2].skipped;
      continue;
    }
    const int x = mid.members[sampler.below(mid.members.size())];
    // phi(a,b,x) only needs its slope on Lambda_ab, so x need not fill.
    if (I(a, x) == 0 || I(b, x) == 0) continue;
    symbolic(fp.I, I(a, x), I(b, x));
    CoarseSet seg = lambda(fp, interval_slopes(Ratio{1, 1}, slope(I(x, a), I(b, x))));
    seg = set_union(seg, CoarseSet{{x}, u.cap(), false});
    record(rep.axioms[2], space.diameter(seg));
  }
  return rep;
}

std::vector<ConstantReport> check_lemmas(const CoarseSpace& space, Ratio R2, int samples, std::uint64_t seed) {
  const ComplexUniverse& u = space.universe();
  std::vector<ConstantReport> out;
  for (const char* name : {"fellow_travel", "centers", "thin_triangles", "ax3"}) out.push_back(ConstantReport{name, 0, 0, 0, {}});
  Sampler sampler(space, seed);
  auto I = [&](int x, int y) { return intersection_number(u.vertex(x), u.vertex(y)); };
  auto mid = [&](const FillingPair& fp, std::int64_t q, std::int64_t p) {
    return space.mid_prime_or_empty(WeightedPair{fp, q, p}, R2);
  };
  auto pair = [&](int x, int y) { return FillingPair{mc(u.vertex(x)), mc(u.vertex(y)), I(x, y)}; };
  const int budget = 200 * samples + 500;

  // I(b,c) = 0 and I(a,b) = I(a,c): Mid'(a,b) close to Mid'(a,c).
  for (int k = 0; k < budget && out[0].samples < samples; ++k) {
    auto ab = sampler.filling_pair();
    if (!ab) break;
    auto [a, b] = *ab;
    std::vector<int> cs;
    for (int c : u.neighbors(b))
      if (I(a, c) == I(a, b) && sampler.fills(a, c)) cs.push_back(c);
    if (cs.empty()) continue;
    const int c = cs[sampler.below(cs.size())];
    record(out[0], space.hausdorff(mid(pair(a, b), 1, 1), mid(pair(a, c), 1, 1)));
  }

  for (int k = 0; k < budget && (out[1].samples < samples || out[2].samples < samples); ++k) {
    auto t = sampler.filling_triple();
    if (!t) break;
    auto [a, b, c] = *t;
    const std::int64_t iab = I(a, b), ibc = I(b, c), ica = I(c, a);
    if (out[1].samples < samples) {
      // Mid(~a,~b), Mid(~b,~c), Mid(~c,~a).
      const CoarseSet m1 = mid(pair(a, b), ibc, ica), m2 = mid(pair(b, c), ica, iab), m3 = mid(pair(c, a), iab, ibc);
      std::optional<int> h = 0;
      for (auto [x, y] : {std::pair{&m1, &m2}, std::pair{&m2, &m3}, std::pair{&m3, &m1}}) {
        const auto d = space.hausdorff(*x, *y);
        h = (h && d) ? std::optional<int>(std::max(*h, *d)) : std::nullopt;
      }
      record(out[1], h);
    }
    if (out[2].samples < samples) {
      // M >= N: Mid(M~a, N~b) close to Mid(M~a, N~c).
      const std::int64_t M = 1 + static_cast<std::int64_t>(sampler.below(3));
      const std::int64_t N = 1 + static_cast<std::int64_t>(sampler.below(M));
      record(out[2], space.hausdorff(mid(pair(a, b), M * ibc, N * ica), mid(pair(a, c), M * ibc, N * iab)));
    }
  }

  // x in Mid'(a,b;1) is close to Mid'(a,b;t) for t between 1 and I(a,x)/I(b,x).
  for (int k = 0; k < budget && out[3].samples < samples; ++k) {
    auto ab = sampler.filling_pair();
    if (!ab) break;
    auto [a, b] = *ab;
    const FillingPair fp = pair(a, b);
    const CoarseSet m = mid(fp, 1, 1);
    if (m.empty()) {
      ++out[3].skipped;
      continue;
    }
    const int x = m.members[sampler.below(m.members.size())];
    if (I(b, x) == 0 || I(a, x) == 0) continue;
    std::optional<int> worst = 0;
    for (const Ratio& t : interval_slopes(Ratio{1, 1}, slope(I(a, x), I(b, x)))) {
      const auto d = space.distance_to(x, mid(fp, t.den, t.num));
      worst = (worst && d) ? std::optional<int>(std::max(*worst, *d)) : std::nullopt;
    }
    record(out[3], worst);
  }
  return out;
}

}  // namespace curvelab
