#include "curvelab/covering.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace curvelab {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::int64_t total(const Weights& w) { return std::accumulate(w.begin(), w.end(), std::int64_t{0}); }

}  // namespace

CoveringSpec CoveringSpec::make(TriangulationPtr base, int degree, std::vector<std::vector<int>> edge_perms) {
  if (!base) throw InvalidInput("cover needs a base triangulation");
  if (degree < 1) throw InvalidInput("cover degree must be positive");
  const int T = base->triangle_count();
  if (static_cast<int>(edge_perms.size()) != base->edge_count())
    throw InvalidInput("need one sheet permutation per base edge (" + std::to_string(base->edge_count()) + ")");
  for (const auto& perm : edge_perms) {
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> iota(degree);
    std::iota(iota.begin(), iota.end(), 0);
    if (sorted != iota) throw InvalidInput("edge permutation is not a permutation of the sheets");
  }
  std::vector<std::array<int, 4>> gluing;
  std::vector<int> parent(T * degree);
  std::iota(parent.begin(), parent.end(), 0);
  for (int e = 0; e < base->edge_count(); ++e) {
    const auto [s0, s1] = base->slots_of_edge(e);
    for (int s = 0; s < degree; ++s) {
      const int t0 = s * T + slot_triangle(s0);
      const int t1 = edge_perms[e][s] * T + slot_triangle(s1);
      gluing.push_back({t0, slot_side(s0), t1, slot_side(s1)});
      parent[find_root(parent, t0)] = find_root(parent, t1);
    }
  }
  for (int t = 0; t < T * degree; ++t)
    if (find_root(parent, t) != find_root(parent, 0)) throw InvalidInput("cover total space is disconnected");

  CoveringSpec p;
  p.base_ = std::move(base);
  p.degree_ = degree;
  p.perms_ = std::move(edge_perms);
  p.cover_ = std::make_shared<const Triangulation>(Triangulation::from_gluing(T * degree, gluing));
  p.base_edge_.resize(p.cover_->edge_count());
  for (int slot = 0; slot < p.cover_->slot_count(); ++slot) {
    const int t = slot_triangle(slot) % T;
    p.base_edge_[p.cover_->edge_of(slot)] = p.base_->edge_of(make_slot(t, slot_side(slot)));
  }
  // Euler characteristic multiplies by the degree.
  const SurfaceSig bs = p.base_->signature(), cs = p.cover_->signature();
  if (cs.euler_characteristic() != degree * bs.euler_characteristic())
    throw InvariantViolation("cover Euler characteristic is not degree times the base");
  return p;
}

CoveringSpec CoveringSpec::cyclic(TriangulationPtr base, int degree, const std::vector<int>& shifts) {
  if (degree < 1) throw InvalidInput("cover degree must be positive");
  std::vector<std::vector<int>> perms;
  for (int shift : shifts) {
    std::vector<int> perm(degree);
    for (int s = 0; s < degree; ++s) perm[s] = ((s + shift) % degree + degree) % degree;
    perms.push_back(std::move(perm));
  }
  return make(std::move(base), degree, std::move(perms));
}

CoveringSpec CoveringSpec::identity(TriangulationPtr base) {
  const int edges = base ? base->edge_count() : 0;
  return cyclic(std::move(base), 1, std::vector<int>(edges, 0));
}

Weights CoveringSpec::lift(const Weights& w) const {
  if (static_cast<int>(w.size()) != base_->edge_count()) throw InvalidInput("weight vector has the wrong length");
  Weights out(cover_->edge_count());
  for (int e = 0; e < cover_->edge_count(); ++e) out[e] = w[base_edge_[e]];
  return out;
}

MultiCurve pullback(const CoveringSpec& p, const MultiCurve& c) {
  if (c.empty()) return {};
  if (!(*c.triangulation() == *p.base())) throw InvalidInput("curve does not live on the base of the cover");
  const Decomposition d = decompose(p.cover(), p.lift(c.weights()));
  if (!d.peripheral.empty()) throw InvariantViolation("preimage of an essential curve has a peripheral component");
  return MultiCurve::from_parts(d.essential);
}

MultiCurve pullback(const CoveringSpec& p, const NormalCurve& c) { return pullback(p, MultiCurve(c)); }

std::vector<int> component_degrees(const CoveringSpec& p, const NormalCurve& c) {
  const std::int64_t base_mass = total(c.weights());
  std::vector<int> out;
  std::int64_t sum = 0;
  const MultiCurve pre = pullback(p, c);
  for (const auto& [comp, k] : pre.parts())
    for (std::int64_t j = 0; j < k; ++j) {
      const std::int64_t m = total(comp.weights());
      if (m % base_mass != 0) throw InvariantViolation("component mass is not a multiple of the base mass");
      out.push_back(static_cast<int>(m / base_mass));
      sum += m / base_mass;
    }
  if (sum != p.degree()) throw InvariantViolation("component degrees do not sum to the cover degree");
  return out;
}

ScalingReport scaling_check(const CoveringSpec& p, const FillingPair& fp, const MultiCurve& c) {
  ScalingReport r;
  r.degree = p.degree();
  const MultiCurve a = pullback(p, fp.a), b = pullback(p, fp.b), cc = pullback(p, c);
  r.base_intersection = fp.I;
  r.cover_intersection = intersection_number(a, b);
  r.base_length = intersection_number(fp.a, c) + intersection_number(fp.b, c);
  r.cover_length = intersection_number(a, cc) + intersection_number(b, cc);
  if (r.cover_intersection != p.degree() * r.base_intersection)
    throw InvariantViolation("I(p*a, p*b) = " + std::to_string(r.cover_intersection) + " but |p| I(a, b) = " +
                             std::to_string(p.degree() * r.base_intersection));
  if (r.cover_length != p.degree() * r.base_length)
    throw InvariantViolation("l(p*c) = " + std::to_string(r.cover_length) + " but |p| l(c) = " +
                             std::to_string(p.degree() * r.base_length));
  r.intersection_ratio = r.base_intersection ? r.cover_intersection / r.base_intersection : p.degree();
  r.length_ratio = r.base_length ? r.cover_length / r.base_length : p.degree();
  return r;
}

std::optional<bool> twist_lift_check(const CoveringSpec& p, const NormalCurve& c, int k, const NormalCurve& d) {
  for (int deg : component_degrees(p, c))
    if (deg != 1) return std::nullopt;
  MappingClassWord lifted;
  const MultiCurve pre = pullback(p, c);
  for (const auto& [comp, mult] : pre.parts()) lifted.letters.emplace_back(comp, k);
  return pullback(p, twist(c, k, d)) == apply_twist(lifted, pullback(p, d));
}

QuasiconvexReport quasiconvexity_probe(const CoveringSpec& p, int samples, int cap, std::uint64_t seed) {
  QuasiconvexReport rep;
  rep.degree = p.degree();
  rep.cap = cap;
  rep.seed = seed;
  const ComplexUniverse u(p.cover(), cap);
  rep.universe_size = u.size();
  std::vector<int> image;
  for (const auto& c : enumerate_curves(p.base(), cap)) {
    const MultiCurve pre = pullback(p, c);
    for (const auto& [comp, k] : pre.parts()) {
      const auto i = u.index_of(comp);
      if (!i) throw InvariantViolation("lifted component exceeds the weight cap");
      image.push_back(*i);
    }
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  rep.image_size = static_cast<int>(image.size());
  if (image.empty()) throw InvalidInput("no base curves at this cap");
  const auto to_image = u.distances_from_set(image);
  std::mt19937_64 rng(seed);
  const int budget = 20 * samples + 100;
  for (int attempt = 0; attempt < budget && rep.samples < samples; ++attempt) {
    const int x = image[uniform_below(rng, image.size())];
    const int y = image[uniform_below(rng, image.size())];
    const auto path = u.geodesic(x, y);
    if (path.empty()) {
      ++rep.skipped;
      continue;
    }
    int P = 0;
    for (int v : path) P = std::max(P, to_image[v]);
    ++rep.samples;
    ++rep.histogram[P];
    rep.max_P = std::max(rep.max_P, P);
  }
  return rep;
}

}  // namespace curvelab
