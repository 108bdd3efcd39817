#include "curvelab/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace curvelab {

int SurfaceSig::euler_characteristic() const {
  if (orientable) return 2 - 2 * genus - punctures;
  return 2 - genus - punctures;
}

ComplexClass classify(const SurfaceSig& sig) {
  if (sig.genus < 0 || sig.punctures < 0)
    throw InvalidInput("surface signature with negative genus or punctures");
  const int g = sig.genus;
  const int n = sig.punctures;
  if (sig.orientable) {
    if (g == 0) {
      if (n <= 3) return ComplexClass::EmptyComplex;
      if (n == 4) return ComplexClass::DiscreteComplex;
      return ComplexClass::Supported;
    }
    if (g == 1 && n <= 1) return ComplexClass::FareyModel;
    return ComplexClass::Supported;
  }
  // Crosscap count 0 is not a non-orientable surface at all.
  if (g == 1 && n <= 2) return ComplexClass::NonOrientableSporadic;
  if (g == 2 && n <= 1) return ComplexClass::NonOrientableSporadic;
  return ComplexClass::NonOrientableUnsupported;
}

std::string_view to_string(ComplexClass c) {
  switch (c) {
    case ComplexClass::EmptyComplex: return "EmptyComplex";
    case ComplexClass::DiscreteComplex: return "DiscreteComplex";
    case ComplexClass::FareyModel: return "FareyModel";
    case ComplexClass::Supported: return "Supported";
    case ComplexClass::NonOrientableSporadic: return "NonOrientableSporadic";
    case ComplexClass::NonOrientableUnsupported: return "NonOrientableUnsupported";
  }
  return "?";
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Triangulation Triangulation::from_gluing(int triangles,
                                         const std::vector<std::array<int, 4>>& gluing) {
  if (triangles <= 0) throw InvalidInput("triangulation needs at least one triangle");
  if ((3 * triangles) % 2 != 0)
    throw InvalidInput("odd number of triangle sides cannot be paired");
  const int slots = 3 * triangles;
  if (static_cast<int>(gluing.size()) * 2 != slots)
    throw InvalidInput("gluing table must pair every side exactly once (expected " +
                       std::to_string(slots / 2) + " entries)");

  Triangulation tri;
  tri.partner_.assign(slots, -1);
  for (const auto& g : gluing) {
    for (int k : {0, 2}) {
      if (g[k] < 0 || g[k] >= triangles || g[k + 1] < 0 || g[k + 1] > 2)
        throw InvalidInput("gluing entry references a nonexistent side");
    }
    const int s = make_slot(g[0], g[1]);
    const int s2 = make_slot(g[2], g[3]);
    if (g[0] == g[2])
      throw InvalidInput("self-folded triangle " + std::to_string(g[0]) +
                         " (two sides of one triangle glued) is not supported");
    if (tri.partner_[s] != -1 || tri.partner_[s2] != -1)
      throw InvalidInput("side glued more than once");
    tri.partner_[s] = s2;
    tri.partner_[s2] = s;
  }

  tri.edge_of_.assign(slots, -1);
  for (int s = 0; s < slots; ++s) {
    if (tri.edge_of_[s] != -1) continue;
    const int e = static_cast<int>(tri.edge_slots_.size());
    tri.edge_slots_.push_back({s, tri.partner_[s]});
    tri.edge_of_[s] = e;
    tri.edge_of_[tri.partner_[s]] = e;
  }

  // Connectivity of the dual graph.
  std::vector<char> seen(triangles, 0);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!todo.empty()) {
    const int t = todo.front();
    todo.pop();
    for (int i = 0; i < 3; ++i) {
      const int u = slot_triangle(tri.partner_[make_slot(t, i)]);
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        todo.push(u);
      }
    }
  }
  if (reached != triangles) throw InvalidInput("triangulated surface is disconnected");

  // Corners identified across glued sides.
  std::vector<int> parent(slots);
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](int x, int y) { parent[find_root(parent, x)] = find_root(parent, y); };
  for (int s = 0; s < slots; ++s) {
    const int t = slot_triangle(s), i = slot_side(s);
    const int p = tri.partner_[s];
    const int t2 = slot_triangle(p), i2 = slot_side(p);
    unite(make_slot(t, i), make_slot(t2, (i2 + 1) % 3));
    unite(make_slot(t, (i + 1) % 3), make_slot(t2, i2));
  }
  std::map<int, int> label;
  tri.corner_puncture_.assign(slots, -1);
  for (int c = 0; c < slots; ++c) {
    const int r = find_root(parent, c);
    auto it = label.try_emplace(r, static_cast<int>(label.size())).first;
    tri.corner_puncture_[c] = it->second;
  }
  tri.punctures_ = static_cast<int>(label.size());

  const int chi = tri.punctures_ - tri.edge_count() + triangles;
  if (chi > 2 || (2 - chi) % 2 != 0)
    throw InvalidInput("gluing does not produce an orientable surface");
  tri.genus_ = (2 - chi) / 2;
  if (triangles != 4 * tri.genus_ - 4 + 2 * tri.punctures_ ||
      2 * tri.edge_count() != 3 * triangles)
    throw InvariantViolation("Euler count mismatch in triangulation");
  return tri;
}

std::vector<std::array<int, 4>> Triangulation::gluing_table() const {
  std::vector<std::array<int, 4>> out;
  out.reserve(edge_slots_.size());
  for (const auto& [s, p] : edge_slots_)
    out.push_back({slot_triangle(s), slot_side(s), slot_triangle(p), slot_side(p)});
  return out;
}

Triangulation standard_triangulation(const SurfaceSig& sig) {
  if (!sig.orientable) throw InvalidInput("non-orientable surfaces cannot be triangulated here");
  if (sig.punctures < 1) throw InvalidInput("closed surfaces are not supported; need a puncture");
  const ComplexClass cls = classify(sig);
  if (cls == ComplexClass::EmptyComplex)
    throw InvalidInput(std::string("sporadic signature (") + std::string(to_string(cls)) +
                       ") has no curve engine");

  // Boundary word as (letter, exponent) pairs.
  std::vector<std::pair<int, int>> word;
  int letter = 0;
  for (int j = 0; j < sig.genus; ++j) {
    const int a = letter++, b = letter++;
    word.insert(word.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
  }
  for (int j = 0; j + 1 < sig.punctures; ++j) {
    const int x = letter++;
    word.insert(word.end(), {{x, 1}, {x, -1}});
  }
  if (sig.punctures >= 2) std::rotate(word.begin(), word.begin() + 1, word.end());

  const int sides = static_cast<int>(word.size());
  const int triangles = sides - 2;
  auto polygon_slot = [&](int s) {
    if (s == 0) return std::array<int, 2>{0, 0};
    if (s == sides - 1) return std::array<int, 2>{triangles - 1, 2};
    return std::array<int, 2>{s - 1, 1};
  };

  std::vector<std::array<int, 4>> gluing;
  for (int j = 2; j <= sides - 2; ++j) gluing.push_back({j - 2, 2, j - 1, 0});
  std::map<int, std::array<int, 2>> first_side;
  for (int s = 0; s < sides; ++s) {
    auto [it, fresh] = first_side.try_emplace(word[s].first, std::array<int, 2>{s, word[s].second});
    if (fresh) continue;
    const auto a = polygon_slot(it->second[0]);
    const auto b = polygon_slot(s);
    gluing.push_back({a[0], a[1], b[0], b[1]});
  }
  Triangulation tri = Triangulation::from_gluing(triangles, gluing);
  if (tri.signature() != SurfaceSig{sig.genus, sig.punctures, true})
    throw InvariantViolation("standard triangulation has the wrong signature");
  return tri;
}

TriangulationPtr make_standard(const SurfaceSig& sig) {
  return std::make_shared<const Triangulation>(standard_triangulation(sig));
}

}  // namespace curvelab
