#include "curvelab/farey.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "curvelab/surface.hpp"

namespace curvelab {

namespace {

std::int64_t floor_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

// s, t with x*s + y*t = gcd(x, y) >= 0.
void ext_gcd(std::int64_t x, std::int64_t y, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - k * t1);
  }
  if (r0 < 0) {
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
}

struct Vec {
  std::int64_t p, q;
};

Vec apply(const IntMatrix& m, Vec v) { return {m.a * v.p + m.b * v.q, m.c * v.p + m.d * v.q}; }

// Continued fraction ladder from 1/0 to x = P/Q with Q >= 2: convergents
// C_{-1} .. C_N and partial quotients a_1 .. a_N.
struct Ladder {
  std::vector<Vec> conv;          // conv[k + 1] = C_k
  std::vector<std::int64_t> quot; // quot[k] = a_k, quot[0] = a_0
};

Ladder build_ladder(std::int64_t P, std::int64_t Q) {
  Ladder L;
  std::int64_t num = P, den = Q;
  Vec prev2{0, 1}, prev1{1, 0};
  L.conv.push_back(prev1);
  while (den != 0) {
    const std::int64_t a = floor_div(num, den);
    L.quot.push_back(a);
    const Vec cur{a * prev1.p + prev2.p, a * prev1.q + prev2.q};
    L.conv.push_back(cur);
    prev2 = prev1;
    prev1 = cur;
    std::tie(num, den) = std::make_pair(den, num - a * den);
  }
  return L;
}

// Shortest route through the ladder; returns node indices into conv.
std::vector<int> ladder_route(const Ladder& L) {
  const int nodes = static_cast<int>(L.conv.size());
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj(nodes);
  auto link = [&](int x, int y, std::int64_t w) {
    adj[x].emplace_back(y, w);
    adj[y].emplace_back(x, w);
  };
  for (int x = 0; x + 1 < nodes; ++x) link(x, x + 1, 1);
  // Rim of the fan around C_k joins C_{k-1} to C_{k+1} in a_{k+1} steps.
  for (int x = 1; x + 1 < nodes; ++x) link(x - 1, x + 1, L.quot[x]);
  std::vector<std::int64_t> dist(nodes, std::numeric_limits<std::int64_t>::max());
  std::vector<int> prev(nodes, -1);
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[0] = 0;
  pq.emplace(0, 0);
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d != dist[x]) continue;
    for (auto [y, w] : adj[x])
      if (d + w < dist[y]) {
        dist[y] = d + w;
        prev[y] = x;
        pq.emplace(dist[y], y);
      }
  }
  std::vector<int> route;
  for (int x = nodes - 1; x != -1; x = prev[x]) route.push_back(x);
  std::reverse(route.begin(), route.end());
  return route;
}

}  // namespace

FareySlope FareySlope::make(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw InvalidInput("0/0 is not a slope");
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

FareySlope FareySlope::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return make(std::stoll(text), 1);
    std::size_t used1 = 0, used2 = 0;
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    const std::int64_t p = std::stoll(a, &used1);
    const std::int64_t q = std::stoll(b, &used2);
    if (used1 != a.size() || used2 != b.size()) throw InvalidInput("bad slope");
    return make(p, q);
  } catch (const std::logic_error&) {
    throw InvalidInput("cannot parse slope '" + text + "'");
  }
}

std::string FareySlope::str() const { return std::to_string(p) + "/" + std::to_string(q); }

IntMatrix IntMatrix::from_rows(const std::array<std::array<std::int64_t, 2>, 2>& rows) {
  IntMatrix m{rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
  if (m.det() != 1 && m.det() != -1) throw InvalidInput("matrix must have determinant +-1");
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

IntMatrix IntMatrix::inverse() const {
  const std::int64_t D = det();
  return {d * D, -b * D, -c * D, a * D};
}

IntMatrix IntMatrix::canonical() const {
  for (std::int64_t x : {a, b, c, d}) {
    if (x > 0) return *this;
    if (x < 0) return {-a, -b, -c, -d};
  }
  return *this;
}

IntMatrix IntMatrix::power(int n) const {
  IntMatrix base = n < 0 ? inverse() : *this;
  IntMatrix out;
  for (int k = 0; k < std::abs(n); ++k) out = out * base;
  return out;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  const IntMatrix x = canonical(), y = o.canonical();
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

bool adjacent(const FareySlope& u, const FareySlope& v) {
  const __int128 det = static_cast<__int128>(u.p) * v.q - static_cast<__int128>(u.q) * v.p;
  return det == 1 || det == -1;
}

FareySlope act(const IntMatrix& m, const FareySlope& v) {
  const Vec r = apply(m, {v.p, v.q});
  return FareySlope::make(r.p, r.q);
}

IntMatrix to_infinity(const FareySlope& u) {
  std::int64_t s = 0, t = 0;
  ext_gcd(u.p, u.q, s, t);  // p*s + q*t = 1
  // A = [[p, -t], [q, s]] sends 1/0 to u and has determinant 1.
  const IntMatrix A{u.p, -t, u.q, s};
  return A.inverse();
}

int farey_distance(const FareySlope& u, const FareySlope& v) {
  if (u == v) return 0;
  if (adjacent(u, v)) return 1;
  const FareySlope x = act(to_infinity(u), v);
  const Ladder L = build_ladder(x.p, x.q);
  const auto route = ladder_route(L);
  int d = 0;
  for (std::size_t k = 1; k < route.size(); ++k) {
    const int from = route[k - 1], to = route[k];
    d += (to - from == 2 || from - to == 2) ? static_cast<int>(L.quot[std::min(from, to) + 1]) : 1;
  }
  return d;
}

std::vector<FareySlope> farey_geodesic(const FareySlope& u, const FareySlope& v) {
  if (u == v) return {u};
  if (adjacent(u, v)) return {u, v};
  const IntMatrix M = to_infinity(u);
  const IntMatrix back = M.inverse();
  const FareySlope x = act(M, v);
  const Ladder L = build_ladder(x.p, x.q);
  const auto route = ladder_route(L);
  std::vector<FareySlope> out;
  auto push = [&](Vec w) { out.push_back(act(back, FareySlope::make(w.p, w.q))); };
  push(L.conv[route[0]]);
  for (std::size_t k = 1; k < route.size(); ++k) {
    const int from = route[k - 1], to = route[k];
    if (to - from == 2 || from - to == 2) {
      const int pivot = std::min(from, to) + 1;
      const std::int64_t a = L.quot[pivot];
      const Vec start = L.conv[from];
      const Vec piv = L.conv[pivot];
      // Walking the rim from C_{k-1} adds the pivot; from C_{k+1} subtracts it.
      const std::int64_t dir = from < to ? 1 : -1;
      for (std::int64_t t = 1; t < a; ++t) push({start.p + dir * t * piv.p, start.q + dir * t * piv.q});
    }
    push(L.conv[to]);
  }
  return out;
}

std::vector<std::array<FareySlope, 3>> ladder_triangles(const FareySlope& u, const FareySlope& v) {
  std::vector<std::array<FareySlope, 3>> out;
  if (u == v) return out;
  const IntMatrix M = to_infinity(u);
  const IntMatrix back = M.inverse();
  const FareySlope x = act(M, v);
  auto img = [&](Vec w) { return act(back, FareySlope::make(w.p, w.q)); };
  if (x.q == 1) {
    out.push_back({img({1, 0}), img({x.p, 1}), img({x.p + 1, 1})});
    out.push_back({img({1, 0}), img({x.p - 1, 1}), img({x.p, 1})});
    return out;
  }
  const Ladder L = build_ladder(x.p, x.q);
  for (std::size_t k = 1; k + 1 < L.conv.size(); ++k) {
    const Vec pivot = L.conv[k];
    const Vec first = L.conv[k - 1];
    const std::int64_t a = L.quot[k];
    for (std::int64_t t = 0; t < a; ++t) {
      const Vec r0{first.p + t * pivot.p, first.q + t * pivot.q};
      const Vec r1{r0.p + pivot.p, r0.q + pivot.q};
      out.push_back({img(pivot), img(r0), img(r1)});
    }
  }
  return out;
}

std::array<FareySlope, 2> edge_apexes(const FareySlope& u, const FareySlope& v) {
  return {FareySlope::make(u.p + v.p, u.q + v.q), FareySlope::make(u.p - v.p, u.q - v.q)};
}

std::optional<IntMatrix> translate_match(const std::vector<FareySlope>& w,
                                         const std::vector<FareySlope>& sigma,
                                         bool allow_reflections) {
  if (w.size() != sigma.size() || w.size() < 2) return std::nullopt;
  if (!adjacent(w[0], w[1]) || !adjacent(sigma[0], sigma[1])) return std::nullopt;
  const IntMatrix A{w[0].p, w[1].p, w[0].q, w[1].q};
  const IntMatrix Ainv = A.inverse();
  for (int delta : {1, -1}) {
    const IntMatrix B{sigma[0].p, delta * sigma[1].p, sigma[0].q, delta * sigma[1].q};
    const IntMatrix g = B * Ainv;
    if (g.det() != 1 && !(allow_reflections && g.det() == -1)) continue;
    bool ok = true;
    for (std::size_t k = 0; k < w.size() && ok; ++k) ok = act(g, w[k]) == sigma[k];
    if (ok) return g.canonical();
  }
  return std::nullopt;
}

int abelian_character(const IntMatrix& m) {
  if (m.det() != 1) throw InvalidInput("character is defined on determinant-1 matrices");
  std::int64_t a = m.a, b = m.b, c = m.c, d = m.d;
  std::int64_t chi = 0;
  while (c != 0) {
    // m = T^n S m' with m' = S^-1 T^-n m.
    const std::int64_t n = floor_div(a, c);
    a -= n * c;
    b -= n * d;
    chi += n + 3;
    std::tie(a, b, c, d) = std::make_tuple(c, d, -a, -b);
  }
  // Now m' = a * T^(a b) with a = +-1; the central element has character 0.
  chi += a * b;
  return static_cast<int>(((chi % 6) + 6) % 6);
}

}  // namespace curvelab
