#include "gpcode/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <set>
#include <thread>

namespace gpcode {

unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("GPCODE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(std::min<long>(v, 64));
  }
  return n;
}

Geometry geometry_build(std::vector<std::vector<std::uint32_t>> lines,
                        std::uint32_t num_points, std::string label) {
  if (lines.empty()) throw InputError("geometry_build: empty line list");
  Geometry G;
  G.num_points = num_points;
  G.label = std::move(label);
  G.lines_on_point.resize(num_points);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (lines[l].empty())
      throw InputError("geometry_build: line " + std::to_string(l) + " is empty");
    std::set<std::uint32_t> seen;
    for (std::uint32_t p : lines[l]) {
      if (p >= num_points)
        throw InputError("geometry_build: line " + std::to_string(l) +
                         " references point " + std::to_string(p) +
                         " out of range");
      if (!seen.insert(p).second)
        throw InputError("geometry_build: line " + std::to_string(l) +
                         " repeats point " + std::to_string(p));
      G.lines_on_point[p].push_back(static_cast<std::uint32_t>(l));
    }
  }
  for (std::uint32_t p = 0; p < num_points; ++p)
    if (G.lines_on_point[p].empty())
      throw InputError("geometry_build: point " + std::to_string(p) +
                       " lies on no line");
  G.points_on_line = std::move(lines);
  return G;
}

namespace {

// Adjacency access without materializing an explicit graph.
template <typename Fn>
void for_neighbors(const Geometry& G, std::uint32_t v, Fn&& fn) {
  if (G.is_point_vertex(v)) {
    for (std::uint32_t l : G.lines_on_point[v]) fn(G.line_vertex(l));
  } else {
    for (std::uint32_t p : G.points_on_line[G.line_of_vertex(v)]) fn(p);
  }
}

void bfs_row(const Geometry& G, std::uint32_t src, std::uint16_t* row) {
  const std::uint32_t n = G.num_vertices();
  std::fill(row, row + n, DistanceOracle::kUnreachable);
  std::queue<std::uint32_t> q;
  row[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const std::uint32_t u = q.front();
    q.pop();
    const std::uint16_t du = row[u];
    for_neighbors(G, u, [&](std::uint32_t w) {
      if (row[w] == DistanceOracle::kUnreachable) {
        row[w] = static_cast<std::uint16_t>(du + 1);
        q.push(w);
      }
    });
  }
}

// Shortest path from src to dst avoiding the single edge (src, dst);
// returns the path src..dst or empty if none.
std::vector<std::uint32_t> bfs_avoiding_edge(const Geometry& G,
                                             std::uint32_t src,
                                             std::uint32_t dst) {
  const std::uint32_t n = G.num_vertices();
  std::vector<std::uint32_t> parent(n, n);
  std::queue<std::uint32_t> q;
  parent[src] = src;
  q.push(src);
  while (!q.empty()) {
    const std::uint32_t u = q.front();
    q.pop();
    if (u == dst) break;
    for_neighbors(G, u, [&](std::uint32_t w) {
      if (u == src && w == dst) return;  // skip the excluded edge
      if (parent[w] == n) {
        parent[w] = u;
        q.push(w);
      }
    });
  }
  if (parent[dst] == n) return {};
  std::vector<std::uint32_t> path;
  for (std::uint32_t v = dst;; v = parent[v]) {
    path.push_back(v);
    if (v == src) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

DistanceOracle distances(const Geometry& G) {
  DistanceOracle D;
  const std::uint32_t n = G.num_vertices();
  D.n_ = n;
  D.dist_.resize(static_cast<std::size_t>(n) * n);

  const unsigned workers = std::min<unsigned>(worker_count(), n);
  if (workers <= 1) {
    for (std::uint32_t v = 0; v < n; ++v)
      bfs_row(G, v, &D.dist_[static_cast<std::size_t>(v) * n]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint32_t v = w; v < n; v += workers)
          bfs_row(G, v, &D.dist_[static_cast<std::size_t>(v) * n]);
      });
    }
    for (auto& t : pool) t.join();
  }

  int diam = 0;
  for (std::size_t i = 0; i < D.dist_.size(); ++i) {
    if (D.dist_[i] == DistanceOracle::kUnreachable)
      throw CertificationError("distances: incidence graph is disconnected");
    diam = std::max(diam, static_cast<int>(D.dist_[i]));
  }
  D.diameter_ = diam;

  // Exact girth: the shortest cycle through edge (p, L) has length
  // 1 + dist(p, L) in the graph with that edge removed.
  int girth = -1;
  for (std::uint32_t l = 0; l < G.num_lines(); ++l) {
    const std::uint32_t lv = G.line_vertex(l);
    for (std::uint32_t p : G.points_on_line[l]) {
      auto path = bfs_avoiding_edge(G, p, lv);
      if (path.empty()) continue;
      const int cycle = static_cast<int>(path.size());  // path edges + closing edge
      if (girth < 0 || cycle < girth) {
        girth = cycle;
        D.girth_cycle_ = path;
      }
    }
  }
  D.girth_ = girth;  // -1 for forests
  return D;
}

namespace {

AxiomReport check_degrees(const Geometry& G, int n) {
  AxiomReport rep;
  rep.n = n;
  rep.degree_ok = true;
  for (std::uint32_t p = 0; p < G.num_points; ++p) {
    if (G.lines_on_point[p].size() < 2) {
      rep.degree_ok = false;
      rep.violations.push_back({"degree", {p},
                                "point " + std::to_string(p) + " lies on " +
                                    std::to_string(G.lines_on_point[p].size()) +
                                    " line(s), need >= 2"});
    }
  }
  for (std::uint32_t l = 0; l < G.num_lines(); ++l) {
    if (G.points_on_line[l].size() < 2) {
      rep.degree_ok = false;
      rep.violations.push_back({"degree", {G.line_vertex(l)},
                                "line " + std::to_string(l) + " carries " +
                                    std::to_string(G.points_on_line[l].size()) +
                                    " point(s), need >= 2"});
    }
  }
  return rep;
}

AxiomReport finish_verify(const Geometry& G, const DistanceOracle& D,
                          AxiomReport rep);

}  // namespace

AxiomReport verify_polygon(const Geometry& G, int n) {
  if (n < 3) throw InputError("verify_polygon requires n >= 3");
  AxiomReport rep = check_degrees(G, n);
  try {
    DistanceOracle D = distances(G);
    rep.connected = true;
    return finish_verify(G, D, rep);
  } catch (const CertificationError&) {
    rep.connected = false;
    rep.violations.push_back({"connected", {}, "incidence graph is disconnected"});
    return rep;
  }
}

AxiomReport verify_polygon(const Geometry& G, const DistanceOracle& D, int n) {
  if (n < 3) throw InputError("verify_polygon requires n >= 3");
  AxiomReport rep = check_degrees(G, n);
  rep.connected = true;
  return finish_verify(G, D, rep);
}

namespace {

AxiomReport finish_verify(const Geometry& G, const DistanceOracle& D,
                          AxiomReport rep) {
  const int n = rep.n;
  rep.diameter = D.diameter();
  rep.girth = D.girth();

  rep.diameter_ok = D.diameter() == n;
  if (!rep.diameter_ok) {
    // Witness: a pair realizing the actual diameter.
    std::vector<std::uint32_t> pair;
    for (std::uint32_t u = 0; u < D.num_vertices() && pair.empty(); ++u)
      for (std::uint32_t v = 0; v < D.num_vertices(); ++v)
        if (D(u, v) == D.diameter()) {
          pair = {u, v};
          break;
        }
    rep.violations.push_back({"diameter", pair,
                              "diameter is " + std::to_string(D.diameter()) +
                                  ", expected " + std::to_string(n)});
  }

  rep.girth_ok = D.girth() == 2 * n;
  if (!rep.girth_ok) {
    rep.violations.push_back({"girth", D.girth_cycle(),
                              "girth is " + std::to_string(D.girth()) +
                                  ", expected " + std::to_string(2 * n)});
  }

  int s = 0, t = 0;
  rep.has_order = detect_order(G, s, t);
  if (rep.has_order) {
    rep.order = OrderParams{n, s, t};
  } else {
    rep.violations.push_back({"order", {}, "degrees are not uniform"});
  }

  rep.is_thick = true;
  for (std::uint32_t p = 0; p < G.num_points && rep.is_thick; ++p)
    if (G.lines_on_point[p].size() < 3) rep.is_thick = false;
  for (std::uint32_t l = 0; l < G.num_lines() && rep.is_thick; ++l)
    if (G.points_on_line[l].size() < 3) rep.is_thick = false;

  return rep;
}

}  // namespace

bool detect_order(const Geometry& G, int& s, int& t) {
  if (G.num_lines() == 0 || G.num_points == 0) return false;
  const std::size_t pts = G.points_on_line[0].size();
  for (const auto& l : G.points_on_line)
    if (l.size() != pts) return false;
  const std::size_t lns = G.lines_on_point[0].size();
  for (const auto& p : G.lines_on_point)
    if (p.size() != lns) return false;
  s = static_cast<int>(pts) - 1;
  t = static_cast<int>(lns) - 1;
  return true;
}

std::vector<std::uint32_t> sphere(const Geometry& G, const DistanceOracle& D,
                                  std::uint32_t vertex, int radius,
                                  SphereKind kind, bool cumulative) {
  std::vector<std::uint32_t> out;
  if (radius < 0) return out;
  const std::uint32_t n = G.num_vertices();
  for (std::uint32_t v = 0; v < n; ++v) {
    if (kind == SphereKind::Points && !G.is_point_vertex(v)) continue;
    if (kind == SphereKind::Lines && G.is_point_vertex(v)) continue;
    const int d = D(vertex, v);
    if (cumulative ? d <= radius : d == radius) out.push_back(v);
  }
  return out;
}

namespace {
std::vector<std::uint32_t> to_lines(const Geometry& G,
                                    std::vector<std::uint32_t> verts) {
  for (auto& v : verts) v = G.line_of_vertex(v);
  return verts;
}
}  // namespace

std::vector<std::uint32_t> points_at(const Geometry& G, const DistanceOracle& D,
                                     std::uint32_t vertex, int radius) {
  return sphere(G, D, vertex, radius, SphereKind::Points, false);
}
std::vector<std::uint32_t> points_within(const Geometry& G,
                                         const DistanceOracle& D,
                                         std::uint32_t vertex, int radius) {
  return sphere(G, D, vertex, radius, SphereKind::Points, true);
}
std::vector<std::uint32_t> lines_at(const Geometry& G, const DistanceOracle& D,
                                    std::uint32_t vertex, int radius) {
  return to_lines(G, sphere(G, D, vertex, radius, SphereKind::Lines, false));
}
std::vector<std::uint32_t> lines_within(const Geometry& G,
                                        const DistanceOracle& D,
                                        std::uint32_t vertex, int radius) {
  return to_lines(G, sphere(G, D, vertex, radius, SphereKind::Lines, true));
}

std::uint32_t closest_point_on_line(const Geometry& G, const DistanceOracle& D,
                                    std::uint32_t point, std::uint32_t line) {
  if (point >= G.num_points || line >= G.num_lines())
    throw InputError("closest_point_on_line: index out of range");
  int best = -1;
  std::uint32_t arg = 0;
  bool tie = false;
  std::uint32_t other = 0;
  for (std::uint32_t w : G.points_on_line[line]) {
    const int d = D(point, w);
    if (best < 0 || d < best) {
      best = d;
      arg = w;
      tie = false;
    } else if (d == best) {
      tie = true;
      other = w;
    }
  }
  if (tie)
    throw CertificationError(
        "closest_point_on_line: points " + std::to_string(arg) + " and " +
        std::to_string(other) + " on line " + std::to_string(line) +
        " are both at distance " + std::to_string(best) + " from point " +
        std::to_string(point) + " (not a generalised polygon)");
  return arg;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> opposite_pairs(
    const Geometry& G, const DistanceOracle& D, OppositeKind kind) {
  const int dmax = D.diameter();
  if (dmax % 2 != 0)
    throw InputError("opposite_pairs: diameter is odd, not a 2m-gon");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (kind == OppositeKind::PointPoint) {
    for (std::uint32_t a = 0; a < G.num_points; ++a)
      for (std::uint32_t b = 0; b < G.num_points; ++b)
        if (a != b && D(a, b) == dmax) out.emplace_back(a, b);
  } else {
    for (std::uint32_t a = 0; a < G.num_lines(); ++a)
      for (std::uint32_t b = 0; b < G.num_lines(); ++b)
        if (a != b && D(G.line_vertex(a), G.line_vertex(b)) == dmax)
          out.emplace_back(a, b);
  }
  return out;
}

namespace {
bool is_perfect_square(long long x) {
  if (x < 0) return false;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
  for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c)
    if (c * c == x) return true;
  return false;
}
}  // namespace

OrderAdmissibility validate_order(int n, int s, int t) {
  if (n < 3 || s < 1 || t < 1)
    throw InputError("validate_order requires n >= 3, s >= 1, t >= 1");
  OrderAdmissibility res;
  auto fail = [&res](std::string why) {
    res.admissible = false;
    res.reasons.push_back(std::move(why));
  };

  const long long ls = s, lt = t;
  const bool thick = s > 1 && t > 1;

  if (s == 1 && t == 1) return res;  // ordinary n-gon, any n >= 3

  switch (n) {
    case 3:
      if (s != t) fail("n = 3 requires s = t (projective plane)");
      break;
    case 4:
      if ((ls * lt * (1 + ls * lt)) % (ls + lt) != 0)
        fail("n = 4 requires st(1+st)/(s+t) integral");
      if (thick && ls > lt * lt) fail("n = 4 thick requires s <= t^2");
      if (thick && lt > ls * ls) fail("n = 4 thick requires t <= s^2");
      break;
    case 6:
      if (thick && !is_perfect_square(ls * lt))
        fail("n = 6 thick requires st to be a perfect square");
      if (thick && ls > lt * lt * lt) fail("n = 6 thick requires s <= t^3");
      if (thick && lt > ls * ls * ls) fail("n = 6 thick requires t <= s^3");
      break;
    case 8:
      if (thick && !is_perfect_square(2 * ls * lt))
        fail("n = 8 thick requires 2st to be a perfect square");
      if (thick && ls > lt * lt) fail("n = 8 thick requires s <= t^2");
      if (thick && lt > ls * ls) fail("n = 8 thick requires t <= s^2");
      break;
    case 12:
      if (s != 1 && t != 1) fail("n = 12 requires s = 1 or t = 1");
      break;
    default:
      fail("no finite generalised " + std::to_string(n) +
           "-gon with s or t > 1 (gonality must be 3, 4, 6, 8 or 12)");
  }
  return res;
}

std::pair<std::uint64_t, std::uint64_t> expected_counts(int n, std::uint64_t s,
                                                        std::uint64_t t) {
  if (n < 4 || n % 2 != 0) throw InputError("expected_counts requires even n >= 4");
  if (s * t <= 1)
    throw InputError(
        "expected_counts requires st > 1; an ordinary polygon has n points "
        "and n lines");
  const int m = n / 2;
  unsigned __int128 sm = 1, tm = 1;
  for (int i = 0; i < m; ++i) {
    sm *= s;
    tm *= t;
  }
  const unsigned __int128 core = (sm * tm - 1) / (s * t - 1);
  const unsigned __int128 pts = (1 + s) * core;
  const unsigned __int128 lns = (1 + t) * core;
  if (pts > UINT64_MAX || lns > UINT64_MAX)
    throw InputError("expected_counts: counts overflow 64 bits");
  return {static_cast<std::uint64_t>(pts), static_cast<std::uint64_t>(lns)};
}

}  // namespace gpcode
