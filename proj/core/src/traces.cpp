#include "gpcode/traces.hpp"

#include <algorithm>
#include <set>

namespace gpcode {

namespace {

int gonality(const DistanceOracle& D) {
  const int n = D.diameter();
  if (n < 4 || n % 2 != 0)
    throw InputError("operation requires a 2m-gon (incidence diameter " +
                     std::to_string(n) + ")");
  return n;
}

}  // namespace

DistanceTrace distance_trace(const Geometry& G, const DistanceOracle& D, int d,
                             std::uint32_t x, std::uint32_t y) {
  const int n = gonality(D);
  const int m = n / 2;
  if (d < 1 || d > m)
    throw InputError("distance_trace: d must be in [1, m]");
  const bool want_points = d % 2 == 0;
  if (G.is_point_vertex(x) != want_points || G.is_point_vertex(y) != want_points)
    throw InputError(
        "distance_trace: x and y must both be points for even d and both "
        "lines for odd d");
  if (D(x, y) != n)
    throw InputError("distance_trace: x and y are not opposite (distance " +
                     std::to_string(D(x, y)) + ", need " + std::to_string(n) +
                     ")");
  DistanceTrace T{d, x, y, {}};
  for (std::uint32_t p = 0; p < G.num_points; ++p)
    if (D(x, p) == d && D(y, p) == n - d) T.points.push_back(p);
  if (T.points.empty())
    throw CertificationError(
        "distance_trace: empty trace (geometry is not a generalised polygon)");
  return T;
}

std::vector<DistanceTrace> enumerate_traces(const Geometry& G,
                                            const DistanceOracle& D, int d) {
  const int n = gonality(D);
  const int m = n / 2;
  if (d < 1 || d > m) throw InputError("enumerate_traces: d must be in [1, m]");
  const bool points_kind = d % 2 == 0;
  const std::uint32_t begin = points_kind ? 0 : G.num_points;
  const std::uint32_t end = points_kind ? G.num_points : G.num_vertices();

  std::vector<DistanceTrace> out;
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint32_t x = begin; x < end; ++x) {
    for (std::uint32_t y = begin; y < end; ++y) {
      if (D(x, y) != n) continue;
      DistanceTrace T{d, x, y, {}};
      for (std::uint32_t p = 0; p < G.num_points; ++p)
        if (D(x, p) == d && D(y, p) == n - d) T.points.push_back(p);
      if (T.points.empty())
        throw CertificationError("enumerate_traces: empty trace");
      if (seen.insert(T.points).second) out.push_back(std::move(T));
    }
  }
  return out;
}

TraceIndex::TraceIndex(const Geometry& G, const DistanceOracle& D) {
  const int m = gonality(D) / 2;
  for (int d = 1; d <= m; ++d)
    for (const DistanceTrace& T : enumerate_traces(G, D, d))
      index_.emplace(T.points, TraceMatch{T.d, T.x, T.y});
}

std::optional<TraceMatch> TraceIndex::classify(
    std::span<const std::uint32_t> sorted_points) const {
  const std::vector<std::uint32_t> key(sorted_points.begin(), sorted_points.end());
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TraceMatch> classify_support(const Geometry& G,
                                           const DistanceOracle& D,
                                           std::span<const std::uint32_t> S) {
  return TraceIndex(G, D).classify(S);
}

BlockingVerdict is_x_blocking(const Geometry& G, const DistanceOracle& D,
                              std::span<const std::uint32_t> B) {
  if (B.empty()) throw InputError("is_x_blocking: empty set");
  const int n = gonality(D);
  for (std::uint32_t v = 0; v < G.num_points; ++v) {
    bool met = false;
    for (std::uint32_t b : B) {
      if (D(v, b) <= n - 2) {
        met = true;
        break;
      }
    }
    if (!met) return {false, v};
  }
  return {true, std::nullopt};
}

BlockingIndex::BlockingIndex(const Geometry& G, const DistanceOracle& D) {
  const int n = gonality(D);
  P_ = G.num_points;
  words_ = (P_ + 63) / 64;
  masks_.assign(static_cast<std::size_t>(P_) * words_, 0);
  for (std::uint32_t v = 0; v < P_; ++v)
    for (std::uint32_t b = 0; b < P_; ++b)
      if (D(v, b) <= n - 2)
        masks_[static_cast<std::size_t>(v) * words_ + b / 64] |= 1ull << (b % 64);
}

bool BlockingIndex::blocks(std::span<const std::uint32_t> B) const {
  // Small |B|: test each v against the member list directly.
  for (std::uint32_t v = 0; v < P_; ++v) {
    const std::uint64_t* mask = &masks_[static_cast<std::size_t>(v) * words_];
    bool met = false;
    for (std::uint32_t b : B) {
      if (mask[b / 64] & (1ull << (b % 64))) {
        met = true;
        break;
      }
    }
    if (!met) return false;
  }
  return true;
}

namespace {

// Lexicographic k-subset scan calling fn on each subset until fn returns
// true; returns the accepted subset or empty.
template <typename Fn>
std::vector<std::uint32_t> scan_subsets(std::uint32_t P, std::uint32_t k,
                                        std::uint64_t* budget, Fn&& fn) {
  if (k == 0 || k > P) return {};
  std::vector<std::uint32_t> comb(k);
  for (std::uint32_t i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    if (*budget == 0)
      throw CostGuardExceeded("subset scan exceeded its work guard");
    --*budget;
    if (fn(comb)) return comb;
    std::uint32_t i = k;
    while (i > 0 && comb[i - 1] == P - (k - i) - 1) --i;
    if (i == 0) return {};
    ++comb[i - 1];
    for (std::uint32_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace

MinBlockingResult min_x_blocking_size(const Geometry& G, const DistanceOracle& D,
                                      std::uint32_t cap) {
  gonality(D);
  if (cap == 0) throw InputError("min_x_blocking_size: cap must be >= 1");
  const BlockingIndex idx(G, D);
  std::uint64_t budget = 400'000'000;

  int s = 0, t = 0;
  const bool ordered = detect_order(G, s, t);

  for (std::uint32_t k = 1; k <= std::min(cap, G.num_points); ++k) {
    // Lines block (every line meets every P_{<=2m-2}(v), Lemma-G4s style), so
    // once all smaller sizes are refuted a line is a direct witness.
    if (ordered && k == static_cast<std::uint32_t>(s) + 1) {
      const auto& line = G.points_on_line[0];
      std::vector<std::uint32_t> pts(line.begin(), line.end());
      std::sort(pts.begin(), pts.end());
      if (idx.blocks(pts))
        return {k, MinBlockingResult::Certificate::Found, pts};
    }
    auto found = scan_subsets(G.num_points, k, &budget,
                              [&](const std::vector<std::uint32_t>& B) {
                                return idx.blocks(B);
                              });
    if (!found.empty())
      return {k, MinBlockingResult::Certificate::Exhaustive, found};
  }
  throw CostGuardExceeded(
      "min_x_blocking_size: no X-blocking set of size <= " +
      std::to_string(cap) + "; raise the cap to certify the minimum");
}

std::vector<std::vector<std::uint32_t>> blocking_sets_of_size(
    const Geometry& G, const DistanceOracle& D, std::uint32_t k,
    std::uint64_t work_guard) {
  gonality(D);
  if (k == 0) throw InputError("blocking_sets_of_size: k must be >= 1");
  const BlockingIndex idx(G, D);
  std::vector<std::vector<std::uint32_t>> out;
  std::uint64_t budget = work_guard;
  if (k > G.num_points) return out;
  std::vector<std::uint32_t> comb(k);
  for (std::uint32_t i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    if (budget-- == 0)
      throw CostGuardExceeded("blocking_sets_of_size exceeded its work guard");
    if (idx.blocks(comb)) out.push_back(comb);
    std::uint32_t i = k;
    while (i > 0 && comb[i - 1] == G.num_points - (k - i) - 1) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::uint32_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

bool is_line_blocking(const Geometry& G, std::span<const std::uint32_t> B) {
  std::vector<bool> in_b(G.num_points, false);
  for (std::uint32_t b : B) {
    if (b >= G.num_points) throw InputError("is_line_blocking: point out of range");
    in_b[b] = true;
  }
  for (const auto& line : G.points_on_line) {
    bool met = false;
    for (std::uint32_t p : line)
      if (in_b[p]) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

std::uint64_t line_blocking_bound(const Geometry& G, const DistanceOracle& D) {
  const int n = gonality(D);
  int s = 0, t = 0;
  if (!detect_order(G, s, t))
    throw InputError("line_blocking_bound: geometry has no order");
  if (s * t <= 1)
    throw InputError("line_blocking_bound requires st > 1");
  const int m = n / 2;
  unsigned __int128 sm = 1, tm = 1;
  for (int i = 0; i < m; ++i) {
    sm *= static_cast<unsigned>(s);
    tm *= static_cast<unsigned>(t);
  }
  return static_cast<std::uint64_t>((sm * tm - 1) /
                                    (static_cast<unsigned>(s) * t - 1));
}

PerpGeometry perp_geometry(const Geometry& G, const DistanceOracle& D,
                           std::uint32_t x, PerpVariant variant) {
  const int n = gonality(D);
  if (x >= G.num_points) throw InputError("perp_geometry: point out of range");

  PerpGeometry P;
  P.base_point = x;
  P.variant = variant;
  P.point_map = points_at(G, D, x, 2);
  if (variant == PerpVariant::Augmented) {
    P.point_map.push_back(x);
    std::sort(P.point_map.begin(), P.point_map.end());
  }
  std::map<std::uint32_t, std::uint32_t> local;
  for (std::uint32_t i = 0; i < P.point_map.size(); ++i)
    local.emplace(P.point_map[i], i);

  std::vector<std::vector<std::uint32_t>> lines;
  std::vector<PerpLineOrigin> origins;
  std::set<std::vector<std::uint32_t>> seen;

  auto add_line = [&](std::vector<std::uint32_t> global_pts, PerpLineOrigin o) {
    std::vector<std::uint32_t> line;
    for (std::uint32_t g : global_pts) line.push_back(local.at(g));
    std::sort(line.begin(), line.end());
    if (seen.insert(line).second) {
      lines.push_back(std::move(line));
      origins.push_back(o);
    }
  };

  // Pencil lines: points of L at distance 2 from x (all points of L but x),
  // plus x itself in the augmented variant.
  for (std::uint32_t l : lines_within(G, D, x, 1)) {
    std::vector<std::uint32_t> pts;
    for (std::uint32_t p : G.points_on_line[l])
      if (p != x) pts.push_back(p);
    if (variant == PerpVariant::Augmented) pts.push_back(x);
    add_line(std::move(pts), {PerpLineOrigin::Kind::Pencil, l});
  }

  // Trace lines T_{2,x,y} for y opposite x.
  for (std::uint32_t y = 0; y < G.num_points; ++y) {
    if (D(x, y) != n) continue;
    std::vector<std::uint32_t> pts;
    for (std::uint32_t p = 0; p < G.num_points; ++p)
      if (D(x, p) == 2 && D(y, p) == n - 2) pts.push_back(p);
    if (pts.empty()) throw CertificationError("perp_geometry: empty trace");
    add_line(std::move(pts), {PerpLineOrigin::Kind::Trace, y});
  }

  P.geometry = geometry_build(std::move(lines),
                              static_cast<std::uint32_t>(P.point_map.size()),
                              "perp(" + G.label + ", " + std::to_string(x) + ")");
  P.line_origin = std::move(origins);
  return P;
}

bool is_projective_point(const Geometry& G, const DistanceOracle& D,
                         std::uint32_t x, PerpVariant variant) {
  PerpGeometry P;
  try {
    P = perp_geometry(G, D, x, variant);
  } catch (const InputError&) {
    return false;  // a point on no trace-line, e.g. in an ordinary polygon
  }
  const Geometry& H = P.geometry;
  const std::uint32_t np = H.num_points;
  if (np < 4 || H.num_lines() < 2) return false;

  // Two distinct points on exactly one common line.
  for (std::uint32_t a = 0; a < np; ++a) {
    for (std::uint32_t b = a + 1; b < np; ++b) {
      int common = 0;
      for (std::uint32_t l : H.lines_on_point[a])
        common += std::binary_search(H.points_on_line[l].begin(),
                                     H.points_on_line[l].end(), b);
      if (common != 1) return false;
    }
  }
  // Two distinct lines meeting in exactly one point.
  for (std::uint32_t l1 = 0; l1 < H.num_lines(); ++l1) {
    for (std::uint32_t l2 = l1 + 1; l2 < H.num_lines(); ++l2) {
      std::vector<std::uint32_t> inter;
      std::set_intersection(H.points_on_line[l1].begin(),
                            H.points_on_line[l1].end(),
                            H.points_on_line[l2].begin(),
                            H.points_on_line[l2].end(),
                            std::back_inserter(inter));
      if (inter.size() != 1) return false;
    }
  }
  // A quadrilateral: four points, no three collinear. With the two axioms
  // above it suffices to find two lines and two further points off both.
  auto collinear = [&H](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    for (std::uint32_t l : H.lines_on_point[a])
      if (std::binary_search(H.points_on_line[l].begin(),
                             H.points_on_line[l].end(), b) &&
          std::binary_search(H.points_on_line[l].begin(),
                             H.points_on_line[l].end(), c))
        return true;
    return false;
  };
  for (std::uint32_t a = 0; a < np; ++a)
    for (std::uint32_t b = a + 1; b < np; ++b)
      for (std::uint32_t c = b + 1; c < np; ++c) {
        if (collinear(a, b, c)) continue;
        for (std::uint32_t e = c + 1; e < np; ++e)
          if (!collinear(a, b, e) && !collinear(a, c, e) && !collinear(b, c, e))
            return true;
      }
  return false;
}

bool projective_trace_blocking_check(const Geometry& G, const DistanceOracle& D,
                                     std::uint32_t x) {
  const int n = gonality(D);
  if (x >= G.num_points)
    throw InputError("projective_trace_blocking_check: point out of range");
  for (std::uint32_t y = 0; y < G.num_points; ++y) {
    if (D(x, y) != n) continue;
    std::vector<std::uint32_t> pts;
    for (std::uint32_t p = 0; p < G.num_points; ++p)
      if (D(x, p) == 2 && D(y, p) == n - 2) pts.push_back(p);
    if (pts.empty() || !is_x_blocking(G, D, pts).is_blocking) return false;
  }
  return true;
}

StarWitness star_witness(const Geometry& G, const DistanceOracle& D,
                         std::span<const std::uint32_t> C, std::uint32_t L,
                         int d) {
  const int n = gonality(D);
  const int m = n / 2;
  if (L >= G.num_lines()) throw InputError("star_witness: line out of range");
  if (d < 1 || d > m - 1) throw InputError("star_witness: d must be in [1, m-1]");
  int s = 0, t = 0;
  if (detect_order(G, s, t) && C.size() > static_cast<std::size_t>(s))
    throw InputError("star_witness requires |C| <= s");

  const std::uint32_t Lv = G.line_vertex(L);
  std::vector<bool> need(G.num_points, false);  // C intersect P_1(L)
  for (std::uint32_t c : C)
    need[c] = std::find(G.points_on_line[L].begin(), G.points_on_line[L].end(),
                        c) != G.points_on_line[L].end();

  StarWitness w;
  bool found_line = false;
  for (std::uint32_t M = 0; M < G.num_lines() && !found_line; ++M) {
    if (D(Lv, G.line_vertex(M)) > 2 * d - 2) continue;
    bool ok = true;
    for (std::uint32_t c : C)
      if ((D(G.line_vertex(M), c) <= 2 * d - 1) != need[c]) {
        ok = false;
        break;
      }
    if (ok) {
      w.line = M;
      found_line = true;
    }
  }
  if (!found_line)
    throw CertificationError(
        "star_witness: no line witness exists (geometry or certification bug)");

  bool found_point = false;
  for (std::uint32_t v = 0; v < G.num_points && !found_point; ++v) {
    if (D(v, Lv) > 2 * d - 1) continue;
    bool ok = true;
    for (std::uint32_t c : C)
      if ((D(v, c) <= 2 * d) != need[c]) {
        ok = false;
        break;
      }
    if (ok) {
      w.point = v;
      found_point = true;
    }
  }
  if (!found_point)
    throw CertificationError(
        "star_witness: no point witness exists (geometry or certification bug)");
  return w;
}

}  // namespace gpcode
