#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gpcode/code.hpp"
#include "gpcode/geometry.hpp"

namespace gpcode {

/// Distance d-trace T_{d,x,y} = P_d(x) intersect P_{2m-d}(y) for opposite
/// elements x, y (both points iff d even, both lines iff d odd). x, y are
/// global vertex ids.
struct DistanceTrace {
  int d = 0;
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::vector<std::uint32_t> points;  // ascending, nonempty
};

DistanceTrace distance_trace(const Geometry& G, const DistanceOracle& D, int d,
                             std::uint32_t x, std::uint32_t y);

/// All distance d-traces, deduplicated by point set; each retained trace
/// carries the lexicographically least (x, y) witness, and the list is in
/// that witness order.
std::vector<DistanceTrace> enumerate_traces(const Geometry& G,
                                            const DistanceOracle& D, int d);

/// Point-set -> least (d, x, y) witness, over all d in 1..m.
class TraceIndex {
 public:
  TraceIndex(const Geometry& G, const DistanceOracle& D);
  std::optional<TraceMatch> classify(std::span<const std::uint32_t> sorted_points) const;
  std::size_t size() const { return index_.size(); }
  const std::map<std::vector<std::uint32_t>, TraceMatch>& map() const {
    return index_;
  }

 private:
  std::map<std::vector<std::uint32_t>, TraceMatch> index_;
};

/// First trace (in (d, x, y) order) whose point set equals S, if any.
std::optional<TraceMatch> classify_support(const Geometry& G,
                                           const DistanceOracle& D,
                                           std::span<const std::uint32_t> S);

struct BlockingVerdict {
  bool is_blocking = false;
  std::optional<std::uint32_t> witness;  // a point opposite every point of B
};

/// B is X-blocking iff it meets P_{<=2m-2}(v) for every point v; the witness
/// is the first v (in index order) opposite all of B.
BlockingVerdict is_x_blocking(const Geometry& G, const DistanceOracle& D,
                              std::span<const std::uint32_t> B);

/// Bitset accelerator for scanning many candidate blocking sets.
class BlockingIndex {
 public:
  BlockingIndex(const Geometry& G, const DistanceOracle& D);
  /// Does B meet P_{<=2m-2}(v) for every v?
  bool blocks(std::span<const std::uint32_t> B) const;
  std::uint32_t num_points() const { return P_; }

 private:
  std::uint32_t P_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> masks_;  // per point: bitset of P_{<=2m-2}(v)
};

struct MinBlockingResult {
  std::uint32_t size = 0;
  enum class Certificate {
    Exhaustive,  // witness found by the full subset scan of its size
    Found        // witness exhibited directly (a line) after refuting smaller sizes
  } certificate = Certificate::Exhaustive;
  std::vector<std::uint32_t> example;
};

/// Exhaustively refutes every subset size below the answer and exhibits a
/// minimum X-blocking set. Sizes above `cap` are not scanned; if the answer
/// cannot be certified within the cap the cost guard throws.
MinBlockingResult min_x_blocking_size(const Geometry& G, const DistanceOracle& D,
                                      std::uint32_t cap);

/// All X-blocking k-subsets, in lexicographic order. `work_guard` bounds the
/// number of candidate subsets scanned.
std::vector<std::vector<std::uint32_t>> blocking_sets_of_size(
    const Geometry& G, const DistanceOracle& D, std::uint32_t k,
    std::uint64_t work_guard = 200'000'000);

/// B meets every line.
bool is_line_blocking(const Geometry& G, std::span<const std::uint32_t> B);
/// Lower bound (s^m t^m - 1)/(st - 1) for blocking sets with respect to
/// lines; requires a certified 2m-gon with st > 1.
std::uint64_t line_blocking_bound(const Geometry& G, const DistanceOracle& D);

enum class PerpVariant { Literal, Augmented };

struct PerpLineOrigin {
  enum class Kind { Pencil, Trace } kind;
  std::uint32_t id;  // line id, or the opposite point y
};

/// Perp-geometry at x: points P_2(x) (plus x itself in the augmented
/// variant), lines the pencil of x restricted to those points together with
/// the distance-2 traces T_{2,x,y}, deduplicated as point sets.
struct PerpGeometry {
  std::uint32_t base_point = 0;
  PerpVariant variant = PerpVariant::Augmented;
  Geometry geometry;                        // local indices
  std::vector<std::uint32_t> point_map;     // local point -> global point
  std::vector<PerpLineOrigin> line_origin;  // aligned with geometry lines
};

PerpGeometry perp_geometry(const Geometry& G, const DistanceOracle& D,
                           std::uint32_t x, PerpVariant variant);

/// Projective-plane axioms on the perp-geometry at x: two points on exactly
/// one common line, two lines meeting in exactly one point, and a
/// quadrilateral (four points, no three collinear).
bool is_projective_point(const Geometry& G, const DistanceOracle& D,
                         std::uint32_t x, PerpVariant variant);

/// Every T_{2,x,y} with y opposite x is X-blocking.
bool projective_trace_blocking_check(const Geometry& G, const DistanceOracle& D,
                                     std::uint32_t x);

struct StarWitness {
  std::uint32_t line = 0;
  std::uint32_t point = 0;
};

/// For |C| <= s and d in 1..m-1: the first line M in L_{<=2d-2}(L) with
/// C intersect P_{<=2d-1}(M) = C intersect P_1(L), and the first point v in
/// P_{<=2d-1}(L) with C intersect P_{<=2d}(v) = C intersect P_1(L).
/// Absence of either witness on a certified polygon is a structural bug and
/// throws.
StarWitness star_witness(const Geometry& G, const DistanceOracle& D,
                         std::span<const std::uint32_t> C, std::uint32_t L,
                         int d);

}  // namespace gpcode
