#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gpcode/errors.hpp"

namespace gpcode {

/// Immutable point-line incidence structure. Vertices of the incidence graph
/// are indexed points first (0 .. P-1) then lines (P .. P+L-1).
struct Geometry {
  std::uint32_t num_points = 0;
  std::vector<std::vector<std::uint32_t>> points_on_line;  // input order kept
  std::vector<std::vector<std::uint32_t>> lines_on_point;  // ascending
  std::string label;

  std::uint32_t num_lines() const {
    return static_cast<std::uint32_t>(points_on_line.size());
  }
  std::uint32_t num_vertices() const { return num_points + num_lines(); }

  std::uint32_t line_vertex(std::uint32_t line) const { return num_points + line; }
  bool is_point_vertex(std::uint32_t v) const { return v < num_points; }
  std::uint32_t line_of_vertex(std::uint32_t v) const { return v - num_points; }
};

/// Validates and assembles both incidence maps. Errors on out-of-range
/// indices, duplicate points within a line, empty lines, and points that lie
/// on no line.
Geometry geometry_build(std::vector<std::vector<std::uint32_t>> lines,
                        std::uint32_t num_points, std::string label = "");

/// Dense all-pairs incidence-graph distances plus diameter and girth.
class DistanceOracle {
 public:
  static constexpr std::uint16_t kUnreachable = 0xFFFF;

  int operator()(std::uint32_t u, std::uint32_t v) const {
    return dist_[static_cast<std::size_t>(u) * n_ + v];
  }
  int diameter() const { return diameter_; }
  int girth() const { return girth_; }
  std::uint32_t num_vertices() const { return n_; }
  /// One shortest cycle (vertex list) realizing the girth.
  const std::vector<std::uint32_t>& girth_cycle() const { return girth_cycle_; }

 private:
  friend DistanceOracle distances(const Geometry&);
  std::uint32_t n_ = 0;
  std::vector<std::uint16_t> dist_;
  int diameter_ = -1;
  int girth_ = -1;
  std::vector<std::uint32_t> girth_cycle_;
};

/// BFS from every vertex (parallel over sources, capped by GPCODE_THREADS;
/// the table is deterministic regardless of worker count). Girth is exact,
/// via one BFS per edge. Throws CertificationError if disconnected.
DistanceOracle distances(const Geometry& G);

struct OrderParams {
  int n = 0;  // gonality
  int s = 0;  // points per line minus one
  int t = 0;  // lines per point minus one
  int m() const { return n / 2; }
};

struct AxiomViolation {
  std::string check;                   // "degree", "diameter", "girth", ...
  std::vector<std::uint32_t> vertices; // offending pair or cycle
  std::string detail;
};

struct AxiomReport {
  int n = 0;
  bool degree_ok = false;
  bool connected = false;
  bool diameter_ok = false;
  bool girth_ok = false;
  bool has_order = false;
  OrderParams order;
  bool is_thick = false;
  int diameter = -1;
  int girth = -1;
  std::vector<AxiomViolation> violations;

  /// Weak generalised n-gon certificate: diameter n and girth 2n on a
  /// connected incidence graph with all degrees >= 2.
  bool certified() const {
    return degree_ok && connected && diameter_ok && girth_ok;
  }
};

/// Certifies G as a weak generalised n-gon; failures are reported with
/// witnesses, never thrown. Requires n >= 3.
AxiomReport verify_polygon(const Geometry& G, int n);
AxiomReport verify_polygon(const Geometry& G, const DistanceOracle& D, int n);

/// Detects the order (s, t) if every line has equally many points and every
/// point equally many lines; returns false otherwise.
bool detect_order(const Geometry& G, int& s, int& t);

enum class SphereKind { Points, Lines, Both };

/// Gamma_i(x) / P_i(x) / L_i(x) and cumulative variants, as global vertex
/// ids sorted ascending. Radius 0 gives {x} filtered by kind; negative radii
/// give the empty set (cumulative or not).
std::vector<std::uint32_t> sphere(const Geometry& G, const DistanceOracle& D,
                                  std::uint32_t vertex, int radius,
                                  SphereKind kind, bool cumulative);

/// P_i(x) and P_{<=i}(x) as point ids.
std::vector<std::uint32_t> points_at(const Geometry& G, const DistanceOracle& D,
                                     std::uint32_t vertex, int radius);
std::vector<std::uint32_t> points_within(const Geometry& G,
                                         const DistanceOracle& D,
                                         std::uint32_t vertex, int radius);
/// L_i(x) and L_{<=i}(x) as line ids.
std::vector<std::uint32_t> lines_at(const Geometry& G, const DistanceOracle& D,
                                    std::uint32_t vertex, int radius);
std::vector<std::uint32_t> lines_within(const Geometry& G,
                                        const DistanceOracle& D,
                                        std::uint32_t vertex, int radius);

/// The unique point on line L closest to point v. Throws CertificationError
/// if the minimizer is not unique (the geometry is then not a generalised
/// polygon).
std::uint32_t closest_point_on_line(const Geometry& G, const DistanceOracle& D,
                                    std::uint32_t point, std::uint32_t line);

enum class OppositeKind { PointPoint, LineLine };

/// All ordered pairs of the given kind at the maximum distance (the
/// diameter), as local point or line ids, sorted lexicographically.
std::vector<std::pair<std::uint32_t, std::uint32_t>> opposite_pairs(
    const Geometry& G, const DistanceOracle& D, OppositeKind kind);

struct OrderAdmissibility {
  bool admissible = true;
  std::vector<std::string> reasons;
};

/// Arithmetic feasibility of a generalised n-gon of order (s, t):
/// the gonality case list, the n = 4 integrality condition, the perfect
/// square conditions for n = 6 and 8, and the thick inequalities.
OrderAdmissibility validate_order(int n, int s, int t);

/// Point and line counts of a finite weak generalised 2m-gon of order (s,t),
/// st > 1: ((1+s)(s^m t^m - 1)/(st-1), (1+t)(s^m t^m - 1)/(st-1)).
/// Throws InputError for st = 1 (an ordinary polygon has n points, n lines).
std::pair<std::uint64_t, std::uint64_t> expected_counts(int n, std::uint64_t s,
                                                        std::uint64_t t);

/// Worker cap from GPCODE_THREADS (>= 1); used by parallel BFS.
unsigned worker_count();

}  // namespace gpcode
