#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gpcode/field.hpp"
#include "gpcode/geometry.hpp"

namespace gpcode {

/// An F-valued function on the point set of a geometry.
struct PointVector {
  Field field;
  std::vector<Field::Elem> coeffs;
};

PointVector indicator(const Field& F, std::uint32_t num_points,
                      std::span<const std::uint32_t> points);
std::vector<std::uint32_t> support(const PointVector& f);
std::uint32_t weight(const PointVector& f);
bool is_zero(const PointVector& f);

/// <f, g> = sum_x f(x) g(x). Throws on field or length mismatch.
Field::Elem inner_product(const PointVector& f, const PointVector& g);
/// Entrywise product.
PointVector pointwise_product(const PointVector& f, const PointVector& g);
PointVector subtract(const PointVector& f, const PointVector& g);

/// True iff f is nonzero on every point of line L.
bool covered(const Geometry& G, std::uint32_t line, const PointVector& f);

/// The code spanned by the line indicator vectors, in line order, with its
/// reduced row-echelon form (pivots chosen leftmost), rank, and a parity
/// check basis of the dual.
class LinearCode {
 public:
  LinearCode(const Geometry& G, Field F);

  const Geometry& geometry() const { return *geom_; }
  const Field& field() const { return field_; }
  std::uint32_t length() const { return geom_->num_points; }
  std::uint32_t rank() const { return static_cast<std::uint32_t>(rref_.size()); }
  std::uint32_t dual_dimension() const { return length() - rank(); }

  const std::vector<std::vector<Field::Elem>>& generator_rows() const {
    return gen_rows_;
  }
  const std::vector<std::vector<Field::Elem>>& rref_rows() const { return rref_; }
  const std::vector<std::uint32_t>& pivot_columns() const { return pivots_; }
  const std::vector<std::vector<Field::Elem>>& parity_check() const {
    return parity_;
  }

  /// Membership in the row space, via the parity-check product.
  bool contains(const PointVector& v) const;
  bool contains(std::span<const Field::Elem> coeffs) const;
  /// Membership in the dual code: orthogonal to every generator.
  bool dual_contains(const PointVector& v) const;
  bool dual_contains(std::span<const Field::Elem> coeffs) const;

  /// Line id whose point set equals the given ascending support, if any.
  std::optional<std::uint32_t> line_with_point_set(
      std::span<const std::uint32_t> sorted_points) const;

 private:
  void check_compatible(std::size_t len, const Field& f) const;

  const Geometry* geom_;
  Field field_;
  std::vector<std::vector<Field::Elem>> gen_rows_;
  std::vector<std::vector<Field::Elem>> rref_;
  std::vector<std::uint32_t> pivots_;
  std::vector<std::vector<Field::Elem>> parity_;
};

LinearCode code_build(const Geometry& G, const Field& F);

/// The weighted vector c_v = sum_{k=0}^{m-1} (sum_{j=0}^{m-k-1} (-s)^j)
/// i_{P_{2k}(v)} of a certified 2m-gon of order (s, t).
PointVector weighted_vector(const Geometry& G, const DistanceOracle& D,
                            std::uint32_t point, const Field& F);

struct CxLineCheck {
  bool ok = false;
  std::uint32_t witness_line = 0;  // valid when !ok
  Field::Elem got = 0;
};

/// Checks <f, i_L> = 1 for every line L; first failing line is the witness.
CxLineCheck line_products_all_one(const LinearCode& code, const PointVector& f);
/// Checks <c_v, i_L> = 1 for every line L.
CxLineCheck verify_cx_line(const LinearCode& code, const DistanceOracle& D,
                           std::uint32_t v);
/// Checks c_v - c_w lies in the dual code.
bool verify_cx_dual(const LinearCode& code, const DistanceOracle& D,
                    std::uint32_t v, std::uint32_t w);

struct TraceMatch {
  int d = 0;
  std::uint32_t x = 0;  // global vertex ids: points < P, lines >= P
  std::uint32_t y = 0;
};

struct ClassifiedWord {
  std::vector<Field::Elem> coeffs;      // normalized: leading coefficient 1
  std::uint32_t weight = 0;
  std::vector<std::uint32_t> support;   // ascending point ids
  std::optional<TraceMatch> trace_match;
  bool is_line_multiple = false;
};

/// The complete set of nonzero codewords of weight <= w_max up to scalar
/// multiples, normalized (leading coefficient 1) and ordered by (weight,
/// support, coefficients). A weight-w word exists iff its support columns of
/// the parity-check matrix admit a dependency with all-nonzero coefficients;
/// the enumeration meets in the middle over ceil(w/2)-column combinations
/// joined on their exact syndromes, so it has no false positives or
/// negatives. The default cost guard w_max <= s+2 is overridable.
std::vector<ClassifiedWord> low_weight_codewords(const LinearCode& code,
                                                 std::uint32_t w_max,
                                                 bool override_guard = false);

struct MinWeightResult {
  std::uint32_t weight = 0;
  std::vector<ClassifiedWord> words;
};

/// Smallest w with a nonzero codeword of weight w, ascending search under
/// the same cost guard.
MinWeightResult min_weight(const LinearCode& code, bool override_guard = false);

struct DualWeightResult {
  enum class Status { Exact, ExceedsCap } status = Status::Exact;
  std::uint32_t weight = 0;  // exact minimum, or the cap that was exhausted
  bool by_full_enumeration = false;
};

/// Exact dual minimum weight by full enumeration of the dual space when it
/// has at most full_enum_limit scalar classes; otherwise a cap-bounded
/// low-weight search that either finds the exact value <= cap or certifies
/// "no dual word of weight <= cap".
DualWeightResult dual_min_weight(const LinearCode& code, std::uint32_t cap,
                                 std::uint64_t full_enum_limit = 1u << 16);

}  // namespace gpcode
