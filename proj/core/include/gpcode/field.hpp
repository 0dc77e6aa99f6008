#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpcode/errors.hpp"

namespace gpcode {

bool is_prime(std::uint32_t n);

/// Exact arithmetic in GF(p^h), p prime, 1 <= h <= 4, p^h <= 2^16.
///
/// Elements are canonical integers in [0, p^h): the base-p digits of the
/// integer are the coefficients of the unique representative polynomial of
/// degree < h, least significant digit = constant term. For h = 1 an element
/// is simply its residue in [0, p).
class Field {
 public:
  using Elem = std::uint32_t;

  /// Builds GF(p^h). For h > 1 the modulus is the lexicographically first
  /// monic irreducible polynomial of degree h over GF(p) (coefficients scanned
  /// as little-endian base-p integers), so a given (p, h) always yields the
  /// same field, bit for bit. Irreducibility is verified by exhaustive trial
  /// division by all monic polynomials of degree <= h/2.
  static Field make(std::uint32_t p, std::uint32_t h = 1);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return h_; }
  std::uint32_t size() const { return q_; }

  /// Monic modulus x^h + c_{h-1} x^{h-1} + ... + c_0, stored as
  /// (c_0, ..., c_{h-1}); empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws InputError on 0
  Elem pow(Elem a, std::uint64_t e) const;

  /// k * 1_F for any integer k (k may be negative).
  Elem from_int(long long k) const;

  bool operator==(const Field& o) const { return p_ == o.p_ && h_ == o.h_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string name() const;             // e.g. "GF(9)"
  std::string elem_str(Elem a) const;   // canonical integer encoding

 private:
  Field() = default;

  std::uint32_t p_ = 0;
  std::uint32_t h_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
};

struct FieldConditionResult {
  bool holds = false;
  std::vector<int> failing_k;        // k in [1, m-1] with sum_{j<=k}(-s)^j = 0
  std::vector<Field::Elem> values;   // the m-1 partial sums, index 0 <-> k=1
};

/// Evaluates sum_{j=0}^{k} (-s)^j in F for k = 1..m-1; holds iff all nonzero.
FieldConditionResult field_condition(long long s, int m, const Field& F);

}  // namespace gpcode
