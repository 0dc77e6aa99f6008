#include "gpcode/field.hpp"

#include <algorithm>
#include <array>

namespace gpcode {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 16;
constexpr std::uint32_t kMaxDegree = 4;

// Coefficient scratch for products of two degree-<4 polynomials.
using Digits = std::array<std::uint32_t, 2 * kMaxDegree>;

Digits to_digits(Field::Elem a, std::uint32_t p) {
  Digits d{};
  for (std::size_t i = 0; a != 0; ++i, a /= p) d[i] = a % p;
  return d;
}

Field::Elem from_digits(const Digits& d, std::uint32_t p, std::uint32_t h) {
  Field::Elem a = 0;
  for (std::size_t i = h; i-- > 0;) a = a * p + d[i];
  return a;
}

// Polynomials over GF(p) as little-endian coefficient vectors; the vectors
// below always carry an explicit (possibly zero) leading slot.

std::uint32_t poly_deg(const std::vector<std::uint32_t>& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<std::uint32_t>(i);
  return 0;
}

// Remainder of f by monic g, in place.
void poly_mod(std::vector<std::uint32_t>& f, const std::vector<std::uint32_t>& g,
              std::uint32_t p) {
  const std::uint32_t dg = poly_deg(g);
  for (std::size_t i = f.size(); i-- > dg;) {
    const std::uint64_t c = f[i];
    if (c == 0) continue;
    f[i] = 0;
    for (std::uint32_t j = 0; j < dg; ++j) {
      const std::uint64_t sub = c * g[j] % p;
      f[i - dg + j] = static_cast<std::uint32_t>((f[i - dg + j] + p - sub) % p);
    }
  }
}

bool poly_is_zero(const std::vector<std::uint32_t>& f) {
  return std::all_of(f.begin(), f.end(), [](std::uint32_t c) { return c == 0; });
}

// Monic f of degree h is irreducible iff no monic polynomial of degree
// 1..h/2 divides it; exhaustive trial division covers h <= 4.
bool is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t h,
                    std::uint32_t p) {
  for (std::uint32_t dd = 1; dd <= h / 2; ++dd) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < dd; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::vector<std::uint32_t> g(dd + 1, 0);
      std::uint64_t v = k;
      for (std::uint32_t i = 0; i < dd; ++i, v /= p)
        g[i] = static_cast<std::uint32_t>(v % p);
      g[dd] = 1;
      std::vector<std::uint32_t> r = f;
      poly_mod(r, g, p);
      if (poly_is_zero(r)) return false;
    }
  }
  return true;
}

}  // namespace

Field Field::make(std::uint32_t p, std::uint32_t h) {
  if (!is_prime(p))
    throw InputError("field characteristic must be prime, got " + std::to_string(p));
  if (h < 1 || h > kMaxDegree)
    throw InputError("extension degree must be in [1, 4], got " + std::to_string(h));
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < h; ++i) q *= p;
  if (q > kMaxOrder)
    throw InputError("field order " + std::to_string(q) + " exceeds 2^16");

  Field F;
  F.p_ = p;
  F.h_ = h;
  F.q_ = static_cast<std::uint32_t>(q);
  if (h > 1) {
    // Lexicographically first monic irreducible of degree h: scan candidate
    // constant-through-(h-1) coefficients as little-endian base-p integers.
    for (std::uint64_t k = 0;; ++k) {
      if (k >= q) throw InputError("no irreducible modulus found");  // unreachable
      std::vector<std::uint32_t> f(h + 1, 0);
      std::uint64_t v = k;
      for (std::uint32_t i = 0; i < h; ++i, v /= p)
        f[i] = static_cast<std::uint32_t>(v % p);
      f[h] = 1;
      if (is_irreducible(f, h, p)) {
        F.modulus_.assign(f.begin(), f.end() - 1);
        break;
      }
    }
  }
  return F;
}

Field::Elem Field::add(Elem a, Elem b) const {
  if (h_ == 1) return (a + b) % p_;
  Digits da = to_digits(a, p_), db = to_digits(b, p_);
  for (std::uint32_t i = 0; i < h_; ++i) da[i] = (da[i] + db[i]) % p_;
  return from_digits(da, p_, h_);
}

Field::Elem Field::neg(Elem a) const {
  if (h_ == 1) return a == 0 ? 0 : p_ - a;
  Digits d = to_digits(a, p_);
  for (std::uint32_t i = 0; i < h_; ++i) d[i] = d[i] == 0 ? 0 : p_ - d[i];
  return from_digits(d, p_, h_);
}

Field::Elem Field::mul(Elem a, Elem b) const {
  if (h_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  Digits da = to_digits(a, p_), db = to_digits(b, p_);
  Digits prod{};
  for (std::uint32_t i = 0; i < h_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < h_; ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
  }
  // Reduce modulo the monic modulus.
  for (std::uint32_t i = 2 * h_ - 2; i >= h_; --i) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::uint32_t j = 0; j < h_; ++j) {
      const std::uint64_t sub = c * modulus_[j] % p_;
      prod[i - h_ + j] =
          static_cast<std::uint32_t>((prod[i - h_ + j] + p_ - sub) % p_);
    }
  }
  return from_digits(prod, p_, h_);
}

Field::Elem Field::inv(Elem a) const {
  if (a == 0) throw InputError("field inverse of zero");
  return pow(a, q_ - 2);
}

Field::Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Field::Elem Field::from_int(long long k) const {
  const long long p = static_cast<long long>(p_);
  long long r = k % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

std::string Field::name() const { return "GF(" + std::to_string(q_) + ")"; }

std::string Field::elem_str(Elem a) const { return std::to_string(a); }

FieldConditionResult field_condition(long long s, int m, const Field& F) {
  if (s < 1) throw InputError("field_condition requires s >= 1");
  if (m < 2) throw InputError("field_condition requires m >= 2");
  FieldConditionResult res;
  const Field::Elem ms = F.from_int(-s);
  Field::Elem pw = F.one();
  Field::Elem acc = F.one();  // k = 0 partial sum
  for (int k = 1; k <= m - 1; ++k) {
    pw = F.mul(pw, ms);
    acc = F.add(acc, pw);
    res.values.push_back(acc);
    if (acc == F.zero()) res.failing_k.push_back(k);
  }
  res.holds = res.failing_k.empty();
  return res;
}

}  // namespace gpcode
