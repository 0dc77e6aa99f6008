#include "gpcode/code.hpp"

#include <algorithm>
#include <map>

namespace gpcode {

PointVector indicator(const Field& F, std::uint32_t num_points,
                      std::span<const std::uint32_t> points) {
  PointVector v{F, std::vector<Field::Elem>(num_points, 0)};
  for (std::uint32_t p : points) {
    if (p >= num_points) throw InputError("indicator: point out of range");
    v.coeffs[p] = F.one();
  }
  return v;
}

std::vector<std::uint32_t> support(const PointVector& f) {
  std::vector<std::uint32_t> s;
  for (std::uint32_t i = 0; i < f.coeffs.size(); ++i)
    if (f.coeffs[i] != 0) s.push_back(i);
  return s;
}

std::uint32_t weight(const PointVector& f) {
  std::uint32_t w = 0;
  for (Field::Elem c : f.coeffs) w += c != 0;
  return w;
}

bool is_zero(const PointVector& f) { return weight(f) == 0; }

namespace {
void check_match(const PointVector& f, const PointVector& g) {
  if (f.field != g.field) throw InputError("point vectors over different fields");
  if (f.coeffs.size() != g.coeffs.size())
    throw InputError("point vectors of different lengths");
}
}  // namespace

Field::Elem inner_product(const PointVector& f, const PointVector& g) {
  check_match(f, g);
  Field::Elem acc = 0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    acc = f.field.add(acc, f.field.mul(f.coeffs[i], g.coeffs[i]));
  return acc;
}

PointVector pointwise_product(const PointVector& f, const PointVector& g) {
  check_match(f, g);
  PointVector r{f.field, std::vector<Field::Elem>(f.coeffs.size())};
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    r.coeffs[i] = f.field.mul(f.coeffs[i], g.coeffs[i]);
  return r;
}

PointVector subtract(const PointVector& f, const PointVector& g) {
  check_match(f, g);
  PointVector r{f.field, std::vector<Field::Elem>(f.coeffs.size())};
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    r.coeffs[i] = f.field.sub(f.coeffs[i], g.coeffs[i]);
  return r;
}

bool covered(const Geometry& G, std::uint32_t line, const PointVector& f) {
  if (line >= G.num_lines()) throw InputError("covered: line out of range");
  if (f.coeffs.size() != G.num_points)
    throw InputError("covered: vector length mismatch");
  for (std::uint32_t p : G.points_on_line[line])
    if (f.coeffs[p] == 0) return false;
  return true;
}

LinearCode::LinearCode(const Geometry& G, Field F)
    : geom_(&G), field_(std::move(F)) {
  const std::uint32_t P = G.num_points;
  gen_rows_.reserve(G.num_lines());
  for (std::uint32_t l = 0; l < G.num_lines(); ++l) {
    std::vector<Field::Elem> row(P, 0);
    for (std::uint32_t p : G.points_on_line[l]) row[p] = field_.one();
    gen_rows_.push_back(std::move(row));
  }

  // Gauss-Jordan, rows taken in line order, pivots leftmost.
  std::vector<std::vector<Field::Elem>> rows = gen_rows_;
  std::size_t r = 0;
  for (std::uint32_t col = 0; col < P && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Field::Elem scale = field_.inv(rows[r][col]);
    for (auto& c : rows[r]) c = field_.mul(c, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Field::Elem factor = rows[i][col];
      for (std::uint32_t j = 0; j < P; ++j)
        rows[i][j] = field_.sub(rows[i][j], field_.mul(factor, rows[r][j]));
    }
    pivots_.push_back(col);
    ++r;
  }
  rows.resize(r);
  rref_ = std::move(rows);

  // Nullspace basis from the RREF: one row per free column.
  std::vector<bool> is_pivot(P, false);
  for (std::uint32_t c : pivots_) is_pivot[c] = true;
  for (std::uint32_t f = 0; f < P; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Field::Elem> h(P, 0);
    h[f] = field_.one();
    for (std::size_t i = 0; i < rref_.size(); ++i)
      h[pivots_[i]] = field_.neg(rref_[i][f]);
    parity_.push_back(std::move(h));
  }
}

void LinearCode::check_compatible(std::size_t len, const Field& f) const {
  if (f != field_) throw InputError("vector over the wrong field");
  if (len != length()) throw InputError("vector of the wrong length");
}

bool LinearCode::contains(const PointVector& v) const {
  check_compatible(v.coeffs.size(), v.field);
  return contains(std::span<const Field::Elem>(v.coeffs));
}

bool LinearCode::contains(std::span<const Field::Elem> coeffs) const {
  if (coeffs.size() != length()) throw InputError("vector of the wrong length");
  for (const auto& h : parity_) {
    Field::Elem acc = 0;
    for (std::uint32_t i = 0; i < length(); ++i)
      acc = field_.add(acc, field_.mul(h[i], coeffs[i]));
    if (acc != 0) return false;
  }
  return true;
}

bool LinearCode::dual_contains(const PointVector& v) const {
  check_compatible(v.coeffs.size(), v.field);
  return dual_contains(std::span<const Field::Elem>(v.coeffs));
}

bool LinearCode::dual_contains(std::span<const Field::Elem> coeffs) const {
  if (coeffs.size() != length()) throw InputError("vector of the wrong length");
  for (const auto& g : rref_) {
    Field::Elem acc = 0;
    for (std::uint32_t i = 0; i < length(); ++i)
      acc = field_.add(acc, field_.mul(g[i], coeffs[i]));
    if (acc != 0) return false;
  }
  return true;
}

std::optional<std::uint32_t> LinearCode::line_with_point_set(
    std::span<const std::uint32_t> sorted_points) const {
  for (std::uint32_t l = 0; l < geom_->num_lines(); ++l) {
    const auto& pts = geom_->points_on_line[l];
    if (pts.size() == sorted_points.size() &&
        std::equal(pts.begin(), pts.end(), sorted_points.begin()))
      return l;
  }
  return std::nullopt;
}

LinearCode code_build(const Geometry& G, const Field& F) {
  return LinearCode(G, F);
}

PointVector weighted_vector(const Geometry& G, const DistanceOracle& D,
                            std::uint32_t point, const Field& F) {
  if (point >= G.num_points) throw InputError("weighted_vector: point out of range");
  int s = 0, t = 0;
  if (!detect_order(G, s, t))
    throw InputError("weighted_vector: geometry has no order");
  const int n = D.diameter();
  if (n % 2 != 0 || n < 4)
    throw InputError("weighted_vector: geometry is not a 2m-gon (diameter " +
                     std::to_string(n) + ")");
  const int m = n / 2;

  // ring_coeff[k] = sum_{j=0}^{m-k-1} (-s)^j, computed in F so large s never
  // overflows; this equals the integer evaluation by the ring homomorphism.
  std::vector<Field::Elem> ring_coeff(m);
  const Field::Elem ms = F.from_int(-static_cast<long long>(s));
  for (int k = 0; k < m; ++k) {
    Field::Elem acc = F.one();
    Field::Elem pw = F.one();
    for (int j = 1; j <= m - k - 1; ++j) {
      pw = F.mul(pw, ms);
      acc = F.add(acc, pw);
    }
    ring_coeff[k] = acc;
  }

  PointVector c{F, std::vector<Field::Elem>(G.num_points, 0)};
  for (std::uint32_t x = 0; x < G.num_points; ++x) {
    const int d = D(point, x);
    if (d % 2 == 0 && d <= 2 * m - 2) c.coeffs[x] = ring_coeff[d / 2];
  }
  return c;
}

CxLineCheck line_products_all_one(const LinearCode& code, const PointVector& f) {
  const Geometry& G = code.geometry();
  if (f.field != code.field() || f.coeffs.size() != G.num_points)
    throw InputError("line_products_all_one: vector mismatch");
  const Field& F = code.field();
  for (std::uint32_t l = 0; l < G.num_lines(); ++l) {
    Field::Elem acc = 0;
    for (std::uint32_t p : G.points_on_line[l]) acc = F.add(acc, f.coeffs[p]);
    if (acc != F.one()) return {false, l, acc};
  }
  return {true, 0, F.one()};
}

CxLineCheck verify_cx_line(const LinearCode& code, const DistanceOracle& D,
                           std::uint32_t v) {
  return line_products_all_one(
      code, weighted_vector(code.geometry(), D, v, code.field()));
}

bool verify_cx_dual(const LinearCode& code, const DistanceOracle& D,
                    std::uint32_t v, std::uint32_t w) {
  const PointVector cv = weighted_vector(code.geometry(), D, v, code.field());
  const PointVector cw = weighted_vector(code.geometry(), D, w, code.field());
  return code.dual_contains(subtract(cv, cw));
}

namespace {

struct RawWord {
  std::vector<std::uint32_t> support;   // ascending
  std::vector<Field::Elem> coeffs;      // aligned with support
};

// All weight-exactly-w dependencies among the given check-matrix columns,
// with all-nonzero coefficients, normalized so the coefficient at the
// smallest support index is 1. Each scalar class is produced exactly once:
// the sorted support splits uniquely into its low ceil(w/2) indices (side B,
// enumerated second) and high remainder (side A, hashed first), and the two
// partial syndromes must cancel.
std::vector<RawWord> enumerate_dependencies(
    const Field& F, const std::vector<std::vector<Field::Elem>>& columns,
    std::uint32_t w) {
  const std::uint32_t ncols = static_cast<std::uint32_t>(columns.size());
  std::vector<RawWord> out;
  if (w == 0 || w > ncols) return out;
  const std::size_t rdim = columns.empty() ? 0 : columns[0].size();

  const std::uint32_t bsize = (w + 1) / 2;
  const std::uint32_t asize = w - bsize;

  struct Entry {
    std::vector<Field::Elem> syndrome;
    std::vector<std::uint32_t> cols;
    std::vector<Field::Elem> coeffs;
  };

  // Side A: combinations with unconstrained nonzero coefficients.
  std::vector<Entry> side_a;
  {
    std::vector<std::uint32_t> comb(asize);
    for (std::uint32_t i = 0; i < asize; ++i) comb[i] = i;
    if (asize == 0) {
      side_a.push_back({std::vector<Field::Elem>(rdim, 0), {}, {}});
    } else {
      for (;;) {
        // Coefficient odometer over (F \ {0})^asize.
        std::vector<Field::Elem> lam(asize, F.one());
        for (;;) {
          Entry e;
          e.syndrome.assign(rdim, 0);
          for (std::uint32_t i = 0; i < asize; ++i)
            for (std::size_t r = 0; r < rdim; ++r)
              e.syndrome[r] =
                  F.add(e.syndrome[r], F.mul(lam[i], columns[comb[i]][r]));
          e.cols = comb;
          e.coeffs = lam;
          side_a.push_back(std::move(e));
          std::uint32_t i = asize;
          while (i > 0 && lam[i - 1] == F.size() - 1) lam[--i] = F.one();
          if (i == 0) break;
          ++lam[i - 1];
        }
        // Next combination (lexicographic).
        std::uint32_t i = asize;
        while (i > 0 && comb[i - 1] == ncols - (asize - i) - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::uint32_t j = i; j < asize; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  }
  std::sort(side_a.begin(), side_a.end(),
            [](const Entry& x, const Entry& y) { return x.syndrome < y.syndrome; });

  // Side B: low half; leading coefficient fixed to 1.
  std::vector<std::uint32_t> comb(bsize);
  for (std::uint32_t i = 0; i < bsize; ++i) comb[i] = i;
  for (;;) {
    std::vector<Field::Elem> lam(bsize, F.one());  // lam[0] stays 1
    for (;;) {
      std::vector<Field::Elem> need(rdim, 0);
      for (std::uint32_t i = 0; i < bsize; ++i)
        for (std::size_t r = 0; r < rdim; ++r)
          need[r] = F.add(need[r], F.mul(lam[i], columns[comb[i]][r]));
      for (auto& c : need) c = F.neg(c);

      auto lo = std::lower_bound(
          side_a.begin(), side_a.end(), need,
          [](const Entry& e, const std::vector<Field::Elem>& k) {
            return e.syndrome < k;
          });
      const std::uint32_t bmax = bsize == 0 ? 0 : comb[bsize - 1];
      for (auto it = lo; it != side_a.end() && it->syndrome == need; ++it) {
        if (!it->cols.empty() && it->cols.front() <= bmax) continue;
        RawWord word;
        word.support.reserve(w);
        word.coeffs.reserve(w);
        for (std::uint32_t i = 0; i < bsize; ++i) {
          word.support.push_back(comb[i]);
          word.coeffs.push_back(lam[i]);
        }
        for (std::size_t i = 0; i < it->cols.size(); ++i) {
          word.support.push_back(it->cols[i]);
          word.coeffs.push_back(it->coeffs[i]);
        }
        out.push_back(std::move(word));
      }

      // Advance coefficients (positions 1..bsize-1 only).
      std::uint32_t i = bsize;
      while (i > 1 && lam[i - 1] == F.size() - 1) lam[--i] = F.one();
      if (i <= 1) break;
      ++lam[i - 1];
    }
    std::uint32_t i = bsize;
    while (i > 0 && comb[i - 1] == ncols - (bsize - i) - 1) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::uint32_t j = i; j < bsize; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<Field::Elem>> matrix_columns(
    const std::vector<std::vector<Field::Elem>>& rows, std::uint32_t ncols) {
  std::vector<std::vector<Field::Elem>> cols(
      ncols, std::vector<Field::Elem>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::uint32_t c = 0; c < ncols; ++c) cols[c][r] = rows[r][c];
  return cols;
}

ClassifiedWord make_word(const LinearCode& code, const RawWord& raw) {
  ClassifiedWord w;
  w.weight = static_cast<std::uint32_t>(raw.support.size());
  w.support = raw.support;
  w.coeffs.assign(code.length(), 0);
  bool constant = true;
  for (std::size_t i = 0; i < raw.support.size(); ++i) {
    w.coeffs[raw.support[i]] = raw.coeffs[i];
    if (raw.coeffs[i] != raw.coeffs[0]) constant = false;
  }
  w.is_line_multiple =
      constant && code.line_with_point_set(w.support).has_value();
  return w;
}

std::uint32_t guard_limit(const LinearCode& code) {
  std::uint32_t smax = 0;
  for (const auto& l : code.geometry().points_on_line)
    smax = std::max<std::uint32_t>(smax, static_cast<std::uint32_t>(l.size()));
  return smax + 1;  // s + 2
}

std::vector<ClassifiedWord> enumerate_weight(const LinearCode& code,
                                             std::uint32_t w) {
  const auto cols = matrix_columns(code.parity_check(), code.length());
  auto raw = enumerate_dependencies(code.field(), cols, w);
  std::vector<ClassifiedWord> words;
  words.reserve(raw.size());
  for (const auto& r : raw) words.push_back(make_word(code, r));
  std::sort(words.begin(), words.end(),
            [](const ClassifiedWord& a, const ClassifiedWord& b) {
              if (a.weight != b.weight) return a.weight < b.weight;
              if (a.support != b.support) return a.support < b.support;
              return a.coeffs < b.coeffs;
            });
  return words;
}

}  // namespace

std::vector<ClassifiedWord> low_weight_codewords(const LinearCode& code,
                                                 std::uint32_t w_max,
                                                 bool override_guard) {
  if (!override_guard && w_max > guard_limit(code))
    throw CostGuardExceeded(
        "low_weight_codewords: w_max " + std::to_string(w_max) +
        " exceeds the cost guard s+2 = " + std::to_string(guard_limit(code)) +
        " (pass the override flag to proceed)");
  std::vector<ClassifiedWord> all;
  for (std::uint32_t w = 1; w <= std::min(w_max, code.length()); ++w) {
    auto words = enumerate_weight(code, w);
    all.insert(all.end(), std::make_move_iterator(words.begin()),
               std::make_move_iterator(words.end()));
  }
  return all;
}

MinWeightResult min_weight(const LinearCode& code, bool override_guard) {
  if (code.rank() == 0)
    throw InputError("min_weight: the zero code has no minimum weight");
  const std::uint32_t limit =
      override_guard ? code.length() : guard_limit(code);
  for (std::uint32_t w = 1; w <= std::min(limit, code.length()); ++w) {
    auto words = enumerate_weight(code, w);
    if (!words.empty()) return {w, std::move(words)};
  }
  throw CostGuardExceeded(
      "min_weight: no codeword of weight <= " + std::to_string(limit) +
      " found before the cost guard (pass the override flag to search on)");
}

DualWeightResult dual_min_weight(const LinearCode& code, std::uint32_t cap,
                                 std::uint64_t full_enum_limit) {
  const Field& F = code.field();
  const std::uint32_t dim = code.dual_dimension();
  if (dim == 0)
    throw InputError("dual_min_weight: the dual code is zero");

  // Scalar classes of the dual space: (q^dim - 1)/(q - 1).
  long double classes_ld = 1.0L;
  for (std::uint32_t i = 0; i < dim; ++i) classes_ld *= F.size();
  const bool small_enough =
      classes_ld / (F.size() - 1) <= static_cast<long double>(full_enum_limit);

  if (small_enough) {
    const auto& basis = code.parity_check();
    const std::uint32_t P = code.length();
    std::uint32_t best = P + 1;
    // One representative per scalar class: leading combination coefficient 1.
    std::vector<Field::Elem> coeff(dim, 0);
    for (std::uint32_t lead = 0; lead < dim; ++lead) {
      std::fill(coeff.begin(), coeff.end(), 0);
      coeff[lead] = F.one();
      for (;;) {
        std::vector<Field::Elem> word(P, 0);
        for (std::uint32_t i = lead; i < dim; ++i) {
          if (coeff[i] == 0) continue;
          for (std::uint32_t j = 0; j < P; ++j)
            word[j] = F.add(word[j], F.mul(coeff[i], basis[i][j]));
        }
        std::uint32_t w = 0;
        for (Field::Elem c : word) w += c != 0;
        if (w > 0) best = std::min(best, w);
        // Odometer over positions lead+1..dim-1.
        std::uint32_t i = dim;
        while (i > lead + 1 && coeff[i - 1] == F.size() - 1) coeff[--i] = 0;
        if (i <= lead + 1) break;
        ++coeff[i - 1];
      }
    }
    return {DualWeightResult::Status::Exact, best, true};
  }

  // Cap-bounded search: dual words are dependencies among the columns of the
  // reduced generator matrix.
  if (cap == 0)
    throw CostGuardExceeded(
        "dual_min_weight: dual space too large for full enumeration and no "
        "cap given");
  const auto cols = matrix_columns(code.rref_rows(), code.length());
  for (std::uint32_t w = 1; w <= cap; ++w) {
    auto raw = enumerate_dependencies(F, cols, w);
    if (!raw.empty()) return {DualWeightResult::Status::Exact, w, false};
  }
  return {DualWeightResult::Status::ExceedsCap, cap, false};
}

}  // namespace gpcode
