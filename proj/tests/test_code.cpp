#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gpcode/code.hpp"
#include "gpcode/constructions.hpp"
#include "oracle.hpp"

using namespace gpcode;

namespace {

Geometry ordinary_quadrangle() {
  return geometry_build({{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4, "oq");
}

oracle::Matrix generator_matrix(const Geometry& G) {
  oracle::Matrix m(G.num_lines(), oracle::Row(G.num_points, 0));
  for (std::uint32_t l = 0; l < G.num_lines(); ++l)
    for (std::uint32_t p : G.points_on_line[l]) m[l][p] = 1;
  return m;
}

// Engine words -> oracle form for exact comparison.
std::vector<oracle::Word> to_oracle_words(const std::vector<ClassifiedWord>& ws) {
  std::vector<oracle::Word> out;
  for (const auto& w : ws) {
    oracle::Word o;
    o.support = w.support;
    for (auto p : w.support) o.coeffs.push_back(w.coeffs[p]);
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("code_build: rank, pivots, parity orthogonality") {
  {
    // Four cyclic weight-2 rows with one dependency.
    const Geometry G = ordinary_quadrangle();
    const LinearCode code = code_build(G, Field::make(2));
    CHECK(code.rank() == 3);
    CHECK(oracle::rank(generator_matrix(G), 2) == 3);
  }
  {
    const Geometry W = symplectic_quadrangle(2);
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      const LinearCode code = code_build(W, Field::make(p));
      CHECK(code.rank() ==
            static_cast<std::uint32_t>(oracle::rank(generator_matrix(W), p)));
      // every parity row orthogonal to every generator
      const Field& F = code.field();
      for (const auto& h : code.parity_check()) {
        for (const auto& g : code.generator_rows()) {
          Field::Elem acc = 0;
          for (std::uint32_t i = 0; i < code.length(); ++i)
            acc = F.add(acc, F.mul(h[i], g[i]));
          CHECK(acc == 0);
        }
      }
      CHECK(code.parity_check().size() == code.dual_dimension());
    }
    // W(2) over GF(2): rank pinned after first computation.
    CHECK(code_build(W, Field::make(2)).rank() == 10);
  }
  {
    // every generator row has weight s+1
    const Geometry Q = elliptic_quadrangle(2);
    const LinearCode code = code_build(Q, Field::make(3));
    for (const auto& row : code.generator_rows()) {
      std::uint32_t w = 0;
      for (auto c : row) w += c != 0;
      CHECK(w == 3);
    }
  }
}

TEST_CASE("membership") {
  const Geometry W = symplectic_quadrangle(2);
  const Field F = Field::make(2);
  const LinearCode code = code_build(W, F);

  for (std::uint32_t l = 0; l < W.num_lines(); ++l)
    CHECK(code.contains(indicator(F, W.num_points, W.points_on_line[l])));
  CHECK(code.contains(PointVector{F, std::vector<Field::Elem>(15, 0)}));

  const PointVector single = indicator(F, 15, std::vector<std::uint32_t>{4});
  CHECK_FALSE(code.contains(single));

  CHECK_THROWS_AS(
      code.contains(PointVector{F, std::vector<Field::Elem>(14, 0)}),
      InputError);
  CHECK_THROWS_AS(
      code.contains(PointVector{Field::make(3), std::vector<Field::Elem>(15, 0)}),
      InputError);
}

TEST_CASE("weighted_vector c_v") {
  {
    // m = 2: c_v = (1-s) i_{v} + i_{P_2(v)}
    const Geometry W = symplectic_quadrangle(2);
    const DistanceOracle D = distances(W);
    const Field F = Field::make(7);
    const PointVector cv = weighted_vector(W, D, 0, F);
    CHECK(cv.coeffs[0] == F.from_int(1 - 2));
    for (std::uint32_t x = 1; x < 15; ++x) {
      if (D(0, x) == 2)
        CHECK(cv.coeffs[x] == F.one());
      else
        CHECK(cv.coeffs[x] == 0);
    }
  }
  {
    // m = 3: coefficients (s^2-s+1, 1-s, 1) on (P_0, P_2, P_4)
    const Geometry H = split_cayley_hexagon(2);
    const DistanceOracle D = distances(H);
    const Field F = Field::make(5);
    const PointVector cv = weighted_vector(H, D, 3, F);
    for (std::uint32_t x = 0; x < 63; ++x) {
      const int d = D(3, x);
      const Field::Elem expect = d == 0   ? F.from_int(2 * 2 - 2 + 1)
                                 : d == 2 ? F.from_int(1 - 2)
                                 : d == 4 ? F.one()
                                          : F.zero();
      CHECK(cv.coeffs[x] == expect);
    }
  }
  {
    // H(2) over GF(3): the P_0 coefficient vanishes, so supp(c_v) is a
    // proper subset of P_{<=4}(v).
    const Geometry H = split_cayley_hexagon(2);
    const DistanceOracle D = distances(H);
    const PointVector cv = weighted_vector(H, D, 0, Field::make(3));
    CHECK(cv.coeffs[0] == 0);
    CHECK(weight(cv) < points_within(H, D, 0, 4).size());
  }
}

TEST_CASE("verify_cx_line: unit product with every line") {
  {
    const Geometry W = symplectic_quadrangle(2);
    const DistanceOracle D = distances(W);
    const LinearCode code = code_build(W, Field::make(2));
    for (std::uint32_t v = 0; v < W.num_points; ++v)
      CHECK(verify_cx_line(code, D, v).ok);
  }
  {
    // Holds on H(2) over GF(3) even though the field condition fails there.
    const Geometry H = split_cayley_hexagon(2);
    const DistanceOracle D = distances(H);
    const LinearCode code = code_build(H, Field::make(3));
    for (std::uint32_t v = 0; v < H.num_points; ++v)
      CHECK(verify_cx_line(code, D, v).ok);
  }
  {
    // Perturbed c_v fails with a witness.
    const Geometry W = symplectic_quadrangle(2);
    const DistanceOracle D = distances(W);
    const Field F = Field::make(5);
    const LinearCode code = code_build(W, F);
    PointVector cv = weighted_vector(W, D, 0, F);
    cv.coeffs[7] = F.add(cv.coeffs[7], F.one());
    const auto chk = line_products_all_one(code, cv);
    CHECK_FALSE(chk.ok);
    const auto& witness_pts = W.points_on_line[chk.witness_line];
    CHECK(std::find(witness_pts.begin(), witness_pts.end(), 7u) !=
          witness_pts.end());
  }
}

TEST_CASE("verify_cx_dual and the constant-product corollary") {
  {
    const Geometry W = symplectic_quadrangle(2);
    const DistanceOracle D = distances(W);
    const LinearCode code = code_build(W, Field::make(2));
    for (std::uint32_t v = 0; v < W.num_points; ++v)
      for (std::uint32_t w = v; w < W.num_points; ++w)
        CHECK(verify_cx_dual(code, D, v, w));  // v = w gives the zero vector
  }
  {
    const Geometry Q = elliptic_quadrangle(2);
    const DistanceOracle D = distances(Q);
    const Field F = Field::make(5);
    const LinearCode code = code_build(Q, F);
    for (std::uint32_t v = 0; v < Q.num_points; ++v)
      for (std::uint32_t w = v + 1; w < Q.num_points; ++w)
        CHECK(verify_cx_dual(code, D, v, w));

    // <c, c_v> is the same for every v, for each generator row c.
    std::vector<PointVector> cvs;
    for (std::uint32_t v = 0; v < Q.num_points; ++v)
      cvs.push_back(weighted_vector(Q, D, v, F));
    for (std::uint32_t l = 0; l < Q.num_lines(); ++l) {
      const PointVector row = indicator(F, Q.num_points, Q.points_on_line[l]);
      const Field::Elem first = inner_product(row, cvs[0]);
      for (std::uint32_t v = 1; v < Q.num_points; ++v)
        CHECK(inner_product(row, cvs[v]) == first);
    }
  }
}

TEST_CASE("inner_product and covered") {
  const Geometry W = symplectic_quadrangle(2);
  const DistanceOracle D = distances(W);
  const Field F = Field::make(7);

  const PointVector iL = indicator(F, 15, W.points_on_line[0]);
  CHECK(inner_product(iL, iL) == F.from_int(3));  // (s+1) 1_F
  CHECK(covered(W, 0, iL));
  CHECK_FALSE(covered(W, 0, indicator(F, 15, std::vector<std::uint32_t>{
                                                  W.points_on_line[0][0]})));

  // <f, g> = <f.g, 1>
  const PointVector cv = weighted_vector(W, D, 5, F);
  std::vector<std::uint32_t> all(15);
  for (std::uint32_t i = 0; i < 15; ++i) all[i] = i;
  const PointVector ones = indicator(F, 15, all);
  CHECK(inner_product(cv, iL) == inner_product(pointwise_product(cv, iL), ones));

  // The field condition holds for W(2)/GF(7), so every line at distance
  // <= 2m-3 from v is covered by c_v.
  for (std::uint32_t v = 0; v < W.num_points; ++v) {
    const PointVector c = weighted_vector(W, D, v, F);
    for (std::uint32_t l = 0; l < W.num_lines(); ++l)
      if (D(v, W.line_vertex(l)) <= 1) CHECK(covered(W, l, c));
  }
}

TEST_CASE("low_weight_codewords matches the support-enumeration oracle") {
  // Geometries with at most 16 points, fields p <= 5.
  const Geometry geoms[] = {ordinary_ngon(4),       ordinary_ngon(6),
                            ordinary_ngon(8),       projective_plane(2),
                            projective_plane(3),    symplectic_quadrangle(2),
                            parabolic_quadrangle(2)};
  for (const Geometry& G : geoms) {
    int s = 0, t = 0;
    REQUIRE(detect_order(G, s, t));
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const std::uint32_t w_max = static_cast<std::uint32_t>(s) + 2;
      const LinearCode code = code_build(G, Field::make(p));
      const auto engine = to_oracle_words(low_weight_codewords(code, w_max));
      const auto brute = oracle::brute_force_low_weight(
          generator_matrix(G), G.num_points, p, w_max);
      CHECK(engine == brute);
    }
  }
}

TEST_CASE("low_weight_codewords matches the full-space oracle on tiny codes") {
  {
    const Geometry G = ordinary_quadrangle();
    const LinearCode code = code_build(G, Field::make(2));
    const auto engine = to_oracle_words(low_weight_codewords(code, 2));
    const auto full =
        oracle::full_space_low_weight(generator_matrix(G), 4, 2, 2);
    CHECK(engine == full);
    CHECK(engine.size() == 6);  // all weight-2 words of the even-weight code
    CHECK(min_weight(code).weight == 2);
  }
  {
    const Geometry G = ordinary_ngon(6);
    const LinearCode code = code_build(G, Field::make(3));
    const auto engine = to_oracle_words(low_weight_codewords(code, 6, true));
    const auto full =
        oracle::full_space_low_weight(generator_matrix(G), 6, 3, 6);
    CHECK(engine == full);
  }
}

TEST_CASE("low_weight_codewords on W(2) up to weight 4, all p <= 7") {
  const Geometry W = symplectic_quadrangle(2);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const LinearCode code = code_build(W, Field::make(p));
    const auto engine = to_oracle_words(low_weight_codewords(code, 4));
    const auto brute =
        oracle::brute_force_low_weight(generator_matrix(W), 15, p, 4);
    CHECK(engine == brute);
  }
}

TEST_CASE("words are normalized, deterministically ordered, line-flagged") {
  const Geometry Q = elliptic_quadrangle(2);
  const LinearCode code = code_build(Q, Field::make(3));
  const auto words = low_weight_codewords(code, 3);
  REQUIRE(words.size() == 45);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    CHECK(w.coeffs[w.support.front()] == 1);  // leading coefficient
    CHECK(w.is_line_multiple);
    CHECK(w.weight == 3);
    if (i > 0) {
      CHECK(words[i - 1].weight <= w.weight);
      if (words[i - 1].weight == w.weight)
        CHECK(words[i - 1].support < w.support);
    }
  }
  // No two returned words are scalar multiples of each other.
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      CHECK(words[i].support != words[j].support);
}

TEST_CASE("min_weight on the classical desk instances") {
  auto mw = [](const Geometry& G, std::uint32_t p) {
    return min_weight(code_build(G, Field::make(p))).weight;
  };
  CHECK(mw(symplectic_quadrangle(2), 2) == 3);
  CHECK(mw(symplectic_quadrangle(3), 3) == 4);  // classical p | q case
  CHECK(mw(split_cayley_hexagon(2), 2) == 3);
  CHECK(mw(projective_plane(2), 2) == 3);
  CHECK(mw(projective_plane(3), 3) == 4);
}

TEST_CASE("min_weight word list on W(2)/GF(2)") {
  const Geometry W = symplectic_quadrangle(2);
  const auto res = min_weight(code_build(W, Field::make(2)));
  CHECK(res.weight == 3);
  REQUIRE(res.words.size() == 15);
  for (const auto& w : res.words) CHECK(w.is_line_multiple);
}

TEST_CASE("cost guard") {
  const Geometry W = symplectic_quadrangle(2);
  const LinearCode code = code_build(W, Field::make(2));
  CHECK_THROWS_AS(low_weight_codewords(code, 5), CostGuardExceeded);
  CHECK_NOTHROW(low_weight_codewords(code, 5, true));
}

TEST_CASE("dual_min_weight") {
  {
    // W(2)/GF(2): full dual enumeration gives exactly 6 = 2(t^2-1)/(t-1).
    const LinearCode code = code_build(symplectic_quadrangle(2), Field::make(2));
    const auto res = dual_min_weight(code, 4);
    CHECK(res.status == DualWeightResult::Status::Exact);
    CHECK(res.by_full_enumeration);
    CHECK(res.weight == 6);
  }
  {
    // Ordinary 2m-gon duals over GF(2): value from the exhaustive oracle.
    for (int n : {4, 6, 8}) {
      const Geometry G = ordinary_ngon(n);
      const LinearCode code = code_build(G, Field::make(2));
      const auto res = dual_min_weight(code, 0);
      REQUIRE(res.status == DualWeightResult::Status::Exact);
      const auto gens = generator_matrix(G);
      std::uint32_t best = 1u << 30;
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        oracle::Row v(n, 0);
        for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
        bool orth = true;
        for (const auto& g : gens) {
          long long acc = 0;
          for (int i = 0; i < n; ++i) acc += g[i] * v[i];
          if (acc % 2 != 0) orth = false;
        }
        if (orth)
          best = std::min<std::uint32_t>(
              best, static_cast<std::uint32_t>(__builtin_popcount(mask)));
      }
      CHECK(res.weight == best);
    }
  }
  {
    // H(2)/GF(2) with full enumeration disabled: the cap-bounded search
    // certifies "no dual word of weight <= 4".
    const LinearCode code = code_build(split_cayley_hexagon(2), Field::make(2));
    const auto res = dual_min_weight(code, 4, 1);
    CHECK(res.status == DualWeightResult::Status::ExceedsCap);
    CHECK(res.weight == 4);
  }
}
