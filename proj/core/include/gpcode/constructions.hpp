#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gpcode/field.hpp"
#include "gpcode/geometry.hpp"

namespace gpcode {

/// Points of PG(dim, q): one normalized representative (first nonzero
/// coordinate = 1) per 1-space, in lexicographic order of the coordinate
/// vectors under the canonical element encoding. Point indices of every
/// construction below refer to this order.
std::vector<std::vector<Field::Elem>> projective_points(const Field& F, int dim);

/// Scales a nonzero vector so its first nonzero coordinate is 1.
std::vector<Field::Elem> normalize_projective(const Field& F,
                                              std::vector<Field::Elem> v);

/// Ordinary n-gon: n points, n lines, cycle incidence; order (1, 1).
Geometry ordinary_ngon(int n);

/// Desarguesian plane PG(2, q): 1-spaces of GF(q)^3 vs 2-spaces.
Geometry projective_plane(std::uint32_t q);

/// Symplectic quadrangle W(q): all points of PG(3, q), lines totally
/// isotropic for x0 y1 - x1 y0 + x2 y3 - x3 y2; order (q, q).
Geometry symplectic_quadrangle(std::uint32_t q);

/// Parabolic quadrangle Q(4, q): zeros of x0^2 + x1 x2 + x3 x4 in PG(4, q),
/// lines fully on the quadric; order (q, q).
Geometry parabolic_quadrangle(std::uint32_t q);

/// Elliptic quadrangle Q-(5, q): zeros of f(x0, x1) + x2 x3 + x4 x5 with f
/// the lexicographically first irreducible binary quadratic over GF(q);
/// order (q, q^2).
Geometry elliptic_quadrangle(std::uint32_t q);

/// Split Cayley hexagon H(q): points of the quadric x3^2 = x0 x4 + x1 x5 +
/// x2 x6 in PG(6, q), lines the quadric lines whose Grassmann coordinates
/// satisfy the six classical linear conditions of the standard embedding.
/// The result is certified (diameter 6, girth 12, order (q, q)) before being
/// returned; a certification failure throws.
Geometry split_cayley_hexagon(std::uint32_t q);

/// Swaps points and lines; order (s, t) becomes (t, s).
Geometry dual_geometry(const Geometry& G);

/// gpg v1 text interchange (UTF-8, LF):
///   gpg 1
///   points <P>
///   lines <L>
///   <line-index>: <p1> <p2> ... <pk>
/// Point indices within a line are ascending, 0-based decimal; '#' starts a
/// comment. Export refuses geometries whose stored line order is not
/// ascending so that the round trip is exact.
void export_gpg(const Geometry& G, std::ostream& out);
void export_gpg(const Geometry& G, const std::filesystem::path& path);
Geometry import_gpg(std::istream& in, std::string label = "");
Geometry import_gpg(const std::filesystem::path& path);

}  // namespace gpcode
