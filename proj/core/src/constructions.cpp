#include "gpcode/constructions.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace gpcode {

std::vector<Field::Elem> normalize_projective(const Field& F,
                                              std::vector<Field::Elem> v) {
  for (Field::Elem c : v) {
    if (c != 0) {
      if (c != F.one()) {
        const Field::Elem s = F.inv(c);
        for (auto& x : v) x = F.mul(x, s);
      }
      return v;
    }
  }
  throw InputError("normalize_projective: zero vector");
}

std::vector<std::vector<Field::Elem>> projective_points(const Field& F, int dim) {
  if (dim < 1) throw InputError("projective_points requires dim >= 1");
  const int ncoords = dim + 1;
  std::vector<std::vector<Field::Elem>> pts;
  // Later leading position = lexicographically smaller vector, so emit leads
  // from the last coordinate back to the first; tails count in lex order.
  for (int lead = ncoords - 1; lead >= 0; --lead) {
    const int ntail = ncoords - lead - 1;
    std::vector<Field::Elem> tail(ntail, 0);
    for (;;) {
      std::vector<Field::Elem> v(ncoords, 0);
      v[lead] = F.one();
      for (int i = 0; i < ntail; ++i) v[lead + 1 + i] = tail[i];
      pts.push_back(std::move(v));
      int i = ntail - 1;
      while (i >= 0 && tail[i] == F.size() - 1) tail[i--] = 0;
      if (i < 0) break;
      ++tail[i];
    }
  }
  return pts;
}

namespace {

Field field_for_order(std::uint32_t q) {
  // q = p^h <= 16 with h <= 4 (the construction-support range).
  if (q < 2 || q > 16) throw InputError("unsupported q = " + std::to_string(q));
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (!is_prime(p)) continue;
    std::uint32_t v = q, h = 0;
    while (v % p == 0) {
      v /= p;
      ++h;
    }
    if (v == 1) return Field::make(p, h);
  }
  throw InputError("unsupported q = " + std::to_string(q) + " (not a prime power)");
}

using Vec = std::vector<Field::Elem>;

struct PointTable {
  std::vector<Vec> coords;
  std::map<Vec, std::uint32_t> index;

  explicit PointTable(std::vector<Vec> pts) : coords(std::move(pts)) {
    for (std::uint32_t i = 0; i < coords.size(); ++i) index.emplace(coords[i], i);
  }
};

Vec add_scaled(const Field& F, const Vec& u, Field::Elem lambda, const Vec& v) {
  Vec w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    w[i] = F.add(F.mul(lambda, u[i]), v[i]);
  return w;
}

// The q+1 points of the projective line spanned by distinct u, v.
std::vector<Vec> line_span(const Field& F, const Vec& u, const Vec& v) {
  std::vector<Vec> pts;
  pts.push_back(u);
  for (Field::Elem lam = 0; lam < F.size(); ++lam)
    pts.push_back(normalize_projective(F, add_scaled(F, u, lam, v)));
  return pts;
}

// Deterministic line order: lexicographic on the sorted point-index lists.
Geometry lines_to_geometry(const std::set<std::vector<std::uint32_t>>& lines,
                           std::uint32_t num_points, std::string label) {
  std::vector<std::vector<std::uint32_t>> ordered(lines.begin(), lines.end());
  return geometry_build(std::move(ordered), num_points, std::move(label));
}

}  // namespace

Geometry ordinary_ngon(int n) {
  if (n < 3) throw InputError("ordinary_ngon requires n >= 3");
  std::vector<std::vector<std::uint32_t>> lines;
  for (int i = 0; i < n; ++i) {
    std::uint32_t a = static_cast<std::uint32_t>(i);
    std::uint32_t b = static_cast<std::uint32_t>((i + 1) % n);
    if (a > b) std::swap(a, b);
    lines.push_back({a, b});
  }
  return geometry_build(std::move(lines), static_cast<std::uint32_t>(n),
                        "ordinary " + std::to_string(n) + "-gon");
}

Geometry projective_plane(std::uint32_t q) {
  const Field F = field_for_order(q);
  PointTable pts(projective_points(F, 2));
  std::set<std::vector<std::uint32_t>> lines;
  // Lines are dual vectors a: the point set {x : a.x = 0}.
  for (const Vec& a : pts.coords) {
    std::vector<std::uint32_t> line;
    for (std::uint32_t i = 0; i < pts.coords.size(); ++i) {
      Field::Elem dot = 0;
      for (int c = 0; c < 3; ++c) dot = F.add(dot, F.mul(a[c], pts.coords[i][c]));
      if (dot == 0) line.push_back(i);
    }
    lines.insert(line);
  }
  return lines_to_geometry(lines, static_cast<std::uint32_t>(pts.coords.size()),
                           "PG(2," + std::to_string(q) + ")");
}

Geometry symplectic_quadrangle(std::uint32_t q) {
  const Field F = field_for_order(q);
  PointTable pts(projective_points(F, 3));
  const auto form = [&F](const Vec& x, const Vec& y) {
    // x0 y1 - x1 y0 + x2 y3 - x3 y2
    Field::Elem r = F.sub(F.mul(x[0], y[1]), F.mul(x[1], y[0]));
    return F.add(r, F.sub(F.mul(x[2], y[3]), F.mul(x[3], y[2])));
  };
  std::set<std::vector<std::uint32_t>> lines;
  const std::uint32_t n = static_cast<std::uint32_t>(pts.coords.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (form(pts.coords[i], pts.coords[j]) != 0) continue;
      std::vector<std::uint32_t> line;
      for (const Vec& w : line_span(F, pts.coords[i], pts.coords[j]))
        line.push_back(pts.index.at(w));
      std::sort(line.begin(), line.end());
      lines.insert(std::move(line));
    }
  }
  return lines_to_geometry(lines, n, "W(" + std::to_string(q) + ")");
}

namespace {

// Quadric helper: points are the zeros of `form` among the projective points
// of the ambient space; lines are the spans lying entirely on the quadric
// that additionally satisfy `line_ok` on a spanning pair.
template <typename FormFn, typename LineFn>
Geometry quadric_geometry(const Field& F, int dim, FormFn&& form,
                          LineFn&& line_ok, std::string label) {
  std::vector<Vec> all = projective_points(F, dim);
  std::vector<Vec> zeros;
  for (Vec& v : all)
    if (form(v) == 0) zeros.push_back(std::move(v));
  PointTable pts(std::move(zeros));

  std::set<std::vector<std::uint32_t>> lines;
  const std::uint32_t n = static_cast<std::uint32_t>(pts.coords.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (!line_ok(pts.coords[i], pts.coords[j])) continue;
      std::vector<std::uint32_t> line;
      bool on_quadric = true;
      for (const Vec& w : line_span(F, pts.coords[i], pts.coords[j])) {
        auto it = pts.index.find(w);
        if (it == pts.index.end()) {
          on_quadric = false;
          break;
        }
        line.push_back(it->second);
      }
      if (!on_quadric) continue;
      std::sort(line.begin(), line.end());
      lines.insert(std::move(line));
    }
  }
  return lines_to_geometry(lines, n, std::move(label));
}

}  // namespace

Geometry parabolic_quadrangle(std::uint32_t q) {
  const Field F = field_for_order(q);
  auto form = [&F](const Vec& x) {
    Field::Elem r = F.mul(x[0], x[0]);
    r = F.add(r, F.mul(x[1], x[2]));
    return F.add(r, F.mul(x[3], x[4]));
  };
  auto any = [](const Vec&, const Vec&) { return true; };
  return quadric_geometry(F, 4, form, any, "Q(4," + std::to_string(q) + ")");
}

Geometry elliptic_quadrangle(std::uint32_t q) {
  const Field F = field_for_order(q);
  // Lexicographically first irreducible x^2 + b x + c over GF(q).
  Field::Elem fb = 0, fc = 0;
  bool found = false;
  for (Field::Elem b = 0; b < F.size() && !found; ++b) {
    for (Field::Elem c = 0; c < F.size() && !found; ++c) {
      bool has_root = false;
      for (Field::Elem x = 0; x < F.size(); ++x) {
        const Field::Elem v =
            F.add(F.add(F.mul(x, x), F.mul(b, x)), c);
        if (v == 0) {
          has_root = true;
          break;
        }
      }
      if (!has_root) {
        fb = b;
        fc = c;
        found = true;
      }
    }
  }
  if (!found) throw InputError("elliptic_quadrangle: no irreducible quadratic");
  auto form = [&F, fb, fc](const Vec& x) {
    Field::Elem r = F.mul(x[0], x[0]);
    r = F.add(r, F.mul(fb, F.mul(x[0], x[1])));
    r = F.add(r, F.mul(fc, F.mul(x[1], x[1])));
    r = F.add(r, F.mul(x[2], x[3]));
    return F.add(r, F.mul(x[4], x[5]));
  };
  auto any = [](const Vec&, const Vec&) { return true; };
  return quadric_geometry(F, 5, form, any, "Q-(5," + std::to_string(q) + ")");
}

Geometry split_cayley_hexagon(std::uint32_t q) {
  const Field F = field_for_order(q);
  auto form = [&F](const Vec& x) {
    // x0 x4 + x1 x5 + x2 x6 - x3^2
    Field::Elem r = F.mul(x[0], x[4]);
    r = F.add(r, F.mul(x[1], x[5]));
    r = F.add(r, F.mul(x[2], x[6]));
    return F.sub(r, F.mul(x[3], x[3]));
  };
  auto grassmann_ok = [&F](const Vec& u, const Vec& v) {
    auto p = [&](int i, int j) {
      return F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i]));
    };
    // Standard embedding: p12=p34, p56=p03, p20=p35, p64=p13, p01=p36, p45=p23.
    return p(1, 2) == p(3, 4) && p(5, 6) == p(0, 3) && p(2, 0) == p(3, 5) &&
           p(6, 4) == p(1, 3) && p(0, 1) == p(3, 6) && p(4, 5) == p(2, 3);
  };
  Geometry G = quadric_geometry(F, 6, form, grassmann_ok,
                                "H(" + std::to_string(q) + ")");
  // The coordinate conditions are intricate; the girth/diameter certificate
  // is the correctness oracle for them.
  AxiomReport rep = verify_polygon(G, 6);
  int s = 0, t = 0;
  const bool order_ok = detect_order(G, s, t) &&
                        s == static_cast<int>(q) && t == static_cast<int>(q);
  if (!rep.certified() || !order_ok) {
    std::string msg = "split_cayley_hexagon(" + std::to_string(q) +
                      "): certification failed:";
    for (const auto& v : rep.violations) msg += " [" + v.detail + "]";
    if (!order_ok) msg += " [order is not (q,q)]";
    throw CertificationError(msg);
  }
  return G;
}

Geometry dual_geometry(const Geometry& G) {
  std::vector<std::vector<std::uint32_t>> lines = G.lines_on_point;
  return geometry_build(std::move(lines), G.num_lines(), "dual(" + G.label + ")");
}

void export_gpg(const Geometry& G, std::ostream& out) {
  out << "gpg 1\n";
  if (!G.label.empty()) {
    std::string safe = G.label;
    std::replace(safe.begin(), safe.end(), '\n', ' ');
    out << "# label: " << safe << "\n";
  }
  out << "points " << G.num_points << "\n";
  out << "lines " << G.num_lines() << "\n";
  for (std::uint32_t l = 0; l < G.num_lines(); ++l) {
    const auto& pts = G.points_on_line[l];
    if (!std::is_sorted(pts.begin(), pts.end()))
      throw InputError(
          "export_gpg: line " + std::to_string(l) +
          " is not stored in ascending point order (required by the format)");
    out << l << ":";
    for (std::uint32_t p : pts) out << " " << p;
    out << "\n";
  }
}

void export_gpg(const Geometry& G, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("export_gpg: cannot open " + path.string());
  export_gpg(G, out);
  if (!out) throw InputError("export_gpg: write failed on " + path.string());
}

namespace {

// Strips comments and surrounding whitespace; returns the label if the line
// is a label comment.
std::string strip_line(std::string line, std::string* label) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto hash = line.find('#');
  if (hash != std::string::npos) {
    const std::string comment = line.substr(hash + 1);
    if (label && comment.rfind(" label: ", 0) == 0 && label->empty())
      *label = comment.substr(8);
    line.erase(hash);
  }
  const auto b = line.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = line.find_last_not_of(" \t");
  return line.substr(b, e - b + 1);
}

}  // namespace

Geometry import_gpg(std::istream& in, std::string label) {
  std::size_t lineno = 0;
  std::string raw;
  auto next_content = [&]() -> std::string {
    while (std::getline(in, raw)) {
      ++lineno;
      std::string s = strip_line(raw, &label);
      if (!s.empty()) return s;
    }
    return "";
  };

  if (next_content() != "gpg 1") throw GpgFormatError("expected header 'gpg 1'", lineno);

  auto parse_count = [&](const std::string& key) -> std::uint32_t {
    const std::string s = next_content();
    std::istringstream ss(s);
    std::string word;
    long long value = -1;
    if (!(ss >> word >> value) || word != key || value < 0 ||
        value > 0xFFFFFFFFLL || !(ss >> std::ws).eof())
      throw GpgFormatError("expected '" + key + " <count>'", lineno);
    return static_cast<std::uint32_t>(value);
  };

  const std::uint32_t num_points = parse_count("points");
  const std::uint32_t num_lines = parse_count("lines");

  std::vector<std::vector<std::uint32_t>> lines(num_lines);
  for (std::uint32_t l = 0; l < num_lines; ++l) {
    const std::string s = next_content();
    if (s.empty()) throw GpgFormatError("unexpected end of file", lineno);
    std::istringstream ss(s);
    long long idx = -1;
    char colon = 0;
    if (!(ss >> idx >> colon) || colon != ':' || idx != l)
      throw GpgFormatError("expected '" + std::to_string(l) + ": ...'", lineno);
    long long p = 0;
    long long prev = -1;
    while (ss >> p) {
      if (p < 0 || p >= static_cast<long long>(num_points))
        throw GpgFormatError("point index " + std::to_string(p) + " out of range",
                             lineno);
      if (p == prev)
        throw GpgFormatError("duplicate incidence " + std::to_string(p), lineno);
      if (p < prev)
        throw GpgFormatError("point indices must be ascending", lineno);
      lines[l].push_back(static_cast<std::uint32_t>(p));
      prev = p;
    }
    if (!ss.eof()) throw GpgFormatError("trailing garbage", lineno);
  }
  if (!next_content().empty())
    throw GpgFormatError("unexpected content after last line", lineno);

  return geometry_build(std::move(lines), num_points,
                        label.empty() ? "imported" : label);
}

Geometry import_gpg(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("import_gpg: cannot open " + path.string());
  return import_gpg(in, "");
}

}  // namespace gpcode
