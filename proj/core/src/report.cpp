#include "gpcode/report.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "gpcode/code.hpp"
#include "gpcode/constructions.hpp"
#include "gpcode/traces.hpp"

#include <nlohmann/json.hpp>

namespace gpcode {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kKnownChecks = {"axioms",   "cx",   "minwt",
                                            "traces",   "blocking", "perp",
                                            "dualwt"};

GeometrySource parse_source(const json& j) {
  GeometrySource src;
  if (j.contains("file")) {
    src.kind = GeometrySource::Kind::File;
    src.path = j.at("file").get<std::string>();
    return src;
  }
  src.kind = GeometrySource::Kind::Family;
  src.family = j.at("family").get<std::string>();
  src.q = j.value("q", 0u);
  src.dual = j.value("dual", false);
  return src;
}

}  // namespace

RunConfig config_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    cfg.source = parse_source(j.at("geometry"));
    if (j.contains("fields"))
      cfg.field_chars = j.at("fields").get<std::vector<std::uint32_t>>();
    if (j.contains("checks")) {
      cfg.checks = j.at("checks").get<std::vector<std::string>>();
      for (const auto& c : cfg.checks)
        if (!kKnownChecks.count(c))
          throw InputError("config: unknown check '" + c + "'");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("guards")) {
      const json& g = j.at("guards");
      if (g.contains("w_max")) cfg.guards.w_max = g.at("w_max").get<std::uint32_t>();
      cfg.guards.override_w_max = g.value("override_w_max", false);
      cfg.guards.blocking_cap = g.value("blocking_cap", 0u);
      cfg.guards.dual_cap = g.value("dual_cap", 4u);
      cfg.guards.dual_full_enum_limit =
          g.value("dual_full_enum_limit", std::uint64_t{1} << 16);
      cfg.guards.classify_blocking_subsets =
          g.value("classify_blocking_subsets", true);
      cfg.guards.subset_work_guard =
          g.value("subset_work_guard", std::uint64_t{200'000'000});
      cfg.guards.star_trials = g.value("star_trials", 200u);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  for (std::uint32_t p : cfg.field_chars)
    if (!is_prime(p))
      throw InputError("config: field characteristic " + std::to_string(p) +
                       " is not prime");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json_string(ss.str());
}

Geometry build_source_geometry(const GeometrySource& src) {
  Geometry G = [&src]() {
    if (src.kind == GeometrySource::Kind::File) return import_gpg(src.path);
    if (src.family == "ngon") return ordinary_ngon(static_cast<int>(src.q));
    if (src.family == "pg2") return projective_plane(src.q);
    if (src.family == "wq") return symplectic_quadrangle(src.q);
    if (src.family == "q4") return parabolic_quadrangle(src.q);
    if (src.family == "q5minus") return elliptic_quadrangle(src.q);
    if (src.family == "hexagon") return split_cayley_hexagon(src.q);
    throw InputError("unknown family '" + src.family +
                     "' (expected ngon|pg2|wq|q4|q5minus|hexagon)");
  }();
  if (src.dual) G = dual_geometry(G);
  return G;
}

namespace {

bool wants(const RunConfig& cfg, const std::string& check) {
  return std::find(cfg.checks.begin(), cfg.checks.end(), check) !=
         cfg.checks.end();
}

json source_json(const GeometrySource& s) {
  json j;
  if (s.kind == GeometrySource::Kind::File) {
    j["file"] = s.path.string();
  } else {
    j["family"] = s.family;
    j["q"] = s.q;
    j["dual"] = s.dual;
  }
  return j;
}

json config_json(const RunConfig& c) {
  json j;
  j["geometry"] = source_json(c.source);
  j["fields"] = c.field_chars;
  j["checks"] = c.checks;
  json g;
  if (c.guards.w_max) g["w_max"] = *c.guards.w_max;
  g["override_w_max"] = c.guards.override_w_max;
  g["blocking_cap"] = c.guards.blocking_cap;
  g["dual_cap"] = c.guards.dual_cap;
  g["dual_full_enum_limit"] = c.guards.dual_full_enum_limit;
  g["classify_blocking_subsets"] = c.guards.classify_blocking_subsets;
  g["subset_work_guard"] = c.guards.subset_work_guard;
  g["star_trials"] = c.guards.star_trials;
  j["guards"] = g;
  j["seed"] = c.seed;
  return j;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

std::string vertex_name(const Geometry& G, std::uint32_t v) {
  return G.is_point_vertex(v) ? "p" + std::to_string(v)
                              : "L" + std::to_string(G.line_of_vertex(v));
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg) {
  PipelineResult result;
  json rep;
  rep["tool"] = "gpcode";
  rep["report_version"] = 1;
  rep["config"] = config_json(cfg);
  json work;  // deterministic operation counts (wall clock goes to stderr only)

  auto anomaly = [&](std::string msg) {
    result.anomalies.push_back(std::move(msg));
  };

  // ---- axioms -------------------------------------------------------------
  Geometry G = build_source_geometry(cfg.source);
  json jgeom;
  jgeom["label"] = G.label;
  jgeom["points"] = G.num_points;
  jgeom["lines"] = G.num_lines();

  std::optional<DistanceOracle> Dopt;
  try {
    Dopt = distances(G);
  } catch (const CertificationError& e) {
    jgeom["certified"] = false;
    jgeom["violations"] = json::array({e.what()});
    anomaly(std::string("axioms: ") + e.what());
  }

  bool certified = false;
  int n = 0, s = 0, t = 0;
  bool has_order = false;
  if (Dopt) {
    const DistanceOracle& D = *Dopt;
    n = D.diameter();
    work["distances_bfs_sources"] = G.num_vertices();
    AxiomReport ax = verify_polygon(G, D, std::max(n, 3));
    has_order = ax.has_order;
    s = ax.order.s;
    t = ax.order.t;
    certified = ax.certified();
    jgeom["n"] = n;
    jgeom["diameter"] = ax.diameter;
    jgeom["girth"] = ax.girth;
    jgeom["certified"] = certified;
    jgeom["thick"] = ax.is_thick;
    jgeom["has_order"] = has_order;
    if (has_order) {
      jgeom["s"] = s;
      jgeom["t"] = t;
      const auto adm = validate_order(std::max(n, 3), s, t);
      jgeom["order_admissible"] = adm.admissible;
      if (!adm.reasons.empty()) jgeom["order_reasons"] = adm.reasons;
      if (n % 2 == 0 && n >= 4 &&
          static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(t) > 1) {
        const auto [ep, el] = expected_counts(n, s, t);
        jgeom["expected_points"] = ep;
        jgeom["expected_lines"] = el;
        const bool match = ep == G.num_points && el == G.num_lines();
        jgeom["counts_match"] = match;
        if (!match) anomaly("axioms: point/line counts differ from the order formula");
      } else if (n == 3 && s == t) {
        const std::uint64_t exp = static_cast<std::uint64_t>(s) * s + s + 1;
        jgeom["expected_points"] = exp;
        jgeom["expected_lines"] = exp;
        jgeom["counts_match"] = exp == G.num_points && exp == G.num_lines();
      }
    }
    if (!certified) {
      json viols = json::array();
      for (const auto& v : ax.violations) {
        json jv;
        jv["check"] = v.check;
        jv["detail"] = v.detail;
        json verts = json::array();
        for (std::uint32_t u : v.vertices) verts.push_back(vertex_name(G, u));
        jv["witnesses"] = verts;
        viols.push_back(jv);
      }
      jgeom["violations"] = viols;
      anomaly("axioms: geometry failed certification as a weak generalised " +
              std::to_string(std::max(n, 3)) + "-gon");
    }
  }
  rep["geometry"] = jgeom;

  const bool even_gon = certified && has_order && n % 2 == 0 && n >= 4;
  const int m = even_gon ? n / 2 : 0;

  // A certification failure aborts everything downstream.
  if (!certified || !has_order) {
    rep["checks_completed"] = json::array({"axioms"});
    rep["partial"] = true;
    rep["anomalies"] = result.anomalies;
    rep["timing"] = work;
    result.exit_code = result.anomalies.empty() ? 0 : 1;
    result.report_json = rep.dump(2) + "\n";
    result.text_summary = "certification FAILED for " + G.label;
    return result;
  }
  const DistanceOracle& D = *Dopt;

  std::vector<std::string> completed = {"axioms"};

  // Trace index is shared by classification and blocking.
  std::optional<TraceIndex> trace_index;
  auto traces_of = [&]() -> const TraceIndex& {
    if (!trace_index) trace_index = TraceIndex(G, D);
    return *trace_index;
  };

  // ---- geometry-level trace census ---------------------------------------
  if (wants(cfg, "traces") && even_gon) {
    json jt;
    jt["index_size"] = traces_of().size();
    json per_d = json::array();
    for (int d = 1; d <= m; ++d) {
      auto traces = enumerate_traces(G, D, d);
      std::map<std::size_t, std::size_t> size_hist;
      for (const auto& T : traces) ++size_hist[T.points.size()];
      json jd;
      jd["d"] = d;
      jd["distinct"] = traces.size();
      json hist;
      for (const auto& [sz, cnt] : size_hist) hist[std::to_string(sz)] = cnt;
      jd["size_histogram"] = hist;
      per_d.push_back(jd);
    }
    jt["per_d"] = per_d;
    rep["traces"] = jt;
    completed.push_back("traces");
  } else if (wants(cfg, "traces")) {
    rep["traces"] = {{"skipped", "requires a certified 2m-gon"}};
  }

  // ---- per-field checks ---------------------------------------------------
  json jfields = json::array();
  for (std::uint32_t p : cfg.field_chars) {
    const Field F = Field::make(p, 1);
    json jf;
    jf["p"] = p;

    bool applicable = false;
    if (even_gon) {
      const auto fc = field_condition(s, m, F);
      json jfc;
      jfc["holds"] = fc.holds;
      jfc["failing_k"] = fc.failing_k;
      json vals = json::array();
      for (auto v : fc.values) vals.push_back(F.elem_str(v));
      jfc["partial_sums"] = vals;
      jf["field_condition"] = jfc;
      applicable = fc.holds;
    } else {
      // Projective plane baseline: the classical theorem covers p | s.
      applicable = s % static_cast<int>(p) == 0;
      jf["field_condition"] = {{"holds", nullptr},
                               {"note", "gonality 3: classical p | q baseline"}};
    }
    jf["theorem_applicable"] = applicable;

    const LinearCode code = code_build(G, F);
    jf["rank"] = code.rank();
    jf["dual_dimension"] = code.dual_dimension();

    if (wants(cfg, "cx")) {
      if (even_gon) {
        json jcx;
        bool cx1_ok = true;
        std::uint32_t cx1_witness = 0;
        for (std::uint32_t v = 0; v < G.num_points && cx1_ok; ++v) {
          const auto chk = verify_cx_line(code, D, v);
          if (!chk.ok) {
            cx1_ok = false;
            cx1_witness = v;
          }
        }
        jcx["cx1_ok"] = cx1_ok;
        if (!cx1_ok) {
          jcx["cx1_witness_point"] = cx1_witness;
          anomaly("cx: <c_v, i_L> != 1 at p=" + std::to_string(p));
        }

        bool dual_ok = true;
        for (std::uint32_t v = 0; v < G.num_points && dual_ok; ++v)
          for (std::uint32_t w2 = v + 1; w2 < G.num_points && dual_ok; ++w2)
            if (!verify_cx_dual(code, D, v, w2)) dual_ok = false;
        jcx["cxcy_dual_ok"] = dual_ok;
        if (!dual_ok) anomaly("cx: c_v - c_w not in dual at p=" + std::to_string(p));

        // <c, c_v> constant over v for every generator row c.
        bool alleq_ok = true;
        std::vector<PointVector> cvs;
        cvs.reserve(G.num_points);
        for (std::uint32_t v = 0; v < G.num_points; ++v)
          cvs.push_back(weighted_vector(G, D, v, F));
        for (std::uint32_t l = 0; l < G.num_lines() && alleq_ok; ++l) {
          const PointVector row =
              indicator(F, G.num_points, G.points_on_line[l]);
          const Field::Elem first = inner_product(row, cvs[0]);
          for (std::uint32_t v = 1; v < G.num_points; ++v)
            if (inner_product(row, cvs[v]) != first) {
              alleq_ok = false;
              break;
            }
        }
        jcx["alleq_ok"] = alleq_ok;
        if (!alleq_ok) anomaly("cx: <c, c_v> not constant at p=" + std::to_string(p));
        jcx["pairs_checked"] =
            static_cast<std::uint64_t>(G.num_points) * (G.num_points - 1) / 2;
        jf["cx"] = jcx;
      } else {
        jf["cx"] = {{"skipped", "c_v requires a 2m-gon"}};
      }
    }

    std::optional<MinWeightResult> mw;
    if (wants(cfg, "minwt")) {
      json jmw;
      const std::uint32_t expected = static_cast<std::uint32_t>(s) + 1;
      try {
        mw = min_weight(code, cfg.guards.override_w_max);
        jmw["weight"] = mw->weight;
        jmw["words_up_to_scalar"] = mw->words.size();
        jmw["expected_s_plus_1"] = expected;
        jmw["asserted"] = applicable;
        jmw["matches_expected"] = mw->weight == expected;
        if (applicable && mw->weight != expected)
          anomaly("minwt: minimum weight " + std::to_string(mw->weight) +
                  " != s+1 = " + std::to_string(expected) +
                  " at p=" + std::to_string(p));
      } catch (const CostGuardExceeded& e) {
        jmw["guard_exceeded"] = e.what();
      }
      jf["min_weight"] = jmw;
    }

    if (wants(cfg, "traces") && mw && even_gon) {
      json jc;
      std::map<int, std::size_t> d_hist;
      std::size_t line_multiples = 0, unclassified = 0;
      bool d_in_range = true, odd_ok = true;
      for (auto& word : mw->words) {
        word.trace_match = traces_of().classify(word.support);
        if (word.is_line_multiple) ++line_multiples;
        if (!word.trace_match) {
          ++unclassified;
          continue;
        }
        ++d_hist[word.trace_match->d];
        if (word.trace_match->d > m) d_in_range = false;
        if (s < t && word.trace_match->d % 2 == 0) odd_ok = false;
      }
      json hist;
      for (const auto& [d, cnt] : d_hist) hist[std::to_string(d)] = cnt;
      jc["d_histogram"] = hist;
      jc["line_multiples"] = line_multiples;
      jc["unclassified"] = unclassified;
      jc["d_in_proven_range"] = d_in_range;
      if (s < t) jc["odd_d_ok"] = odd_ok;
      jc["asserted"] = applicable;
      if (applicable) {
        if (unclassified > 0)
          anomaly("classification: minimum-weight support is not a distance "
                  "trace at p=" + std::to_string(p));
        if (!d_in_range)
          anomaly("classification: trace parameter d out of range at p=" +
                  std::to_string(p));
        if (!odd_ok)
          anomaly("classification: even d with s < t at p=" + std::to_string(p));
      }
      jf["classification"] = jc;
    }

    if (wants(cfg, "dualwt")) {
      json jd;
      try {
        const auto dw = dual_min_weight(code, cfg.guards.dual_cap,
                                        cfg.guards.dual_full_enum_limit);
        if (dw.status == DualWeightResult::Status::Exact) {
          jd["status"] = "exact";
          jd["weight"] = dw.weight;
          jd["by_full_enumeration"] = dw.by_full_enumeration;
        } else {
          jd["status"] = "exceeds_cap";
          jd["cap"] = dw.weight;
        }
        if (even_gon && t > 1) {
          std::uint64_t tm = 1;
          for (int i = 0; i < m; ++i) tm *= static_cast<std::uint64_t>(t);
          const std::uint64_t bound = 2 * (tm - 1) / (t - 1);
          jd["lower_bound_thick"] = bound;
          if (dw.status == DualWeightResult::Status::Exact) {
            jd["bound_satisfied"] = dw.weight >= bound;
            jd["bound_attained"] = dw.weight == bound;
            if (dw.weight < bound)
              anomaly("dualwt: dual minimum weight below the thick bound at p=" +
                      std::to_string(p));
          }
        }
      } catch (const CostGuardExceeded& e) {
        jd["guard_exceeded"] = e.what();
      } catch (const InputError& e) {
        jd["skipped"] = e.what();
      }
      jf["dual"] = jd;
    }

    jfields.push_back(jf);
  }
  rep["fields"] = jfields;
  for (const char* c : {"cx", "minwt", "dualwt"})
    if (wants(cfg, c)) completed.push_back(c);
  if (wants(cfg, "traces") && even_gon &&
      std::find(completed.begin(), completed.end(), "traces") == completed.end())
    completed.push_back("traces");

  // ---- blocking ------------------------------------------------------------
  if (wants(cfg, "blocking") && even_gon) {
    json jb;
    const std::uint32_t cap = cfg.guards.blocking_cap > 0
                                  ? cfg.guards.blocking_cap
                                  : static_cast<std::uint32_t>(s) + 1;
    try {
      const auto mb = min_x_blocking_size(G, D, cap);
      jb["min_size"] = mb.size;
      jb["certificate"] =
          mb.certificate == MinBlockingResult::Certificate::Exhaustive
              ? "exhaustive"
              : "found";
      jb["example"] = mb.example;
      jb["matches_s_plus_1"] = mb.size == static_cast<std::uint32_t>(s) + 1;
      if (mb.size != static_cast<std::uint32_t>(s) + 1)
        anomaly("blocking: minimum X-blocking size " + std::to_string(mb.size) +
                " != s+1");
    } catch (const CostGuardExceeded& e) {
      jb["guard_exceeded"] = e.what();
    }
    if (static_cast<std::uint64_t>(s) * t > 1)
      jb["line_blocking_bound"] = line_blocking_bound(G, D);

    const std::uint32_t k = static_cast<std::uint32_t>(s) + 1;
    const std::uint64_t candidates = binom(G.num_points, k);
    if (cfg.guards.classify_blocking_subsets &&
        candidates <= cfg.guards.subset_work_guard) {
      json js;
      js["size"] = k;
      js["candidates"] = candidates;
      const auto sets = blocking_sets_of_size(G, D, k, cfg.guards.subset_work_guard);
      js["blocking_count"] = sets.size();
      std::size_t non_trace = 0;
      bool odd_ok = true;
      std::map<int, std::size_t> d_hist;
      for (const auto& B : sets) {
        const auto match = traces_of().classify(B);
        if (!match) {
          ++non_trace;
          continue;
        }
        ++d_hist[match->d];
        if (s < t && match->d % 2 == 0) odd_ok = false;
      }
      json hist;
      for (const auto& [d, cnt] : d_hist) hist[std::to_string(d)] = cnt;
      js["d_histogram"] = hist;
      js["non_trace"] = non_trace;
      if (non_trace > 0)
        anomaly("blocking: an X-blocking set of size s+1 is not a distance trace");
      if (s < t) {
        js["odd_d_ok"] = odd_ok;
        if (!odd_ok) anomaly("blocking: even-d trace blocking set with s < t");
      }
      jb["subset_scan"] = js;
      work["blocking_subsets_scanned"] = candidates;
    }

    // Randomized star-witness trials (seeded, deterministic).
    if (m >= 2 && cfg.guards.star_trials > 0) {
      std::mt19937_64 eng(cfg.seed);
      std::uint32_t passed = 0;
      const std::uint32_t trials = cfg.guards.star_trials;
      for (std::uint32_t i = 0; i < trials; ++i) {
        std::vector<std::uint32_t> idx(G.num_points);
        for (std::uint32_t j = 0; j < G.num_points; ++j) idx[j] = j;
        const std::uint32_t csize =
            s >= 1 ? 1 + static_cast<std::uint32_t>(eng() % s) : 0;
        for (std::uint32_t j = 0; j < csize; ++j) {
          const std::uint32_t r =
              j + static_cast<std::uint32_t>(eng() % (G.num_points - j));
          std::swap(idx[j], idx[r]);
        }
        std::vector<std::uint32_t> C(idx.begin(), idx.begin() + csize);
        std::sort(C.begin(), C.end());
        const std::uint32_t L = static_cast<std::uint32_t>(eng() % G.num_lines());
        const int d = 1 + static_cast<int>(eng() % (m - 1 > 0 ? m - 1 : 1));
        try {
          star_witness(G, D, C, L, std::min(d, m - 1));
          ++passed;
        } catch (const CertificationError&) {
          anomaly("blocking: star witness missing (trial " + std::to_string(i) +
                  ")");
        }
      }
      jb["star_witness_trials"] = {{"count", trials}, {"passed", passed}};
    }

    rep["blocking"] = jb;
    completed.push_back("blocking");
  } else if (wants(cfg, "blocking")) {
    rep["blocking"] = {{"skipped", "requires a certified 2m-gon"}};
  }

  // ---- perp ----------------------------------------------------------------
  if (wants(cfg, "perp") && even_gon) {
    json jp;
    std::uint32_t projective = 0;
    bool trace_blocking_ok = true;
    for (std::uint32_t x = 0; x < G.num_points; ++x) {
      if (is_projective_point(G, D, x, PerpVariant::Augmented)) {
        ++projective;
        if (!projective_trace_blocking_check(G, D, x)) {
          trace_blocking_ok = false;
          anomaly("perp: T_{2,x,y} at projective point " + std::to_string(x) +
                  " is not X-blocking");
        }
      }
    }
    jp["variant"] = "augmented";
    jp["projective_points"] = projective;
    jp["all_projective"] = projective == G.num_points;
    jp["trace_blocking_ok_at_projective"] = trace_blocking_ok;
    rep["perp"] = jp;
    completed.push_back("perp");
  } else if (wants(cfg, "perp")) {
    rep["perp"] = {{"skipped", "requires a certified 2m-gon"}};
  }

  rep["checks_completed"] = completed;
  rep["anomalies"] = result.anomalies;
  rep["timing"] = work;

  result.exit_code = result.anomalies.empty() ? 0 : 1;
  result.report_json = rep.dump(2) + "\n";

  std::ostringstream txt;
  txt << G.label << ": n=" << n << " order (" << s << "," << t << ")"
      << (result.anomalies.empty() ? " | all assertions pass"
                                   : " | ANOMALIES: " +
                                         std::to_string(result.anomalies.size()));
  result.text_summary = txt.str();
  return result;
}

}  // namespace gpcode
