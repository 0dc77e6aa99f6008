// gpcode: construct generalised polygons, certify them, and verify the
// blocking-set and minimum-weight properties of their incidence codes.
//
// Exit codes: 0 all assertions pass, 1 anomaly found, 2 usage or input
// error, 3 cost guard exceeded.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gpcode/code.hpp"
#include "gpcode/constructions.hpp"
#include "gpcode/report.hpp"
#include "gpcode/traces.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAnomaly = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

int cmd_construct(const std::string& family, std::uint32_t q, bool dual,
                  const std::string& out) {
  gpcode::GeometrySource src;
  src.kind = gpcode::GeometrySource::Kind::Family;
  src.family = family;
  src.q = q;
  src.dual = dual;
  const gpcode::Geometry G = gpcode::build_source_geometry(src);
  gpcode::export_gpg(G, std::filesystem::path(out));
  std::cout << G.label << ": " << G.num_points << " points, " << G.num_lines()
            << " lines -> " << out << "\n";
  return kExitPass;
}

int cmd_verify(const std::string& in, int n) {
  const gpcode::Geometry G = gpcode::import_gpg(std::filesystem::path(in));
  const gpcode::AxiomReport rep = gpcode::verify_polygon(G, n);
  std::cout << G.label << ": n=" << n << " diameter=" << rep.diameter
            << " girth=" << rep.girth << "\n";
  if (rep.has_order)
    std::cout << "order (" << rep.order.s << "," << rep.order.t << ")"
              << (rep.is_thick ? ", thick" : ", not thick") << "\n";
  else
    std::cout << "no order (non-uniform degrees)\n";
  if (rep.certified()) {
    std::cout << "certified: weak generalised " << n << "-gon\n";
    return kExitPass;
  }
  std::cout << "certification FAILED:\n";
  for (const auto& v : rep.violations)
    std::cout << "  [" << v.check << "] " << v.detail << "\n";
  return kExitAnomaly;
}

int cmd_code(const std::string& in, std::uint32_t p, bool do_min_weight,
             std::uint32_t w_max, bool classify) {
  const gpcode::Geometry G = gpcode::import_gpg(std::filesystem::path(in));
  const gpcode::Field F = gpcode::Field::make(p, 1);
  const gpcode::LinearCode code = gpcode::code_build(G, F);
  std::cout << G.label << " over " << F.name() << ": length " << code.length()
            << ", rank " << code.rank() << ", dual dimension "
            << code.dual_dimension() << "\n";

  if (!do_min_weight && w_max == 0) return kExitPass;

  const gpcode::DistanceOracle D = gpcode::distances(G);
  if (do_min_weight) {
    auto mw = gpcode::min_weight(code);
    std::cout << "minimum weight " << mw.weight << " (" << mw.words.size()
              << " words up to scalar)\n";
    if (classify) {
      const gpcode::TraceIndex idx(G, D);
      std::size_t lines = 0, unclassified = 0;
      for (auto& w : mw.words) {
        w.trace_match = idx.classify(w.support);
        if (w.is_line_multiple) ++lines;
        if (!w.trace_match) ++unclassified;
      }
      std::cout << "classified: " << lines << " line multiples, "
                << unclassified << " not distance traces\n";
      if (unclassified > 0) return kExitAnomaly;
    }
  } else {
    auto words = gpcode::low_weight_codewords(code, w_max);
    std::cout << "codewords of weight <= " << w_max << " up to scalar: "
              << words.size() << "\n";
  }
  return kExitPass;
}

int cmd_blocking(const std::string& in, std::uint32_t cap) {
  const gpcode::Geometry G = gpcode::import_gpg(std::filesystem::path(in));
  const gpcode::DistanceOracle D = gpcode::distances(G);
  int s = 0, t = 0;
  gpcode::detect_order(G, s, t);
  const std::uint32_t use_cap = cap > 0 ? cap : static_cast<std::uint32_t>(s) + 1;
  const auto mb = gpcode::min_x_blocking_size(G, D, use_cap);
  std::cout << G.label << ": minimum X-blocking size " << mb.size << " ("
            << (mb.certificate ==
                        gpcode::MinBlockingResult::Certificate::Exhaustive
                    ? "exhaustive"
                    : "found")
            << ")\n";
  if (static_cast<long long>(s) * t > 1)
    std::cout << "line-blocking lower bound "
              << gpcode::line_blocking_bound(G, D) << "\n";
  return mb.size == static_cast<std::uint32_t>(s) + 1 ? kExitPass : kExitAnomaly;
}

int cmd_traces(const std::string& in, int d) {
  const gpcode::Geometry G = gpcode::import_gpg(std::filesystem::path(in));
  const gpcode::DistanceOracle D = gpcode::distances(G);
  const auto traces = gpcode::enumerate_traces(G, D, d);
  std::cout << G.label << ": " << traces.size() << " distinct distance " << d
            << "-traces\n";
  for (const auto& T : traces) {
    std::cout << (G.is_point_vertex(T.x) ? "p" : "L")
              << (G.is_point_vertex(T.x) ? T.x : G.line_of_vertex(T.x)) << ","
              << (G.is_point_vertex(T.y) ? "p" : "L")
              << (G.is_point_vertex(T.y) ? T.y : G.line_of_vertex(T.y)) << ":";
    for (auto p : T.points) std::cout << " " << p;
    std::cout << "\n";
  }
  return kExitPass;
}

int cmd_perp(const std::string& in, const std::string& variant) {
  const gpcode::Geometry G = gpcode::import_gpg(std::filesystem::path(in));
  const gpcode::DistanceOracle D = gpcode::distances(G);
  const gpcode::PerpVariant v = variant == "literal"
                                    ? gpcode::PerpVariant::Literal
                                    : gpcode::PerpVariant::Augmented;
  std::uint32_t projective = 0;
  for (std::uint32_t x = 0; x < G.num_points; ++x)
    projective += gpcode::is_projective_point(G, D, x, v);
  std::cout << G.label << " (" << variant << "): " << projective << " of "
            << G.num_points << " points are projective\n";
  return kExitPass;
}

int cmd_report(const std::string& config_path, const std::string& out,
               long long seed) {
  gpcode::RunConfig cfg = gpcode::load_config(config_path);
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  const gpcode::PipelineResult res = gpcode::run_pipeline(cfg);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw gpcode::InputError("cannot open output file " + out);
  os << res.report_json;
  std::cout << res.text_summary << "\n";
  for (const auto& a : res.anomalies) std::cout << "anomaly: " << a << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incidence codes of generalised polygons"};
  app.require_subcommand(1);

  std::string family, in, out, variant = "augmented", config_path;
  std::uint32_t q = 0, p = 2, w_max = 0, cap = 0;
  int n = 0, d = 1;
  long long seed = -1;
  bool dual = false, do_min_weight = false, classify = false;

  auto* construct = app.add_subcommand("construct", "build a classical polygon");
  construct->add_option("--family", family, "ngon|pg2|wq|q4|q5minus|hexagon")
      ->required();
  construct->add_option("--q", q, "order parameter (n for ngon)")->required();
  construct->add_flag("--dual", dual, "dualize before writing");
  construct->add_option("--out", out, "output .gpg file")->required();

  auto* verify = app.add_subcommand("verify", "certify a gpg file as an n-gon");
  verify->add_option("--in", in, "input .gpg file")->required();
  verify->add_option("--n", n, "gonality to certify")->required();

  auto* code = app.add_subcommand("code", "incidence code over GF(p)");
  code->add_option("--in", in, "input .gpg file")->required();
  code->add_option("--p", p, "prime field characteristic")->required();
  code->add_flag("--min-weight", do_min_weight, "run the minimum-weight search");
  code->add_option("--w-max", w_max, "enumerate codewords of weight <= w-max");
  code->add_flag("--classify", classify, "classify minimum-weight supports");

  auto* blocking = app.add_subcommand("blocking", "minimum X-blocking set size");
  blocking->add_option("--in", in, "input .gpg file")->required();
  blocking->add_option("--exhaustive-cap", cap, "largest subset size to scan");

  auto* traces = app.add_subcommand("traces", "enumerate distance d-traces");
  traces->add_option("--in", in, "input .gpg file")->required();
  traces->add_option("--d", d, "trace distance parameter")->required();

  auto* perp = app.add_subcommand("perp", "projective-point census");
  perp->add_option("--in", in, "input .gpg file")->required();
  perp->add_option("--variant", variant, "literal|augmented")
      ->check(CLI::IsMember({"literal", "augmented"}));

  auto* report = app.add_subcommand("report", "run the full pipeline");
  report->add_option("--config", config_path, "JSON run configuration")
      ->required();
  report->add_option("--out", out, "output report JSON")->required();
  report->add_option("--seed", seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(family, q, dual, out);
    if (verify->parsed()) return cmd_verify(in, n);
    if (code->parsed()) return cmd_code(in, p, do_min_weight, w_max, classify);
    if (blocking->parsed()) return cmd_blocking(in, cap);
    if (traces->parsed()) return cmd_traces(in, d);
    if (perp->parsed()) return cmd_perp(in, variant);
    if (report->parsed()) return cmd_report(config_path, out, seed);
  } catch (const gpcode::CostGuardExceeded& e) {
    std::cerr << "cost guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const gpcode::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gpcode::CertificationError& e) {
    std::cerr << "certification: " << e.what() << "\n";
    return kExitAnomaly;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
