#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "nilj/atlas.hpp"
#include "nilj/formats.hpp"
#include "nilj/graph.hpp"
#include "nilj/reproduction.hpp"

using namespace nilj;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

StructureTensor load_law(const std::string& path) { return parse_algebra(read_text_file(path)); }

ContractionFamily load_family(const std::string& path, std::size_t n) {
  return parse_family_file(read_text_file(path), n).family;
}

ClassId require_class(const std::string& text) {
  const auto id = parse_class_id(text);
  if (!id) throw ParseError(0, "unknown class '" + text + "'");
  return *id;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(0, "cannot write '" + path + "'");
  out << content;
}

void print_profile(const InvariantProfile& p) {
  std::cout << "s=" << format_char_seq(p.char_seq) << "\n"
            << "orbit=" << p.dim_orbit << "\n"
            << "center=" << p.dim_center << "\n"
            << "derivations=" << p.dim_der << "\n"
            << "nilindex=" << p.nilindex << "\n"
            << "associative=" << (p.associative ? "yes" : "no") << "\n"
            << "central_series=";
  for (std::size_t i = 0; i < p.dims_central_series.size(); ++i) std::cout << (i ? " " : "") << p.dims_central_series[i];
  std::cout << "\n";
}

int cmd_invariants(const std::string& file) {
  print_profile(profile(load_law(file)));
  return kOk;
}

int cmd_classify(const std::string& file) {
  std::cout << label(classify(load_law(file))) << "\n";
  return kOk;
}

int cmd_limit(const std::string& file, const std::string& fam) {
  const StructureTensor phi = load_law(file);
  const LimitResult r = limit_of_family(phi, load_family(fam, phi.dim()));
  if (const auto* d = std::get_if<Divergence>(&r)) {
    std::cout << "DIVERGES " << d->str() << "\n";
    return kCheckFailed;
  }
  const StructureTensor& lim = std::get<StructureTensor>(r);
  std::cout << format_algebra(lim);
  if (lim.is_zero() || is_jordan(lim)) std::cout << "# class " << label(classify(lim)) << "\n";
  return kOk;
}

int cmd_verify_edge(const std::string& file, const std::string& fam, const std::string& target) {
  const StructureTensor phi = load_law(file);
  const ContractionEdge e = verify_edge(phi, require_class(target), load_family(fam, phi.dim()));
  std::cout << label(e.source) << " -> " << label(e.target) << ": " << outcome(e) << "\n";
  if (e.limit) std::cout << "limit: " << (e.limit->is_zero() ? "0" : e.limit->summary()) << "\n";
  if (!e.detail.empty()) std::cout << "detail: " << e.detail << "\n";
  return e.verified() ? kOk : kCheckFailed;
}

int cmd_deform(const std::string& file, const std::string& dir) {
  const StructureTensor phi = load_law(file);
  const DeformationDirection d = parse_deformation_file(read_text_file(dir), phi.dim()).direction;
  const DeformationReport r = verify_polynomial_deformation(phi, d);
  std::cout << "jordan_family=" << (r.jordan_family ? "yes" : "no") << "\n"
            << "nilpotent_at_one=" << (r.nilpotent_at_one ? "yes" : "no") << "\n"
            << "class_at_one=" << (r.class_at_one ? std::string(label(*r.class_at_one)) : "-") << "\n"
            << "trivial=" << (r.trivial ? "yes" : "no") << "\n";
  if (!r.inequality_failure.empty()) std::cout << "inequality: " << r.inequality_failure << "\n";
  if (!r.detail.empty()) std::cout << "detail: " << r.detail << "\n";
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_graph(const std::string& which, const std::string& dot_path, bool full, const std::string& fixtures) {
  if (which != "J3" && which != "J4") throw ParseError(0, "graph takes J3 or J4, got '" + which + "'");
  const FixtureSet fx = load_fixtures(fixtures);
  const DegenerationGraph g = which == "J3" ? build_graph(graph_nodes(3), fx.j3) : build_graph(graph_nodes(4), fx.j4);
  for (const GraphEdge& e : g.edges) std::cout << "edge " << e.name << " [" << e.label << "]\n";
  for (const GraphEdge& e : g.failures) std::cout << "failed " << e.name << " [" << e.label << "]: " << outcome(e.edge) << "\n";
  std::cout << "closure:";
  for (const auto& [a, b] : g.closure) std::cout << " " << label(a) << "->" << label(b);
  std::cout << "\nreduction:";
  for (const auto& [a, b] : g.reduction) std::cout << " " << label(a) << "->" << label(b);
  std::cout << "\n";
  const std::string dot = to_dot(g, !full, which);
  if (dot_path.empty())
    std::cout << dot;
  else
    write_file(dot_path, dot);
  return g.acyclic ? kOk : kCheckFailed;
}

int cmd_squaring(const std::string& file) {
  const AlgebraFile af = parse_algebra_file(read_text_file(file));
  const StructureTensor phi = squaring_map(af.law);
  std::cout << format_algebra(phi);
  std::cout << "# jordan " << (is_jordan(phi) ? "yes" : "no") << "\n";
  if (phi.dim() >= 2 && phi.dim() <= 4) std::cout << "# class " << label(classify(phi)) << "\n";
  return kOk;
}

int cmd_reproduce(const std::string& json_path, const std::string& fixtures) {
  const Report r = reproduce(load_fixtures(fixtures));
  std::cout << r.text();
  if (!json_path.empty()) write_file(json_path, r.json());
  return r.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nilpotent Jordan algebras: invariants, classification and contractions"};
  app.require_subcommand(1);
  std::string file, fam, target, dir, which, dot, json;
  std::string fixtures = default_fixture_dir().string();
  bool full = false;

  auto* inv = app.add_subcommand("invariants", "Invariant profile of an algebra file");
  inv->add_option("FILE", file)->required();
  auto* cls = app.add_subcommand("classify", "Class label of an algebra file");
  cls->add_option("FILE", file)->required();
  auto* lim = app.add_subcommand("limit", "Limit of a contraction family");
  lim->add_option("FILE", file)->required();
  lim->add_option("--family", fam)->required();
  auto* edge = app.add_subcommand("verify-edge", "Check that a family contracts FILE onto a class");
  edge->add_option("FILE", file)->required();
  edge->add_option("--family", fam)->required();
  edge->add_option("--target", target)->required();
  auto* def = app.add_subcommand("deform", "Check a polynomial deformation");
  def->add_option("FILE", file)->required();
  def->add_option("--direction", dir)->required();
  auto* graph = app.add_subcommand("graph", "Contraction graph from the fixture families");
  graph->add_option("WHICH", which, "J3 or J4")->required();
  graph->add_option("--dot", dot, "write DOT here instead of stdout");
  graph->add_flag("--full", full, "export the closure instead of the transitive reduction");
  graph->add_option("--fixtures", fixtures);
  auto* sq = app.add_subcommand("squaring", "Symmetrized product of an associative law");
  sq->add_option("FILE", file)->required();
  auto* report_cmd = app.add_subcommand("verify-paper", "Recompute every published table, family and remark");
  report_cmd->add_option("--json", json, "also write a JSON report");
  report_cmd->add_option("--fixtures", fixtures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*inv) return cmd_invariants(file);
    if (*cls) return cmd_classify(file);
    if (*lim) return cmd_limit(file, fam);
    if (*edge) return cmd_verify_edge(file, fam, target);
    if (*def) return cmd_deform(file, dir);
    if (*graph) return cmd_graph(which, dot, full, fixtures);
    if (*sq) return cmd_squaring(file);
    if (*report_cmd) return cmd_reproduce(json, fixtures);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
