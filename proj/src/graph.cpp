#include "nilj/graph.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

#include "nilj/atlas.hpp"
#include "nilj/formats.hpp"

namespace nilj {

std::string outcome(const ContractionEdge& e) {
  std::string s = to_string(e.status);
  if (e.status == EdgeStatus::Misclassified && e.actual) s += " " + std::string(label(*e.actual));
  return s;
}

std::vector<ClassId> DegenerationGraph::sources() const {
  std::vector<ClassId> out;
  for (ClassId id : nodes) {
    const bool incoming = std::any_of(relation.begin(), relation.end(), [&](const ClassPair& p) { return p.second == id; });
    if (!incoming) out.push_back(id);
  }
  return out;
}

std::vector<ClassId> graph_nodes(int n) {
  std::vector<ClassId> out;
  for (const AtlasEntry* e : atlas_of_dim(n)) out.push_back(e->id);
  out.push_back(abelian_class(static_cast<std::size_t>(n), Field::Gaussian));
  return out;
}

std::set<ClassPair> transitive_closure(const std::vector<ClassId>& nodes, const std::set<ClassPair>& edges) {
  std::set<ClassPair> closure = edges;
  for (ClassId k : nodes)
    for (ClassId i : nodes)
      if (closure.contains({i, k}))
        for (ClassId j : nodes)
          if (closure.contains({k, j})) closure.insert({i, j});
  return closure;
}

std::set<ClassPair> transitive_reduction(const std::vector<ClassId>& nodes, const std::set<ClassPair>& closure) {
  std::set<ClassPair> out;
  for (const auto& [a, b] : closure) {
    if (a == b) continue;
    const bool via = std::any_of(nodes.begin(), nodes.end(), [&](ClassId c) {
      return c != a && c != b && closure.contains({a, c}) && closure.contains({c, b});
    });
    if (!via) out.insert({a, b});
  }
  return out;
}

DegenerationGraph build_graph(const std::vector<ClassId>& nodes, const std::vector<FamilySpec>& families) {
  DegenerationGraph g;
  g.nodes = nodes;
  auto is_node = [&](ClassId id) { return std::find(nodes.begin(), nodes.end(), id) != nodes.end(); };

  std::vector<FamilySpec> all = families;
  for (ClassId id : nodes) {
    if (is_abelian_class(id)) continue;
    const ClassId ab = abelian_class(static_cast<std::size_t>(dimension(id)), Field::Gaussian);
    if (!is_node(ab)) continue;
    all.push_back({"scaling " + std::string(label(id)), id, ab,
                   scaling_family(static_cast<std::size_t>(dimension(id))), "scaling", "VERIFIED", ""});
  }
  for (const FamilySpec& f : all)
    if (!is_node(f.source) || !is_node(f.target))
      throw Error(ErrorCode::Precondition, "family " + f.name + " connects classes outside the graph");

  std::vector<std::future<ContractionEdge>> jobs;
  for (const FamilySpec& f : all)
    jobs.push_back(std::async(std::launch::async, [&f] { return verify_edge(canonical_law(f.source), f.target, f.family); }));
  for (std::size_t i = 0; i < all.size(); ++i) {
    GraphEdge e{all[i].name, all[i].label, jobs[i].get()};
    if (e.edge.verified()) {
      g.relation.insert({all[i].source, all[i].target});
      g.edges.push_back(std::move(e));
    } else {
      g.failures.push_back(std::move(e));
    }
  }
  g.closure = transitive_closure(nodes, g.relation);
  g.acyclic = std::none_of(g.closure.begin(), g.closure.end(), [](const ClassPair& p) { return p.first == p.second; });
  g.reduction = transitive_reduction(nodes, g.closure);
  return g;
}

std::vector<RigidityRow> rigidity_screen(const DegenerationGraph& g) {
  std::vector<RigidityRow> rows;
  for (ClassId id : g.nodes) {
    const InvariantProfile p = profile(canonical_law(id));
    rows.push_back({id, p.dim_orbit, p.char_seq, false, false, false});
  }
  const auto sources = g.sources();
  int max_orbit = 0;
  CharSeq max_s;
  for (const auto& r : rows) {
    max_orbit = std::max(max_orbit, r.dim_orbit);
    max_s = std::max(max_s, r.char_seq);
  }
  const auto with_max_s = std::count_if(rows.begin(), rows.end(), [&](const RigidityRow& r) { return r.char_seq == max_s; });
  for (auto& r : rows) {
    r.no_incoming = std::find(sources.begin(), sources.end(), r.id) != sources.end();
    r.maximal_orbit = r.dim_orbit == max_orbit;
    r.unique_max_char_seq = r.char_seq == max_s && with_max_s == 1;
  }
  return rows;
}

std::string to_dot(const DegenerationGraph& g, bool reduction_only, std::string_view name) {
  std::map<int, std::vector<ClassId>, std::greater<>> by_orbit;
  for (ClassId id : g.nodes) by_orbit[profile(canonical_law(id)).dim_orbit].push_back(id);
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  node [shape=box];\n";
  for (const auto& [orbit, ids] : by_orbit) {
    os << "  { rank=same;";
    for (ClassId id : ids) os << " \"" << label(id) << "\";";
    os << " }  // orbit " << orbit << "\n";
  }
  for (const auto& [a, b] : reduction_only ? g.reduction : g.closure)
    os << "  \"" << label(a) << "\" -> \"" << label(b) << "\";\n";
  os << "}\n";
  return os.str();
}

std::set<ClassPair> parse_dot_edges(std::string_view dot) {
  std::set<ClassPair> out;
  std::istringstream in{std::string(dot)};
  std::string line;
  int number = 0;
  auto quoted = [&](const std::string& s, std::size_t& pos) {
    const auto open = s.find('"', pos);
    const auto close = open == std::string::npos ? open : s.find('"', open + 1);
    if (close == std::string::npos) throw ParseError(number, "expected a quoted node name");
    pos = close + 1;
    const std::string id = s.substr(open + 1, close - open - 1);
    const auto cls = parse_class_id(id);
    if (!cls) throw ParseError(number, "unknown class '" + id + "'");
    return *cls;
  };
  while (std::getline(in, line)) {
    ++number;
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) continue;
    std::size_t pos = 0;
    const ClassId a = quoted(line, pos);
    if (pos > arrow) throw ParseError(number, "malformed edge");
    pos = arrow + 2;
    const ClassId b = quoted(line, pos);
    out.insert({a, b});
  }
  return out;
}

}  // namespace nilj
