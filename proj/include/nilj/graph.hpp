#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilj/degeneration.hpp"

namespace nilj {

struct FamilySpec {
  std::string name;
  ClassId source;
  ClassId target;
  ContractionFamily family;
  std::string label;  // published, corrected, derived, scaling
  /// Expected verify_edge outcome, `VERIFIED` unless stated, e.g.
  /// `SINGULAR` or `MISCLASSIFIED J4_12`.
  std::string expect = "VERIFIED";
  std::string note;
};

/// Outcome string in the same form as FamilySpec::expect.
std::string outcome(const ContractionEdge& e);

using ClassPair = std::pair<ClassId, ClassId>;

struct GraphEdge {
  std::string name;
  std::string label;
  ContractionEdge edge;
};

struct DegenerationGraph {
  std::vector<ClassId> nodes;
  std::vector<GraphEdge> edges;     // verified families, in input order
  std::vector<GraphEdge> failures;  // families that did not verify
  std::set<ClassPair> relation;     // distinct verified pairs
  std::set<ClassPair> closure;      // transitive closure, without the diagonal
  std::set<ClassPair> reduction;
  bool acyclic = true;

  bool reaches(ClassId from, ClassId to) const { return from == to || closure.contains({from, to}); }
  /// Nodes without an incoming verified edge.
  std::vector<ClassId> sources() const;
};

/// Verifies every family (concurrently; results keep input order), adds the
/// scaling edge from each non-abelian node to the abelian node of its
/// dimension, then derives closure and transitive reduction. Families whose
/// endpoints are not nodes throw PRECONDITION; failing families are kept
/// in `failures`.
DegenerationGraph build_graph(const std::vector<ClassId>& nodes, const std::vector<FamilySpec>& families);

/// Non-abelian complex classes of dimension n plus the abelian class.
std::vector<ClassId> graph_nodes(int n);

std::set<ClassPair> transitive_closure(const std::vector<ClassId>& nodes, const std::set<ClassPair>& edges);
/// Pairs of the closure with no intermediate node.
std::set<ClassPair> transitive_reduction(const std::vector<ClassId>& nodes, const std::set<ClassPair>& closure);

struct RigidityRow {
  ClassId id;
  int dim_orbit = 0;
  CharSeq char_seq;
  bool no_incoming = false;
  bool maximal_orbit = false;         // orbit dimension is the largest among the nodes
  bool unique_max_char_seq = false;   // sole node with the largest s
};

std::vector<RigidityRow> rigidity_screen(const DegenerationGraph& g);

/// Transitive reduction (or the full relation) as a digraph, with nodes of
/// equal orbit dimension on one rank.
std::string to_dot(const DegenerationGraph& g, bool reduction_only = true, std::string_view name = "contractions");
/// Edge set of a digraph written by to_dot. Throws ParseError.
std::set<ClassPair> parse_dot_edges(std::string_view dot);

}  // namespace nilj
