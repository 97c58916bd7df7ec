#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "entangraph/polynomial.hpp"

namespace entangraph {

enum class NodeStatus { Channel, Source, Potential, Received };
enum class NodeKind { Labeled, Virtual };
enum class EdgeStyle { Solid, Virtual };

std::string_view status_name(NodeStatus s);
std::string_view style_name(EdgeStyle s);

/// Export view of a node. Virtual nodes carry no label and no status.
struct GraphNode {
  std::string id;
  NodeKind kind = NodeKind::Labeled;
  std::string label;
  std::optional<NodeStatus> status;
};

struct GraphEdge {
  std::string a;
  std::string b;
  EdgeStyle style = EdgeStyle::Solid;
};

/// Labeled nodes, virtual hubs and solid/virtual edges.
///
/// A hub is stored as the set of labeled nodes it joins (its id is derived
/// from that set), so hubs can never touch each other and two hubs never
/// share a neighborhood. Labeled-labeled edges are either solid or virtual
/// (dashed), never both. The stored form is canonical: equality of two graphs
/// is equality of their canonical forms.
class EntGraph {
 public:
  using Edge = std::pair<std::string, std::string>;  // first < second

  void add_node(const std::string& label, NodeStatus status);
  bool has_node(const std::string& label) const { return nodes_.count(label) != 0; }
  NodeStatus status(const std::string& label) const;
  void set_status(const std::string& label, NodeStatus status);

  void add_edge(const std::string& a, const std::string& b, EdgeStyle style);
  bool remove_edge(const std::string& a, const std::string& b);
  std::optional<EdgeStyle> edge(const std::string& a, const std::string& b) const;

  /// ArgumentError unless every member exists and there are at least three.
  void add_hub(LabelSet members);
  bool remove_hub(const LabelSet& members) { return hubs_.erase(members) != 0; }

  const std::map<std::string, NodeStatus>& nodes() const { return nodes_; }
  const std::set<Edge>& solid_edges() const { return solid_; }
  const std::set<Edge>& virtual_edges() const { return virtual_; }
  const std::set<LabelSet>& hubs() const { return hubs_; }

  /// Labeled nodes joined to `label` by a solid edge or through a hub.
  LabelSet solid_neighbors(const std::string& label) const;
  bool is_isolated(const std::string& label) const;

  /// Labeled nodes by label, then hubs by neighborhood.
  std::vector<GraphNode> node_list() const;
  /// Solid edges, virtual edges, then hub spokes.
  std::vector<GraphEdge> edge_list() const;

  static std::string hub_id(const LabelSet& members);
  static Edge make_edge(const std::string& a, const std::string& b);

  friend bool operator==(const EntGraph&, const EntGraph&) = default;

  // Mutators used by the rewriting rules.
  void erase_node(const std::string& label);

 private:
  std::map<std::string, NodeStatus> nodes_;
  std::set<Edge> solid_;
  std::set<Edge> virtual_;
  std::set<LabelSet> hubs_;
};

/// One labeled node per entry of `statuses`, a solid edge per 2-monomial,
/// a hub per larger monomial, then redundant hubs removed. LabelError when a
/// variable of p has no status.
EntGraph from_polynomial(const EntPolynomial& p, const std::map<std::string, NodeStatus>& statuses);
/// Same, with every variable a channel node.
EntGraph from_polynomial(const EntPolynomial& p);

/// Solid labeled edges and hub neighborhoods; virtual edges are ignored.
EntPolynomial to_polynomial(const EntGraph& g);

/// Deletes, to a fixpoint, every hub whose members are connected through
/// solid edges among themselves.
EntGraph remove_redundant_virtuals(const EntGraph& g);

/// Tracing out `x`: the node, its edges and every hub it belongs to go.
EntGraph remove_labeled_node(const EntGraph& g, const std::string& x);

/// Source `x` is paired with channel member `y` by a virtual edge; x and y
/// become channel nodes and the rest of y's channel becomes potential.
/// ContractError unless x is a source and y a connected channel node.
EntGraph bind_virtual_pair(const EntGraph& g, const std::string& x, const std::string& y);

/// The virtual edge x-y becomes solid and y leaves its channel (its hubs
/// shrink, a hub left with two members becomes a solid edge).
EntGraph finalize_measurement(const EntGraph& g, const std::string& x, const std::string& y);

/// Reduced-Bell split: x and y leave the channel and remain as a solid pair
/// of channel nodes.
EntGraph split_pair(const EntGraph& g, const std::string& x, const std::string& y);

/// Single-qubit measurement: x leaves the channel entirely.
EntGraph release_measured(const EntGraph& g, const std::string& x);

EntGraph mark_received(const EntGraph& g, const std::string& x);

/// Deterministic Graphviz text; "graph G { }" for the empty graph.
std::string to_dot(const EntGraph& g);
/// {"edges":[{a,b,style}],"nodes":[{id,kind,label?,status?}]}, sorted keys,
/// newline-terminated.
std::string to_json(const EntGraph& g);

}  // namespace entangraph
