#include "entangraph/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "entangraph/errors.hpp"

namespace entangraph {

std::string_view status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::Channel: return "channel";
    case NodeStatus::Source: return "source";
    case NodeStatus::Potential: return "potential";
    case NodeStatus::Received: return "received";
  }
  return "";
}

std::string_view style_name(EdgeStyle s) { return s == EdgeStyle::Solid ? "solid" : "virtual"; }

EntGraph::Edge EntGraph::make_edge(const std::string& a, const std::string& b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

std::string EntGraph::hub_id(const LabelSet& members) {
  std::string id = "v:";
  bool first = true;
  for (const auto& m : members) {
    if (!first) id += ',';
    id += m;
    first = false;
  }
  return id;
}

void EntGraph::add_node(const std::string& label, NodeStatus status) {
  if (label.empty()) throw LabelError("empty node label");
  if (!nodes_.emplace(label, status).second) throw LabelError("duplicate node label '" + label + "'");
}

NodeStatus EntGraph::status(const std::string& label) const {
  auto it = nodes_.find(label);
  if (it == nodes_.end()) throw LabelError("unknown node '" + label + "'");
  return it->second;
}

void EntGraph::set_status(const std::string& label, NodeStatus status) {
  auto it = nodes_.find(label);
  if (it == nodes_.end()) throw LabelError("unknown node '" + label + "'");
  it->second = status;
}

void EntGraph::add_edge(const std::string& a, const std::string& b, EdgeStyle style) {
  if (!has_node(a)) throw LabelError("unknown node '" + a + "'");
  if (!has_node(b)) throw LabelError("unknown node '" + b + "'");
  if (a == b) throw ArgumentError("self-loop on '" + a + "'");
  auto e = make_edge(a, b);
  if (solid_.count(e) || virtual_.count(e)) throw ArgumentError("parallel edge " + a + "-" + b);
  (style == EdgeStyle::Solid ? solid_ : virtual_).insert(e);
}

bool EntGraph::remove_edge(const std::string& a, const std::string& b) {
  auto e = make_edge(a, b);
  return solid_.erase(e) + virtual_.erase(e) != 0;
}

std::optional<EdgeStyle> EntGraph::edge(const std::string& a, const std::string& b) const {
  auto e = make_edge(a, b);
  if (solid_.count(e)) return EdgeStyle::Solid;
  if (virtual_.count(e)) return EdgeStyle::Virtual;
  return std::nullopt;
}

void EntGraph::add_hub(LabelSet members) {
  if (members.size() < 3) throw ArgumentError("virtual node needs at least three neighbors");
  for (const auto& m : members)
    if (!has_node(m)) throw LabelError("unknown node '" + m + "'");
  hubs_.insert(std::move(members));
}

LabelSet EntGraph::solid_neighbors(const std::string& label) const {
  LabelSet out;
  for (const auto& [a, b] : solid_) {
    if (a == label) out.insert(b);
    if (b == label) out.insert(a);
  }
  for (const auto& h : hubs_)
    if (h.count(label))
      for (const auto& m : h)
        if (m != label) out.insert(m);
  return out;
}

bool EntGraph::is_isolated(const std::string& label) const {
  for (const auto& [a, b] : solid_)
    if (a == label || b == label) return false;
  for (const auto& [a, b] : virtual_)
    if (a == label || b == label) return false;
  for (const auto& h : hubs_)
    if (h.count(label)) return false;
  return true;
}

void EntGraph::erase_node(const std::string& label) {
  auto drop = [&](std::set<Edge>& edges) {
    std::erase_if(edges, [&](const Edge& e) { return e.first == label || e.second == label; });
  };
  drop(solid_);
  drop(virtual_);
  std::erase_if(hubs_, [&](const LabelSet& h) { return h.count(label) != 0; });
  nodes_.erase(label);
}

std::vector<GraphNode> EntGraph::node_list() const {
  std::vector<GraphNode> out;
  for (const auto& [label, st] : nodes_) out.push_back({label, NodeKind::Labeled, label, st});
  for (const auto& h : hubs_) out.push_back({hub_id(h), NodeKind::Virtual, "", std::nullopt});
  return out;
}

std::vector<GraphEdge> EntGraph::edge_list() const {
  std::vector<GraphEdge> out;
  for (const auto& [a, b] : solid_) out.push_back({a, b, EdgeStyle::Solid});
  for (const auto& [a, b] : virtual_) out.push_back({a, b, EdgeStyle::Virtual});
  for (const auto& h : hubs_)
    for (const auto& m : h) out.push_back({hub_id(h), m, EdgeStyle::Solid});
  return out;
}

namespace {

void require_node(const EntGraph& g, const std::string& x) {
  if (!g.has_node(x)) throw LabelError("unknown node '" + x + "'");
}

bool solidly_connected(const EntGraph& g, const LabelSet& members) {
  std::vector<std::string> idx(members.begin(), members.end());
  std::vector<std::size_t> parent(idx.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  auto pos = [&](const std::string& s) {
    return static_cast<std::size_t>(std::lower_bound(idx.begin(), idx.end(), s) - idx.begin());
  };
  std::size_t components = idx.size();
  for (const auto& [a, b] : g.solid_edges()) {
    if (!members.count(a) || !members.count(b)) continue;
    auto ra = find(pos(a)), rb = find(pos(b));
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components <= 1;
}

// Removes x from every hub and every solid edge except the one to `keep`.
// Hubs shrinking to two members turn into a solid edge, to one are dropped.
void detach(EntGraph& g, const std::string& x, const std::string& keep) {
  std::vector<EntGraph::Edge> edges(g.solid_edges().begin(), g.solid_edges().end());
  for (const auto& [a, b] : edges) {
    if ((a == x && b != keep) || (b == x && a != keep)) g.remove_edge(a, b);
  }
  std::vector<LabelSet> hubs(g.hubs().begin(), g.hubs().end());
  for (const auto& h : hubs) {
    if (!h.count(x)) continue;
    g.remove_hub(h);
    LabelSet rest = h;
    rest.erase(x);
    if (rest.size() >= 3) {
      g.add_hub(rest);
    } else if (rest.size() == 2) {
      const auto& a = *rest.begin();
      const auto& b = *std::next(rest.begin());
      if (!g.edge(a, b)) g.add_edge(a, b, EdgeStyle::Solid);
    }
  }
}

// A lone potential node with no bonds left has received the state.
void settle(EntGraph& g) {
  std::vector<std::string> potential;
  for (const auto& [label, st] : g.nodes())
    if (st == NodeStatus::Potential) potential.push_back(label);
  if (potential.size() == 1 && g.is_isolated(potential.front()))
    g.set_status(potential.front(), NodeStatus::Received);
}

}  // namespace

EntGraph from_polynomial(const EntPolynomial& p, const std::map<std::string, NodeStatus>& statuses) {
  EntGraph g;
  for (const auto& v : p.variables())
    if (!statuses.count(v)) throw LabelError("no status for variable '" + v + "'");
  for (const auto& [label, st] : statuses) g.add_node(label, st);
  for (const auto& m : p) {
    if (m.size() < 2) throw ArgumentError("monomial of size < 2");
    if (m.size() == 2)
      g.add_edge(*m.parties().begin(), *std::next(m.parties().begin()), EdgeStyle::Solid);
    else
      g.add_hub(m.parties());
  }
  return remove_redundant_virtuals(g);
}

EntGraph from_polynomial(const EntPolynomial& p) {
  std::map<std::string, NodeStatus> statuses;
  for (const auto& v : p.variables()) statuses.emplace(v, NodeStatus::Channel);
  return from_polynomial(p, statuses);
}

EntPolynomial to_polynomial(const EntGraph& g) {
  EntPolynomial p;
  for (const auto& [a, b] : g.solid_edges()) p.insert(Monomial({a, b}));
  for (const auto& h : g.hubs()) p.insert(Monomial(h));
  return p;
}

EntGraph remove_redundant_virtuals(const EntGraph& g) {
  // Hub removal never changes the solid labeled subgraph, so a single pass
  // already reaches the fixpoint.
  EntGraph out = g;
  for (const auto& h : g.hubs())
    if (solidly_connected(g, h)) out.remove_hub(h);
  return out;
}

EntGraph remove_labeled_node(const EntGraph& g, const std::string& x) {
  require_node(g, x);
  EntGraph out = g;
  out.erase_node(x);
  return remove_redundant_virtuals(out);
}

EntGraph bind_virtual_pair(const EntGraph& g, const std::string& x, const std::string& y) {
  require_node(g, x);
  require_node(g, y);
  if (g.status(x) != NodeStatus::Source) throw ContractError("'" + x + "' is not a source node");
  if (g.status(y) != NodeStatus::Channel) throw ContractError("'" + y + "' is not a channel node");
  if (g.solid_neighbors(y).empty()) throw ContractError("'" + y + "' is not bonded into a channel");
  if (g.edge(x, y)) throw ContractError("'" + x + "' and '" + y + "' are already joined");

  EntGraph out = g;
  out.add_edge(x, y, EdgeStyle::Virtual);
  out.set_status(x, NodeStatus::Channel);

  LabelSet channel{y};
  std::vector<std::string> frontier{y};
  while (!frontier.empty()) {
    auto cur = frontier.back();
    frontier.pop_back();
    for (const auto& n : g.solid_neighbors(cur))
      if (n != x && channel.insert(n).second) frontier.push_back(n);
  }
  for (const auto& m : channel)
    if (m != y && out.status(m) == NodeStatus::Channel) out.set_status(m, NodeStatus::Potential);
  return out;
}

EntGraph finalize_measurement(const EntGraph& g, const std::string& x, const std::string& y) {
  require_node(g, x);
  require_node(g, y);
  if (g.edge(x, y) != EdgeStyle::Virtual)
    throw ContractError("no virtual edge between '" + x + "' and '" + y + "'");
  EntGraph out = g;
  out.remove_edge(x, y);
  detach(out, y, x);
  out.add_edge(x, y, EdgeStyle::Solid);
  out.set_status(x, NodeStatus::Channel);
  out.set_status(y, NodeStatus::Channel);
  settle(out);
  return remove_redundant_virtuals(out);
}

EntGraph split_pair(const EntGraph& g, const std::string& x, const std::string& y) {
  require_node(g, x);
  require_node(g, y);
  if (x == y) throw ArgumentError("split_pair needs two distinct nodes");
  EntGraph out = g;
  out.remove_edge(x, y);
  detach(out, x, y);
  detach(out, y, x);
  out.add_edge(x, y, EdgeStyle::Solid);
  out.set_status(x, NodeStatus::Channel);
  out.set_status(y, NodeStatus::Channel);
  settle(out);
  return remove_redundant_virtuals(out);
}

EntGraph release_measured(const EntGraph& g, const std::string& x) {
  require_node(g, x);
  EntGraph out = g;
  std::vector<EntGraph::Edge> dashed(out.virtual_edges().begin(), out.virtual_edges().end());
  for (const auto& [a, b] : dashed)
    if (a == x || b == x) out.remove_edge(a, b);
  detach(out, x, "");
  out.set_status(x, NodeStatus::Channel);
  settle(out);
  return remove_redundant_virtuals(out);
}

EntGraph mark_received(const EntGraph& g, const std::string& x) {
  require_node(g, x);
  EntGraph out = g;
  out.set_status(x, NodeStatus::Received);
  return out;
}

std::string to_dot(const EntGraph& g) {
  if (g.nodes().empty()) return "graph G { }\n";
  std::ostringstream os;
  os << "graph G {\n";
  for (const auto& [label, st] : g.nodes()) {
    os << "  \"" << label << "\" [shape=circle, style=filled, ";
    switch (st) {
      case NodeStatus::Channel: os << "fillcolor=red"; break;
      case NodeStatus::Potential: os << "fillcolor=green, color=red, peripheries=2"; break;
      case NodeStatus::Source:
      case NodeStatus::Received: os << "fillcolor=green"; break;
    }
    os << "];\n";
  }
  for (const auto& h : g.hubs())
    os << "  \"" << EntGraph::hub_id(h) << "\" [shape=point, width=0.12, color=blue];\n";
  for (const auto& e : g.edge_list()) {
    os << "  \"" << e.a << "\" -- \"" << e.b << "\"";
    if (e.style == EdgeStyle::Virtual) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_json(const EntGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : g.node_list()) {
    nlohmann::json j{{"id", n.id}, {"kind", n.kind == NodeKind::Labeled ? "labeled" : "virtual"}};
    if (n.kind == NodeKind::Labeled) {
      j["label"] = n.label;
      j["status"] = status_name(*n.status);
    }
    nodes.push_back(std::move(j));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edge_list()) edges.push_back({{"a", e.a}, {"b", e.b}, {"style", style_name(e.style)}});
  return nlohmann::json{{"edges", edges}, {"nodes", nodes}}.dump() + "\n";
}

}  // namespace entangraph
