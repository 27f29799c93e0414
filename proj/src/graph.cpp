#include "glc/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "glc/error.hpp"

namespace glc {

int port_count(GateType t) { return t == GateType::Term ? 1 : 3; }

bool port_is_in(GateType t, int port) {
  switch (t) {
    case GateType::Lambda:
    case GateType::FanOut:
      return port == 1;
    case GateType::App:
    case GateType::Dilation:
      return port == 1 || port == 2;
    case GateType::Term:
      return port == 1;
  }
  return false;
}

std::string gate_token(const GateKind& k) {
  switch (k.type) {
    case GateType::Lambda: return "lam";
    case GateType::FanOut: return "fan";
    case GateType::App: return "app";
    case GateType::Dilation: return "dil[" + k.scale.str() + "]";
    case GateType::Term: return "top";
  }
  return "?";
}

NodeId PortGraph::add_gate(const GateKind& kind) {
  NodeId id = next_node_++;
  nodes_.emplace(id, kind);
  return id;
}

LeafId PortGraph::add_leaf(LeafDir dir, const std::string& label) {
  LeafId id = next_leaf_++;
  leaves_.push_back({id, dir, label});
  return id;
}

void PortGraph::add_loops(int n) {
  if (loops_ + n < 0) fail(Errc::NoLoop, "loop count would go negative");
  loops_ += n;
}

const GateKind& PortGraph::gate(NodeId n) const {
  auto it = nodes_.find(n);
  if (it == nodes_.end()) fail(Errc::UnknownNode, "node " + std::to_string(n));
  return it->second;
}

void PortGraph::set_gate(NodeId n, const GateKind& kind) {
  auto it = nodes_.find(n);
  if (it == nodes_.end()) fail(Errc::UnknownNode, "node " + std::to_string(n));
  it->second = kind;
}

const Edge& PortGraph::edge(EdgeId e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) fail(Errc::UnknownEdge, "edge " + std::to_string(e));
  return it->second;
}

const Leaf& PortGraph::leaf(LeafId l) const {
  for (const auto& lf : leaves_)
    if (lf.id == l) return lf;
  fail(Errc::UnknownLeaf, "leaf " + std::to_string(l));
}

int PortGraph::leaf_index(LeafId l) const {
  for (size_t i = 0; i < leaves_.size(); ++i)
    if (leaves_[i].id == l) return static_cast<int>(i);
  fail(Errc::UnknownLeaf, "leaf " + std::to_string(l));
}

EdgeId PortGraph::edge_at_port(PortRef p) const {
  auto it = port_cover_.find(p);
  return it == port_cover_.end() ? 0 : it->second;
}

EdgeId PortGraph::edge_at_leaf(LeafId l) const {
  auto it = leaf_cover_.find(l);
  return it == leaf_cover_.end() ? 0 : it->second;
}

EdgeId PortGraph::edge_with_head(PortRef p) const {
  EdgeId e = edge_at_port(p);
  if (e == 0 || !(edge(e).head.is_port() && edge(e).head.port == p))
    fail(Errc::InvalidGraph, "no edge ends at node " + std::to_string(p.node) +
                                 " port " + std::to_string(p.port));
  return e;
}

EdgeId PortGraph::edge_with_tail(PortRef p) const {
  EdgeId e = edge_at_port(p);
  if (e == 0 || !(edge(e).tail.is_port() && edge(e).tail.port == p))
    fail(Errc::InvalidGraph, "no edge starts at node " + std::to_string(p.node) +
                                 " port " + std::to_string(p.port));
  return e;
}

std::vector<LeafId> PortGraph::in_leaves() const {
  std::vector<LeafId> out;
  for (const auto& l : leaves_)
    if (l.dir == LeafDir::In) out.push_back(l.id);
  return out;
}

std::vector<LeafId> PortGraph::out_leaves() const {
  std::vector<LeafId> out;
  for (const auto& l : leaves_)
    if (l.dir == LeafDir::Out) out.push_back(l.id);
  return out;
}

void PortGraph::cover(const Edge& e) {
  for (const Endpoint* ep : {&e.tail, &e.head}) {
    if (ep->is_port())
      port_cover_[ep->port] = e.id;
    else
      leaf_cover_[ep->leaf] = e.id;
  }
}

void PortGraph::uncover(const Edge& e) {
  // Erase only entries that still point at this edge: rewrites may move
  // several edges through the same endpoint transiently.
  for (const Endpoint* ep : {&e.tail, &e.head}) {
    if (ep->is_port()) {
      auto it = port_cover_.find(ep->port);
      if (it != port_cover_.end() && it->second == e.id) port_cover_.erase(it);
    } else {
      auto it = leaf_cover_.find(ep->leaf);
      if (it != leaf_cover_.end() && it->second == e.id) leaf_cover_.erase(it);
    }
  }
}

EdgeId PortGraph::connect(Endpoint tail, Endpoint head) {
  // Orientation compatibility of grafting: the tail emits, the head receives.
  if (tail.is_port()) {
    const GateKind& k = gate(tail.port.node);
    if (tail.port.port < 1 || tail.port.port > port_count(k.type))
      fail(Errc::BadArgument, "no such port");
    if (port_is_in(k.type, tail.port.port))
      fail(Errc::DirectionMismatch, "edge tail must be an out port");
    if (edge_at_port(tail.port))
      fail(Errc::PortAlreadyCovered, "tail port already covered");
  } else {
    if (leaf(tail.leaf).dir != LeafDir::In)
      fail(Errc::DirectionMismatch, "edge tail leaf must be IN");
    if (edge_at_leaf(tail.leaf))
      fail(Errc::PortAlreadyCovered, "tail leaf already covered");
  }
  if (head.is_port()) {
    const GateKind& k = gate(head.port.node);
    if (head.port.port < 1 || head.port.port > port_count(k.type))
      fail(Errc::BadArgument, "no such port");
    if (!port_is_in(k.type, head.port.port))
      fail(Errc::DirectionMismatch, "edge head must be an in port");
    if (edge_at_port(head.port))
      fail(Errc::PortAlreadyCovered, "head port already covered");
  } else {
    if (leaf(head.leaf).dir != LeafDir::Out)
      fail(Errc::DirectionMismatch, "edge head leaf must be OUT");
    if (edge_at_leaf(head.leaf))
      fail(Errc::PortAlreadyCovered, "head leaf already covered");
  }
  EdgeId id = next_edge_++;
  Edge e{id, tail, head};
  edges_.emplace(id, e);
  cover(e);
  return id;
}

std::vector<ValidationIssue> PortGraph::validate() const {
  std::vector<ValidationIssue> issues;
  auto add = [&](ValidationIssue::Kind k, const std::string& d) {
    issues.push_back({k, d});
  };
  std::map<PortRef, int> port_uses;
  std::map<LeafId, int> leaf_uses;
  for (const auto& [id, e] : edges_) {
    // tail
    if (e.tail.is_port()) {
      if (!has_node(e.tail.port.node)) {
        add(ValidationIssue::Kind::DirectionViolation,
            "edge " + std::to_string(id) + " tail on missing node");
        continue;
      }
      const GateKind& k = nodes_.at(e.tail.port.node);
      if (port_is_in(k.type, e.tail.port.port))
        add(ValidationIssue::Kind::DirectionViolation,
            "edge " + std::to_string(id) + " tail on in-port");
      port_uses[e.tail.port]++;
    } else {
      bool found = false;
      for (const auto& l : leaves_)
        if (l.id == e.tail.leaf) {
          found = true;
          if (l.dir != LeafDir::In)
            add(ValidationIssue::Kind::DirectionViolation,
                "edge " + std::to_string(id) + " tail on OUT leaf");
        }
      if (!found)
        add(ValidationIssue::Kind::DirectionViolation, "tail on missing leaf");
      leaf_uses[e.tail.leaf]++;
    }
    if (e.head.is_port()) {
      if (!has_node(e.head.port.node)) {
        add(ValidationIssue::Kind::DirectionViolation,
            "edge " + std::to_string(id) + " head on missing node");
        continue;
      }
      const GateKind& k = nodes_.at(e.head.port.node);
      if (!port_is_in(k.type, e.head.port.port))
        add(ValidationIssue::Kind::DirectionViolation,
            "edge " + std::to_string(id) + " head on out-port");
      port_uses[e.head.port]++;
    } else {
      bool found = false;
      for (const auto& l : leaves_)
        if (l.id == e.head.leaf) {
          found = true;
          if (l.dir != LeafDir::Out)
            add(ValidationIssue::Kind::DirectionViolation,
                "edge " + std::to_string(id) + " head on IN leaf");
        }
      if (!found)
        add(ValidationIssue::Kind::DirectionViolation, "head on missing leaf");
      leaf_uses[e.head.leaf]++;
    }
  }
  for (const auto& [n, kind] : nodes_) {
    for (int p = 1; p <= port_count(kind.type); ++p) {
      int uses = port_uses.count({n, p}) ? port_uses.at({n, p}) : 0;
      if (uses == 0)
        add(ValidationIssue::Kind::UncoveredPort,
            "node " + std::to_string(n) + " port " + std::to_string(p));
      else if (uses > 1)
        add(ValidationIssue::Kind::DoubleCover,
            "node " + std::to_string(n) + " port " + std::to_string(p));
    }
  }
  for (const auto& l : leaves_) {
    int uses = leaf_uses.count(l.id) ? leaf_uses.at(l.id) : 0;
    if (uses == 0)
      add(ValidationIssue::Kind::UncoveredLeaf, "leaf " + std::to_string(l.id));
    else if (uses > 1)
      add(ValidationIssue::Kind::DoubleCover, "leaf " + std::to_string(l.id));
  }
  if (loops_ < 0) add(ValidationIssue::Kind::NegativeLoops, "loops < 0");
  return issues;
}

void PortGraph::remove_edge(EdgeId e) {
  auto it = edges_.find(e);
  if (it == edges_.end()) fail(Errc::UnknownEdge, "edge " + std::to_string(e));
  uncover(it->second);
  edges_.erase(it);
}

void PortGraph::remove_node(NodeId n) {
  if (!has_node(n)) fail(Errc::UnknownNode, "node " + std::to_string(n));
  const GateKind& k = nodes_.at(n);
  for (int p = 1; p <= port_count(k.type); ++p)
    if (edge_at_port({n, p}))
      fail(Errc::InvalidGraph, "removing node with covered port");
  nodes_.erase(n);
}

void PortGraph::retarget_head(EdgeId e, Endpoint new_head) {
  auto it = edges_.find(e);
  if (it == edges_.end()) fail(Errc::UnknownEdge, "edge " + std::to_string(e));
  uncover(it->second);
  it->second.head = new_head;
  cover(it->second);
}

void PortGraph::retarget_tail(EdgeId e, Endpoint new_tail) {
  auto it = edges_.find(e);
  if (it == edges_.end()) fail(Errc::UnknownEdge, "edge " + std::to_string(e));
  uncover(it->second);
  it->second.tail = new_tail;
  cover(it->second);
}

void PortGraph::swap_out_ports(NodeId n, int port_a, int port_b) {
  EdgeId ea = edge_with_tail({n, port_a});
  EdgeId eb = edge_with_tail({n, port_b});
  uncover(edges_.at(ea));
  uncover(edges_.at(eb));
  edges_.at(ea).tail = Endpoint::of_port(n, port_b);
  edges_.at(eb).tail = Endpoint::of_port(n, port_a);
  cover(edges_.at(ea));
  cover(edges_.at(eb));
}

EdgeId PortGraph::join_slots(PortRef head_slot, PortRef tail_slot) {
  EdgeId in_id = edge_with_head(head_slot);
  EdgeId out_id = edge_with_tail(tail_slot);
  if (in_id == out_id) {
    remove_edge(in_id);
    loops_ += 1;
    return 0;
  }
  Endpoint t = edges_.at(in_id).tail;
  Endpoint h = edges_.at(out_id).head;
  remove_edge(in_id);
  remove_edge(out_id);
  EdgeId id = next_edge_++;
  Edge e{id, t, h};
  edges_.emplace(id, e);
  cover(e);
  return id;
}

std::pair<EdgeId, EdgeId> PortGraph::split_edge(EdgeId e, Endpoint new_head,
                                                Endpoint new_tail) {
  Endpoint t = edge(e).tail;
  Endpoint h = edge(e).head;
  remove_edge(e);
  EdgeId a = next_edge_++;
  Edge ea{a, t, new_head};
  edges_.emplace(a, ea);
  cover(ea);
  EdgeId b = next_edge_++;
  Edge eb{b, new_tail, h};
  edges_.emplace(b, eb);
  cover(eb);
  return {a, b};
}

EdgeId PortGraph::split_loop(Endpoint new_head, Endpoint new_tail) {
  if (loops_ < 1) fail(Errc::NoLoop, "no free loop to split");
  loops_ -= 1;
  EdgeId id = next_edge_++;
  Edge e{id, new_tail, new_head};
  edges_.emplace(id, e);
  cover(e);
  return id;
}

std::set<NodeId> PortGraph::component_excluding(NodeId start,
                                                EdgeId excluded) const {
  std::set<NodeId> seen{start};
  std::deque<NodeId> queue{start};
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    const GateKind& k = nodes_.at(n);
    for (int p = 1; p <= port_count(k.type); ++p) {
      EdgeId e = edge_at_port({n, p});
      if (e == 0 || e == excluded) continue;
      const Edge& ed = edges_.at(e);
      for (const Endpoint* ep : {&ed.tail, &ed.head}) {
        if (ep->is_port() && !seen.count(ep->port.node)) {
          seen.insert(ep->port.node);
          queue.push_back(ep->port.node);
        }
      }
    }
  }
  return seen;
}

bool PortGraph::component_touches_leaf(const std::set<NodeId>& comp,
                                       EdgeId excluded) const {
  for (const auto& [id, e] : edges_) {
    if (id == excluded) continue;
    bool on_comp = (e.tail.is_port() && comp.count(e.tail.port.node)) ||
                   (e.head.is_port() && comp.count(e.head.port.node));
    if (on_comp && (e.tail.is_leaf() || e.head.is_leaf())) return true;
  }
  return false;
}

std::map<NodeId, NodeId> PortGraph::clone_nodes(const std::set<NodeId>& comp) {
  std::map<NodeId, NodeId> remap;
  for (NodeId n : comp) remap[n] = add_gate(nodes_.at(n));
  std::vector<Edge> internal;
  for (const auto& [id, e] : edges_) {
    if (e.tail.is_port() && e.head.is_port() && comp.count(e.tail.port.node) &&
        comp.count(e.head.port.node))
      internal.push_back(e);
  }
  for (const Edge& e : internal)
    connect(Endpoint::of_port(remap.at(e.tail.port.node), e.tail.port.port),
            Endpoint::of_port(remap.at(e.head.port.node), e.head.port.port));
  return remap;
}

void PortGraph::remove_leaf(LeafId l) {
  if (edge_at_leaf(l)) fail(Errc::InvalidGraph, "removing covered leaf");
  for (auto it = leaves_.begin(); it != leaves_.end(); ++it) {
    if (it->id == l) {
      leaves_.erase(it);
      return;
    }
  }
  fail(Errc::UnknownLeaf, "leaf " + std::to_string(l));
}

PortGraph::AbsorbMaps PortGraph::absorb(const PortGraph& src) {
  AbsorbMaps maps;
  for (const auto& [n, k] : src.nodes_) maps.nodes[n] = add_gate(k);
  for (const Leaf& l : src.leaves_) maps.leaves[l.id] = add_leaf(l.dir, l.label);
  auto conv = [&](const Endpoint& ep) {
    if (ep.is_port())
      return Endpoint::of_port(maps.nodes.at(ep.port.node), ep.port.port);
    return Endpoint::of_leaf(maps.leaves.at(ep.leaf));
  };
  for (const auto& [id, e] : src.edges_) connect(conv(e.tail), conv(e.head));
  add_loops(src.loops_);
  return maps;
}

void PortGraph::splice_leaves(LeafId out_leaf, LeafId in_leaf) {
  if (leaf(out_leaf).dir != LeafDir::Out || leaf(in_leaf).dir != LeafDir::In)
    fail(Errc::RoleMismatch, "splice_leaves needs an OUT and an IN leaf");
  EdgeId e1 = edge_at_leaf(out_leaf);
  EdgeId e2 = edge_at_leaf(in_leaf);
  if (!e1 || !e2) fail(Errc::InvalidGraph, "splice_leaves on uncovered leaf");
  if (e1 == e2) {
    remove_edge(e1);
    loops_ += 1;
  } else {
    Endpoint t = edge(e1).tail;
    Endpoint h = edge(e2).head;
    remove_edge(e1);
    remove_edge(e2);
    EdgeId id = next_edge_++;
    Edge e{id, t, h};
    edges_.emplace(id, e);
    cover(e);
  }
  remove_leaf(out_leaf);
  remove_leaf(in_leaf);
}

PortGraph PortGraph::extract_component(const std::set<NodeId>& comp,
                                       PortRef out_port) const {
  PortGraph sub;
  std::map<NodeId, NodeId> remap;
  for (NodeId n : comp) remap[n] = sub.add_gate(nodes_.at(n));
  LeafId out = sub.add_leaf(LeafDir::Out);
  for (const auto& [id, e] : edges_) {
    if (!e.tail.is_port() || !comp.count(e.tail.port.node)) continue;
    if (e.tail.port == out_port) {
      sub.connect(Endpoint::of_port(remap.at(out_port.node), out_port.port),
                  Endpoint::of_leaf(out));
    } else if (e.head.is_port() && comp.count(e.head.port.node)) {
      sub.connect(Endpoint::of_port(remap.at(e.tail.port.node), e.tail.port.port),
                  Endpoint::of_port(remap.at(e.head.port.node), e.head.port.port));
    }
  }
  return sub;
}

// ---------------------------------------------------------------------------
// Canonical labeling.
//
// Boundary components are rigid: seeding a BFS from the ordered boundary
// leaves and walking ports in numeric order yields a unique numbering. Closed
// components have no anchor, so we try every node as the start and keep the
// lexicographically smallest encoding.

struct PortGraph::Canon {
  const PortGraph& g;
  std::map<NodeId, int> number;
  std::vector<NodeId> order;

  explicit Canon(const PortGraph& gr) : g(gr) {}

  std::string endpoint_token(const Endpoint& ep,
                             const std::map<NodeId, int>& num) const {
    if (ep.is_port()) {
      auto it = num.find(ep.port.node);
      if (it == num.end()) return "";  // outside the numbered set
      return "n" + std::to_string(it->second) + "." + std::to_string(ep.port.port);
    }
    const auto ins = g.in_leaves();
    const auto outs = g.out_leaves();
    for (size_t i = 0; i < ins.size(); ++i)
      if (ins[i] == ep.leaf) return "i" + std::to_string(i);
    for (size_t i = 0; i < outs.size(); ++i)
      if (outs[i] == ep.leaf) return "o" + std::to_string(i);
    return "?";
  }

  void bfs(std::deque<NodeId>& queue, std::map<NodeId, int>& num,
           std::vector<NodeId>& ord) const {
    while (!queue.empty()) {
      NodeId n = queue.front();
      queue.pop_front();
      const GateKind& k = g.nodes_.at(n);
      for (int p = 1; p <= port_count(k.type); ++p) {
        const Edge& e = g.edges_.at(g.edge_at_port({n, p}));
        for (const Endpoint* ep : {&e.tail, &e.head}) {
          if (ep->is_port() && !num.count(ep->port.node)) {
            num[ep->port.node] = static_cast<int>(ord.size()) + 1;
            ord.push_back(ep->port.node);
            queue.push_back(ep->port.node);
          }
        }
      }
    }
  }

  std::string encode_set(const std::vector<NodeId>& ord,
                         const std::map<NodeId, int>& num) const {
    std::ostringstream os;
    os << "V:";
    for (NodeId n : ord) os << gate_token(mapped_kind(n)) << ";";
    std::vector<std::string> etoks;
    std::set<EdgeId> seen;
    for (NodeId n : ord) {
      const GateKind& k = g.nodes_.at(n);
      for (int p = 1; p <= port_count(k.type); ++p) {
        EdgeId id = g.edge_at_port({n, p});
        if (!seen.insert(id).second) continue;
        const Edge& e = g.edges_.at(id);
        etoks.push_back(endpoint_token(e.tail, num) + ">" +
                        endpoint_token(e.head, num));
      }
    }
    std::sort(etoks.begin(), etoks.end());
    os << "E:";
    for (const auto& t : etoks) os << t << ";";
    return os.str();
  }

  const GateKind& mapped_kind(NodeId n) const { return g.nodes_.at(n); }

  // Full canonical string plus the node order realizing it.
  std::pair<std::string, std::vector<NodeId>> run() const {
    std::map<NodeId, int> num;
    std::vector<NodeId> ord;
    std::deque<NodeId> queue;
    auto seed_leaf = [&](LeafId l) {
      const Edge& e = g.edges_.at(g.edge_at_leaf(l));
      for (const Endpoint* ep : {&e.tail, &e.head}) {
        if (ep->is_port() && !num.count(ep->port.node)) {
          num[ep->port.node] = static_cast<int>(ord.size()) + 1;
          ord.push_back(ep->port.node);
          queue.push_back(ep->port.node);
        }
      }
      bfs(queue, num, ord);
    };
    for (LeafId l : g.in_leaves()) seed_leaf(l);
    for (LeafId l : g.out_leaves()) seed_leaf(l);

    std::ostringstream os;
    os << "in=" << g.in_leaves().size() << "|out=" << g.out_leaves().size()
       << "|";
    // Wires between leaves never touch nodes; list them explicitly.
    std::vector<std::string> wires;
    for (const auto& [id, e] : g.edges_)
      if (e.tail.is_leaf() && e.head.is_leaf())
        wires.push_back(endpoint_token(e.tail, num) + ">" +
                        endpoint_token(e.head, num));
    std::sort(wires.begin(), wires.end());
    os << "W:";
    for (const auto& w : wires) os << w << ";";
    os << encode_set(ord, num);

    // Closed components: minimize over start nodes.
    std::set<NodeId> left;
    for (const auto& [n, k] : g.nodes_)
      if (!num.count(n)) left.insert(n);
    std::vector<std::pair<std::string, std::vector<NodeId>>> blocks;
    while (!left.empty()) {
      NodeId seed = *left.begin();
      std::set<NodeId> comp = g.component_excluding(seed, 0);
      std::string best;
      std::vector<NodeId> best_ord;
      for (NodeId start : comp) {
        std::map<NodeId, int> cnum;
        std::vector<NodeId> cord;
        std::deque<NodeId> cq;
        cnum[start] = 1;
        cord.push_back(start);
        cq.push_back(start);
        bfs(cq, cnum, cord);
        std::string enc = encode_set(cord, cnum);
        if (best.empty() || enc < best) {
          best = enc;
          best_ord = cord;
        }
      }
      blocks.push_back({best, best_ord});
      for (NodeId n : comp) left.erase(n);
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<NodeId> full_order = ord;
    for (const auto& [enc, bord] : blocks) {
      os << "|C:" << enc;
      full_order.insert(full_order.end(), bord.begin(), bord.end());
    }
    os << "|loops=" << g.loops_;
    return {os.str(), full_order};
  }
};

std::string PortGraph::canonical_form() const {
  if (!is_valid()) fail(Errc::InvalidGraph, "canonical_form on invalid graph");
  return Canon(*this).run().first;
}

bool isomorphic(const PortGraph& g1, const PortGraph& g2) {
  if (!g1.is_valid() || !g2.is_valid())
    fail(Errc::InvalidGraph, "isomorphic on invalid graph");
  return g1.canonical_form() == g2.canonical_form();
}

std::optional<std::map<NodeId, NodeId>> find_isomorphism(const PortGraph& g1,
                                                         const PortGraph& g2) {
  if (!g1.is_valid() || !g2.is_valid())
    fail(Errc::InvalidGraph, "find_isomorphism on invalid graph");
  auto [s1, o1] = PortGraph::Canon(g1).run();
  auto [s2, o2] = PortGraph::Canon(g2).run();
  if (s1 != s2) return std::nullopt;
  std::map<NodeId, NodeId> map;
  for (size_t i = 0; i < o1.size(); ++i) map[o1[i]] = o2[i];
  return map;
}

std::string PortGraph::dump() const {
  std::ostringstream os;
  for (const auto& [n, k] : nodes_)
    os << "n" << n << " " << gate_token(k) << "\n";
  auto tok = [&](const Endpoint& ep) {
    if (ep.is_port())
      return "n" + std::to_string(ep.port.node) + "." +
             std::to_string(ep.port.port);
    return "leaf" + std::to_string(ep.leaf);
  };
  for (const auto& [id, e] : edges_)
    os << "e" << id << ": " << tok(e.tail) << " -> " << tok(e.head) << "\n";
  os << "loops=" << loops_ << "\n";
  return os.str();
}

PortGraph parallel_wires(int n) {
  PortGraph g;
  std::vector<LeafId> ins, outs;
  for (int i = 0; i < n; ++i) ins.push_back(g.add_leaf(LeafDir::In));
  for (int i = 0; i < n; ++i) outs.push_back(g.add_leaf(LeafDir::Out));
  for (int i = 0; i < n; ++i)
    g.connect(Endpoint::of_leaf(ins[i]), Endpoint::of_leaf(outs[i]));
  return g;
}

}  // namespace glc
