#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glc/group.hpp"

namespace glc {

// Gate alphabet. Every gate except Term has three numbered ports; Term has
// one. Port numbers encode the clockwise cyclic order of the local planar
// embedding; directions are fixed per kind:
//   Lambda:   1 in (body)      2 out (bound var)  3 out (root)
//   FanOut:   1 in             2 out              3 out
//   App:      1 in (function)  2 in (argument)    3 out
//   Dilation: 1 in (base)      2 in (argument)    3 out
//   Term:     1 in
enum class GateType { Lambda, FanOut, App, Dilation, Term };

struct GateKind {
  GateType type = GateType::Lambda;
  GroupElem scale;  // meaningful only for Dilation

  static GateKind lambda() { return {GateType::Lambda, {}}; }
  static GateKind fanout() { return {GateType::FanOut, {}}; }
  static GateKind app() { return {GateType::App, {}}; }
  static GateKind dilation(const GroupElem& s) { return {GateType::Dilation, s}; }
  static GateKind term() { return {GateType::Term, {}}; }

  bool operator==(const GateKind& o) const {
    if (type != o.type) return false;
    return type != GateType::Dilation || scale == o.scale;
  }
};

int port_count(GateType t);
bool port_is_in(GateType t, int port);
std::string gate_token(const GateKind& k);  // "lam" "fan" "app" "dil[...]" "top"

using NodeId = int;
using EdgeId = int;
using LeafId = int;

struct PortRef {
  NodeId node = 0;
  int port = 0;
  bool operator==(const PortRef& o) const { return node == o.node && port == o.port; }
  bool operator<(const PortRef& o) const {
    return node != o.node ? node < o.node : port < o.port;
  }
};

enum class LeafDir { In, Out };

// An edge endpoint: either a numbered gate port or a leaf of the graph.
struct Endpoint {
  enum class Kind { Port, Leaf };
  Kind kind = Kind::Port;
  PortRef port;
  LeafId leaf = 0;

  static Endpoint of_port(NodeId n, int p) {
    Endpoint e;
    e.kind = Kind::Port;
    e.port = {n, p};
    return e;
  }
  static Endpoint of_leaf(LeafId l) {
    Endpoint e;
    e.kind = Kind::Leaf;
    e.leaf = l;
    return e;
  }
  bool is_port() const { return kind == Kind::Port; }
  bool is_leaf() const { return kind == Kind::Leaf; }
  bool operator==(const Endpoint& o) const {
    if (kind != o.kind) return false;
    return is_port() ? port == o.port : leaf == o.leaf;
  }
};

struct Edge {
  EdgeId id = 0;
  Endpoint tail;  // out-port or IN leaf
  Endpoint head;  // in-port or OUT leaf
};

struct Leaf {
  LeafId id = 0;
  LeafDir dir = LeafDir::In;
  std::string label;  // display only, not part of graph identity
};

struct ValidationIssue {
  enum class Kind {
    UncoveredPort,
    DoubleCover,
    DirectionViolation,
    UncoveredLeaf,
    NegativeLoops,
  };
  Kind kind;
  std::string detail;
};

// A graph over the gate alphabet: gates with numbered oriented ports, edges
// grafted tail-to-head, IN/OUT leaves in declaration order (the boundary),
// and a count of free loops. Value type: copies are deep and independent.
// Construction mutates; the rewrite engine treats graphs as immutable values
// and returns new ones.
class PortGraph {
 public:
  NodeId add_gate(const GateKind& kind);
  LeafId add_leaf(LeafDir dir, const std::string& label = "");
  EdgeId connect(Endpoint tail, Endpoint head);
  void add_loops(int n);

  const std::map<NodeId, GateKind>& nodes() const { return nodes_; }
  const std::map<EdgeId, Edge>& edges() const { return edges_; }
  const std::vector<Leaf>& leaves() const { return leaves_; }
  int loops() const { return loops_; }

  bool has_node(NodeId n) const { return nodes_.count(n) > 0; }
  bool has_edge(EdgeId e) const { return edges_.count(e) > 0; }
  const GateKind& gate(NodeId n) const;
  void set_gate(NodeId n, const GateKind& kind);
  const Edge& edge(EdgeId e) const;
  const Leaf& leaf(LeafId l) const;

  // Covering edge of a port/leaf, 0 when uncovered.
  EdgeId edge_at_port(PortRef p) const;
  EdgeId edge_at_leaf(LeafId l) const;
  EdgeId edge_with_head(PortRef p) const;  // checked: must exist
  EdgeId edge_with_tail(PortRef p) const;  // checked: must exist

  std::vector<LeafId> in_leaves() const;
  std::vector<LeafId> out_leaves() const;

  std::vector<ValidationIssue> validate() const;
  bool is_valid() const { return validate().empty(); }

  // --- rewrite helpers -----------------------------------------------------
  // All of these keep covering indexes consistent; callers are the move
  // implementations which re-establish full validity before returning.

  void remove_edge(EdgeId e);
  void remove_node(NodeId n);  // all ports must be uncovered
  void retarget_head(EdgeId e, Endpoint new_head);
  void retarget_tail(EdgeId e, Endpoint new_tail);
  void swap_out_ports(NodeId n, int port_a, int port_b);

  // Concatenates the edge ending at head_slot with the edge starting at
  // tail_slot (both slots sit on nodes being deleted). If they are the same
  // edge the strand closes: the edge is removed and the loop count bumped.
  // Returns the surviving edge id, or 0 when a loop was produced.
  EdgeId join_slots(PortRef head_slot, PortRef tail_slot);

  // Splits edge t->h into t->new_head plus new_tail->h.
  std::pair<EdgeId, EdgeId> split_edge(EdgeId e, Endpoint new_head,
                                       Endpoint new_tail);
  // Consumes one free loop, producing the edge new_tail->new_head.
  EdgeId split_loop(Endpoint new_head, Endpoint new_tail);

  // Undirected connected component of `start`, ignoring edge `excluded`.
  std::set<NodeId> component_excluding(NodeId start, EdgeId excluded) const;
  bool component_touches_leaf(const std::set<NodeId>& comp,
                              EdgeId excluded = 0) const;

  // Copies the given nodes and the edges internal to them; returns old->new.
  std::map<NodeId, NodeId> clone_nodes(const std::set<NodeId>& comp);

  // Removes an uncovered leaf from the boundary.
  void remove_leaf(LeafId l);

  // Appends a full copy of `src` (nodes, leaves, edges, loops).
  struct AbsorbMaps {
    std::map<NodeId, NodeId> nodes;
    std::map<LeafId, LeafId> leaves;
  };
  AbsorbMaps absorb(const PortGraph& src);

  // Fuses an OUT leaf with an IN leaf: the edges ending/starting there are
  // concatenated (a wire between exactly these two leaves closes to a loop)
  // and both leaves disappear from the boundary.
  void splice_leaves(LeafId out_leaf, LeafId in_leaf);

  // Extracts comp as a standalone graph whose single OUT leaf replaces the
  // head of the edge leaving `out_port` (used for fan-out copy comparison).
  PortGraph extract_component(const std::set<NodeId>& comp, PortRef out_port) const;

  // --- identity -------------------------------------------------------------
  // Equal canonical strings iff the graphs are isomorphic: a gate-kind and
  // port-adjacency preserving bijection that fixes the ordered boundary and
  // the loop count. Throws InvalidGraph on invalid input.
  std::string canonical_form() const;

  // Node bijection g1 -> g2 realizing the isomorphism, empty when none.
  friend std::optional<std::map<NodeId, NodeId>> find_isomorphism(
      const PortGraph& g1, const PortGraph& g2);

  std::string dump() const;  // debug listing

 private:
  std::map<NodeId, GateKind> nodes_;
  std::map<EdgeId, Edge> edges_;
  std::vector<Leaf> leaves_;
  int loops_ = 0;
  NodeId next_node_ = 1;
  EdgeId next_edge_ = 1;
  LeafId next_leaf_ = 1;
  std::map<PortRef, EdgeId> port_cover_;
  std::map<LeafId, EdgeId> leaf_cover_;

  void cover(const Edge& e);
  void uncover(const Edge& e);
  int leaf_index(LeafId l) const;

  struct Canon;  // canonical labeling machinery
};

bool isomorphic(const PortGraph& g1, const PortGraph& g2);
std::optional<std::map<NodeId, NodeId>> find_isomorphism(const PortGraph& g1,
                                                         const PortGraph& g2);

// n disjoint wires (IN_i -> OUT_i), the shape every zipper opens into.
PortGraph parallel_wires(int n);

}  // namespace glc
