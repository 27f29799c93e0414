#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glc/graph.hpp"

namespace glc {

// An arrow slot for the moves that act on whole arrows: either a concrete
// edge or one of the anonymous free loops.
struct ArrowRef {
  bool is_loop = false;
  EdgeId edge = 0;

  static ArrowRef of_edge(EdgeId e) { return {false, e}; }
  static ArrowRef loop() { return {true, 0}; }
  bool operator==(const ArrowRef& o) const {
    return is_loop == o.is_loop && edge == o.edge;
  }
  bool operator<(const ArrowRef& o) const {
    if (is_loop != o.is_loop) return !is_loop;
    return edge < o.edge;
  }
  std::string str() const { return is_loop ? "loop" : "e" + std::to_string(edge); }
};

// One concrete match of a move against a host graph. Role names are fixed
// per move (see the apply implementations); `variant` disambiguates the
// orderings that arise when one arrow is cut twice.
struct Binding {
  std::string move;
  bool forward = true;
  std::map<std::string, NodeId> nodes;
  std::map<std::string, EdgeId> edges;
  std::map<std::string, ArrowRef> arrows;
  std::map<std::string, GroupElem> scales;
  int variant = 0;

  Binding() = default;
  Binding(std::string m, bool fwd) : move(std::move(m)), forward(fwd) {}

  std::string anchor_text() const;  // "lambda=n3 app=n7 ..."
};

struct Move {
  std::string name;
  bool bidirectional = true;
  bool global = false;
  int locality_bound = 0;  // max pattern/replacement nodes+edges; 0 = global
  bool side_condition = false;
  std::optional<std::pair<PortGraph, PortGraph>> fragments;  // lhs, rhs
  std::string summary;
};

// The full catalogue: beta, co_assoc, co_comm, r1a, r1b, r2, ext2, the four
// local pruning rules, ext1, global_fan_out, global_prune, loop_add and
// loop_remove. Exactly 16 entries.
const std::vector<Move>& move_catalogue();
const Move& move_info(const std::string& name);  // throws UnknownMove
bool is_pruning_move(const std::string& name);

// All bindings of the move in the given direction, deterministically ordered.
// Side conditions are pre-checked: a binding that would violate one is not
// offered. Reverse bindings of the scale-parametric moves carry the identity
// scale; scripts may override it through anchors.
std::vector<Binding> enumerate_redexes(const PortGraph& g,
                                       const std::string& move, bool forward);

struct ApplyResult {
  PortGraph graph;
  std::optional<Binding> inverse;  // present for bidirectional moves
};

// Applies one move at the given binding. Throws StaleBinding when the binding
// no longer matches, SideConditionViolated / NotABottleneck /
// CopiesNotIsomorphic when a condition fails, DirectionNotAllowed for a
// one-way move applied in reverse.
ApplyResult apply_move(const PortGraph& g, const Binding& b);

// Directed reachability between edges: walks through gates (every in-port
// reaches every out-port of its node). An edge reaches itself.
bool oriented_path_exists(const PortGraph& g, EdgeId from, EdgeId to);

}  // namespace glc
