#include "glc/moves.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "glc/error.hpp"

namespace glc {

namespace {

Endpoint port(NodeId n, int p) { return Endpoint::of_port(n, p); }

// --- catalogue fragments ---------------------------------------------------

PortGraph frag_beta_lhs() {
  PortGraph g;
  LeafId l1 = g.add_leaf(LeafDir::In);
  LeafId l2 = g.add_leaf(LeafDir::Out);
  LeafId l3 = g.add_leaf(LeafDir::Out);
  LeafId l4 = g.add_leaf(LeafDir::In);
  NodeId L = g.add_gate(GateKind::lambda());
  NodeId A = g.add_gate(GateKind::app());
  g.connect(Endpoint::of_leaf(l1), port(L, 1));
  g.connect(port(L, 2), Endpoint::of_leaf(l2));
  g.connect(port(L, 3), port(A, 1));
  g.connect(port(A, 3), Endpoint::of_leaf(l3));
  g.connect(Endpoint::of_leaf(l4), port(A, 2));
  return g;
}

PortGraph frag_beta_rhs() {
  PortGraph g;
  LeafId l1 = g.add_leaf(LeafDir::In);
  LeafId l2 = g.add_leaf(LeafDir::Out);
  LeafId l3 = g.add_leaf(LeafDir::Out);
  LeafId l4 = g.add_leaf(LeafDir::In);
  g.connect(Endpoint::of_leaf(l1), Endpoint::of_leaf(l3));
  g.connect(Endpoint::of_leaf(l4), Endpoint::of_leaf(l2));
  return g;
}

PortGraph frag_coassoc(bool lhs) {
  PortGraph g;
  LeafId a = g.add_leaf(LeafDir::In);
  LeafId o1 = g.add_leaf(LeafDir::Out);
  LeafId o2 = g.add_leaf(LeafDir::Out);
  LeafId o3 = g.add_leaf(LeafDir::Out);
  NodeId t = g.add_gate(GateKind::fanout());
  NodeId b = g.add_gate(GateKind::fanout());
  g.connect(Endpoint::of_leaf(a), port(t, 1));
  if (lhs) {
    g.connect(port(t, 2), port(b, 1));
    g.connect(port(b, 2), Endpoint::of_leaf(o1));
    g.connect(port(b, 3), Endpoint::of_leaf(o2));
    g.connect(port(t, 3), Endpoint::of_leaf(o3));
  } else {
    g.connect(port(t, 2), Endpoint::of_leaf(o1));
    g.connect(port(t, 3), port(b, 1));
    g.connect(port(b, 2), Endpoint::of_leaf(o2));
    g.connect(port(b, 3), Endpoint::of_leaf(o3));
  }
  return g;
}

PortGraph frag_cocomm(bool lhs) {
  PortGraph g;
  LeafId a = g.add_leaf(LeafDir::In);
  LeafId o1 = g.add_leaf(LeafDir::Out);
  LeafId o2 = g.add_leaf(LeafDir::Out);
  NodeId y = g.add_gate(GateKind::fanout());
  g.connect(Endpoint::of_leaf(a), port(y, 1));
  g.connect(port(y, 2), Endpoint::of_leaf(lhs ? o1 : o2));
  g.connect(port(y, 3), Endpoint::of_leaf(lhs ? o2 : o1));
  return g;
}

PortGraph frag_wire() {
  PortGraph g;
  LeafId a = g.add_leaf(LeafDir::In);
  LeafId b = g.add_leaf(LeafDir::Out);
  g.connect(Endpoint::of_leaf(a), Endpoint::of_leaf(b));
  return g;
}

PortGraph frag_r1a_lhs() {
  PortGraph g;
  LeafId a = g.add_leaf(LeafDir::In);
  LeafId b = g.add_leaf(LeafDir::Out);
  NodeId y = g.add_gate(GateKind::fanout());
  NodeId d = g.add_gate(GateKind::dilation(GroupElem::symbol("s")));
  g.connect(Endpoint::of_leaf(a), port(y, 1));
  g.connect(port(y, 2), port(d, 1));
  g.connect(port(y, 3), port(d, 2));
  g.connect(port(d, 3), Endpoint::of_leaf(b));
  return g;
}

// R1b closes the dilation on itself through the fan-out: the strand enters
// the argument port and the base is fed by a copy of the output. The move
// realizes unique solvability of x = x o_s u (solution x = u).
PortGraph frag_r1b_lhs() {
  PortGraph g;
  LeafId a = g.add_leaf(LeafDir::In);
  LeafId b = g.add_leaf(LeafDir::Out);
  NodeId y = g.add_gate(GateKind::fanout());
  NodeId d = g.add_gate(GateKind::dilation(GroupElem::symbol("s")));
  g.connect(Endpoint::of_leaf(a), port(d, 2));
  g.connect(port(d, 3), port(y, 1));
  g.connect(port(y, 2), port(d, 1));
  g.connect(port(y, 3), Endpoint::of_leaf(b));
  return g;
}

PortGraph frag_r2_lhs() {
  PortGraph g;
  LeafId x = g.add_leaf(LeafDir::In);
  LeafId y = g.add_leaf(LeafDir::In);
  LeafId o = g.add_leaf(LeafDir::Out);
  NodeId f = g.add_gate(GateKind::fanout());
  NodeId outer = g.add_gate(GateKind::dilation(GroupElem::symbol("s")));
  NodeId inner = g.add_gate(GateKind::dilation(GroupElem::symbol("t")));
  g.connect(Endpoint::of_leaf(x), port(f, 1));
  g.connect(port(f, 2), port(outer, 1));
  g.connect(port(f, 3), port(inner, 1));
  g.connect(Endpoint::of_leaf(y), port(inner, 2));
  g.connect(port(inner, 3), port(outer, 2));
  g.connect(port(outer, 3), Endpoint::of_leaf(o));
  return g;
}

PortGraph frag_r2_rhs() {
  PortGraph g;
  LeafId x = g.add_leaf(LeafDir::In);
  LeafId y = g.add_leaf(LeafDir::In);
  LeafId o = g.add_leaf(LeafDir::Out);
  NodeId d = g.add_gate(
      GateKind::dilation(GroupElem::symbol("s") * GroupElem::symbol("t")));
  g.connect(Endpoint::of_leaf(x), port(d, 1));
  g.connect(Endpoint::of_leaf(y), port(d, 2));
  g.connect(port(d, 3), Endpoint::of_leaf(o));
  return g;
}

PortGraph frag_ext2_lhs() {
  PortGraph g;
  LeafId x = g.add_leaf(LeafDir::In);
  LeafId y = g.add_leaf(LeafDir::In);
  LeafId o = g.add_leaf(LeafDir::Out);
  NodeId d = g.add_gate(GateKind::dilation(GroupElem::identity()));
  g.connect(Endpoint::of_leaf(x), port(d, 1));
  g.connect(Endpoint::of_leaf(y), port(d, 2));
  g.connect(port(d, 3), Endpoint::of_leaf(o));
  return g;
}

PortGraph frag_ext2_rhs() {
  PortGraph g;
  LeafId x = g.add_leaf(LeafDir::In);
  LeafId y = g.add_leaf(LeafDir::In);
  LeafId o = g.add_leaf(LeafDir::Out);
  NodeId t = g.add_gate(GateKind::term());
  g.connect(Endpoint::of_leaf(x), port(t, 1));
  g.connect(Endpoint::of_leaf(y), Endpoint::of_leaf(o));
  return g;
}

PortGraph frag_prune_fan(int branch) {
  PortGraph g;
  LeafId a = g.add_leaf(LeafDir::In);
  LeafId b = g.add_leaf(LeafDir::Out);
  NodeId y = g.add_gate(GateKind::fanout());
  NodeId t = g.add_gate(GateKind::term());
  g.connect(Endpoint::of_leaf(a), port(y, 1));
  g.connect(port(y, branch), port(t, 1));
  g.connect(port(y, branch == 2 ? 3 : 2), Endpoint::of_leaf(b));
  return g;
}

PortGraph frag_prune_join_lhs(GateKind kind) {
  PortGraph g;
  LeafId a = g.add_leaf(LeafDir::In);
  LeafId b = g.add_leaf(LeafDir::In);
  NodeId n = g.add_gate(kind);
  NodeId t = g.add_gate(GateKind::term());
  g.connect(Endpoint::of_leaf(a), port(n, 1));
  g.connect(Endpoint::of_leaf(b), port(n, 2));
  g.connect(port(n, 3), port(t, 1));
  return g;
}

PortGraph frag_prune_join_rhs() {
  PortGraph g;
  LeafId a = g.add_leaf(LeafDir::In);
  LeafId b = g.add_leaf(LeafDir::In);
  NodeId t1 = g.add_gate(GateKind::term());
  NodeId t2 = g.add_gate(GateKind::term());
  g.connect(Endpoint::of_leaf(a), port(t1, 1));
  g.connect(Endpoint::of_leaf(b), port(t2, 1));
  return g;
}

PortGraph frag_ext1_lhs() {
  PortGraph g;
  LeafId fin = g.add_leaf(LeafDir::In);
  LeafId o = g.add_leaf(LeafDir::Out);
  NodeId L = g.add_gate(GateKind::lambda());
  NodeId A = g.add_gate(GateKind::app());
  g.connect(Endpoint::of_leaf(fin), port(A, 1));
  g.connect(port(A, 3), port(L, 1));
  g.connect(port(L, 2), port(A, 2));
  g.connect(port(L, 3), Endpoint::of_leaf(o));
  return g;
}

PortGraph frag_loops(int n) {
  PortGraph g;
  g.add_loops(n);
  return g;
}

int frag_size(const PortGraph& g) {
  return static_cast<int>(g.nodes().size() + g.edges().size()) + g.loops();
}

std::vector<Move> build_catalogue() {
  std::vector<Move> cat;
  auto add = [&](Move m) {
    if (m.fragments)
      m.locality_bound = std::max(frag_size(m.fragments->first),
                                  frag_size(m.fragments->second));
    cat.push_back(std::move(m));
  };
  add({"beta", true, false, 0, false,
       std::make_pair(frag_beta_lhs(), frag_beta_rhs()),
       "graphic beta: lambda-app pair <-> two rewired arrows"});
  add({"co_assoc", true, false, 0, false,
       std::make_pair(frag_coassoc(true), frag_coassoc(false)),
       "co-associativity of fan-out trees"});
  add({"co_comm", true, false, 0, false,
       std::make_pair(frag_cocomm(true), frag_cocomm(false)),
       "co-commutativity: swap fan-out branches"});
  add({"r1a", true, false, 0, false,
       std::make_pair(frag_r1a_lhs(), frag_wire()),
       "idempotency: dilation of a value against its own copy"});
  add({"r1b", true, false, 0, false,
       std::make_pair(frag_r1b_lhs(), frag_wire()),
       "solvability: dilation output fed back as its own base"});
  add({"r2", true, false, 0, false,
       std::make_pair(frag_r2_lhs(), frag_r2_rhs()),
       "composition: nested dilations with shared base multiply scales"});
  add({"ext2", true, false, 0, false,
       std::make_pair(frag_ext2_lhs(), frag_ext2_rhs()),
       "identity-scale dilation is trivial"});
  add({"prune_fanout_2", false, false, 0, false,
       std::make_pair(frag_prune_fan(2), frag_wire()),
       "fan-out with branch 2 terminated collapses to a wire"});
  add({"prune_fanout_3", false, false, 0, false,
       std::make_pair(frag_prune_fan(3), frag_wire()),
       "fan-out with branch 3 terminated collapses to a wire"});
  add({"prune_app", false, false, 0, false,
       std::make_pair(frag_prune_join_lhs(GateKind::app()),
                      frag_prune_join_rhs()),
       "terminated application terminates both inputs"});
  add({"prune_dil", false, false, 0, false,
       std::make_pair(frag_prune_join_lhs(
                          GateKind::dilation(GroupElem::symbol("s"))),
                      frag_prune_join_rhs()),
       "terminated dilation terminates both inputs"});
  add({"ext1", true, true, 0, true,
       std::make_pair(frag_ext1_lhs(), frag_wire()),
       "eta: applies when no oriented path from the root-out edge back to "
       "the function-in edge"});
  add({"global_fan_out", true, true, 0, false, std::nullopt,
       "duplicate a one-output subgraph hanging off a fan-out bottleneck"});
  add({"global_prune", false, true, 0, false, std::nullopt,
       "erase a subgraph whose only connection is a termination gate"});
  add({"loop_add", false, false, 0, false,
       std::make_pair(frag_loops(0), frag_loops(1)), "add a free loop"});
  add({"loop_remove", false, false, 0, false,
       std::make_pair(frag_loops(1), frag_loops(0)), "erase a free loop"});
  return cat;
}

bool is_kind(const PortGraph& g, NodeId n, GateType t) {
  return g.has_node(n) && g.gate(n).type == t;
}

// Tail node of an edge's far end, when the endpoint is a port.
std::optional<NodeId> tail_node(const PortGraph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  if (!ed.tail.is_port()) return std::nullopt;
  return ed.tail.port.node;
}

}  // namespace

const std::vector<Move>& move_catalogue() {
  static const std::vector<Move> cat = build_catalogue();
  return cat;
}

const Move& move_info(const std::string& name) {
  for (const Move& m : move_catalogue())
    if (m.name == name) return m;
  fail(Errc::UnknownMove, name);
}

bool is_pruning_move(const std::string& name) {
  return name == "prune_fanout_2" || name == "prune_fanout_3" ||
         name == "prune_app" || name == "prune_dil" || name == "global_prune";
}

std::string Binding::anchor_text() const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " ";
    first = false;
  };
  for (const auto& [k, v] : nodes) { sep(); os << k << "=n" << v; }
  for (const auto& [k, v] : edges) { sep(); os << k << "=e" << v; }
  for (const auto& [k, v] : arrows) { sep(); os << k << "=" << v.str(); }
  for (const auto& [k, v] : scales) { sep(); os << k << "=" << v.str(); }
  if (variant != 0) { sep(); os << "variant=" << variant; }
  return os.str();
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::vector<ArrowRef> arrow_slots(const PortGraph& g) {
  std::vector<ArrowRef> out;
  for (const auto& [id, e] : g.edges()) out.push_back(ArrowRef::of_edge(id));
  if (g.loops() >= 1) out.push_back(ArrowRef::loop());
  return out;
}

void enumerate_beta(const PortGraph& g, bool forward, std::vector<Binding>& out) {
  if (forward) {
    for (const auto& [id, e] : g.edges()) {
      if (e.tail.is_port() && e.head.is_port() && e.tail.port.port == 3 &&
          e.head.port.port == 1 && is_kind(g, e.tail.port.node, GateType::Lambda) &&
          is_kind(g, e.head.port.node, GateType::App)) {
        Binding b{"beta", true};
        b.nodes["lambda"] = e.tail.port.node;
        b.nodes["app"] = e.head.port.node;
        out.push_back(b);
      }
    }
    return;
  }
  auto slots = arrow_slots(g);
  for (const ArrowRef& a1 : slots) {
    for (const ArrowRef& a2 : slots) {
      Binding b{"beta", false};
      b.arrows["arrow1"] = a1;
      b.arrows["arrow2"] = a2;
      if (a1 == a2) {
        if (a1.is_loop) {
          b.variant = 0;  // both cuts on the same loop
          out.push_back(b);
          if (g.loops() >= 2) {
            Binding b2 = b;
            b2.variant = 1;  // two distinct loops
            out.push_back(b2);
          }
        } else {
          b.variant = 0;
          out.push_back(b);
          Binding b2 = b;
          b2.variant = 1;
          out.push_back(b2);
        }
      } else {
        out.push_back(b);
      }
    }
  }
}

void enumerate_coassoc(const PortGraph& g, bool forward,
                       std::vector<Binding>& out) {
  int through = forward ? 2 : 3;
  for (const auto& [id, e] : g.edges()) {
    if (e.tail.is_port() && e.head.is_port() && e.tail.port.port == through &&
        e.head.port.port == 1 && is_kind(g, e.tail.port.node, GateType::FanOut) &&
        is_kind(g, e.head.port.node, GateType::FanOut) &&
        e.tail.port.node != e.head.port.node) {
      Binding b{"co_assoc", forward};
      b.nodes["top"] = e.tail.port.node;
      b.nodes["bottom"] = e.head.port.node;
      out.push_back(b);
    }
  }
}

void enumerate_cocomm(const PortGraph& g, bool forward,
                      std::vector<Binding>& out) {
  for (const auto& [n, k] : g.nodes()) {
    if (k.type == GateType::FanOut) {
      Binding b{"co_comm", forward};
      b.nodes["fan"] = n;
      out.push_back(b);
    }
  }
}

void enumerate_r1a(const PortGraph& g, bool forward, std::vector<Binding>& out) {
  if (forward) {
    for (const auto& [n, k] : g.nodes()) {
      if (k.type != GateType::Dilation) continue;
      EdgeId e1 = g.edge_at_port({n, 1});
      EdgeId e2 = g.edge_at_port({n, 2});
      if (!e1 || !e2) continue;
      const Edge& a = g.edge(e1);
      const Edge& bb = g.edge(e2);
      if (a.tail.is_port() && bb.tail.is_port() && a.tail.port.port == 2 &&
          bb.tail.port.port == 3 && a.tail.port.node == bb.tail.port.node &&
          is_kind(g, a.tail.port.node, GateType::FanOut)) {
        Binding b{"r1a", true};
        b.nodes["fan"] = a.tail.port.node;
        b.nodes["dil"] = n;
        out.push_back(b);
      }
    }
    return;
  }
  for (const ArrowRef& a : arrow_slots(g)) {
    Binding b{"r1a", false};
    b.arrows["arrow"] = a;
    b.scales["scale"] = GroupElem::identity();
    out.push_back(b);
  }
}

void enumerate_r1b(const PortGraph& g, bool forward, std::vector<Binding>& out) {
  if (forward) {
    for (const auto& [n, k] : g.nodes()) {
      if (k.type != GateType::Dilation) continue;
      EdgeId e3 = g.edge_at_port({n, 3});
      EdgeId e1 = g.edge_at_port({n, 1});
      if (!e3 || !e1) continue;
      const Edge& outd = g.edge(e3);
      const Edge& base = g.edge(e1);
      if (outd.head.is_port() && outd.head.port.port == 1 &&
          base.tail.is_port() && base.tail.port.port == 2 &&
          outd.head.port.node == base.tail.port.node &&
          is_kind(g, outd.head.port.node, GateType::FanOut)) {
        Binding b{"r1b", true};
        b.nodes["fan"] = outd.head.port.node;
        b.nodes["dil"] = n;
        out.push_back(b);
      }
    }
    return;
  }
  for (const ArrowRef& a : arrow_slots(g)) {
    Binding b{"r1b", false};
    b.arrows["arrow"] = a;
    b.scales["scale"] = GroupElem::identity();
    out.push_back(b);
  }
}

void enumerate_r2(const PortGraph& g, bool forward, std::vector<Binding>& out) {
  if (forward) {
    for (const auto& [outer, k] : g.nodes()) {
      if (k.type != GateType::Dilation) continue;
      EdgeId e_base = g.edge_at_port({outer, 1});
      EdgeId e_arg = g.edge_at_port({outer, 2});
      if (!e_base || !e_arg) continue;
      const Edge& base = g.edge(e_base);
      const Edge& arg = g.edge(e_arg);
      if (!(base.tail.is_port() && base.tail.port.port == 2 &&
            is_kind(g, base.tail.port.node, GateType::FanOut)))
        continue;
      NodeId fan = base.tail.port.node;
      if (!(arg.tail.is_port() && arg.tail.port.port == 3 &&
            is_kind(g, arg.tail.port.node, GateType::Dilation)))
        continue;
      NodeId inner = arg.tail.port.node;
      if (inner == outer) continue;
      EdgeId e_ibase = g.edge_at_port({inner, 1});
      if (!e_ibase) continue;
      const Edge& ibase = g.edge(e_ibase);
      if (ibase.tail.is_port() && ibase.tail.port == PortRef{fan, 3}) {
        Binding b{"r2", true};
        b.nodes["fan"] = fan;
        b.nodes["outer"] = outer;
        b.nodes["inner"] = inner;
        out.push_back(b);
      }
    }
    return;
  }
  for (const auto& [n, k] : g.nodes()) {
    if (k.type != GateType::Dilation) continue;
    Binding b{"r2", false};
    b.nodes["dil"] = n;
    b.scales["scale"] = GroupElem::identity();
    out.push_back(b);
  }
}

void enumerate_ext2(const PortGraph& g, bool forward, std::vector<Binding>& out) {
  if (forward) {
    for (const auto& [n, k] : g.nodes()) {
      if (k.type == GateType::Dilation && k.scale.is_identity()) {
        Binding b{"ext2", true};
        b.nodes["dil"] = n;
        out.push_back(b);
      }
    }
    return;
  }
  for (const auto& [n, k] : g.nodes()) {
    if (k.type != GateType::Term) continue;
    EdgeId feeding = g.edge_at_port({n, 1});
    for (const ArrowRef& a : arrow_slots(g)) {
      if (!a.is_loop && a.edge == feeding) continue;
      Binding b{"ext2", false};
      b.nodes["term"] = n;
      b.arrows["arrow"] = a;
      out.push_back(b);
    }
  }
}

void enumerate_prune_fan(const PortGraph& g, int branch,
                         std::vector<Binding>& out) {
  std::string name = branch == 2 ? "prune_fanout_2" : "prune_fanout_3";
  for (const auto& [id, e] : g.edges()) {
    if (e.tail.is_port() && e.head.is_port() && e.tail.port.port == branch &&
        e.head.port.port == 1 && is_kind(g, e.tail.port.node, GateType::FanOut) &&
        is_kind(g, e.head.port.node, GateType::Term)) {
      Binding b{name, true};
      b.nodes["fan"] = e.tail.port.node;
      b.nodes["term"] = e.head.port.node;
      out.push_back(b);
    }
  }
}

void enumerate_prune_join(const PortGraph& g, GateType gt,
                          std::vector<Binding>& out) {
  std::string name = gt == GateType::App ? "prune_app" : "prune_dil";
  std::string role = gt == GateType::App ? "app" : "dil";
  for (const auto& [id, e] : g.edges()) {
    if (e.tail.is_port() && e.head.is_port() && e.tail.port.port == 3 &&
        e.head.port.port == 1 && is_kind(g, e.tail.port.node, gt) &&
        is_kind(g, e.head.port.node, GateType::Term)) {
      Binding b{name, true};
      b.nodes[role] = e.tail.port.node;
      b.nodes["term"] = e.head.port.node;
      out.push_back(b);
    }
  }
}

void enumerate_ext1(const PortGraph& g, bool forward, std::vector<Binding>& out) {
  if (forward) {
    for (const auto& [L, k] : g.nodes()) {
      if (k.type != GateType::Lambda) continue;
      EdgeId e_body = g.edge_at_port({L, 1});
      EdgeId e_bound = g.edge_at_port({L, 2});
      if (!e_body || !e_bound) continue;
      const Edge& body = g.edge(e_body);
      const Edge& bound = g.edge(e_bound);
      if (!(body.tail.is_port() && body.tail.port.port == 3 &&
            is_kind(g, body.tail.port.node, GateType::App)))
        continue;
      NodeId A = body.tail.port.node;
      if (!(bound.head.is_port() && bound.head.port == PortRef{A, 2})) continue;
      EdgeId root_out = g.edge_at_port({L, 3});
      EdgeId fun_in = g.edge_at_port({A, 1});
      if (!root_out || !fun_in) continue;
      if (oriented_path_exists(g, root_out, fun_in)) continue;
      Binding b{"ext1", true};
      b.nodes["lambda"] = L;
      b.nodes["app"] = A;
      out.push_back(b);
    }
    return;
  }
  for (const auto& [id, e] : g.edges()) {
    Binding b{"ext1", false};
    b.edges["edge"] = id;
    out.push_back(b);
  }
}

bool fanout_bottleneck(const PortGraph& g, NodeId fan, std::set<NodeId>* comp_out) {
  EdgeId e_in = g.edge_at_port({fan, 1});
  if (!e_in) return false;
  const Edge& e = g.edge(e_in);
  if (!(e.head.is_port() && e.head.port == PortRef{fan, 1})) return false;
  if (!e.tail.is_port()) return false;
  std::set<NodeId> comp = g.component_excluding(e.tail.port.node, e_in);
  if (comp.count(fan)) return false;
  if (g.component_touches_leaf(comp, e_in)) return false;
  if (comp_out) *comp_out = comp;
  return true;
}

// Candidate one-output subgraph for the reverse fan-out: component of the
// edge's tail once the edge is ignored, leaf-free, not containing the head.
bool copy_candidate(const PortGraph& g, EdgeId e, std::set<NodeId>* comp_out) {
  const Edge& ed = g.edge(e);
  if (!ed.tail.is_port()) return false;
  std::set<NodeId> comp = g.component_excluding(ed.tail.port.node, e);
  if (ed.head.is_port() && comp.count(ed.head.port.node)) return false;
  if (g.component_touches_leaf(comp, e)) return false;
  if (comp_out) *comp_out = comp;
  return true;
}

void enumerate_gfo(const PortGraph& g, bool forward, std::vector<Binding>& out) {
  if (forward) {
    for (const auto& [n, k] : g.nodes()) {
      if (k.type != GateType::FanOut) continue;
      if (!fanout_bottleneck(g, n, nullptr)) continue;
      Binding b{"global_fan_out", true};
      b.nodes["fan"] = n;
      out.push_back(b);
    }
    return;
  }
  std::vector<std::pair<EdgeId, std::set<NodeId>>> cands;
  for (const auto& [id, e] : g.edges()) {
    std::set<NodeId> comp;
    if (copy_candidate(g, id, &comp)) cands.push_back({id, comp});
  }
  for (size_t i = 0; i < cands.size(); ++i) {
    for (size_t j = 0; j < cands.size(); ++j) {
      if (i == j) continue;
      const auto& [e1, c1] = cands[i];
      const auto& [e2, c2] = cands[j];
      if (*c1.begin() > *c2.begin()) continue;  // unordered pair, keep one order
      std::vector<NodeId> inter;
      std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(),
                            std::back_inserter(inter));
      if (!inter.empty()) continue;
      const Edge& ed1 = g.edge(e1);
      const Edge& ed2 = g.edge(e2);
      if (ed1.head.is_port() &&
          (c2.count(ed1.head.port.node) || c1.count(ed1.head.port.node)))
        continue;
      if (ed2.head.is_port() &&
          (c1.count(ed2.head.port.node) || c2.count(ed2.head.port.node)))
        continue;
      PortGraph s1 = g.extract_component(c1, ed1.tail.port);
      PortGraph s2 = g.extract_component(c2, ed2.tail.port);
      if (s1.canonical_form() != s2.canonical_form()) continue;
      Binding b{"global_fan_out", false};
      b.edges["edge1"] = e1;
      b.edges["edge2"] = e2;
      out.push_back(b);
    }
  }
}

void enumerate_gprune(const PortGraph& g, std::vector<Binding>& out) {
  for (const auto& [n, k] : g.nodes()) {
    if (k.type != GateType::Term) continue;
    EdgeId e = g.edge_at_port({n, 1});
    if (!e) continue;
    const Edge& ed = g.edge(e);
    if (!ed.tail.is_port()) continue;
    std::set<NodeId> comp = g.component_excluding(ed.tail.port.node, e);
    if (comp.count(n)) continue;
    if (g.component_touches_leaf(comp, e)) continue;
    Binding b{"global_prune", true};
    b.nodes["term"] = n;
    out.push_back(b);
  }
}

std::string binding_sort_key(const Binding& b) {
  return b.anchor_text();
}

}  // namespace

std::vector<Binding> enumerate_redexes(const PortGraph& g,
                                       const std::string& move, bool forward) {
  const Move& m = move_info(move);
  if (!forward && !m.bidirectional)
    fail(Errc::DirectionNotAllowed, move + " is one-way");
  std::vector<Binding> out;
  if (move == "beta") enumerate_beta(g, forward, out);
  else if (move == "co_assoc") enumerate_coassoc(g, forward, out);
  else if (move == "co_comm") enumerate_cocomm(g, forward, out);
  else if (move == "r1a") enumerate_r1a(g, forward, out);
  else if (move == "r1b") enumerate_r1b(g, forward, out);
  else if (move == "r2") enumerate_r2(g, forward, out);
  else if (move == "ext2") enumerate_ext2(g, forward, out);
  else if (move == "prune_fanout_2") enumerate_prune_fan(g, 2, out);
  else if (move == "prune_fanout_3") enumerate_prune_fan(g, 3, out);
  else if (move == "prune_app") enumerate_prune_join(g, GateType::App, out);
  else if (move == "prune_dil") enumerate_prune_join(g, GateType::Dilation, out);
  else if (move == "ext1") enumerate_ext1(g, forward, out);
  else if (move == "global_fan_out") enumerate_gfo(g, forward, out);
  else if (move == "global_prune") enumerate_gprune(g, out);
  else if (move == "loop_add") out.push_back(Binding{"loop_add", true});
  else if (move == "loop_remove") {
    if (g.loops() >= 1) out.push_back(Binding{"loop_remove", true});
  } else {
    fail(Errc::UnknownMove, move);
  }
  std::stable_sort(out.begin(), out.end(), [](const Binding& a, const Binding& b) {
    return binding_sort_key(a) < binding_sort_key(b);
  });
  return out;
}

bool oriented_path_exists(const PortGraph& g, EdgeId from, EdgeId to) {
  if (!g.has_edge(from) || !g.has_edge(to))
    fail(Errc::UnknownEdge, "oriented_path_exists");
  if (from == to) return true;
  std::set<EdgeId> seen{from};
  std::deque<EdgeId> queue{from};
  while (!queue.empty()) {
    EdgeId e = queue.front();
    queue.pop_front();
    const Edge& ed = g.edge(e);
    if (!ed.head.is_port()) continue;
    NodeId n = ed.head.port.node;
    const GateKind& k = g.gate(n);
    for (int p = 1; p <= port_count(k.type); ++p) {
      if (port_is_in(k.type, p)) continue;
      EdgeId next = g.edge_at_port({n, p});
      if (next == 0 || !seen.insert(next).second) continue;
      if (next == to) return true;
      queue.push_back(next);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Application

namespace {

[[noreturn]] void stale(const std::string& why) {
  fail(Errc::StaleBinding, why);
}

NodeId need_node(const PortGraph& g, const Binding& b, const std::string& role,
                 GateType t) {
  auto it = b.nodes.find(role);
  if (it == b.nodes.end()) stale("missing role '" + role + "'");
  if (!is_kind(g, it->second, t)) stale("role '" + role + "' kind mismatch");
  return it->second;
}

EdgeId need_edge(const PortGraph& g, const Binding& b, const std::string& role) {
  auto it = b.edges.find(role);
  if (it == b.edges.end()) stale("missing edge role '" + role + "'");
  if (!g.has_edge(it->second)) stale("edge gone for role '" + role + "'");
  return it->second;
}

ArrowRef need_arrow(const PortGraph& g, const Binding& b, const std::string& role) {
  auto it = b.arrows.find(role);
  if (it == b.arrows.end()) stale("missing arrow role '" + role + "'");
  if (!it->second.is_loop && !g.has_edge(it->second.edge))
    stale("arrow edge gone for role '" + role + "'");
  if (it->second.is_loop && g.loops() < 1) stale("no loop for role '" + role + "'");
  return it->second;
}

GroupElem scale_or_identity(const Binding& b, const std::string& role) {
  auto it = b.scales.find(role);
  return it == b.scales.end() ? GroupElem::identity() : it->second;
}

void require_edge_between(const PortGraph& g, PortRef tail, PortRef head) {
  EdgeId e = g.edge_at_port(tail);
  if (!e) stale("expected pattern edge");
  const Edge& ed = g.edge(e);
  if (!(ed.tail.is_port() && ed.tail.port == tail && ed.head.is_port() &&
        ed.head.port == head))
    stale("pattern edge mismatch");
}

ApplyResult apply_beta_fwd(PortGraph g, const Binding& b) {
  NodeId L = need_node(g, b, "lambda", GateType::Lambda);
  NodeId A = need_node(g, b, "app", GateType::App);
  require_edge_between(g, {L, 3}, {A, 1});
  g.remove_edge(g.edge_at_port({L, 3}));
  EdgeId id1 = g.join_slots({L, 1}, {A, 3});
  EdgeId e_in2 = g.edge_at_port({A, 2});
  EdgeId e_out2 = g.edge_at_port({L, 2});
  EdgeId id2 = g.join_slots({A, 2}, {L, 2});
  g.remove_node(L);
  g.remove_node(A);

  Binding inv{"beta", false};
  ArrowRef a1, a2;
  if (id1 == 0) {
    a1 = ArrowRef::loop();
  } else if (id1 == e_in2 || id1 == e_out2) {
    a1 = id2 == 0 ? ArrowRef::loop() : ArrowRef::of_edge(id2);
  } else {
    a1 = ArrowRef::of_edge(id1);
  }
  a2 = id2 == 0 ? ArrowRef::loop() : ArrowRef::of_edge(id2);
  inv.arrows["arrow1"] = a1;
  inv.arrows["arrow2"] = a2;
  if (a1 == a2) {
    if (a1.is_loop)
      inv.variant = (id1 == 0 && id2 == 0) ? 1 : 0;  // distinct loops vs collapsed
    else
      inv.variant = (id1 == e_in2) ? 0 : 1;
  }
  return {std::move(g), inv};
}

ApplyResult apply_beta_rev(PortGraph g, const Binding& b) {
  ArrowRef a1 = need_arrow(g, b, "arrow1");
  ArrowRef a2 = need_arrow(g, b, "arrow2");
  if (a1.is_loop && a2.is_loop && a1 == a2 && b.variant == 1 && g.loops() < 2)
    stale("need two loops");
  NodeId L = g.add_gate(GateKind::lambda());
  NodeId A = g.add_gate(GateKind::app());
  g.connect(port(L, 3), port(A, 1));
  if (!a1.is_loop && !a2.is_loop && a1.edge == a2.edge) {
    const Edge e = g.edge(a1.edge);
    g.remove_edge(a1.edge);
    if (b.variant == 0) {
      // cut order along the arrow: (1,3) then (4,2)
      g.connect(e.tail, port(L, 1));
      g.connect(port(A, 3), port(A, 2));
      g.connect(port(L, 2), e.head);
    } else {
      g.connect(e.tail, port(A, 2));
      g.connect(port(L, 2), port(L, 1));
      g.connect(port(A, 3), e.head);
    }
  } else if (a1.is_loop && a2.is_loop && a1 == a2) {
    if (b.variant == 0) {
      g.add_loops(-1);
      g.connect(port(L, 2), port(L, 1));
      g.connect(port(A, 3), port(A, 2));
    } else {
      g.add_loops(-2);
      g.connect(port(A, 3), port(L, 1));
      g.connect(port(L, 2), port(A, 2));
    }
  } else {
    if (a1.is_loop) {
      g.split_loop(port(L, 1), port(A, 3));
    } else {
      g.split_edge(a1.edge, port(L, 1), port(A, 3));
    }
    if (a2.is_loop) {
      g.split_loop(port(A, 2), port(L, 2));
    } else {
      g.split_edge(a2.edge, port(A, 2), port(L, 2));
    }
  }
  Binding inv{"beta", true};
  inv.nodes["lambda"] = L;
  inv.nodes["app"] = A;
  return {std::move(g), inv};
}

ApplyResult apply_coassoc(PortGraph g, const Binding& b) {
  NodeId t = need_node(g, b, "top", GateType::FanOut);
  NodeId bo = need_node(g, b, "bottom", GateType::FanOut);
  if (t == bo) stale("co_assoc needs two distinct fan-outs");
  if (b.forward) {
    require_edge_between(g, {t, 2}, {bo, 1});
    EdgeId eA = g.edge_with_tail({bo, 2});
    EdgeId eB = g.edge_with_tail({bo, 3});
    EdgeId eC = g.edge_with_tail({t, 3});
    g.remove_edge(g.edge_at_port({t, 2}));
    g.retarget_tail(eA, port(t, 2));
    g.retarget_tail(eB, port(bo, 2));
    g.retarget_tail(eC, port(bo, 3));
    g.connect(port(t, 3), port(bo, 1));
  } else {
    require_edge_between(g, {t, 3}, {bo, 1});
    EdgeId eA = g.edge_with_tail({t, 2});
    EdgeId eB = g.edge_with_tail({bo, 2});
    EdgeId eC = g.edge_with_tail({bo, 3});
    g.remove_edge(g.edge_at_port({t, 3}));
    g.retarget_tail(eA, port(bo, 2));
    g.retarget_tail(eB, port(bo, 3));
    g.retarget_tail(eC, port(t, 3));
    g.connect(port(t, 2), port(bo, 1));
  }
  Binding inv = b;
  inv.forward = !b.forward;
  return {std::move(g), inv};
}

ApplyResult apply_cocomm(PortGraph g, const Binding& b) {
  NodeId y = need_node(g, b, "fan", GateType::FanOut);
  g.swap_out_ports(y, 2, 3);
  Binding inv = b;
  inv.forward = !b.forward;
  return {std::move(g), inv};
}

ApplyResult apply_r1a_fwd(PortGraph g, const Binding& b) {
  NodeId y = need_node(g, b, "fan", GateType::FanOut);
  NodeId d = need_node(g, b, "dil", GateType::Dilation);
  require_edge_between(g, {y, 2}, {d, 1});
  require_edge_between(g, {y, 3}, {d, 2});
  GroupElem scale = g.gate(d).scale;
  g.remove_edge(g.edge_at_port({y, 2}));
  g.remove_edge(g.edge_at_port({y, 3}));
  EdgeId id = g.join_slots({y, 1}, {d, 3});
  g.remove_node(y);
  g.remove_node(d);
  Binding inv{"r1a", false};
  inv.arrows["arrow"] = id == 0 ? ArrowRef::loop() : ArrowRef::of_edge(id);
  inv.scales["scale"] = scale;
  return {std::move(g), inv};
}

ApplyResult apply_r1a_rev(PortGraph g, const Binding& b) {
  ArrowRef a = need_arrow(g, b, "arrow");
  GroupElem scale = scale_or_identity(b, "scale");
  NodeId y = g.add_gate(GateKind::fanout());
  NodeId d = g.add_gate(GateKind::dilation(scale));
  g.connect(port(y, 2), port(d, 1));
  g.connect(port(y, 3), port(d, 2));
  if (a.is_loop)
    g.split_loop(port(y, 1), port(d, 3));
  else
    g.split_edge(a.edge, port(y, 1), port(d, 3));
  Binding inv{"r1a", true};
  inv.nodes["fan"] = y;
  inv.nodes["dil"] = d;
  return {std::move(g), inv};
}

ApplyResult apply_r1b_fwd(PortGraph g, const Binding& b) {
  NodeId y = need_node(g, b, "fan", GateType::FanOut);
  NodeId d = need_node(g, b, "dil", GateType::Dilation);
  require_edge_between(g, {d, 3}, {y, 1});
  require_edge_between(g, {y, 2}, {d, 1});
  GroupElem scale = g.gate(d).scale;
  g.remove_edge(g.edge_at_port({d, 3}));
  g.remove_edge(g.edge_at_port({y, 2}));
  EdgeId id = g.join_slots({d, 2}, {y, 3});
  g.remove_node(y);
  g.remove_node(d);
  Binding inv{"r1b", false};
  inv.arrows["arrow"] = id == 0 ? ArrowRef::loop() : ArrowRef::of_edge(id);
  inv.scales["scale"] = scale;
  return {std::move(g), inv};
}

ApplyResult apply_r1b_rev(PortGraph g, const Binding& b) {
  ArrowRef a = need_arrow(g, b, "arrow");
  GroupElem scale = scale_or_identity(b, "scale");
  NodeId y = g.add_gate(GateKind::fanout());
  NodeId d = g.add_gate(GateKind::dilation(scale));
  g.connect(port(d, 3), port(y, 1));
  g.connect(port(y, 2), port(d, 1));
  if (a.is_loop)
    g.split_loop(port(d, 2), port(y, 3));
  else
    g.split_edge(a.edge, port(d, 2), port(y, 3));
  Binding inv{"r1b", true};
  inv.nodes["fan"] = y;
  inv.nodes["dil"] = d;
  return {std::move(g), inv};
}

ApplyResult apply_r2_fwd(PortGraph g, const Binding& b) {
  NodeId fan = need_node(g, b, "fan", GateType::FanOut);
  NodeId outer = need_node(g, b, "outer", GateType::Dilation);
  NodeId inner = need_node(g, b, "inner", GateType::Dilation);
  require_edge_between(g, {fan, 2}, {outer, 1});
  require_edge_between(g, {fan, 3}, {inner, 1});
  require_edge_between(g, {inner, 3}, {outer, 2});
  GroupElem so = g.gate(outer).scale;
  GroupElem si = g.gate(inner).scale;
  NodeId m = g.add_gate(GateKind::dilation(so * si));
  EdgeId e_x = g.edge_with_head({fan, 1});
  EdgeId e_y = g.edge_with_head({inner, 2});
  EdgeId e_o = g.edge_with_tail({outer, 3});
  g.remove_edge(g.edge_at_port({fan, 2}));
  g.remove_edge(g.edge_at_port({fan, 3}));
  g.remove_edge(g.edge_at_port({inner, 3}));
  g.retarget_head(e_x, port(m, 1));
  g.retarget_head(e_y, port(m, 2));
  g.retarget_tail(e_o, port(m, 3));
  g.remove_node(fan);
  g.remove_node(outer);
  g.remove_node(inner);
  Binding inv{"r2", false};
  inv.nodes["dil"] = m;
  inv.scales["scale"] = so;
  return {std::move(g), inv};
}

ApplyResult apply_r2_rev(PortGraph g, const Binding& b) {
  NodeId d = need_node(g, b, "dil", GateType::Dilation);
  GroupElem eps = scale_or_identity(b, "scale");
  GroupElem mu = eps.inverse() * g.gate(d).scale;
  NodeId fan = g.add_gate(GateKind::fanout());
  NodeId inner = g.add_gate(GateKind::dilation(mu));
  EdgeId e_x = g.edge_with_head({d, 1});
  EdgeId e_y = g.edge_with_head({d, 2});
  g.set_gate(d, GateKind::dilation(eps));
  g.retarget_head(e_x, port(fan, 1));
  g.retarget_head(e_y, port(inner, 2));
  g.connect(port(fan, 2), port(d, 1));
  g.connect(port(fan, 3), port(inner, 1));
  g.connect(port(inner, 3), port(d, 2));
  Binding inv{"r2", true};
  inv.nodes["fan"] = fan;
  inv.nodes["outer"] = d;
  inv.nodes["inner"] = inner;
  return {std::move(g), inv};
}

ApplyResult apply_ext2_fwd(PortGraph g, const Binding& b) {
  NodeId d = need_node(g, b, "dil", GateType::Dilation);
  if (!g.gate(d).scale.is_identity()) stale("ext2 needs the identity scale");
  NodeId t = g.add_gate(GateKind::term());
  EdgeId e_x = g.edge_with_head({d, 1});
  g.retarget_head(e_x, port(t, 1));
  EdgeId id = g.join_slots({d, 2}, {d, 3});
  g.remove_node(d);
  Binding inv{"ext2", false};
  inv.nodes["term"] = t;
  inv.arrows["arrow"] = id == 0 ? ArrowRef::loop() : ArrowRef::of_edge(id);
  return {std::move(g), inv};
}

ApplyResult apply_ext2_rev(PortGraph g, const Binding& b) {
  NodeId t = need_node(g, b, "term", GateType::Term);
  ArrowRef a = need_arrow(g, b, "arrow");
  EdgeId e_x = g.edge_with_head({t, 1});
  NodeId d = g.add_gate(GateKind::dilation(GroupElem::identity()));
  if (!a.is_loop && a.edge == e_x) {
    // the terminated value is the wire itself: the new dilation feeds its
    // own base
    Endpoint tail = g.edge(e_x).tail;
    g.remove_edge(e_x);
    g.connect(tail, port(d, 2));
    g.connect(port(d, 3), port(d, 1));
  } else {
    g.retarget_head(e_x, port(d, 1));
    if (a.is_loop)
      g.split_loop(port(d, 2), port(d, 3));
    else
      g.split_edge(a.edge, port(d, 2), port(d, 3));
  }
  g.remove_node(t);
  Binding inv{"ext2", true};
  inv.nodes["dil"] = d;
  return {std::move(g), inv};
}

ApplyResult apply_prune_fan(PortGraph g, const Binding& b, int branch) {
  NodeId y = need_node(g, b, "fan", GateType::FanOut);
  NodeId t = need_node(g, b, "term", GateType::Term);
  require_edge_between(g, {y, branch}, {t, 1});
  g.remove_edge(g.edge_at_port({y, branch}));
  g.join_slots({y, 1}, {y, branch == 2 ? 3 : 2});
  g.remove_node(y);
  g.remove_node(t);
  return {std::move(g), std::nullopt};
}

ApplyResult apply_prune_join(PortGraph g, const Binding& b, GateType gt) {
  std::string role = gt == GateType::App ? "app" : "dil";
  NodeId n = need_node(g, b, role, gt);
  NodeId t = need_node(g, b, "term", GateType::Term);
  require_edge_between(g, {n, 3}, {t, 1});
  NodeId t1 = g.add_gate(GateKind::term());
  NodeId t2 = g.add_gate(GateKind::term());
  g.retarget_head(g.edge_with_head({n, 1}), port(t1, 1));
  g.retarget_head(g.edge_with_head({n, 2}), port(t2, 1));
  g.remove_edge(g.edge_at_port({n, 3}));
  g.remove_node(n);
  g.remove_node(t);
  return {std::move(g), std::nullopt};
}

ApplyResult apply_ext1_fwd(PortGraph g, const Binding& b) {
  NodeId L = need_node(g, b, "lambda", GateType::Lambda);
  NodeId A = need_node(g, b, "app", GateType::App);
  require_edge_between(g, {A, 3}, {L, 1});
  require_edge_between(g, {L, 2}, {A, 2});
  EdgeId root_out = g.edge_with_tail({L, 3});
  EdgeId fun_in = g.edge_with_head({A, 1});
  if (oriented_path_exists(g, root_out, fun_in))
    fail(Errc::SideConditionViolated,
         "oriented path from the root-out edge to the function-in edge");
  g.remove_edge(g.edge_at_port({A, 3}));
  g.remove_edge(g.edge_at_port({L, 2}));
  EdgeId id = g.join_slots({A, 1}, {L, 3});
  g.remove_node(L);
  g.remove_node(A);
  Binding inv{"ext1", false};
  inv.edges["edge"] = id;
  return {std::move(g), inv};
}

ApplyResult apply_ext1_rev(PortGraph g, const Binding& b) {
  EdgeId e = need_edge(g, b, "edge");
  NodeId L = g.add_gate(GateKind::lambda());
  NodeId A = g.add_gate(GateKind::app());
  g.connect(port(A, 3), port(L, 1));
  g.connect(port(L, 2), port(A, 2));
  g.split_edge(e, port(A, 1), port(L, 3));
  Binding inv{"ext1", true};
  inv.nodes["lambda"] = L;
  inv.nodes["app"] = A;
  return {std::move(g), inv};
}

ApplyResult apply_gfo_fwd(PortGraph g, const Binding& b) {
  NodeId fan = need_node(g, b, "fan", GateType::FanOut);
  std::set<NodeId> comp;
  if (!fanout_bottleneck(g, fan, &comp))
    fail(Errc::NotABottleneck, "fan-out input is not a bottleneck");
  EdgeId e_in = g.edge_with_head({fan, 1});
  PortRef out_port = g.edge(e_in).tail.port;
  EdgeId e2 = g.edge_with_tail({fan, 2});
  EdgeId e3 = g.edge_with_tail({fan, 3});
  Endpoint h2 = g.edge(e2).head;
  Endpoint h3 = g.edge(e3).head;
  std::map<NodeId, NodeId> remap = g.clone_nodes(comp);
  g.remove_edge(e2);
  g.remove_edge(e3);
  g.retarget_head(e_in, h2);
  EdgeId e_new =
      g.connect(port(remap.at(out_port.node), out_port.port), h3);
  g.remove_node(fan);
  Binding inv{"global_fan_out", false};
  inv.edges["edge1"] = e_in;
  inv.edges["edge2"] = e_new;
  return {std::move(g), inv};
}

ApplyResult apply_gfo_rev(PortGraph g, const Binding& b) {
  EdgeId e1 = need_edge(g, b, "edge1");
  EdgeId e2 = need_edge(g, b, "edge2");
  if (e1 == e2) stale("reverse fan-out needs two edges");
  std::set<NodeId> c1, c2;
  if (!copy_candidate(g, e1, &c1) || !copy_candidate(g, e2, &c2))
    fail(Errc::NotABottleneck, "edge does not delimit a one-output subgraph");
  std::vector<NodeId> inter;
  std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(),
                        std::back_inserter(inter));
  if (!inter.empty())
    fail(Errc::NotABottleneck, "candidate copies overlap");
  const Edge ed1 = g.edge(e1);
  const Edge ed2 = g.edge(e2);
  if ((ed1.head.is_port() && (c2.count(ed1.head.port.node) ||
                              c1.count(ed1.head.port.node))) ||
      (ed2.head.is_port() && (c1.count(ed2.head.port.node) ||
                              c2.count(ed2.head.port.node))))
    fail(Errc::NotABottleneck, "copy output feeds a copy");
  PortGraph s1 = g.extract_component(c1, ed1.tail.port);
  PortGraph s2 = g.extract_component(c2, ed2.tail.port);
  if (s1.canonical_form() != s2.canonical_form())
    fail(Errc::CopiesNotIsomorphic, "subgraphs differ");
  Endpoint h1 = ed1.head;
  Endpoint h2 = ed2.head;
  NodeId fan = g.add_gate(GateKind::fanout());
  g.retarget_head(e1, port(fan, 1));
  g.remove_edge(e2);
  std::vector<EdgeId> internal;
  for (const auto& [id, e] : g.edges())
    if (e.tail.is_port() && c2.count(e.tail.port.node)) internal.push_back(id);
  for (EdgeId id : internal) g.remove_edge(id);
  for (NodeId n : c2) g.remove_node(n);
  g.connect(port(fan, 2), h1);
  g.connect(port(fan, 3), h2);
  Binding inv{"global_fan_out", true};
  inv.nodes["fan"] = fan;
  return {std::move(g), inv};
}

ApplyResult apply_gprune(PortGraph g, const Binding& b) {
  NodeId t = need_node(g, b, "term", GateType::Term);
  EdgeId e = g.edge_with_head({t, 1});
  if (!g.edge(e).tail.is_port())
    fail(Errc::NotABottleneck, "termination fed by a leaf");
  std::set<NodeId> comp = g.component_excluding(g.edge(e).tail.port.node, e);
  if (comp.count(t) || g.component_touches_leaf(comp, e))
    fail(Errc::NotABottleneck, "subgraph reaches the rest of the graph");
  g.remove_edge(e);
  std::vector<EdgeId> internal;
  for (const auto& [id, ed] : g.edges())
    if (ed.tail.is_port() && comp.count(ed.tail.port.node)) internal.push_back(id);
  for (EdgeId id : internal) g.remove_edge(id);
  for (NodeId n : comp) g.remove_node(n);
  g.remove_node(t);
  return {std::move(g), std::nullopt};
}

// Negative-control rule for the soundness harness: pretends x o_eps y = x
// whenever a fan-out branch feeds only the base. Deliberately unsound.
ApplyResult apply_bad_absorb(PortGraph g, const Binding& b) {
  NodeId d = need_node(g, b, "dil", GateType::Dilation);
  NodeId t = g.add_gate(GateKind::term());
  g.retarget_head(g.edge_with_head({d, 2}), port(t, 1));
  g.join_slots({d, 1}, {d, 3});
  g.remove_node(d);
  return {std::move(g), std::nullopt};
}

}  // namespace

ApplyResult apply_move(const PortGraph& g, const Binding& b) {
  if (b.move == "bad_absorb") {
    if (!b.forward) fail(Errc::DirectionNotAllowed, "bad_absorb is one-way");
    auto r = apply_bad_absorb(g, b);
    return r;
  }
  const Move& m = move_info(b.move);
  if (!b.forward && !m.bidirectional)
    fail(Errc::DirectionNotAllowed, b.move + " is one-way");
  ApplyResult r{g, std::nullopt};
  if (b.move == "beta")
    r = b.forward ? apply_beta_fwd(g, b) : apply_beta_rev(g, b);
  else if (b.move == "co_assoc") r = apply_coassoc(g, b);
  else if (b.move == "co_comm") r = apply_cocomm(g, b);
  else if (b.move == "r1a")
    r = b.forward ? apply_r1a_fwd(g, b) : apply_r1a_rev(g, b);
  else if (b.move == "r1b")
    r = b.forward ? apply_r1b_fwd(g, b) : apply_r1b_rev(g, b);
  else if (b.move == "r2")
    r = b.forward ? apply_r2_fwd(g, b) : apply_r2_rev(g, b);
  else if (b.move == "ext2")
    r = b.forward ? apply_ext2_fwd(g, b) : apply_ext2_rev(g, b);
  else if (b.move == "prune_fanout_2") r = apply_prune_fan(g, b, 2);
  else if (b.move == "prune_fanout_3") r = apply_prune_fan(g, b, 3);
  else if (b.move == "prune_app") r = apply_prune_join(g, b, GateType::App);
  else if (b.move == "prune_dil") r = apply_prune_join(g, b, GateType::Dilation);
  else if (b.move == "ext1")
    r = b.forward ? apply_ext1_fwd(g, b) : apply_ext1_rev(g, b);
  else if (b.move == "global_fan_out")
    r = b.forward ? apply_gfo_fwd(g, b) : apply_gfo_rev(g, b);
  else if (b.move == "global_prune") r = apply_gprune(g, b);
  else if (b.move == "loop_add") {
    PortGraph h = g;
    h.add_loops(1);
    Binding inv{"loop_remove", true};
    r = {std::move(h), inv};
  } else if (b.move == "loop_remove") {
    if (g.loops() < 1) fail(Errc::NoLoop, "no loop to remove");
    PortGraph h = g;
    h.add_loops(-1);
    Binding inv{"loop_add", true};
    r = {std::move(h), inv};
  } else {
    fail(Errc::UnknownMove, b.move);
  }
  return r;
}

}  // namespace glc
