#include "glc/macros.hpp"

#include "glc/engine.hpp"
#include "glc/error.hpp"
#include "glc/lambda.hpp"

namespace glc {

LeafId MacroGraph::role(const std::string& name) const {
  auto it = roles.find(name);
  if (it == roles.end()) fail(Errc::RoleMismatch, "no role '" + name + "'");
  return it->second;
}

MacroGraph combinator(const std::string& name) {
  TermPtr t;
  if (name == "I") t = parse_term("\\x.x");
  else if (name == "K") t = parse_term("\\x.\\y.x");
  else if (name == "S") t = parse_term("\\x.\\y.\\z.(x z) (y z)");
  else fail(Errc::UnknownName, "combinator '" + name + "'");
  MacroGraph m{to_graph(t), {}};
  m.roles["out"] = m.graph.out_leaves().front();
  return m;
}

MacroGraph zipper(int n) {
  if (n < 1) fail(Errc::BadArgument, "zipper needs n >= 1");
  MacroGraph m;
  PortGraph& g = m.graph;
  std::vector<NodeId> lam(n + 1), ap(n + 1);
  for (int i = 1; i <= n; ++i) {
    lam[i] = g.add_gate(GateKind::lambda());
    ap[i] = g.add_gate(GateKind::app());
  }
  LeafId body_in = g.add_leaf(LeafDir::In, "body");
  LeafId result = g.add_leaf(LeafDir::Out, "result");
  m.roles["body_in"] = body_in;
  m.roles["result_out"] = result;
  g.connect(Endpoint::of_port(lam[1], 3), Endpoint::of_port(ap[1], 1));
  for (int i = 1; i < n; ++i) {
    g.connect(Endpoint::of_port(lam[i + 1], 3), Endpoint::of_port(lam[i], 1));
    g.connect(Endpoint::of_port(ap[i], 3), Endpoint::of_port(ap[i + 1], 1));
  }
  g.connect(Endpoint::of_leaf(body_in), Endpoint::of_port(lam[n], 1));
  g.connect(Endpoint::of_port(ap[n], 3), Endpoint::of_leaf(result));
  for (int i = 1; i <= n; ++i) {
    LeafId arg = g.add_leaf(LeafDir::In, "arg" + std::to_string(i));
    LeafId bound = g.add_leaf(LeafDir::Out, "bound" + std::to_string(i));
    g.connect(Endpoint::of_leaf(arg), Endpoint::of_port(ap[i], 2));
    g.connect(Endpoint::of_port(lam[i], 2), Endpoint::of_leaf(bound));
    m.roles["arg" + std::to_string(i)] = arg;
    m.roles["bound" + std::to_string(i)] = bound;
  }
  return m;
}

PortGraph graft(const MacroGraph& a, const std::string& input_role,
                const MacroGraph& b) {
  LeafId in = a.role(input_role);
  if (a.graph.leaf(in).dir != LeafDir::In)
    fail(Errc::RoleMismatch, "graft target is not an input");
  PortGraph g = a.graph;
  auto maps = g.absorb(b.graph);
  g.splice_leaves(maps.leaves.at(b.role("out")), in);
  return g;
}

MacroGraph apply_pair(const MacroGraph& a, const MacroGraph& b) {
  MacroGraph m;
  PortGraph& g = m.graph;
  auto ma = g.absorb(a.graph);
  auto mb = g.absorb(b.graph);
  NodeId ap = g.add_gate(GateKind::app());
  LeafId fa = ma.leaves.at(a.role("out"));
  LeafId fb = mb.leaves.at(b.role("out"));
  EdgeId ea = g.edge_at_leaf(fa);
  g.retarget_head(ea, Endpoint::of_port(ap, 1));
  g.remove_leaf(fa);
  EdgeId eb = g.edge_at_leaf(fb);
  g.retarget_head(eb, Endpoint::of_port(ap, 2));
  g.remove_leaf(fb);
  LeafId out = g.add_leaf(LeafDir::Out, "r");
  g.connect(Endpoint::of_port(ap, 3), Endpoint::of_leaf(out));
  m.roles["out"] = out;
  return m;
}

MacroGraph as_unary(const MacroGraph& f) {
  if (!f.graph.in_leaves().empty() || f.graph.out_leaves().size() != 1)
    fail(Errc::RoleMismatch, "as_unary expects a closed one-output graph");
  MacroGraph m;
  PortGraph& g = m.graph;
  auto mf = g.absorb(f.graph);
  NodeId ap = g.add_gate(GateKind::app());
  LeafId fo = mf.leaves.at(f.role("out"));
  EdgeId e = g.edge_at_leaf(fo);
  g.retarget_head(e, Endpoint::of_port(ap, 1));
  g.remove_leaf(fo);
  LeafId in = g.add_leaf(LeafDir::In, "in");
  g.connect(Endpoint::of_leaf(in), Endpoint::of_port(ap, 2));
  LeafId out = g.add_leaf(LeafDir::Out, "out");
  g.connect(Endpoint::of_port(ap, 3), Endpoint::of_leaf(out));
  m.roles = {{"in", in}, {"out", out}};
  return m;
}

namespace {

void require_unary(const MacroGraph& a) {
  if (a.graph.in_leaves().size() != 1 || a.graph.out_leaves().size() != 1)
    fail(Errc::RoleMismatch, "expected a one-input one-output graph");
}

// w = \x. a (x x): the self-application body with `a` grafted over it.
// Returns the graph and the lambda's root port left on an OUT leaf.
MacroGraph self_app_body(const MacroGraph& a) {
  require_unary(a);
  MacroGraph m;
  PortGraph& g = m.graph;
  auto ma = g.absorb(a.graph);
  NodeId lam = g.add_gate(GateKind::lambda());
  NodeId fan = g.add_gate(GateKind::fanout());
  NodeId ap = g.add_gate(GateKind::app());
  LeafId a_in = ma.leaves.at(a.graph.in_leaves().front());
  LeafId a_out = ma.leaves.at(a.graph.out_leaves().front());
  g.connect(Endpoint::of_port(lam, 2), Endpoint::of_port(fan, 1));
  g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(ap, 1));
  g.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(ap, 2));
  // ap output feeds a's input; a's output is the lambda body
  EdgeId e_in = g.edge_at_leaf(a_in);
  g.retarget_tail(e_in, Endpoint::of_port(ap, 3));
  g.remove_leaf(a_in);
  EdgeId e_out = g.edge_at_leaf(a_out);
  g.retarget_head(e_out, Endpoint::of_port(lam, 1));
  g.remove_leaf(a_out);
  LeafId out = g.add_leaf(LeafDir::Out, "w");
  g.connect(Endpoint::of_port(lam, 3), Endpoint::of_leaf(out));
  m.roles["out"] = out;
  return m;
}

}  // namespace

Fixpoint fixpoint(const MacroGraph& a) {
  require_unary(a);
  MacroGraph w = self_app_body(a);
  // b = shared self-application of w
  MacroGraph b;
  {
    PortGraph& g = b.graph;
    auto mw = g.absorb(w.graph);
    NodeId fan = g.add_gate(GateKind::fanout());
    NodeId ap = g.add_gate(GateKind::app());
    LeafId wl = mw.leaves.at(w.role("out"));
    EdgeId we = g.edge_at_leaf(wl);
    g.retarget_head(we, Endpoint::of_port(fan, 1));
    g.remove_leaf(wl);
    g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(ap, 1));
    g.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(ap, 2));
    LeafId out = g.add_leaf(LeafDir::Out, "r");
    g.connect(Endpoint::of_port(ap, 3), Endpoint::of_leaf(out));
    b.roles["out"] = out;
  }
  // grafted = a with b at its input
  PortGraph grafted;
  {
    grafted = a.graph;
    auto mb = grafted.absorb(b.graph);
    grafted.splice_leaves(mb.leaves.at(b.role("out")),
                          grafted.in_leaves().front());
  }
  // Derivation b ~> (copy of grafted): duplicate the shared body, then open
  // the outer application with one beta move.
  std::vector<Binding> deriv;
  {
    auto fo = enumerate_redexes(b.graph, "global_fan_out", true);
    if (fo.size() != 1) fail(Errc::InvalidGraph, "fixpoint derivation");
    deriv.push_back(fo.front());
    PortGraph mid = apply_move(b.graph, fo.front()).graph;
    auto betas = enumerate_redexes(mid, "beta", true);
    bool found = false;
    for (const Binding& cand : betas) {
      PortGraph done = apply_move(mid, cand).graph;
      if (isomorphic(done, grafted)) {
        deriv.push_back(cand);
        found = true;
        break;
      }
    }
    if (!found) fail(Errc::InvalidGraph, "fixpoint derivation: no beta");
  }
  auto [derived, trace] = run_bindings(b.graph, deriv);
  MoveScript on_derived = reverse_trace(b.graph, trace, derived);
  // Transport the witness onto the grafted graph.
  auto iso = find_isomorphism(derived, grafted);
  if (!iso) fail(Errc::InvalidGraph, "fixpoint: derivation mismatch");
  PortGraph hx = derived;
  PortGraph hg = grafted;
  std::vector<Binding> witness;
  for (const ScriptStep& s : on_derived.steps) {
    Binding bx = resolve_step(hx, s, 0);
    auto step_iso = find_isomorphism(hx, hg);
    if (!step_iso) fail(Errc::InvalidGraph, "fixpoint: transport drift");
    Binding bg = remap_binding(bx, hx, hg, *step_iso);
    witness.push_back(bg);
    hx = apply_move(hx, bx).graph;
    hg = apply_move(hg, bg).graph;
  }
  return {std::move(b), std::move(grafted), script_from_bindings(witness)};
}

Packing pack_arrows() {
  Packing p;
  {
    PortGraph& g = p.packer.graph;
    LeafId in1 = g.add_leaf(LeafDir::In, "in1");
    LeafId in2 = g.add_leaf(LeafDir::In, "in2");
    NodeId lam = g.add_gate(GateKind::lambda());
    NodeId a1 = g.add_gate(GateKind::app());
    NodeId a2 = g.add_gate(GateKind::app());
    g.connect(Endpoint::of_port(lam, 2), Endpoint::of_port(a1, 1));
    g.connect(Endpoint::of_leaf(in1), Endpoint::of_port(a1, 2));
    g.connect(Endpoint::of_port(a1, 3), Endpoint::of_port(a2, 1));
    g.connect(Endpoint::of_leaf(in2), Endpoint::of_port(a2, 2));
    g.connect(Endpoint::of_port(a2, 3), Endpoint::of_port(lam, 1));
    LeafId out = g.add_leaf(LeafDir::Out, "packed");
    g.connect(Endpoint::of_port(lam, 3), Endpoint::of_leaf(out));
    p.packer.roles = {{"in1", in1}, {"in2", in2}, {"out", out}};
  }
  {
    PortGraph& g = p.unpacker.graph;
    LeafId in = g.add_leaf(LeafDir::In, "packed");
    NodeId ap = g.add_gate(GateKind::app());
    NodeId lu = g.add_gate(GateKind::lambda());
    NodeId lv = g.add_gate(GateKind::lambda());
    g.connect(Endpoint::of_leaf(in), Endpoint::of_port(ap, 1));
    g.connect(Endpoint::of_port(lu, 3), Endpoint::of_port(ap, 2));
    g.connect(Endpoint::of_port(lv, 3), Endpoint::of_port(lu, 1));
    g.connect(Endpoint::of_port(ap, 3), Endpoint::of_port(lv, 1));
    LeafId out3 = g.add_leaf(LeafDir::Out, "out1");
    LeafId out4 = g.add_leaf(LeafDir::Out, "out2");
    g.connect(Endpoint::of_port(lu, 2), Endpoint::of_leaf(out3));
    g.connect(Endpoint::of_port(lv, 2), Endpoint::of_leaf(out4));
    p.unpacker.roles = {{"in", in}, {"out1", out3}, {"out2", out4}};
  }
  return p;
}

PortGraph pack_unpack_composition(const Packing& p) {
  PortGraph g = p.packer.graph;
  auto mu = g.absorb(p.unpacker.graph);
  g.splice_leaves(p.packer.role("out"), mu.leaves.at(p.unpacker.role("in")));
  return g;
}

PortGraph packed_lambda_into_app() {
  Packing p = pack_arrows();
  PortGraph g;
  LeafId gin = g.add_leaf(LeafDir::In, "in");
  LeafId gout = g.add_leaf(LeafDir::Out, "out");
  NodeId lam = g.add_gate(GateKind::lambda());
  NodeId ap = g.add_gate(GateKind::app());
  g.connect(Endpoint::of_leaf(gin), Endpoint::of_port(lam, 1));
  auto mp = g.absorb(p.packer.graph);
  auto munp = g.absorb(p.unpacker.graph);
  // lambda's outputs packed: root into slot 1, bound variable into slot 2
  auto feed = [&](LeafId leaf, Endpoint source) {
    EdgeId e = g.edge_at_leaf(leaf);
    g.retarget_tail(e, source);
    g.remove_leaf(leaf);
  };
  feed(mp.leaves.at(p.packer.role("in1")), Endpoint::of_port(lam, 3));
  feed(mp.leaves.at(p.packer.role("in2")), Endpoint::of_port(lam, 2));
  g.splice_leaves(mp.leaves.at(p.packer.role("out")),
                  munp.leaves.at(p.unpacker.role("in")));
  // unpacked strands feed the application
  auto drain = [&](LeafId leaf, Endpoint sink) {
    EdgeId e = g.edge_at_leaf(leaf);
    g.retarget_head(e, sink);
    g.remove_leaf(leaf);
  };
  drain(munp.leaves.at(p.unpacker.role("out1")), Endpoint::of_port(ap, 1));
  drain(munp.leaves.at(p.unpacker.role("out2")), Endpoint::of_port(ap, 2));
  g.connect(Endpoint::of_port(ap, 3), Endpoint::of_leaf(gout));
  return g;
}

MacroGraph curry(const MacroGraph& a) {
  auto ins = a.graph.in_leaves();
  if (ins.empty()) fail(Errc::RoleMismatch, "curry needs at least one input");
  if (a.graph.out_leaves().size() != 1)
    fail(Errc::RoleMismatch, "curry needs exactly one output");
  MacroGraph m;
  PortGraph& g = m.graph;
  auto ma = g.absorb(a.graph);
  int k = static_cast<int>(ins.size());
  std::vector<NodeId> lam(k + 1);
  for (int i = 1; i <= k; ++i) lam[i] = g.add_gate(GateKind::lambda());
  // innermost binder takes a's output as its body
  LeafId a_out = ma.leaves.at(a.graph.out_leaves().front());
  EdgeId e_out = g.edge_at_leaf(a_out);
  g.retarget_head(e_out, Endpoint::of_port(lam[k], 1));
  g.remove_leaf(a_out);
  for (int i = k; i > 1; --i)
    g.connect(Endpoint::of_port(lam[i], 3), Endpoint::of_port(lam[i - 1], 1));
  for (int i = 1; i <= k; ++i) {
    LeafId in = ma.leaves.at(ins[i - 1]);
    EdgeId e = g.edge_at_leaf(in);
    g.retarget_tail(e, Endpoint::of_port(lam[i], 2));
    g.remove_leaf(in);
  }
  LeafId out = g.add_leaf(LeafDir::Out, "r");
  g.connect(Endpoint::of_port(lam[1], 3), Endpoint::of_leaf(out));
  m.roles["out"] = out;
  return m;
}

PortGraph curry_applied(const MacroGraph& a,
                        const std::vector<MacroGraph>& args) {
  MacroGraph cur = curry(a);
  for (const MacroGraph& arg : args) cur = apply_pair(cur, arg);
  return cur.graph;
}

PortGraph curry_applied_list2(const MacroGraph& a, const MacroGraph& x,
                              const MacroGraph& y) {
  // list = \f.(f x) y with the two arguments grafted in
  MacroGraph list;
  {
    PortGraph& g = list.graph;
    auto mx = g.absorb(x.graph);
    auto my = g.absorb(y.graph);
    NodeId lam = g.add_gate(GateKind::lambda());
    NodeId a1 = g.add_gate(GateKind::app());
    NodeId a2 = g.add_gate(GateKind::app());
    g.connect(Endpoint::of_port(lam, 2), Endpoint::of_port(a1, 1));
    g.connect(Endpoint::of_port(a1, 3), Endpoint::of_port(a2, 1));
    g.connect(Endpoint::of_port(a2, 3), Endpoint::of_port(lam, 1));
    auto feed = [&](LeafId leaf, Endpoint sink) {
      EdgeId e = g.edge_at_leaf(leaf);
      g.retarget_head(e, sink);
      g.remove_leaf(leaf);
    };
    feed(mx.leaves.at(x.role("out")), Endpoint::of_port(a1, 2));
    feed(my.leaves.at(y.role("out")), Endpoint::of_port(a2, 2));
    LeafId out = g.add_leaf(LeafDir::Out, "list");
    g.connect(Endpoint::of_port(lam, 3), Endpoint::of_leaf(out));
    list.roles["out"] = out;
  }
  MacroGraph cur = curry(a);
  return apply_pair(list, cur).graph;
}

}  // namespace glc
