#pragma once

#include <random>

#include "glc/graph.hpp"

namespace glc::testing {

// The I-combinator graph built by hand: a single lambda whose bound output
// loops straight into its body input.
inline PortGraph i_graph() {
  PortGraph g;
  NodeId lam = g.add_gate(GateKind::lambda());
  g.connect(Endpoint::of_port(lam, 2), Endpoint::of_port(lam, 1));
  LeafId out = g.add_leaf(LeafDir::Out, "r");
  g.connect(Endpoint::of_port(lam, 3), Endpoint::of_leaf(out));
  return g;
}

// Random valid graph: gates wired arbitrarily (respecting direction), spare
// ports closed with leaves, a few loops.
inline PortGraph random_graph(std::mt19937_64& rng, int max_nodes,
                              bool with_dilations = true) {
  PortGraph g;
  std::uniform_int_distribution<int> nd(0, max_nodes);
  int n = nd(rng);
  std::uniform_int_distribution<int> kindd(0, with_dilations ? 4 : 3);
  for (int i = 0; i < n; ++i) {
    switch (kindd(rng)) {
      case 0: g.add_gate(GateKind::lambda()); break;
      case 1: g.add_gate(GateKind::fanout()); break;
      case 2: g.add_gate(GateKind::app()); break;
      case 3: g.add_gate(GateKind::term()); break;
      default: {
        std::uniform_int_distribution<long> pq(1, 5);
        g.add_gate(GateKind::dilation(GroupElem(Rat(pq(rng), pq(rng)))));
      }
    }
  }
  std::vector<Endpoint> outs, ins;
  for (const auto& [id, kind] : g.nodes()) {
    for (int p = 1; p <= port_count(kind.type); ++p) {
      if (port_is_in(kind.type, p))
        ins.push_back(Endpoint::of_port(id, p));
      else
        outs.push_back(Endpoint::of_port(id, p));
    }
  }
  std::shuffle(outs.begin(), outs.end(), rng);
  std::shuffle(ins.begin(), ins.end(), rng);
  std::uniform_int_distribution<int> coin(0, 3);
  size_t k = std::min(outs.size(), ins.size());
  size_t paired = 0;
  for (size_t i = 0; i < k; ++i) {
    if (coin(rng) == 0) break;  // leave the rest to leaves
    ++paired;
  }
  for (size_t i = 0; i < paired; ++i) g.connect(outs[i], ins[i]);
  for (size_t i = paired; i < outs.size(); ++i)
    g.connect(outs[i], Endpoint::of_leaf(g.add_leaf(LeafDir::Out)));
  for (size_t i = paired; i < ins.size(); ++i)
    g.connect(Endpoint::of_leaf(g.add_leaf(LeafDir::In)), ins[i]);
  std::uniform_int_distribution<int> wires(0, 2), loops(0, 2);
  for (int i = wires(rng); i > 0; --i) {
    LeafId a = g.add_leaf(LeafDir::In);
    LeafId b = g.add_leaf(LeafDir::Out);
    g.connect(Endpoint::of_leaf(a), Endpoint::of_leaf(b));
  }
  g.add_loops(loops(rng));
  return g;
}

// Rebuilds g with nodes inserted in a random order (same structure and
// boundary): an explicit relabeling.
inline PortGraph shuffled_copy(const PortGraph& g, std::mt19937_64& rng) {
  std::vector<NodeId> order;
  for (const auto& [n, k] : g.nodes()) order.push_back(n);
  std::shuffle(order.begin(), order.end(), rng);
  PortGraph h;
  std::map<NodeId, NodeId> nmap;
  for (NodeId n : order) nmap[n] = h.add_gate(g.gate(n));
  std::map<LeafId, LeafId> lmap;
  for (const Leaf& l : g.leaves()) lmap[l.id] = h.add_leaf(l.dir, l.label);
  auto conv = [&](const Endpoint& ep) {
    if (ep.is_port())
      return Endpoint::of_port(nmap.at(ep.port.node), ep.port.port);
    return Endpoint::of_leaf(lmap.at(ep.leaf));
  };
  std::vector<EdgeId> eids;
  for (const auto& [id, e] : g.edges()) eids.push_back(id);
  std::shuffle(eids.begin(), eids.end(), rng);
  for (EdgeId id : eids) {
    const Edge& e = g.edge(id);
    h.connect(conv(e.tail), conv(e.head));
  }
  h.add_loops(g.loops());
  return h;
}

}  // namespace glc::testing
