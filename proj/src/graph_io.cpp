#include "glc/graph_io.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "glc/error.hpp"

namespace glc {

namespace {

struct Tok {
  std::vector<std::string> words;
  int line;
};

std::vector<Tok> tokenize(const std::string& text) {
  std::vector<Tok> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    Tok t;
    t.line = lineno;
    std::string w;
    while (ls >> w) t.words.push_back(w);
    if (!t.words.empty()) out.push_back(t);
  }
  return out;
}

[[noreturn]] void syntax(int line, const std::string& msg) {
  fail(Errc::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

struct PortSpec {
  std::string node;
  int port;
};

PortSpec parse_port(const std::string& w, int line) {
  auto dot = w.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= w.size())
    syntax(line, "expected <node>.<port>, got '" + w + "'");
  PortSpec p;
  p.node = w.substr(0, dot);
  try {
    p.port = std::stoi(w.substr(dot + 1));
  } catch (const std::exception&) {
    syntax(line, "bad port number in '" + w + "'");
  }
  return p;
}

}  // namespace

PortGraph parse_glc(const std::string& text) {
  PortGraph g;
  std::map<std::string, NodeId> node_ids;
  std::map<std::string, LeafId> leaf_ids;

  auto node_ref = [&](const std::string& name, int line) -> NodeId {
    auto it = node_ids.find(name);
    if (it == node_ids.end())
      fail(Errc::UnknownNode,
           "line " + std::to_string(line) + ": undeclared node '" + name + "'");
    return it->second;
  };
  auto leaf_ref = [&](const std::string& name, LeafDir dir) -> LeafId {
    auto it = leaf_ids.find(name);
    if (it != leaf_ids.end()) return it->second;
    LeafId id = g.add_leaf(dir, name);
    leaf_ids[name] = id;
    return id;
  };

  for (const Tok& t : tokenize(text)) {
    const auto& w = t.words;
    if (w[0] == "node") {
      if (w.size() < 3) syntax(t.line, "node <id> <kind>");
      if (node_ids.count(w[1])) syntax(t.line, "duplicate node '" + w[1] + "'");
      GateKind kind;
      if (w[2] == "lambda") kind = GateKind::lambda();
      else if (w[2] == "app") kind = GateKind::app();
      else if (w[2] == "fanout") kind = GateKind::fanout();
      else if (w[2] == "term") kind = GateKind::term();
      else if (w[2] == "dil") {
        if (w.size() < 4) syntax(t.line, "dil needs a scale literal");
        kind = GateKind::dilation(GroupElem::parse(w[3]));
      } else {
        syntax(t.line, "unknown gate kind '" + w[2] + "'");
      }
      node_ids[w[1]] = g.add_gate(kind);
    } else if (w[0] == "edge") {
      if (w.size() != 4 || w[2] != "->") syntax(t.line, "edge a.p -> b.q");
      PortSpec a = parse_port(w[1], t.line);
      PortSpec b = parse_port(w[3], t.line);
      NodeId an = node_ref(a.node, t.line);
      NodeId bn = node_ref(b.node, t.line);
      g.connect(Endpoint::of_port(an, a.port), Endpoint::of_port(bn, b.port));
    } else if (w[0] == "in") {
      if (w.size() != 4 || w[2] != "->") syntax(t.line, "in leaf -> a.p");
      PortSpec b = parse_port(w[3], t.line);
      g.connect(Endpoint::of_leaf(leaf_ref(w[1], LeafDir::In)),
                Endpoint::of_port(node_ref(b.node, t.line), b.port));
    } else if (w[0] == "out") {
      if (w.size() != 4 || w[2] != "->") syntax(t.line, "out a.p -> leaf");
      PortSpec a = parse_port(w[1], t.line);
      g.connect(Endpoint::of_port(node_ref(a.node, t.line), a.port),
                Endpoint::of_leaf(leaf_ref(w[3], LeafDir::Out)));
    } else if (w[0] == "wire") {
      if (w.size() != 4 || w[2] != "->") syntax(t.line, "wire a -> b");
      LeafId a = leaf_ref(w[1], LeafDir::In);
      LeafId b = leaf_ref(w[3], LeafDir::Out);
      g.connect(Endpoint::of_leaf(a), Endpoint::of_leaf(b));
    } else if (w[0] == "loop") {
      if (w.size() != 2) syntax(t.line, "loop <count>");
      int n = 0;
      try {
        n = std::stoi(w[1]);
      } catch (const std::exception&) {
        syntax(t.line, "bad loop count");
      }
      if (n < 0) syntax(t.line, "loop count must be >= 0");
      g.add_loops(n);
    } else {
      syntax(t.line, "unknown directive '" + w[0] + "'");
    }
  }
  return g;
}

std::string emit_glc(const PortGraph& g, bool with_ids) {
  std::ostringstream os;
  std::map<std::string, int> label_uses;
  for (const Leaf& lf : g.leaves())
    if (!lf.label.empty()) label_uses[lf.label]++;
  auto leaf_name = [&](LeafId l) {
    const Leaf& lf = g.leaf(l);
    // labels double as text ids, so only unique ones survive the round trip
    if (lf.label.empty() || label_uses[lf.label] > 1)
      return "l" + std::to_string(lf.id);
    return lf.label;
  };
  for (const auto& [n, k] : g.nodes()) {
    os << "node n" << n << " ";
    switch (k.type) {
      case GateType::Lambda: os << "lambda"; break;
      case GateType::FanOut: os << "fanout"; break;
      case GateType::App: os << "app"; break;
      case GateType::Term: os << "term"; break;
      case GateType::Dilation: os << "dil " << k.scale.str(); break;
    }
    os << "\n";
  }
  // Leaf-incident edges first in declaration order so the parse re-creates
  // the same boundary, then the internal edges.
  for (const Leaf& lf : g.leaves()) {
    EdgeId eid = g.edge_at_leaf(lf.id);
    if (eid == 0) continue;
    const Edge& e = g.edge(eid);
    if (e.tail.is_leaf() && e.head.is_leaf()) {
      if (lf.dir == LeafDir::In) {
        os << "wire " << leaf_name(e.tail.leaf) << " -> "
           << leaf_name(e.head.leaf);
        if (with_ids) os << "  # e" << e.id;
        os << "\n";
      }
      continue;
    }
    if (lf.dir == LeafDir::In) {
      os << "in " << leaf_name(lf.id) << " -> n" << e.head.port.node << "."
         << e.head.port.port;
    } else {
      os << "out n" << e.tail.port.node << "." << e.tail.port.port << " -> "
         << leaf_name(lf.id);
    }
    if (with_ids) os << "  # e" << e.id;
    os << "\n";
  }
  for (const auto& [id, e] : g.edges()) {
    if (e.tail.is_leaf() || e.head.is_leaf()) continue;
    os << "edge n" << e.tail.port.node << "." << e.tail.port.port << " -> n"
       << e.head.port.node << "." << e.head.port.port;
    if (with_ids) os << "  # e" << id;
    os << "\n";
  }
  if (g.loops() > 0) os << "loop " << g.loops() << "\n";
  return os.str();
}

std::string to_dot(const PortGraph& g) {
  if (!g.is_valid()) fail(Errc::InvalidGraph, "to_dot on invalid graph");
  std::ostringstream os;
  os << "digraph glc {\n  rankdir=TB;\n";
  for (const auto& [n, k] : g.nodes()) {
    std::string label;
    switch (k.type) {
      case GateType::Lambda: label = "lambda"; break;
      case GateType::FanOut: label = "fanout"; break;
      case GateType::App: label = "app"; break;
      case GateType::Term: label = "term"; break;
      case GateType::Dilation: label = "dil " + k.scale.str(); break;
    }
    os << "  n" << n << " [label=\"" << label << "\"];\n";
  }
  for (const Leaf& lf : g.leaves()) {
    os << "  leaf" << lf.id << " [shape=plaintext,label=\""
       << (lf.dir == LeafDir::In ? "IN" : "OUT");
    if (!lf.label.empty()) os << " " << lf.label;
    os << "\"];\n";
  }
  auto name = [](const Endpoint& ep) {
    if (ep.is_port()) return "n" + std::to_string(ep.port.node);
    return "leaf" + std::to_string(ep.leaf);
  };
  for (const auto& [id, e] : g.edges()) {
    os << "  " << name(e.tail) << " -> " << name(e.head) << " [";
    if (e.tail.is_port()) os << "taillabel=\"" << e.tail.port.port << "\",";
    if (e.head.is_port()) os << "headlabel=\"" << e.head.port.port << "\",";
    os << "arrowsize=0.7];\n";
  }
  for (int i = 0; i < g.loops(); ++i) {
    os << "  loopmark" << i << " [shape=circle,label=\"loop\"];\n";
    os << "  loopmark" << i << " -> loopmark" << i << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace glc
