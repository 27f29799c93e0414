#include "glc/script.hpp"

#include <sstream>

#include "glc/error.hpp"

namespace glc {

std::string ScriptStep::text() const {
  std::ostringstream os;
  os << "apply " << move << " " << (forward ? "fwd" : "rev");
  if (!constraints.empty()) {
    os << " at";
    for (const auto& [k, v] : constraints) os << " " << k << "=" << v;
  }
  return os.str();
}

std::string MoveScript::text() const {
  std::ostringstream os;
  for (const auto& s : steps) os << s.text() << "\n";
  return os.str();
}

MoveScript parse_script(const std::string& text) {
  MoveScript out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> w;
    std::string word;
    while (ls >> word) w.push_back(word);
    if (w.empty()) continue;
    if (w[0] != "apply" || w.size() < 3)
      fail(Errc::SyntaxError,
           "line " + std::to_string(lineno) + ": apply <move> <fwd|rev> [at ...]");
    ScriptStep s;
    s.move = w[1];
    if (w[2] == "fwd") s.forward = true;
    else if (w[2] == "rev") s.forward = false;
    else
      fail(Errc::SyntaxError,
           "line " + std::to_string(lineno) + ": expected fwd or rev");
    size_t i = 3;
    if (i < w.size()) {
      if (w[i] != "at")
        fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": expected 'at'");
      for (++i; i < w.size(); ++i) {
        auto eq = w[i].find('=');
        if (eq == std::string::npos || eq == 0)
          fail(Errc::SyntaxError,
               "line " + std::to_string(lineno) + ": expected k=v, got '" + w[i] + "'");
        s.constraints[w[i].substr(0, eq)] = w[i].substr(eq + 1);
      }
    }
    out.steps.push_back(std::move(s));
  }
  return out;
}

ScriptStep step_from_binding(const Binding& b) {
  ScriptStep s;
  s.move = b.move;
  s.forward = b.forward;
  for (const auto& [k, v] : b.nodes) s.constraints[k] = "n" + std::to_string(v);
  for (const auto& [k, v] : b.edges) s.constraints[k] = "e" + std::to_string(v);
  for (const auto& [k, v] : b.arrows) s.constraints[k] = v.str();
  for (const auto& [k, v] : b.scales) s.constraints[k] = v.str();
  // a pair of coincident arrows has two cut orders, so variant 0 must be
  // pinned explicitly or the step would be ambiguous
  bool same_arrows = false;
  if (b.arrows.size() == 2) {
    auto it = b.arrows.begin();
    same_arrows = it->second == std::next(it)->second;
  }
  if (b.variant != 0 || same_arrows)
    s.constraints["variant"] = std::to_string(b.variant);
  return s;
}

MoveScript script_from_bindings(const std::vector<Binding>& bs) {
  MoveScript out;
  for (const Binding& b : bs) out.steps.push_back(step_from_binding(b));
  return out;
}

namespace {

bool parse_id(const std::string& v, char prefix, int* out) {
  std::string body = v;
  if (!v.empty() && v[0] == prefix) body = v.substr(1);
  try {
    size_t pos = 0;
    int x = std::stoi(body, &pos);
    if (pos != body.size()) return false;
    *out = x;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Binding resolve_step(const PortGraph& g, const ScriptStep& s, int step_index) {
  std::vector<Binding> cands = enumerate_redexes(g, s.move, s.forward);
  std::map<std::string, GroupElem> scale_overrides;
  for (const auto& [key, value] : s.constraints) {
    if (key == "variant") {
      int v = 0;
      if (!parse_id(value, '\0', &v))
        fail(Errc::SyntaxError, "bad variant '" + value + "'");
      std::erase_if(cands, [&](const Binding& b) { return b.variant != v; });
      continue;
    }
    bool is_scale = !cands.empty() ? cands.front().scales.count(key) > 0
                                   : key == "scale";
    if (is_scale) {
      scale_overrides[key] = GroupElem::parse(value);
      continue;
    }
    std::erase_if(cands, [&](const Binding& b) {
      if (auto it = b.nodes.find(key); it != b.nodes.end()) {
        int id;
        return !(parse_id(value, 'n', &id) && id == it->second);
      }
      if (auto it = b.edges.find(key); it != b.edges.end()) {
        int id;
        return !(parse_id(value, 'e', &id) && id == it->second);
      }
      if (auto it = b.arrows.find(key); it != b.arrows.end()) {
        if (value == "loop") return !it->second.is_loop;
        int id;
        return !(parse_id(value, 'e', &id) && !it->second.is_loop &&
                 id == it->second.edge);
      }
      return true;  // unknown role never matches
    });
  }
  if (cands.empty())
    fail(Errc::NoMatch, "step " + std::to_string(step_index) + " (" + s.move +
                            " " + (s.forward ? "fwd" : "rev") + "): no binding");
  if (cands.size() > 1)
    fail(Errc::AmbiguousAnchor,
         "step " + std::to_string(step_index) + " (" + s.move + "): " +
             std::to_string(cands.size()) + " bindings match");
  Binding b = cands.front();
  for (const auto& [k, v] : scale_overrides) b.scales[k] = v;
  return b;
}

std::pair<PortGraph, Trace> run_script(const PortGraph& g,
                                       const MoveScript& script) {
  PortGraph cur = g;
  Trace t;
  t.initial_canonical = cur.canonical_form();
  int idx = 0;
  for (const ScriptStep& s : script.steps) {
    ++idx;
    Binding b = resolve_step(cur, s, idx);
    ApplyResult r = apply_move(cur, b);
    cur = std::move(r.graph);
    t.steps.push_back({b, r.inverse, cur.canonical_form()});
  }
  return {std::move(cur), std::move(t)};
}

std::pair<PortGraph, Trace> run_bindings(const PortGraph& g,
                                         const std::vector<Binding>& bs) {
  PortGraph cur = g;
  Trace t;
  t.initial_canonical = cur.canonical_form();
  for (const Binding& b : bs) {
    ApplyResult r = apply_move(cur, b);
    cur = std::move(r.graph);
    t.steps.push_back({b, r.inverse, cur.canonical_form()});
  }
  return {std::move(cur), std::move(t)};
}

bool replay_matches(const PortGraph& initial, const Trace& t) {
  PortGraph cur = initial;
  if (cur.canonical_form() != t.initial_canonical) return false;
  for (const TraceStep& s : t.steps) {
    cur = apply_move(cur, s.binding).graph;
    if (cur.canonical_form() != s.canonical_after) return false;
  }
  return true;
}

std::map<std::string, int> Trace::counts() const {
  std::map<std::string, int> out;
  for (const TraceStep& s : steps) out[s.binding.move]++;
  return out;
}

int Trace::count(const std::string& move) const {
  auto c = counts();
  auto it = c.find(move);
  return it == c.end() ? 0 : it->second;
}

std::string Trace::text() const {
  std::ostringstream os;
  int i = 0;
  for (const TraceStep& s : steps) {
    os << ++i << ". " << s.binding.move << " "
       << (s.binding.forward ? "fwd" : "rev");
    std::string a = s.binding.anchor_text();
    if (!a.empty()) os << " at " << a;
    os << "\n";
  }
  return os.str();
}

Binding remap_binding(const Binding& b, const PortGraph& src,
                      const PortGraph& dst,
                      const std::map<NodeId, NodeId>& node_map) {
  Binding out = b;
  for (auto& [role, n] : out.nodes) {
    auto it = node_map.find(n);
    if (it == node_map.end()) fail(Errc::StaleBinding, "node not in iso map");
    n = it->second;
  }
  auto map_endpoint = [&](const Endpoint& ep) -> Endpoint {
    if (ep.is_port()) {
      auto it = node_map.find(ep.port.node);
      if (it == node_map.end()) fail(Errc::StaleBinding, "node not in iso map");
      return Endpoint::of_port(it->second, ep.port.port);
    }
    // Leaves correspond by boundary position.
    auto src_in = src.in_leaves();
    auto dst_in = dst.in_leaves();
    for (size_t i = 0; i < src_in.size(); ++i)
      if (src_in[i] == ep.leaf) return Endpoint::of_leaf(dst_in[i]);
    auto src_out = src.out_leaves();
    auto dst_out = dst.out_leaves();
    for (size_t i = 0; i < src_out.size(); ++i)
      if (src_out[i] == ep.leaf) return Endpoint::of_leaf(dst_out[i]);
    fail(Errc::StaleBinding, "leaf not found");
  };
  auto map_edge = [&](EdgeId e) -> EdgeId {
    const Edge& ed = src.edge(e);
    Endpoint t = map_endpoint(ed.tail);
    EdgeId out_e =
        t.is_port() ? dst.edge_at_port(t.port) : dst.edge_at_leaf(t.leaf);
    if (out_e == 0) fail(Errc::StaleBinding, "edge has no image");
    return out_e;
  };
  for (auto& [role, e] : out.edges) e = map_edge(e);
  for (auto& [role, a] : out.arrows)
    if (!a.is_loop) a.edge = map_edge(a.edge);
  return out;
}

std::vector<Binding> transport_bindings(const std::vector<Binding>& steps,
                                        const PortGraph& from,
                                        const PortGraph& onto) {
  PortGraph hx = from;
  PortGraph hg = onto;
  std::vector<Binding> out;
  for (const Binding& b : steps) {
    auto iso = find_isomorphism(hx, hg);
    if (!iso) fail(Errc::StaleBinding, "transport_bindings: graphs diverged");
    Binding bg = remap_binding(b, hx, hg, *iso);
    out.push_back(bg);
    hx = apply_move(hx, b).graph;
    hg = apply_move(hg, bg).graph;
  }
  return out;
}

MoveScript reverse_trace(const PortGraph& initial, const Trace& t,
                         const PortGraph& final_graph) {
  // Recompute the intermediate graphs.
  std::vector<PortGraph> states{initial};
  for (const TraceStep& s : t.steps)
    states.push_back(apply_move(states.back(), s.binding).graph);
  PortGraph h = final_graph;
  std::vector<Binding> out;
  for (int i = static_cast<int>(t.steps.size()) - 1; i >= 0; --i) {
    if (!t.steps[i].inverse)
      fail(Errc::DirectionNotAllowed, "trace step has no inverse");
    auto iso = find_isomorphism(states[i + 1], h);
    if (!iso) fail(Errc::StaleBinding, "reverse_trace: state drift");
    Binding b = remap_binding(*t.steps[i].inverse, states[i + 1], h, *iso);
    h = apply_move(h, b).graph;
    out.push_back(b);
  }
  return script_from_bindings(out);
}

}  // namespace glc
