#include "glc/emergent.hpp"

#include <deque>
#include <sstream>

#include "glc/error.hpp"

namespace glc {

// --- evaluation --------------------------------------------------------------

namespace {

// Edge-value dependencies: every edge is defined by the in-edges of the gate
// at its tail (with rational coefficients), or by a graph input.
struct EdgeDep {
  std::vector<std::pair<EdgeId, Rat>> terms;
  bool from_input = false;
  LeafId input = 0;
};

}  // namespace

Valuation evaluate(const PortGraph& g, const Valuation& inputs,
                   const std::map<std::string, Rat>& symbols) {
  if (!g.is_valid()) fail(Errc::InvalidGraph, "evaluate");
  size_t dim = 0;
  for (const auto& [l, v] : inputs) dim = v.size();
  for (LeafId l : g.in_leaves()) {
    auto it = inputs.find(l);
    if (it == inputs.end())
      fail(Errc::MissingInput, "IN leaf " + std::to_string(l));
    if (it->second.size() != dim)
      fail(Errc::BadArgument, "inconsistent input dimensions");
  }
  for (const auto& [n, k] : g.nodes())
    if (k.type == GateType::Lambda || k.type == GateType::App)
      fail(Errc::BadArgument, "gate outside the emergent sector");

  std::map<EdgeId, EdgeDep> deps;
  for (const auto& [id, e] : g.edges()) {
    EdgeDep d;
    if (e.tail.is_leaf()) {
      d.from_input = true;
      d.input = e.tail.leaf;
    } else {
      NodeId t = e.tail.port.node;
      const GateKind& k = g.gate(t);
      if (k.type == GateType::FanOut) {
        d.terms = {{g.edge_with_head({t, 1}), Rat(1)}};
      } else if (k.type == GateType::Dilation) {
        Rat s = k.scale.value(symbols);
        d.terms = {{g.edge_with_head({t, 1}), Rat(1) - s},
                   {g.edge_with_head({t, 2}), s}};
      } else {
        fail(Errc::BadArgument, "unexpected tail gate");
      }
    }
    deps[id] = std::move(d);
  }

  // Strongly connected components of the dependency relation (iterative
  // Tarjan), solved in reverse topological order. A feedback component is
  // solved as a small exact linear system: unique solutions are taken as-is,
  // a singular homogeneous component settles on the zero solution, and
  // anything else is rejected.
  std::map<EdgeId, int> index, low, comp_of;
  std::vector<EdgeId> stack;
  std::set<EdgeId> on_stack;
  std::vector<std::vector<EdgeId>> comps;
  int next_index = 0;
  for (const auto& [root, d0] : deps) {
    if (index.count(root)) continue;
    // explicit DFS stack: (edge, next-term position)
    std::vector<std::pair<EdgeId, size_t>> dfs{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack.insert(root);
    while (!dfs.empty()) {
      auto& [e, pos] = dfs.back();
      const auto& terms = deps.at(e).terms;
      if (pos < terms.size()) {
        EdgeId f = terms[pos].first;
        ++pos;
        if (!index.count(f)) {
          index[f] = low[f] = next_index++;
          stack.push_back(f);
          on_stack.insert(f);
          dfs.push_back({f, 0});
        } else if (on_stack.count(f)) {
          low[e] = std::min(low[e], index[f]);
        }
      } else {
        if (low[e] == index[e]) {
          std::vector<EdgeId> comp;
          while (true) {
            EdgeId f = stack.back();
            stack.pop_back();
            on_stack.erase(f);
            comp_of[f] = static_cast<int>(comps.size());
            comp.push_back(f);
            if (f == e) break;
          }
          comps.push_back(std::move(comp));
        }
        EdgeId finished = e;
        dfs.pop_back();
        if (!dfs.empty())
          low[dfs.back().first] =
              std::min(low[dfs.back().first], low[finished]);
      }
    }
  }

  std::map<EdgeId, VecQ> value;
  // Tarjan emits components in reverse topological order of dependencies:
  // a component's dependencies outside itself are already emitted.
  for (const auto& comp : comps) {
    std::set<EdgeId> in_comp(comp.begin(), comp.end());
    int n = static_cast<int>(comp.size());
    std::map<EdgeId, int> col;
    for (int i = 0; i < n; ++i) col[comp[i]] = i;
    bool self_dependent = false;
    for (EdgeId e : comp)
      for (const auto& [f, c] : deps.at(e).terms)
        if (in_comp.count(f)) self_dependent = true;
    if (n == 1 && !self_dependent) {
      EdgeId e = comp[0];
      const EdgeDep& d = deps.at(e);
      if (d.from_input) {
        value[e] = inputs.at(d.input);
      } else {
        VecQ v(dim, Rat(0));
        for (const auto& [f, c] : d.terms) v = v + c * value.at(f);
        value[e] = v;
      }
      continue;
    }
    // feedback component: x = A x + b with b from already-solved edges
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    std::vector<VecQ> b(n, VecQ(dim, Rat(0)));
    bool b_zero = true;
    for (int i = 0; i < n; ++i) {
      m[i][i] = Rat(1);
      const EdgeDep& d = deps.at(comp[i]);
      for (const auto& [f, c] : d.terms) {
        if (in_comp.count(f)) {
          m[i][col.at(f)] -= c;
        } else {
          b[i] = b[i] + c * value.at(f);
        }
      }
      for (const Rat& x : b[i])
        if (!x.is_zero()) b_zero = false;
    }
    // Gaussian elimination with exact arithmetic
    std::vector<VecQ> sol(n, VecQ(dim, Rat(0)));
    int row = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < n && row < n; ++c) {
      int p = -1;
      for (int r = row; r < n; ++r)
        if (!m[r][c].is_zero()) {
          p = r;
          break;
        }
      if (p < 0) continue;
      std::swap(m[p], m[row]);
      std::swap(b[p], b[row]);
      Rat inv = m[row][c].inverse();
      for (int cc = 0; cc < n; ++cc) m[row][cc] = m[row][cc] * inv;
      b[row] = inv * b[row];
      for (int r = 0; r < n; ++r) {
        if (r == row || m[r][c].is_zero()) continue;
        Rat f = m[r][c];
        for (int cc = 0; cc < n; ++cc) m[r][cc] = m[r][cc] - f * m[row][cc];
        b[r] = b[r] - f * b[row];
      }
      pivot_col.push_back(c);
      ++row;
    }
    if (row < n) {
      // singular: only the homogeneous case has a canonical (zero) solution
      if (!b_zero) fail(Errc::CyclicGraph, "underdetermined feedback");
      for (int r = row; r < n; ++r)
        for (const Rat& x : b[r])
          if (!x.is_zero()) fail(Errc::CyclicGraph, "inconsistent feedback");
      for (int i = 0; i < n; ++i) value[comp[i]] = VecQ(dim, Rat(0));
    } else {
      for (int r = 0; r < n; ++r) sol[pivot_col[r]] = b[r];
      for (int i = 0; i < n; ++i) value[comp[i]] = sol[i];
    }
  }
  Valuation out;
  for (LeafId l : g.out_leaves()) out[l] = value.at(g.edge_at_leaf(l));
  return out;
}

bool in_emer_sector(const PortGraph& g, const std::set<std::string>& symbols) {
  if (!g.is_valid()) fail(Errc::InvalidGraph, "in_emer_sector");
  for (const auto& [n, k] : g.nodes()) {
    switch (k.type) {
      case GateType::Lambda:
      case GateType::App:
        return false;
      case GateType::Dilation:
        for (const auto& [sym, exp] : k.scale.exponents())
          if (!symbols.count(sym)) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

// --- macros -------------------------------------------------------------------

EmerMacro build_emer_macro(EmerKind kind, const GroupElem& scale) {
  EmerMacro m{kind, scale, {}};
  PortGraph& g = m.macro.graph;
  GroupElem inv = scale.inverse();
  LeafId x = g.add_leaf(LeafDir::In, "x");
  LeafId u = g.add_leaf(LeafDir::In, "u");
  m.macro.roles["x"] = x;
  m.macro.roles["u"] = u;
  NodeId fan = g.add_gate(GateKind::fanout());
  g.connect(Endpoint::of_leaf(x), Endpoint::of_port(fan, 1));
  switch (kind) {
    case EmerKind::Sum: {
      LeafId v = g.add_leaf(LeafDir::In, "v");
      m.macro.roles["v"] = v;
      NodeId d1 = g.add_gate(GateKind::dilation(scale));
      NodeId d2 = g.add_gate(GateKind::dilation(scale));
      NodeId dinv = g.add_gate(GateKind::dilation(inv));
      g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(d1, 1));
      g.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(dinv, 1));
      g.connect(Endpoint::of_leaf(u), Endpoint::of_port(d1, 2));
      g.connect(Endpoint::of_port(d1, 3), Endpoint::of_port(d2, 1));
      g.connect(Endpoint::of_leaf(v), Endpoint::of_port(d2, 2));
      g.connect(Endpoint::of_port(d2, 3), Endpoint::of_port(dinv, 2));
      LeafId out = g.add_leaf(LeafDir::Out, "out");
      g.connect(Endpoint::of_port(dinv, 3), Endpoint::of_leaf(out));
      m.macro.roles["out"] = out;
      break;
    }
    case EmerKind::Difference: {
      LeafId v = g.add_leaf(LeafDir::In, "v");
      m.macro.roles["v"] = v;
      NodeId du = g.add_gate(GateKind::dilation(scale));
      NodeId dv = g.add_gate(GateKind::dilation(scale));
      NodeId dinv = g.add_gate(GateKind::dilation(inv));
      g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(du, 1));
      g.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(dv, 1));
      g.connect(Endpoint::of_leaf(u), Endpoint::of_port(du, 2));
      g.connect(Endpoint::of_leaf(v), Endpoint::of_port(dv, 2));
      g.connect(Endpoint::of_port(du, 3), Endpoint::of_port(dinv, 1));
      g.connect(Endpoint::of_port(dv, 3), Endpoint::of_port(dinv, 2));
      LeafId out = g.add_leaf(LeafDir::Out, "out");
      g.connect(Endpoint::of_port(dinv, 3), Endpoint::of_leaf(out));
      m.macro.roles["out"] = out;
      break;
    }
    case EmerKind::Inverse: {
      NodeId d1 = g.add_gate(GateKind::dilation(scale));
      NodeId dinv = g.add_gate(GateKind::dilation(inv));
      g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(d1, 1));
      g.connect(Endpoint::of_leaf(u), Endpoint::of_port(d1, 2));
      g.connect(Endpoint::of_port(d1, 3), Endpoint::of_port(dinv, 1));
      g.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(dinv, 2));
      LeafId out = g.add_leaf(LeafDir::Out, "out");
      g.connect(Endpoint::of_port(dinv, 3), Endpoint::of_leaf(out));
      m.macro.roles["out"] = out;
      break;
    }
  }
  return m;
}

DeltaSharedCase delta_shared_case(const GroupElem& scale) {
  DeltaSharedCase c;
  PortGraph& g = c.graph;
  GroupElem inv = scale.inverse();
  LeafId x = g.add_leaf(LeafDir::In, "x");
  LeafId u = g.add_leaf(LeafDir::In, "u");
  NodeId share = g.add_gate(GateKind::fanout());
  NodeId fan = g.add_gate(GateKind::fanout());
  NodeId du = g.add_gate(GateKind::dilation(scale));
  NodeId dv = g.add_gate(GateKind::dilation(scale));
  NodeId dinv = g.add_gate(GateKind::dilation(inv));
  g.connect(Endpoint::of_leaf(x), Endpoint::of_port(share, 1));
  g.connect(Endpoint::of_port(share, 2), Endpoint::of_port(fan, 1));
  g.connect(Endpoint::of_port(share, 3), Endpoint::of_port(dv, 2));
  g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(du, 1));
  g.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(dv, 1));
  g.connect(Endpoint::of_leaf(u), Endpoint::of_port(du, 2));
  g.connect(Endpoint::of_port(du, 3), Endpoint::of_port(dinv, 1));
  g.connect(Endpoint::of_port(dv, 3), Endpoint::of_port(dinv, 2));
  LeafId out = g.add_leaf(LeafDir::Out, "out");
  g.connect(Endpoint::of_port(dinv, 3), Endpoint::of_leaf(out));

  ScriptStep s1;
  s1.move = "co_assoc";
  s1.forward = true;
  s1.constraints["top"] = "n" + std::to_string(share);
  s1.constraints["bottom"] = "n" + std::to_string(fan);
  ScriptStep s2;
  s2.move = "r1a";
  s2.forward = true;
  s2.constraints["dil"] = "n" + std::to_string(dv);
  c.script.steps = {s1, s2};
  c.expected = build_emer_macro(EmerKind::Inverse, scale).macro.graph;
  return c;
}

// --- randomized soundness ------------------------------------------------------

Rat random_positive_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 9), den(1, 9);
  return Rat(num(rng), den(rng));
}

Rat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 6);
  return Rat(num(rng), den(rng));
}

VecQ random_vec(std::mt19937_64& rng, int dim) {
  VecQ v(dim);
  for (int i = 0; i < dim; ++i) v[i] = random_rat(rng);
  return v;
}

namespace {

// Random acyclic emergent feeding/draining context around a planted pattern.
struct HostBuilder {
  PortGraph g;
  std::mt19937_64& rng;
  std::vector<Endpoint> spares;  // unused fan-out branches

  explicit HostBuilder(std::mt19937_64& r) : rng(r) {}

  Endpoint make_value(int depth) {
    std::uniform_int_distribution<int> d(0, 3);
    int roll = depth <= 0 ? 0 : d(rng);
    if (roll == 3 && !spares.empty()) {
      Endpoint e = spares.back();
      spares.pop_back();
      return e;
    }
    if (roll == 0) {
      LeafId l = g.add_leaf(LeafDir::In);
      return Endpoint::of_leaf(l);
    }
    if (roll == 1) {
      NodeId y = g.add_gate(GateKind::fanout());
      g.connect(make_value(depth - 1), Endpoint::of_port(y, 1));
      spares.push_back(Endpoint::of_port(y, 3));
      return Endpoint::of_port(y, 2);
    }
    NodeId d2 = g.add_gate(GateKind::dilation(
        GroupElem(random_positive_rat(rng))));
    g.connect(make_value(depth - 1), Endpoint::of_port(d2, 1));
    g.connect(make_value(depth - 1), Endpoint::of_port(d2, 2));
    return Endpoint::of_port(d2, 3);
  }

  void drain(Endpoint source) {
    std::uniform_int_distribution<int> d(0, 2);
    if (d(rng) == 0) {
      NodeId dd = g.add_gate(GateKind::dilation(
          GroupElem(random_positive_rat(rng))));
      g.connect(source, Endpoint::of_port(dd, 2));
      g.connect(make_value(1), Endpoint::of_port(dd, 1));
      source = Endpoint::of_port(dd, 3);
    }
    LeafId l = g.add_leaf(LeafDir::Out);
    g.connect(source, Endpoint::of_leaf(l));
  }

  void finish() {
    for (const Endpoint& e : spares) {
      LeafId l = g.add_leaf(LeafDir::Out);
      g.connect(e, Endpoint::of_leaf(l));
    }
    spares.clear();
  }
};

struct Plant {
  PortGraph host;
  Binding binding;
};

Plant plant_move(const std::string& move, std::mt19937_64& rng) {
  HostBuilder hb(rng);
  PortGraph& g = hb.g;
  Binding b{move, true};
  GroupElem s1(random_positive_rat(rng));
  GroupElem s2(random_positive_rat(rng));
  auto in = [&](Endpoint sink) { g.connect(hb.make_value(2), sink); };
  if (move == "co_assoc" || move == "co_comm") {
    NodeId top = g.add_gate(GateKind::fanout());
    in(Endpoint::of_port(top, 1));
    if (move == "co_assoc") {
      NodeId bot = g.add_gate(GateKind::fanout());
      g.connect(Endpoint::of_port(top, 2), Endpoint::of_port(bot, 1));
      hb.drain(Endpoint::of_port(bot, 2));
      hb.drain(Endpoint::of_port(bot, 3));
      hb.drain(Endpoint::of_port(top, 3));
      b.nodes = {{"top", top}, {"bottom", bot}};
    } else {
      hb.drain(Endpoint::of_port(top, 2));
      hb.drain(Endpoint::of_port(top, 3));
      b.nodes = {{"fan", top}};
    }
  } else if (move == "r1a") {
    NodeId fan = g.add_gate(GateKind::fanout());
    NodeId dil = g.add_gate(GateKind::dilation(s1));
    in(Endpoint::of_port(fan, 1));
    g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(dil, 1));
    g.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(dil, 2));
    hb.drain(Endpoint::of_port(dil, 3));
    b.nodes = {{"fan", fan}, {"dil", dil}};
  } else if (move == "r1b") {
    NodeId fan = g.add_gate(GateKind::fanout());
    NodeId dil = g.add_gate(GateKind::dilation(s1));
    in(Endpoint::of_port(dil, 2));
    g.connect(Endpoint::of_port(dil, 3), Endpoint::of_port(fan, 1));
    g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(dil, 1));
    hb.drain(Endpoint::of_port(fan, 3));
    b.nodes = {{"fan", fan}, {"dil", dil}};
  } else if (move == "r2") {
    NodeId fan = g.add_gate(GateKind::fanout());
    NodeId outer = g.add_gate(GateKind::dilation(s1));
    NodeId inner = g.add_gate(GateKind::dilation(s2));
    in(Endpoint::of_port(fan, 1));
    g.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(outer, 1));
    g.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(inner, 1));
    in(Endpoint::of_port(inner, 2));
    g.connect(Endpoint::of_port(inner, 3), Endpoint::of_port(outer, 2));
    hb.drain(Endpoint::of_port(outer, 3));
    b.nodes = {{"fan", fan}, {"outer", outer}, {"inner", inner}};
  } else if (move == "ext2") {
    NodeId dil = g.add_gate(GateKind::dilation(GroupElem::identity()));
    in(Endpoint::of_port(dil, 1));
    in(Endpoint::of_port(dil, 2));
    hb.drain(Endpoint::of_port(dil, 3));
    b.nodes = {{"dil", dil}};
  } else if (move == "prune_fanout_2" || move == "prune_fanout_3") {
    NodeId fan = g.add_gate(GateKind::fanout());
    NodeId t = g.add_gate(GateKind::term());
    int branch = move == "prune_fanout_2" ? 2 : 3;
    in(Endpoint::of_port(fan, 1));
    g.connect(Endpoint::of_port(fan, branch), Endpoint::of_port(t, 1));
    hb.drain(Endpoint::of_port(fan, branch == 2 ? 3 : 2));
    b.nodes = {{"fan", fan}, {"term", t}};
  } else if (move == "prune_dil") {
    NodeId dil = g.add_gate(GateKind::dilation(s1));
    NodeId t = g.add_gate(GateKind::term());
    in(Endpoint::of_port(dil, 1));
    in(Endpoint::of_port(dil, 2));
    g.connect(Endpoint::of_port(dil, 3), Endpoint::of_port(t, 1));
    b.nodes = {{"dil", dil}, {"term", t}};
  } else if (move == "global_prune") {
    NodeId y = g.add_gate(GateKind::fanout());
    NodeId t = g.add_gate(GateKind::term());
    g.connect(Endpoint::of_port(y, 2), Endpoint::of_port(y, 1));
    g.connect(Endpoint::of_port(y, 3), Endpoint::of_port(t, 1));
    b.nodes = {{"term", t}};
  } else if (move == "global_fan_out") {
    NodeId closed = g.add_gate(GateKind::fanout());
    NodeId fan = g.add_gate(GateKind::fanout());
    g.connect(Endpoint::of_port(closed, 2), Endpoint::of_port(closed, 1));
    g.connect(Endpoint::of_port(closed, 3), Endpoint::of_port(fan, 1));
    hb.drain(Endpoint::of_port(fan, 2));
    hb.drain(Endpoint::of_port(fan, 3));
    b.nodes = {{"fan", fan}};
  } else if (move == "loop_add" || move == "loop_remove") {
    if (move == "loop_remove") g.add_loops(1);
    hb.drain(hb.make_value(1));
  } else if (move == "bad_absorb") {
    NodeId dil = g.add_gate(GateKind::dilation(s1));
    in(Endpoint::of_port(dil, 1));
    in(Endpoint::of_port(dil, 2));
    hb.drain(Endpoint::of_port(dil, 3));
    b.nodes = {{"dil", dil}};
  } else {
    fail(Errc::UnknownMove, move);
  }
  hb.finish();
  return {std::move(g), std::move(b)};
}

std::string valuation_text(const Valuation& v) {
  std::ostringstream os;
  for (const auto& [l, vec] : v) {
    os << "l" << l << "=(";
    for (size_t i = 0; i < vec.size(); ++i)
      os << (i ? "," : "") << vec[i].str();
    os << ") ";
  }
  return os.str();
}

}  // namespace

std::vector<std::string> emergent_sound_moves() {
  return {"co_assoc", "co_comm", "r1a",  "r1b",
          "r2",       "ext2",    "prune_fanout_2", "prune_fanout_3",
          "prune_dil", "global_prune", "global_fan_out", "loop_add",
          "loop_remove"};
}

SoundnessReport check_move_soundness(const std::string& move, int trials,
                                     int dim, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SoundnessReport rep;
  rep.move = move;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Plant p = plant_move(move, rng);
    Valuation inputs;
    for (LeafId l : p.host.in_leaves()) inputs[l] = random_vec(rng, dim);
    Valuation before = evaluate(p.host, inputs);
    PortGraph after = apply_move(p.host, p.binding).graph;
    Valuation after_v = evaluate(after, inputs);
    bool ok = true;
    for (const auto& [l, v] : after_v) {
      auto it = before.find(l);
      if (it == before.end() || !(it->second == v)) ok = false;
    }
    if (after_v.size() != before.size()) ok = false;
    if (!ok) {
      rep.failures++;
      if (rep.first_counterexample.empty())
        rep.first_counterexample = "trial " + std::to_string(t) +
                                   ": before " + valuation_text(before) +
                                   "after " + valuation_text(after_v);
    }
  }
  return rep;
}

std::string SoundnessReport::text() const {
  std::ostringstream os;
  os << move << " trials=" << trials << " failures=" << failures;
  if (!first_counterexample.empty()) os << " first: " << first_counterexample;
  return os.str();
}

VecQ finite_difference(const ModelFn& f, const VecQ& x, const Rat& eps,
                       const VecQ& u) {
  if (eps.is_zero()) fail(Errc::DivisionByZeroScale, "finite_difference");
  VecQ fx = f(x);
  VecQ shifted = f(x + eps * (u - x));
  return fx + eps.inverse() * (shifted - fx);
}

ComputableResult is_computable_instance(const PortGraph& g,
                                        const std::set<std::string>& symbols,
                                        const std::string& scale_symbol,
                                        int max_depth, long max_states) {
  auto ins = g.in_leaves();
  auto outs = g.out_leaves();
  if (ins.size() > 1 || outs.size() != 1)
    fail(Errc::RoleMismatch, "expected at most one input and one output");
  GroupElem a = GroupElem::symbol(scale_symbol);
  PortGraph conj;
  LeafId x = conj.add_leaf(LeafDir::In, "x");
  auto maps = conj.absorb(g);
  NodeId post = conj.add_gate(GateKind::dilation(a.inverse()));
  LeafId g_out = maps.leaves.at(outs.front());
  EdgeId oe = conj.edge_at_leaf(g_out);
  conj.retarget_head(oe, Endpoint::of_port(post, 2));
  conj.remove_leaf(g_out);
  if (ins.empty()) {
    conj.connect(Endpoint::of_leaf(x), Endpoint::of_port(post, 1));
  } else {
    NodeId fan = conj.add_gate(GateKind::fanout());
    NodeId pre = conj.add_gate(GateKind::dilation(a));
    conj.connect(Endpoint::of_leaf(x), Endpoint::of_port(fan, 1));
    conj.connect(Endpoint::of_port(fan, 2), Endpoint::of_port(post, 1));
    conj.connect(Endpoint::of_port(fan, 3), Endpoint::of_port(pre, 1));
    LeafId u = conj.add_leaf(LeafDir::In, "u");
    conj.connect(Endpoint::of_leaf(u), Endpoint::of_port(pre, 2));
    LeafId g_in = maps.leaves.at(ins.front());
    EdgeId ie = conj.edge_at_leaf(g_in);
    conj.retarget_tail(ie, Endpoint::of_port(pre, 3));
    conj.remove_leaf(g_in);
  }
  LeafId out = conj.add_leaf(LeafDir::Out, "out");
  conj.connect(Endpoint::of_port(post, 3), Endpoint::of_leaf(out));

  // Breadth-first over the full move set until an emergent-sector graph.
  std::set<std::string> syms = symbols;
  syms.insert(scale_symbol);
  std::vector<std::string> moves{"beta", "r2",   "ext2",          "r1a",
                                 "r1b",  "ext1", "co_assoc",      "co_comm",
                                 "prune_fanout_2", "prune_fanout_3",
                                 "prune_app", "prune_dil", "global_prune",
                                 "global_fan_out", "loop_remove"};
  struct State {
    PortGraph g;
    std::vector<Binding> path;
    int depth;
  };
  std::deque<State> queue;
  std::set<std::string> seen{conj.canonical_form()};
  ComputableResult res{ComputableVerdict::UnknownWithinDepth, {}, 0};
  if (in_emer_sector(conj, syms)) {
    res.verdict = ComputableVerdict::Yes;
    return res;
  }
  queue.push_back({conj, {}, 0});
  bool truncated = false;
  while (!queue.empty()) {
    State st = std::move(queue.front());
    queue.pop_front();
    if (st.depth >= max_depth) {
      truncated = true;
      continue;
    }
    for (const std::string& mv : moves) {
      const Move& info = move_info(mv);
      for (int dir = 0; dir < (info.bidirectional ? 2 : 1); ++dir) {
        for (const Binding& b : enumerate_redexes(st.g, mv, dir == 0)) {
          PortGraph next = apply_move(st.g, b).graph;
          std::string key = next.canonical_form();
          if (!seen.insert(key).second) continue;
          res.states++;
          std::vector<Binding> path = st.path;
          path.push_back(b);
          if (in_emer_sector(next, syms)) {
            res.verdict = ComputableVerdict::Yes;
            res.witness = script_from_bindings(path);
            return res;
          }
          if (res.states >= max_states) {
            res.verdict = ComputableVerdict::UnknownWithinDepth;
            return res;
          }
          queue.push_back({std::move(next), std::move(path), st.depth + 1});
        }
      }
    }
  }
  res.verdict = truncated ? ComputableVerdict::UnknownWithinDepth
                          : ComputableVerdict::No;
  return res;
}

}  // namespace glc
