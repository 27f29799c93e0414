#include "glc/tangle.hpp"

#include <algorithm>
#include <sstream>

#include "glc/error.hpp"

namespace glc {

bool role_is_sink(EndRole r) {
  return r == EndRole::UnderIn || r == EndRole::OverIn;
}

bool TEnd::operator==(const TEnd& o) const {
  if (open != o.open) return false;
  return open ? open_id == o.open_id
              : crossing == o.crossing && role == o.role;
}

bool TEnd::operator<(const TEnd& o) const {
  if (open != o.open) return open < o.open;
  if (open) return open_id < o.open_id;
  if (crossing != o.crossing) return crossing < o.crossing;
  return static_cast<int>(role) < static_cast<int>(o.role);
}

void TangleDiagram::check() const {
  std::map<std::string, int> uses;
  auto key = [](const TEnd& e) {
    if (e.open) return "o" + std::to_string(e.open_id);
    return "c" + std::to_string(e.crossing) + "." +
           std::to_string(static_cast<int>(e.role));
  };
  for (const auto& [src, dst] : arcs) {
    if (src.open) {
      bool ok = false;
      for (const auto& [id, in] : opens)
        if (id == src.open_id && in) ok = true;
      if (!ok) fail(Errc::InvalidDiagram, "arc source is not an IN endpoint");
    } else {
      if (!crossings.count(src.crossing))
        fail(Errc::InvalidDiagram, "arc source on missing crossing");
      if (role_is_sink(src.role))
        fail(Errc::InvalidDiagram, "arc source on an in-end");
    }
    if (dst.open) {
      bool ok = false;
      for (const auto& [id, in] : opens)
        if (id == dst.open_id && !in) ok = true;
      if (!ok) fail(Errc::InvalidDiagram, "arc sink is not an OUT endpoint");
    } else {
      if (!crossings.count(dst.crossing))
        fail(Errc::InvalidDiagram, "arc sink on missing crossing");
      if (!role_is_sink(dst.role))
        fail(Errc::InvalidDiagram, "arc sink on an out-end");
    }
    uses[key(src)]++;
    uses[key(dst)]++;
  }
  for (const auto& [c, sign] : crossings) {
    if (sign != 1 && sign != -1) fail(Errc::InvalidDiagram, "bad sign");
    for (EndRole r : {EndRole::UnderIn, EndRole::OverIn, EndRole::UnderOut,
                      EndRole::OverOut})
      if (uses[key(TEnd::at(c, r))] != 1)
        fail(Errc::InvalidDiagram,
             "crossing " + std::to_string(c) + " end not covered once");
  }
  for (const auto& [id, in] : opens)
    if (uses[key(TEnd::boundary(id))] != 1)
      fail(Errc::InvalidDiagram, "open end " + std::to_string(id));
  if (loops < 0) fail(Errc::InvalidDiagram, "negative loops");
}

namespace {

int arc_with_sink(const TangleDiagram& t, const TEnd& sink) {
  for (size_t i = 0; i < t.arcs.size(); ++i)
    if (t.arcs[i].second == sink) return static_cast<int>(i);
  fail(Errc::InvalidDiagram, "no arc into end");
}

int arc_with_source(const TangleDiagram& t, const TEnd& src) {
  for (size_t i = 0; i < t.arcs.size(); ++i)
    if (t.arcs[i].first == src) return static_cast<int>(i);
  fail(Errc::InvalidDiagram, "no arc out of end");
}

void join_arcs(TangleDiagram& t, const TEnd& sink, const TEnd& source) {
  int a = arc_with_sink(t, sink);
  int b = arc_with_source(t, source);
  if (a == b) {
    t.arcs.erase(t.arcs.begin() + a);
    t.loops += 1;
    return;
  }
  TEnd new_src = t.arcs[a].first;
  TEnd new_dst = t.arcs[b].second;
  std::vector<std::pair<TEnd, TEnd>> kept;
  for (size_t i = 0; i < t.arcs.size(); ++i)
    if (static_cast<int>(i) != a && static_cast<int>(i) != b)
      kept.push_back(t.arcs[i]);
  kept.push_back({new_src, new_dst});
  t.arcs = std::move(kept);
}

}  // namespace

TangleDiagram splice(const TangleDiagram& t, int crossing) {
  if (!t.crossings.count(crossing))
    fail(Errc::UnknownCrossing, "crossing " + std::to_string(crossing));
  TangleDiagram out = t;
  join_arcs(out, TEnd::at(crossing, EndRole::UnderIn),
            TEnd::at(crossing, EndRole::OverOut));
  join_arcs(out, TEnd::at(crossing, EndRole::OverIn),
            TEnd::at(crossing, EndRole::UnderOut));
  out.crossings.erase(crossing);
  return out;
}

TangleDiagram loop_move(const TangleDiagram& t, bool add) {
  TangleDiagram out = t;
  if (add) {
    out.loops += 1;
  } else {
    if (out.loops < 1) fail(Errc::NoLoop, "no loop to remove");
    out.loops -= 1;
  }
  return out;
}

ReducedForm reduced(const TangleDiagram& t) {
  t.check();
  TangleDiagram cur = t;
  std::vector<int> ids;
  for (const auto& [c, s] : cur.crossings) ids.push_back(c);
  for (int c : ids) cur = splice(cur, c);
  ReducedForm r;
  for (const auto& [src, dst] : cur.arcs) {
    if (!src.open || !dst.open)
      fail(Errc::InvalidDiagram, "unspliced ends remain");
    r.matching[src.open_id] = dst.open_id;
  }
  return r;
}

std::string ReducedForm::str() const {
  std::ostringstream os;
  for (const auto& [a, b] : matching) os << a << "->" << b << " ";
  return os.str();
}

// --- translation ---------------------------------------------------------------

EmergentWiring emergent_wiring() {
  // Frozen by the calibration sweep: the over strand continues on branch 3,
  // its copy feeds the dilation base, positive crossings use the scale as-is.
  return {3, 1, true};
}

namespace {

Endpoint lambda_end(const std::map<int, std::pair<NodeId, NodeId>>& blocks,
                    const TEnd& e) {
  auto [lam, app] = blocks.at(e.crossing);
  switch (e.role) {
    case EndRole::UnderIn: return Endpoint::of_port(lam, 1);
    case EndRole::UnderOut: return Endpoint::of_port(lam, 2);
    case EndRole::OverIn: return Endpoint::of_port(app, 2);
    case EndRole::OverOut: return Endpoint::of_port(app, 3);
  }
  fail(Errc::InvalidDiagram, "bad end");
}

Endpoint emergent_end(const std::map<int, std::pair<NodeId, NodeId>>& blocks,
                      const EmergentWiring& w, const TEnd& e) {
  auto [fan, dil] = blocks.at(e.crossing);
  int under_port = w.copy_port == 1 ? 2 : 1;
  switch (e.role) {
    case EndRole::OverIn: return Endpoint::of_port(fan, 1);
    case EndRole::OverOut: return Endpoint::of_port(fan, w.over_out_branch);
    case EndRole::UnderIn: return Endpoint::of_port(dil, under_port);
    case EndRole::UnderOut: return Endpoint::of_port(dil, 3);
  }
  fail(Errc::InvalidDiagram, "bad end");
}

Translation translate_with(const TangleDiagram& t, const CrossingStyle& style,
                           const EmergentWiring& w) {
  t.check();
  Translation out;
  PortGraph& g = out.graph;
  for (const auto& [c, sign] : t.crossings) {
    if (style.kind == CrossingStyle::Kind::Lambda) {
      NodeId lam = g.add_gate(GateKind::lambda());
      NodeId app = g.add_gate(GateKind::app());
      g.connect(Endpoint::of_port(lam, 3), Endpoint::of_port(app, 1));
      out.blocks[c] = {lam, app};
    } else {
      bool direct = (sign > 0) == w.positive_direct;
      GroupElem s = direct ? style.scale : style.scale.inverse();
      NodeId fan = g.add_gate(GateKind::fanout());
      NodeId dil = g.add_gate(GateKind::dilation(s));
      g.connect(Endpoint::of_port(fan, w.over_out_branch == 2 ? 3 : 2),
                Endpoint::of_port(dil, w.copy_port));
      out.blocks[c] = {fan, dil};
    }
  }
  std::map<int, LeafId> leaf_of_open;
  for (const auto& [id, is_in] : t.opens)
    leaf_of_open[id] = g.add_leaf(is_in ? LeafDir::In : LeafDir::Out,
                                  "p" + std::to_string(id));
  auto endpoint = [&](const TEnd& e) -> Endpoint {
    if (e.open) return Endpoint::of_leaf(leaf_of_open.at(e.open_id));
    return style.kind == CrossingStyle::Kind::Lambda
               ? lambda_end(out.blocks, e)
               : emergent_end(out.blocks, w, e);
  };
  for (const auto& [src, dst] : t.arcs) g.connect(endpoint(src), endpoint(dst));
  g.add_loops(t.loops);
  return out;
}

}  // namespace

Translation translate_full(const TangleDiagram& t, const CrossingStyle& style) {
  return translate_with(t, style, emergent_wiring());
}

PortGraph translate(const TangleDiagram& t, const CrossingStyle& style) {
  return translate_full(t, style).graph;
}

// --- the sixteen oriented moves --------------------------------------------------

namespace {

TangleDiagram strand_diagram() {
  TangleDiagram t;
  t.opens = {{1, true}, {2, false}};
  t.arcs = {{TEnd::boundary(1), TEnd::boundary(2)}};
  return t;
}

TangleDiagram r1_lhs(bool over_first, int sign) {
  TangleDiagram t;
  t.opens = {{1, true}, {2, false}};
  t.crossings[1] = sign;
  if (over_first) {
    t.arcs = {{TEnd::boundary(1), TEnd::at(1, EndRole::OverIn)},
              {TEnd::at(1, EndRole::OverOut), TEnd::at(1, EndRole::UnderIn)},
              {TEnd::at(1, EndRole::UnderOut), TEnd::boundary(2)}};
  } else {
    t.arcs = {{TEnd::boundary(1), TEnd::at(1, EndRole::UnderIn)},
              {TEnd::at(1, EndRole::UnderOut), TEnd::at(1, EndRole::OverIn)},
              {TEnd::at(1, EndRole::OverOut), TEnd::boundary(2)}};
  }
  return t;
}

TangleDiagram r2_rhs() {
  TangleDiagram t;
  t.opens = {{1, true}, {2, true}, {3, false}, {4, false}};
  t.arcs = {{TEnd::boundary(1), TEnd::boundary(3)},
            {TEnd::boundary(2), TEnd::boundary(4)}};
  return t;
}

TangleDiagram r2_lhs(bool parallel, bool p_over) {
  TangleDiagram t;
  t.opens = {{1, true}, {2, true}, {3, false}, {4, false}};
  // Q runs 1 -> 3, P (the poking strand) runs 2 -> 4.
  EndRole p_in = p_over ? EndRole::OverIn : EndRole::UnderIn;
  EndRole p_out = p_over ? EndRole::OverOut : EndRole::UnderOut;
  EndRole q_in = p_over ? EndRole::UnderIn : EndRole::OverIn;
  EndRole q_out = p_over ? EndRole::UnderOut : EndRole::OverOut;
  if (parallel) {
    t.crossings[1] = p_over ? -1 : 1;
    t.crossings[2] = p_over ? 1 : -1;
    t.arcs = {{TEnd::boundary(1), TEnd::at(1, q_in)},
              {TEnd::at(1, q_out), TEnd::at(2, q_in)},
              {TEnd::at(2, q_out), TEnd::boundary(3)},
              {TEnd::boundary(2), TEnd::at(1, p_in)},
              {TEnd::at(1, p_out), TEnd::at(2, p_in)},
              {TEnd::at(2, p_out), TEnd::boundary(4)}};
  } else {
    t.crossings[1] = p_over ? 1 : -1;
    t.crossings[2] = p_over ? -1 : 1;
    t.arcs = {{TEnd::boundary(1), TEnd::at(1, q_in)},
              {TEnd::at(1, q_out), TEnd::at(2, q_in)},
              {TEnd::at(2, q_out), TEnd::boundary(3)},
              {TEnd::boundary(2), TEnd::at(2, p_in)},
              {TEnd::at(2, p_out), TEnd::at(1, p_in)},
              {TEnd::at(1, p_out), TEnd::boundary(4)}};
  }
  return t;
}

// Braid-form triangle move. Strand si runs between bottom position i and top
// position 4-i; pairwise the lower-numbered strand passes over.
TangleDiagram r3_side(bool lhs, const std::array<bool, 3>& up) {
  struct Visit {
    int crossing;
    bool over;
  };
  // geometric (bottom-to-top) crossing sequences per strand
  std::array<std::vector<Visit>, 4> seq;
  if (lhs) {
    seq[1] = {{1, true}, {2, true}};
    seq[2] = {{1, false}, {3, true}};
    seq[3] = {{2, false}, {3, false}};
  } else {
    seq[1] = {{2, true}, {3, true}};
    seq[2] = {{1, true}, {3, false}};
    seq[3] = {{1, false}, {2, false}};
  }
  TangleDiagram t;
  // crossing (a over b): sign + when the strands agree in direction
  auto strands_at = [&](int c) {
    std::pair<int, int> ab{0, 0};  // over, under
    for (int s = 1; s <= 3; ++s)
      for (const Visit& v : seq[s])
        if (v.crossing == c) (v.over ? ab.first : ab.second) = s;
    return ab;
  };
  for (int c = 1; c <= 3; ++c) {
    auto [a, b] = strands_at(c);
    t.crossings[c] = up[a - 1] == up[b - 1] ? 1 : -1;
  }
  for (int s = 1; s <= 3; ++s) t.opens.push_back({s, up[s - 1]});
  // top position j (open id 3+j) belongs to strand 4-j
  for (int j = 1; j <= 3; ++j) t.opens.push_back({3 + j, !up[4 - j - 1]});
  for (int s = 1; s <= 3; ++s) {
    const auto& sq = seq[s];
    int b_open = s;
    int t_open = 3 + (4 - s);
    auto in_end = [&](const Visit& v) {
      return TEnd::at(v.crossing, v.over ? EndRole::OverIn : EndRole::UnderIn);
    };
    auto out_end = [&](const Visit& v) {
      return TEnd::at(v.crossing, v.over ? EndRole::OverOut : EndRole::UnderOut);
    };
    if (up[s - 1]) {
      t.arcs.push_back({TEnd::boundary(b_open), in_end(sq[0])});
      t.arcs.push_back({out_end(sq[0]), in_end(sq[1])});
      t.arcs.push_back({out_end(sq[1]), TEnd::boundary(t_open)});
    } else {
      t.arcs.push_back({TEnd::boundary(t_open), in_end(sq[1])});
      t.arcs.push_back({out_end(sq[1]), in_end(sq[0])});
      t.arcs.push_back({out_end(sq[0]), TEnd::boundary(b_open)});
    }
  }
  return t;
}

const std::map<std::string, std::array<bool, 3>>& r3_orientations() {
  // a and h are the two orientations that splice/loop cannot realize.
  static const std::map<std::string, std::array<bool, 3>> table = {
      {"R3a", {true, false, true}},  {"R3b", {true, true, true}},
      {"R3c", {true, true, false}},  {"R3d", {true, false, false}},
      {"R3e", {false, true, true}},  {"R3f", {false, false, true}},
      {"R3g", {false, false, false}}, {"R3h", {false, true, false}},
  };
  return table;
}

}  // namespace

std::vector<std::string> reidemeister_names() {
  return {"R1a", "R1b", "R1c", "R1d", "R2a", "R2b", "R2c", "R2d",
          "R3a", "R3b", "R3c", "R3d", "R3e", "R3f", "R3g", "R3h"};
}

std::pair<TangleDiagram, TangleDiagram> reidemeister(const std::string& name) {
  if (name == "R1a") return {r1_lhs(true, 1), strand_diagram()};
  if (name == "R1b") return {r1_lhs(false, -1), strand_diagram()};
  if (name == "R1c") return {r1_lhs(true, -1), strand_diagram()};
  if (name == "R1d") return {r1_lhs(false, 1), strand_diagram()};
  if (name == "R2a") return {r2_lhs(true, true), r2_rhs()};
  if (name == "R2b") return {r2_lhs(true, false), r2_rhs()};
  if (name == "R2c") return {r2_lhs(false, true), r2_rhs()};
  if (name == "R2d") return {r2_lhs(false, false), r2_rhs()};
  auto it = r3_orientations().find(name);
  if (it == r3_orientations().end()) fail(Errc::UnknownName, name);
  return {r3_side(true, it->second), r3_side(false, it->second)};
}

// --- classification ----------------------------------------------------------------

namespace {

// Splices every crossing block with forward beta moves, then drops loops.
std::pair<PortGraph, Trace> splice_route(const PortGraph& start) {
  PortGraph g = start;
  Trace t;
  t.initial_canonical = g.canonical_form();
  while (true) {
    auto bs = enumerate_redexes(g, "beta", true);
    if (bs.empty()) break;
    ApplyResult r = apply_move(g, bs.front());
    g = std::move(r.graph);
    t.steps.push_back({bs.front(), r.inverse, g.canonical_form()});
  }
  while (g.loops() > 0) {
    Binding b{"loop_remove", true};
    ApplyResult r = apply_move(g, b);
    g = std::move(r.graph);
    t.steps.push_back({b, r.inverse, g.canonical_form()});
  }
  return {std::move(g), std::move(t)};
}

}  // namespace

std::vector<Classification> classify_moves(int depth) {
  std::vector<Classification> rows;
  for (const std::string& name : reidemeister_names()) {
    auto [lhs, rhs] = reidemeister(name);
    Classification row;
    row.name = name;
    ReducedForm rl = reduced(lhs);
    ReducedForm rr = reduced(rhs);
    if (rl != rr) {
      row.verdict = MoveVerdict::Obstructed;
      row.obstruction = "reduced(lhs) = " + rl.str() +
                        " differs from reduced(rhs) = " + rr.str();
      rows.push_back(std::move(row));
      continue;
    }
    PortGraph tl = translate(lhs, CrossingStyle::lambda());
    PortGraph tr = translate(rhs, CrossingStyle::lambda());
    auto [wl, trace_l] = splice_route(tl);
    auto [wr, trace_r] = splice_route(tr);
    if (!isomorphic(wl, wr)) {
      row.verdict = MoveVerdict::Unknown;
      rows.push_back(std::move(row));
      continue;
    }
    std::vector<Binding> all;
    for (const TraceStep& s : trace_l.steps) all.push_back(s.binding);
    MoveScript back = reverse_trace(tr, trace_r, wr);
    std::vector<Binding> back_bindings;
    PortGraph probe = wr;
    for (const ScriptStep& s : back.steps) {
      Binding b = resolve_step(probe, s, 0);
      back_bindings.push_back(b);
      probe = apply_move(probe, b).graph;
    }
    std::vector<Binding> moved = transport_bindings(back_bindings, wr, wl);
    all.insert(all.end(), moved.begin(), moved.end());
    auto [final_g, final_t] = run_bindings(tl, all);
    if (!isomorphic(final_g, tr)) {
      row.verdict = MoveVerdict::Unknown;
      rows.push_back(std::move(row));
      continue;
    }
    if (static_cast<int>(all.size()) > depth) {
      // still a witness; depth only caps the search fallback
    }
    row.verdict = MoveVerdict::Realizable;
    row.script = script_from_bindings(all);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string classification_table(const std::vector<Classification>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << r.name << "  ";
    switch (r.verdict) {
      case MoveVerdict::Realizable:
        os << "realizable  script-length=" << r.script.steps.size();
        break;
      case MoveVerdict::Obstructed:
        os << "obstructed  " << r.obstruction;
        break;
      case MoveVerdict::Unknown:
        os << "unknown";
        break;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

MoveScript emergent_witness(const std::string& name, const EmergentWiring& w,
                            int depth) {
  auto [lhs, rhs] = reidemeister(name);
  CrossingStyle style = CrossingStyle::emergent(GroupElem::symbol("a"));
  PortGraph from = translate_with(lhs, style, w).graph;
  PortGraph to = translate_with(rhs, style, w).graph;
  std::vector<std::string> moves{"r1a:fwd",        "r1b:fwd",
                                 "r2:fwd",         "ext2:fwd",
                                 "co_assoc",       "co_comm",
                                 "global_fan_out", "prune_fanout_2",
                                 "prune_fanout_3", "prune_dil"};
  SearchResult res = search(from, to, moves, depth, 50000);
  if (!res.script)
    fail(Errc::NoMatch, "no emergent-move script for " + name);
  return script_from_bindings(*res.script);
}

}  // namespace

MoveScript check_emergent_type12(const std::string& name, int depth) {
  if (name.size() < 2 || (name[1] != '1' && name[1] != '2'))
    fail(Errc::BadArgument, "type-1/2 move expected, got " + name);
  return emergent_witness(name, emergent_wiring(), depth);
}

std::vector<EmergentWiring> calibrate_emergent_wiring(int depth) {
  std::vector<EmergentWiring> passing;
  std::vector<std::string> names{"R1a", "R1b", "R1c", "R1d",
                                 "R2a", "R2b", "R2c", "R2d"};
  for (int branch : {2, 3}) {
    for (int port : {1, 2}) {
      for (bool direct : {true, false}) {
        EmergentWiring w{branch, port, direct};
        bool ok = true;
        for (const std::string& n : names) {
          try {
            emergent_witness(n, w, depth);
          } catch (const Error&) {
            ok = false;
            break;
          }
        }
        if (ok) passing.push_back(w);
      }
    }
  }
  return passing;
}

// --- random diagrams and text format ----------------------------------------------

TangleDiagram random_diagram(std::mt19937_64& rng, int max_crossings) {
  std::uniform_int_distribution<int> nd(0, max_crossings);
  int n = nd(rng);
  TangleDiagram t;
  std::vector<TEnd> sources, sinks;
  for (int c = 1; c <= n; ++c) {
    std::uniform_int_distribution<int> sd(0, 1);
    t.crossings[c] = sd(rng) ? 1 : -1;
    sources.push_back(TEnd::at(c, EndRole::UnderOut));
    sources.push_back(TEnd::at(c, EndRole::OverOut));
    sinks.push_back(TEnd::at(c, EndRole::UnderIn));
    sinks.push_back(TEnd::at(c, EndRole::OverIn));
  }
  std::shuffle(sources.begin(), sources.end(), rng);
  std::shuffle(sinks.begin(), sinks.end(), rng);
  int next_open = 1;
  std::uniform_int_distribution<int> coin(0, 3);
  size_t si = 0;
  for (const TEnd& sink : sinks) {
    if (si < sources.size() && coin(rng) != 0) {
      t.arcs.push_back({sources[si++], sink});
    } else {
      int id = next_open++;
      t.opens.push_back({id, true});
      t.arcs.push_back({TEnd::boundary(id), sink});
    }
  }
  for (; si < sources.size(); ++si) {
    int id = next_open++;
    t.opens.push_back({id, false});
    t.arcs.push_back({sources[si], TEnd::boundary(id)});
  }
  std::uniform_int_distribution<int> ld(0, 2);
  t.loops = ld(rng);
  // keep at least one strand so reduced() has something to say
  if (t.crossings.empty() && t.arcs.empty()) {
    t.opens.push_back({next_open, true});
    t.opens.push_back({next_open + 1, false});
    t.arcs.push_back(
        {TEnd::boundary(next_open), TEnd::boundary(next_open + 1)});
  }
  t.check();
  return t;
}

namespace {

// slot <-> role: slots are clockwise from the incoming under strand; the
// over strand enters slot 1 on positive crossings and slot 3 on negative.
EndRole slot_role(int sign, int slot) {
  switch (slot) {
    case 0: return EndRole::UnderIn;
    case 2: return EndRole::UnderOut;
    case 1: return sign > 0 ? EndRole::OverIn : EndRole::OverOut;
    case 3: return sign > 0 ? EndRole::OverOut : EndRole::OverIn;
  }
  fail(Errc::BadArgument, "slot");
}

int role_slot(int sign, EndRole r) {
  for (int s = 0; s < 4; ++s)
    if (slot_role(sign, s) == r) return s;
  fail(Errc::BadArgument, "role");
}

}  // namespace

TangleDiagram parse_tangle(const std::string& text) {
  TangleDiagram t;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  // end name -> TEnd; built from x and open lines, then arcs resolve names
  std::map<std::string, TEnd> ends;
  std::vector<std::pair<std::string, std::string>> arc_lines;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> w;
    std::string word;
    while (ls >> word) w.push_back(word);
    if (w.empty()) continue;
    auto bad = [&](const std::string& m) {
      fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": " + m);
    };
    if (w[0] == "x") {
      if (w.size() != 7) bad("x <id> +|- <e0> <e1> <e2> <e3>");
      int id = 0;
      try {
        id = std::stoi(w[1]);
      } catch (const std::exception&) {
        bad("bad crossing id");
      }
      int sign = w[2] == "+" ? 1 : w[2] == "-" ? -1 : 0;
      if (sign == 0) bad("sign must be + or -");
      t.crossings[id] = sign;
      for (int s = 0; s < 4; ++s) {
        const std::string& name = w[3 + s];
        if (ends.count(name)) bad("duplicate end '" + name + "'");
        ends[name] = TEnd::at(id, slot_role(sign, s));
      }
    } else if (w[0] == "open") {
      if (w.size() != 3 || (w[2] != "in" && w[2] != "out"))
        bad("open <end> in|out");
      if (ends.count(w[1])) bad("duplicate end '" + w[1] + "'");
      int id = static_cast<int>(t.opens.size()) + 1;
      t.opens.push_back({id, w[2] == "in"});
      ends[w[1]] = TEnd::boundary(id);
    } else if (w[0] == "arc") {
      if (w.size() != 3) bad("arc <end> <end>");
      arc_lines.push_back({w[1], w[2]});
    } else if (w[0] == "loop") {
      if (w.size() != 2) bad("loop <count>");
      t.loops = std::stoi(w[1]);
    } else {
      bad("unknown directive '" + w[0] + "'");
    }
  }
  for (const auto& [a, b] : arc_lines) {
    if (!ends.count(a) || !ends.count(b))
      fail(Errc::SyntaxError, "arc references unknown end");
    t.arcs.push_back({ends.at(a), ends.at(b)});
  }
  t.check();
  return t;
}

std::string emit_tangle(const TangleDiagram& t) {
  std::ostringstream os;
  auto end_name = [&](const TEnd& e) {
    if (e.open) return "p" + std::to_string(e.open_id);
    int sign = t.crossings.at(e.crossing);
    return "c" + std::to_string(e.crossing) + "_" +
           std::to_string(role_slot(sign, e.role));
  };
  for (const auto& [c, sign] : t.crossings) {
    os << "x " << c << " " << (sign > 0 ? "+" : "-");
    for (int s = 0; s < 4; ++s)
      os << " c" << c << "_" << s;
    os << "\n";
  }
  for (const auto& [id, is_in] : t.opens)
    os << "open p" << id << " " << (is_in ? "in" : "out") << "\n";
  for (const auto& [a, b] : t.arcs)
    os << "arc " << end_name(a) << " " << end_name(b) << "\n";
  if (t.loops) os << "loop " << t.loops << "\n";
  return os.str();
}

}  // namespace glc
