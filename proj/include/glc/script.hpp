#pragma once

#include <map>
#include <string>
#include <vector>

#include "glc/moves.hpp"

namespace glc {

// One step of a move script. Constraints name pattern roles and pin them to
// host elements ("lambda=n3", "arrow1=e5", "arrow1=loop", "variant=1") or
// supply scale parameters ("scale=1/2*a^-1"). A step must resolve to exactly
// one binding of the move in the current graph.
struct ScriptStep {
  std::string move;
  bool forward = true;
  std::map<std::string, std::string> constraints;

  std::string text() const;
};

struct MoveScript {
  std::vector<ScriptStep> steps;
  std::string text() const;
};

// Text format: one step per line, `apply <move> <fwd|rev> [at k=v ...]`,
// '#' comments allowed.
MoveScript parse_script(const std::string& text);
ScriptStep step_from_binding(const Binding& b);
MoveScript script_from_bindings(const std::vector<Binding>& bs);

struct TraceStep {
  Binding binding;
  std::optional<Binding> inverse;  // valid on the post-step graph
  std::string canonical_after;
};

// Replayable record of a script run: replaying the bindings from the initial
// graph reproduces the recorded canonical forms.
struct Trace {
  std::string initial_canonical;
  std::vector<TraceStep> steps;

  std::map<std::string, int> counts() const;
  int count(const std::string& move) const;
  std::string final_canonical() const {
    return steps.empty() ? initial_canonical : steps.back().canonical_after;
  }
  std::string text() const;
};

Binding resolve_step(const PortGraph& g, const ScriptStep& s, int step_index);

std::pair<PortGraph, Trace> run_script(const PortGraph& g,
                                       const MoveScript& script);
std::pair<PortGraph, Trace> run_bindings(const PortGraph& g,
                                         const std::vector<Binding>& bs);

bool replay_matches(const PortGraph& initial, const Trace& t);

// Transports a binding along a graph isomorphism (nodes via the map, edges
// via endpoint correspondence, loops unchanged).
Binding remap_binding(const Binding& b, const PortGraph& src,
                      const PortGraph& dst,
                      const std::map<NodeId, NodeId>& node_map);

// Inverse run of a trace of bidirectional moves: a script that maps the
// trace's final graph back to (an isomorphic copy of) its initial graph.
// `final_graph` must be the graph the trace ended on.
MoveScript reverse_trace(const PortGraph& initial, const Trace& t,
                         const PortGraph& final_graph);

// Re-anchors a binding sequence valid on `from` so it runs on the isomorphic
// graph `onto`, remapping step by step.
std::vector<Binding> transport_bindings(const std::vector<Binding>& steps,
                                        const PortGraph& from,
                                        const PortGraph& onto);

}  // namespace glc
