#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glc/script.hpp"

namespace glc {

enum class ReduceStatus { Normal, Ceiling, Cycle };

struct ReduceResult {
  PortGraph graph;
  Trace trace;
  ReduceStatus status = ReduceStatus::Normal;
};

// Strategy "beta-priority": each round applies the first forward beta (or,
// when none exists, the first forward global fan-out, which is what exposes
// the next redex in self-replicating graphs), then exhausts the forward
// pruning moves and loop removal. Cycles are detected on the canonical-form
// history; max_steps bounds the number of rounds.
ReduceResult reduce(const PortGraph& g, const std::string& strategy,
                    int max_steps);

// Exhausts the four local pruning moves, global pruning and loop removal in
// deterministic order. Appends to `trace` when given.
PortGraph exhaust_pruning(PortGraph g, Trace* trace);

struct SearchResult {
  std::optional<std::vector<Binding>> script;  // shortest witness
  bool exhausted = false;  // true when the whole space within depth was seen
  long states = 0;
};

// Breadth-first search over move applications from `from` toward a graph
// isomorphic to `target`, deduplicated by canonical form. `moves` names the
// allowed rules; both directions of a bidirectional rule are used unless the
// name is suffixed ":fwd". Stops at max_depth or after max_states distinct
// graphs.
SearchResult search(const PortGraph& from, const PortGraph& target,
                    const std::vector<std::string>& moves, int max_depth,
                    long max_states = 200000);

}  // namespace glc
