#include "glc/engine.hpp"

#include <deque>
#include <map>
#include <set>

#include "glc/error.hpp"

namespace glc {

namespace {

const char* kPruneOrder[] = {"prune_fanout_2", "prune_fanout_3", "prune_app",
                             "prune_dil", "global_prune", "loop_remove"};

std::optional<Binding> first_binding(const PortGraph& g, const std::string& move,
                                     bool forward) {
  auto bs = enumerate_redexes(g, move, forward);
  if (bs.empty()) return std::nullopt;
  return bs.front();
}

void record(Trace* trace, const Binding& b, const ApplyResult& r,
            const PortGraph& g) {
  if (!trace) return;
  trace->steps.push_back({b, r.inverse, g.canonical_form()});
}

}  // namespace

PortGraph exhaust_pruning(PortGraph g, Trace* trace) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const char* move : kPruneOrder) {
      auto b = first_binding(g, move, true);
      if (!b) continue;
      ApplyResult r = apply_move(g, *b);
      g = std::move(r.graph);
      record(trace, *b, r, g);
      changed = true;
      break;
    }
  }
  return g;
}

ReduceResult reduce(const PortGraph& g, const std::string& strategy,
                    int max_steps) {
  if (strategy != "beta-priority")
    fail(Errc::UnknownStrategy, strategy);
  if (max_steps < 0) fail(Errc::BadArgument, "max_steps must be >= 0");
  ReduceResult out{g, {}, ReduceStatus::Normal};
  out.trace.initial_canonical = g.canonical_form();
  std::set<std::string> history{out.trace.initial_canonical};
  int rounds = 0;
  PortGraph cur = g;
  while (true) {
    if (rounds >= max_steps) {
      // Only a ceiling if more work was available.
      bool more = first_binding(cur, "beta", true).has_value() ||
                  first_binding(cur, "global_fan_out", true).has_value();
      out.status = more ? ReduceStatus::Ceiling : ReduceStatus::Normal;
      break;
    }
    std::optional<Binding> b = first_binding(cur, "beta", true);
    if (!b) b = first_binding(cur, "global_fan_out", true);
    if (!b) {
      out.status = ReduceStatus::Normal;
      break;
    }
    ApplyResult r = apply_move(cur, *b);
    cur = std::move(r.graph);
    record(&out.trace, *b, r, cur);
    cur = exhaust_pruning(std::move(cur), &out.trace);
    ++rounds;
    std::string c = cur.canonical_form();
    if (!history.insert(c).second) {
      out.status = ReduceStatus::Cycle;
      break;
    }
  }
  out.graph = std::move(cur);
  return out;
}

SearchResult search(const PortGraph& from, const PortGraph& target,
                    const std::vector<std::string>& moves, int max_depth,
                    long max_states) {
  if (max_depth < 0) fail(Errc::BadArgument, "max_depth must be >= 0");
  SearchResult res;
  std::string goal = target.canonical_form();

  struct Visit {
    long parent;  // index into the visit list, -1 for root
    Binding via;
  };
  std::vector<Visit> visits;
  std::map<std::string, long> seen;

  struct Frontier {
    PortGraph graph;
    long visit;
    int depth;
  };

  std::vector<std::pair<std::string, bool>> directions;
  for (const std::string& name : moves) {
    std::string base = name;
    bool fwd_only = false;
    if (auto pos = name.rfind(":fwd"); pos != std::string::npos &&
                                       pos == name.size() - 4) {
      base = name.substr(0, pos);
      fwd_only = true;
    }
    const Move& m = move_info(base);
    directions.push_back({base, true});
    if (m.bidirectional && !fwd_only) directions.push_back({base, false});
  }

  auto reconstruct = [&](long v) {
    std::vector<Binding> path;
    for (long i = v; i != 0; i = visits[i].parent) path.push_back(visits[i].via);
    std::reverse(path.begin(), path.end());
    return path;
  };

  std::string start = from.canonical_form();
  visits.push_back({-1, {}});
  seen[start] = 0;
  if (start == goal) {
    res.script = std::vector<Binding>{};
    res.exhausted = true;
    return res;
  }

  std::deque<Frontier> frontier;
  frontier.push_back({from, 0, 0});
  res.exhausted = true;
  while (!frontier.empty()) {
    Frontier f = std::move(frontier.front());
    frontier.pop_front();
    if (f.depth >= max_depth) {
      res.exhausted = false;
      continue;
    }
    for (const auto& [move, fwd] : directions) {
      for (const Binding& b : enumerate_redexes(f.graph, move, fwd)) {
        PortGraph next = apply_move(f.graph, b).graph;
        std::string key = next.canonical_form();
        auto it = seen.find(key);
        if (it != seen.end()) continue;
        long v = static_cast<long>(visits.size());
        visits.push_back({f.visit, b});
        seen[key] = v;
        res.states = v;
        if (key == goal) {
          res.script = reconstruct(v);
          return res;
        }
        if (res.states >= max_states) {
          res.exhausted = false;
          return res;
        }
        frontier.push_back({std::move(next), v, f.depth + 1});
      }
    }
  }
  return res;
}

}  // namespace glc
