#pragma once

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "glc/engine.hpp"

namespace glc {

// Ends of a crossing, named by strand role. The under-strand runs
// UnderIn -> UnderOut, the over-strand OverIn -> OverOut; the sign records
// the planar orientation data (used by the dilation-style translation).
enum class EndRole { UnderIn, OverIn, UnderOut, OverOut };
bool role_is_sink(EndRole r);

struct TEnd {
  bool open = false;
  int open_id = 0;    // when open
  int crossing = 0;   // when on a crossing
  EndRole role = EndRole::UnderIn;

  static TEnd at(int crossing, EndRole role) { return {false, 0, crossing, role}; }
  static TEnd boundary(int open_id) { return {true, open_id, 0, {}}; }
  bool operator==(const TEnd& o) const;
  bool operator<(const TEnd& o) const;
};

// Locally planar oriented tangle diagram: 4-valent crossings with over/under
// and sign, arcs from sources (open IN ends, crossing out-ends) to sinks
// (open OUT ends, crossing in-ends), plus free loops.
struct TangleDiagram {
  std::map<int, int> crossings;             // id -> sign (+1 / -1)
  std::vector<std::pair<TEnd, TEnd>> arcs;  // source -> sink
  std::vector<std::pair<int, bool>> opens;  // (open id, is_in), boundary order
  int loops = 0;

  void check() const;  // throws InvalidDiagram
};

// Endpoint matching left after splicing every crossing and dropping loops.
struct ReducedForm {
  std::map<int, int> matching;  // open-in id -> open-out id
  bool operator==(const ReducedForm& o) const { return matching == o.matching; }
  bool operator!=(const ReducedForm& o) const { return !(*this == o); }
  std::string str() const;
};

// Oriented smoothing of one crossing: under-in joins over-out and over-in
// joins under-out; a strand closing on itself becomes a loop.
TangleDiagram splice(const TangleDiagram& t, int crossing);
TangleDiagram loop_move(const TangleDiagram& t, bool add);
ReducedForm reduced(const TangleDiagram& t);

struct CrossingStyle {
  enum class Kind { Emergent, Lambda } kind = Kind::Lambda;
  GroupElem scale;  // Emergent only: positive crossings use it, negative its inverse

  static CrossingStyle lambda() { return {Kind::Lambda, {}}; }
  static CrossingStyle emergent(const GroupElem& s) { return {Kind::Emergent, s}; }
};

struct Translation {
  PortGraph graph;
  // Lambda style: crossing -> (lambda node, app node).
  // Emergent style: crossing -> (fanout node, dilation node).
  std::map<int, std::pair<NodeId, NodeId>> blocks;
};

Translation translate_full(const TangleDiagram& t, const CrossingStyle& style);
PortGraph translate(const TangleDiagram& t, const CrossingStyle& style);

// The sixteen oriented Reidemeister moves. Type-1 and type-2 moves are
// named so that the pair unreachable by splice/loop alone is R2c/R2d
// (the antiparallel pokes) and R3a/R3h (middle strand against the others),
// matching the realizability classification.
std::vector<std::string> reidemeister_names();
std::pair<TangleDiagram, TangleDiagram> reidemeister(const std::string& name);

enum class MoveVerdict { Realizable, Obstructed, Unknown };

struct Classification {
  std::string name;
  MoveVerdict verdict = MoveVerdict::Unknown;
  MoveScript script;         // replayable beta+loop witness when realizable
  std::string obstruction;   // reduced-form certificate when obstructed
};

// Classifies every move in the lambda style: realizable moves get a verified
// beta+loop script between the two translations, obstructed ones a
// reduced-form inequality certificate.
std::vector<Classification> classify_moves(int depth = 8);
std::string classification_table(const std::vector<Classification>& rows);

// Verified script for a type-1/2 move in the dilation style, using only
// r1a, r1b, r2, ext2, the fan-out family and the pruning family.
MoveScript check_emergent_type12(const std::string& name, int depth = 8);

// The frozen crossing-macro wiring, picked by the calibration sweep.
struct EmergentWiring {
  int over_out_branch;   // 2 or 3: fan-out branch continuing the over strand
  int copy_port;         // 1 or 2: dilation port fed by the over copy
  bool positive_direct;  // positive crossings use the scale itself
};
EmergentWiring emergent_wiring();
// Re-runs the sweep over all candidate wirings; returns the passing ones.
std::vector<EmergentWiring> calibrate_emergent_wiring(int depth = 8);

TangleDiagram random_diagram(std::mt19937_64& rng, int max_crossings);

// Text format: `x <id> +|- <e0> <e1> <e2> <e3>` (ends clockwise from the
// incoming under-strand), `arc <end> <end>`, `open <end> in|out`, `loop <n>`.
TangleDiagram parse_tangle(const std::string& text);
std::string emit_tangle(const TangleDiagram& t);

}  // namespace glc
