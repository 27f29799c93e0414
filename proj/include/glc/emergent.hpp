#pragma once

#include <functional>
#include <random>
#include <set>
#include <string>

#include "glc/engine.hpp"
#include "glc/macros.hpp"

namespace glc {

using Valuation = std::map<LeafId, VecQ>;

// Exact evaluation of an emergent-sector graph over the rational vector
// model: fan-out copies, a dilation of scale s maps (x, y) to (1-s)x + sy,
// termination discards. The edge values solve an affine system, so graphs
// with feedback are fine as long as the solution is determined (closed
// subsystems settle on the zero solution). Throws MissingInput,
// SymbolUnassigned, CyclicGraph (unsolvable feedback), BadArgument (gates
// outside the sector).
Valuation evaluate(const PortGraph& g, const Valuation& inputs,
                   const std::map<std::string, Rat>& symbols = {});

// Membership in the sector generated by wires, loops, fan-outs and dilations
// whose scale symbols all lie in `symbols`; termination gates are admitted
// as pruning residue.
bool in_emer_sector(const PortGraph& g, const std::set<std::string>& symbols);

enum class EmerKind { Sum, Difference, Inverse };

struct EmerMacro {
  EmerKind kind;
  GroupElem scale;
  MacroGraph macro;  // roles: x, u, v (sum/difference only), out
};

// The approximate operation graphs:
//   sum(x,u,v)       = x inv-dilated against (x o u) o v
//   difference(x,u,v)= (x o u) inv-dilated against (x o v)
//   inverse(x,u)     = (x o u) inv-dilated against x
EmerMacro build_emer_macro(EmerKind kind, const GroupElem& scale);

// The difference graph with its v input fed by a copy of x, plus the script
// that turns it into the inverse graph (one co_assoc, one r1a).
struct DeltaSharedCase {
  PortGraph graph;
  MoveScript script;
  PortGraph expected;  // the inverse macro graph
};
DeltaSharedCase delta_shared_case(const GroupElem& scale);

struct SoundnessReport {
  std::string move;
  int trials = 0;
  int failures = 0;
  std::string first_counterexample;

  std::string text() const;
};

// Randomized decoration check: embeds the move's pattern in random
// emergent-sector hosts with random exact-rational inputs and compares the
// OUT valuations before and after the move. "bad_absorb" names the
// deliberately unsound negative-control rule.
SoundnessReport check_move_soundness(const std::string& move, int trials,
                                     int dim, uint64_t seed);

// Moves covered by the soundness matrix.
std::vector<std::string> emergent_sound_moves();

using ModelFn = std::function<VecQ(const VecQ&)>;

// Finite difference of f at x with scale eps, evaluated at u:
//   f(x) + (f(x + eps*(u-x)) - f(x)) / eps
VecQ finite_difference(const ModelFn& f, const VecQ& x, const Rat& eps,
                       const VecQ& u);

enum class ComputableVerdict { Yes, No, UnknownWithinDepth };

struct ComputableResult {
  ComputableVerdict verdict;
  MoveScript witness;  // for Yes: moves reaching an emergent-sector graph
  long states = 0;
};

// Bounded search for a decomposition of the conjugated graph into
// emergent-sector form, over the full move set.
ComputableResult is_computable_instance(const PortGraph& g,
                                        const std::set<std::string>& symbols,
                                        const std::string& scale_symbol,
                                        int max_depth, long max_states = 20000);

// Random exact rational in (0, 1], denominators up to 9; never zero.
Rat random_positive_rat(std::mt19937_64& rng);
Rat random_rat(std::mt19937_64& rng);  // in [-5, 5], any sign
VecQ random_vec(std::mt19937_64& rng, int dim);

}  // namespace glc
