#pragma once

#include <map>
#include <string>

#include "glc/script.hpp"

namespace glc {

// A graph plus named interface roles; roles map to distinct boundary leaves.
struct MacroGraph {
  PortGraph graph;
  std::map<std::string, LeafId> roles;

  LeafId role(const std::string& name) const;
};

// I, K (= \x.\y.x), S as graphs; isomorphic to the conversions of the terms.
MacroGraph combinator(const std::string& name);

// n nested lambda gates zipped against n nested application gates; 2n+2
// boundary edges. Roles: body_in, result_out, arg_i / bound_i for i=1..n
// (arg/bound 1 is the innermost pair, the first to open).
MacroGraph zipper(int n);

// Direct wiring of b's output into a's named input role.
PortGraph graft(const MacroGraph& a, const std::string& input_role,
                const MacroGraph& b);
// Application gate over the two outputs: a ^ b.
MacroGraph apply_pair(const MacroGraph& a, const MacroGraph& b);

// A zero-input/one-output graph viewed as a function: an application gate
// over it, taking the argument on a fresh input. Roles: in, out.
MacroGraph as_unary(const MacroGraph& f);

// A fixed point of a one-input/one-output graph: B together with a witness
// script turning the grafting of B into `a` back into (a copy of) B.
struct Fixpoint {
  MacroGraph b;
  PortGraph grafted;   // b wired into a
  MoveScript witness;  // run_script(grafted, witness) ends isomorphic to b
};
Fixpoint fixpoint(const MacroGraph& a);

// Packs two arrows into one: packer(2 in, 1 out), unpacker(1 in, 2 out);
// their composition opens to two parallel wires by three beta moves.
struct Packing {
  MacroGraph packer;
  MacroGraph unpacker;
};
Packing pack_arrows();
PortGraph pack_unpack_composition(const Packing& p);

// One-input/one-output gate blocks with the three-port gates packed onto a
// single strand; composing the lambda block into the app block reduces to a
// wire (the 1D shape of the beta move).
PortGraph packed_lambda_into_app();

// Abstracts all k inputs of `a`; zero-input one-output result.
// Roles of `a`'s inputs are taken in boundary order.
MacroGraph curry(const MacroGraph& a);

// Curry(a) loaded with k arguments through an application chain.
PortGraph curry_applied(const MacroGraph& a,
                        const std::vector<MacroGraph>& args);
// The list variant: the argument list graph applied to Curry(a); reopens
// with one extra beta move.
PortGraph curry_applied_list2(const MacroGraph& a, const MacroGraph& x,
                              const MacroGraph& y);

}  // namespace glc
