#pragma once

#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "glc/graph.hpp"

namespace glc {

struct LambdaTerm;
using TermPtr = std::shared_ptr<const LambdaTerm>;

struct LambdaTerm {
  enum class Kind { Var, Abs, App };
  Kind kind;
  std::string name;   // Var name or Abs binder
  TermPtr left;       // Abs body, App function
  TermPtr right;      // App argument
};

TermPtr var(const std::string& name);
TermPtr abs(const std::string& name, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg);

// `\x.` or unicode lambda for abstraction, juxtaposition for application
// (left-associative), parentheses, ASCII identifiers.
TermPtr parse_term(const std::string& text);
std::string term_to_string(const TermPtr& t);

std::set<std::string> free_vars(const TermPtr& t);
TermPtr subst(const TermPtr& t, const std::string& name, const TermPtr& repl);
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// Reduces the redex addressed by `path` ('0' = body/function, '1' = argument).
// Throws NotARedex when the path does not address App(Abs(..), ..).
TermPtr beta_step(const TermPtr& t, const std::string& path);
std::vector<std::string> redex_paths(const TermPtr& t);

// Leaf-to-root passage letters of the syntactic tree.
enum class PathLetter { LamL, LamR, AppL, AppR };
using PathWord = std::vector<PathLetter>;
std::string path_word_str(const PathWord& w);

// The bound-variable list B: one entry per binder position, in left-to-right
// leaf order, with the path word from that leaf to the root.
std::vector<std::pair<std::string, PathWord>> bound_list(const TermPtr& t);

struct ConversionResult {
  PortGraph graph;
  // Term path -> gate created for that Abs/App node.
  std::map<std::string, NodeId> node_at_path;
};

// Conversion of a term to its graph: one OUT leaf for the root, one IN leaf
// per free variable in first-occurrence order (labelled with the name),
// unused binders terminated, shared variables fanned out through left-combed
// fan-out trees.
ConversionResult to_graph_full(const TermPtr& t);
PortGraph to_graph(const TermPtr& t);

// No dilation gates, and every oriented path from a lambda's bound-variable
// port can be extended to reach a termination gate or that lambda's own
// body-input edge.
bool is_lambda_graph(const PortGraph& g);

// Left-combs every maximal fan-out tree via co_assoc; idempotent.
PortGraph fanout_normalize(PortGraph g);

// Isomorphism with the IN boundary aligned by leaf label instead of position
// (free variables may be discovered in different orders on the two sides).
bool iso_modulo_in_labels(const PortGraph& a, const PortGraph& b);

// Seeded generator of closed terms, at most `max_size` syntax nodes,
// variables drawn from a fixed three-name pool.
TermPtr random_closed_term(std::mt19937_64& rng, int max_size);

}  // namespace glc
