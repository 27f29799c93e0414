#include <functional>
#include <optional>

#include "doctest.h"
#include "glc/engine.hpp"
#include "glc/error.hpp"
#include "glc/lambda.hpp"
#include "glc/macros.hpp"
#include "test_helpers.hpp"

using namespace glc;

namespace {

const char* kOmega = "(\\x.x x) (\\x.x x)";
const char* kT = "(\\x.x y) (\\x.x y)";

// Normalization used by the beta-correspondence checks: unfold fan-out
// bottlenecks, prune dead parts, remove loops, left-comb the fan-out trees.
PortGraph settle(PortGraph g) {
  for (int guard = 0; guard < 10000; ++guard) {
    g = exhaust_pruning(std::move(g), nullptr);
    auto fo = enumerate_redexes(g, "global_fan_out", true);
    if (fo.empty()) break;
    g = apply_move(g, fo.front()).graph;
  }
  return fanout_normalize(std::move(g));
}

}  // namespace

TEST_CASE("parsing lambda terms") {
  TermPtr i = parse_term("\\x.x");
  CHECK(i->kind == LambdaTerm::Kind::Abs);
  CHECK(i->left->kind == LambdaTerm::Kind::Var);

  TermPtr omega = parse_term(kOmega);
  CHECK(omega->kind == LambdaTerm::Kind::App);
  CHECK(alpha_eq(omega->left, omega->right));

  TermPtr s = parse_term("\\x.\\y.\\z.((x z)(y z))");
  CHECK(alpha_eq(s, parse_term("\\a.\\b.\\c.a c (b c)")));

  CHECK_THROWS_AS(parse_term("(\\x.x"), Error);
  CHECK_THROWS_AS(parse_term(""), Error);
  // unicode lambda accepted
  CHECK(alpha_eq(parse_term("\xce\xbbx.x"), parse_term("\\x.x")));
}

TEST_CASE("bound lists match the worked examples") {
  using PL = PathLetter;
  auto b_i = bound_list(parse_term("\\x.x"));
  REQUIRE(b_i.size() == 1);
  CHECK(b_i[0].first == "x");
  CHECK(b_i[0].second == PathWord{PL::LamL});

  auto b_s = bound_list(parse_term("\\x.\\y.\\z.((x z)(y z))"));
  REQUIRE(b_s.size() == 3);
  CHECK(b_s[0].second == PathWord{PL::LamL});
  CHECK(b_s[1].second == PathWord{PL::LamL, PL::LamR});
  CHECK(b_s[2].second == PathWord{PL::LamL, PL::LamR, PL::LamR});

  auto b_o = bound_list(parse_term(kOmega));
  REQUIRE(b_o.size() == 2);
  CHECK(b_o[0].first == "x");
  CHECK(b_o[0].second == PathWord{PL::LamL, PL::AppL});
  CHECK(b_o[1].second == PathWord{PL::LamL, PL::AppR});

  auto b_k = bound_list(parse_term("\\x.\\y.x"));
  REQUIRE(b_k.size() == 2);
  CHECK(b_k[0].second == PathWord{PL::LamL});
  CHECK(b_k[1].second == PathWord{PL::LamL, PL::LamR});
}

TEST_CASE("conversion of the named terms") {
  PortGraph i = to_graph(parse_term("\\x.x"));
  CHECK(isomorphic(i, glc::testing::i_graph()));

  PortGraph k = to_graph(parse_term("\\x.\\y.x"));
  int lambdas = 0, terms = 0;
  for (const auto& [n, kind] : k.nodes()) {
    lambdas += kind.type == GateType::Lambda;
    terms += kind.type == GateType::Term;
  }
  CHECK(lambdas == 2);
  CHECK(terms == 1);
  PortGraph k_expect;
  {
    NodeId lo = k_expect.add_gate(GateKind::lambda());
    NodeId li = k_expect.add_gate(GateKind::lambda());
    NodeId t = k_expect.add_gate(GateKind::term());
    k_expect.connect(Endpoint::of_port(li, 3), Endpoint::of_port(lo, 1));
    k_expect.connect(Endpoint::of_port(lo, 2), Endpoint::of_port(li, 1));
    k_expect.connect(Endpoint::of_port(li, 2), Endpoint::of_port(t, 1));
    LeafId r = k_expect.add_leaf(LeafDir::Out, "r");
    k_expect.connect(Endpoint::of_port(lo, 3), Endpoint::of_leaf(r));
  }
  CHECK(isomorphic(k, k_expect));

  PortGraph tt = to_graph(parse_term(kT));
  CHECK(tt.in_leaves().size() == 1);
  int fans = 0;
  for (const auto& [n, kind] : tt.nodes()) fans += kind.type == GateType::FanOut;
  CHECK(fans == 1);  // only the shared free y needs a fan-out
  CHECK(tt.leaf(tt.in_leaves().front()).label == "y");
}

TEST_CASE("lambda-graph predicate") {
  for (const char* s :
       {"\\x.x", "\\x.\\y.x", "\\x.\\y.\\z.((x z)(y z))", kOmega, kT}) {
    CHECK(is_lambda_graph(to_graph(parse_term(s))));
  }
  PortGraph d;
  NodeId dd = d.add_gate(GateKind::dilation(GroupElem(Rat(1, 2))));
  LeafId a = d.add_leaf(LeafDir::In), b = d.add_leaf(LeafDir::In),
         o = d.add_leaf(LeafDir::Out);
  d.connect(Endpoint::of_leaf(a), Endpoint::of_port(dd, 1));
  d.connect(Endpoint::of_leaf(b), Endpoint::of_port(dd, 2));
  d.connect(Endpoint::of_port(dd, 3), Endpoint::of_leaf(o));
  CHECK_FALSE(is_lambda_graph(d));
  PortGraph esc;
  NodeId lam = esc.add_gate(GateKind::lambda());
  LeafId in = esc.add_leaf(LeafDir::In);
  LeafId o1 = esc.add_leaf(LeafDir::Out), o2 = esc.add_leaf(LeafDir::Out);
  esc.connect(Endpoint::of_leaf(in), Endpoint::of_port(lam, 1));
  esc.connect(Endpoint::of_port(lam, 2), Endpoint::of_leaf(o1));
  esc.connect(Endpoint::of_port(lam, 3), Endpoint::of_leaf(o2));
  CHECK_FALSE(is_lambda_graph(esc));
}

TEST_CASE("random closed terms stay in the lambda sector") {
  std::mt19937_64 rng(12001);
  for (int t = 0; t < 200; ++t) {
    TermPtr term = random_closed_term(rng, 12);
    CHECK(free_vars(term).empty());
    CHECK(is_lambda_graph(to_graph(term)));
  }
}

TEST_CASE("substitution, alpha equivalence, term beta") {
  CHECK(alpha_eq(beta_step(parse_term("(\\x.x) y"), ""), parse_term("y")));
  TermPtr t = subst(parse_term("\\y.x"), "x", var("y"));
  CHECK(t->kind == LambdaTerm::Kind::Abs);
  CHECK(t->name != "y");
  CHECK(alpha_eq(t, abs("w", var("y"))));
  CHECK(alpha_eq(parse_term("\\x.x"), parse_term("\\y.y")));
  CHECK_FALSE(alpha_eq(parse_term("\\x.\\y.x"), parse_term("\\x.\\y.y")));
  CHECK_THROWS_AS(beta_step(parse_term("x y"), ""), Error);
}

TEST_CASE("fanout_normalize left-combs trees and is idempotent") {
  PortGraph g;
  LeafId in = g.add_leaf(LeafDir::In);
  std::vector<LeafId> outs;
  for (int i = 0; i < 4; ++i) outs.push_back(g.add_leaf(LeafDir::Out));
  NodeId y1 = g.add_gate(GateKind::fanout());
  NodeId y2 = g.add_gate(GateKind::fanout());
  NodeId y3 = g.add_gate(GateKind::fanout());
  g.connect(Endpoint::of_leaf(in), Endpoint::of_port(y1, 1));
  g.connect(Endpoint::of_port(y1, 2), Endpoint::of_leaf(outs[0]));
  g.connect(Endpoint::of_port(y1, 3), Endpoint::of_port(y2, 1));
  g.connect(Endpoint::of_port(y2, 2), Endpoint::of_leaf(outs[1]));
  g.connect(Endpoint::of_port(y2, 3), Endpoint::of_port(y3, 1));
  g.connect(Endpoint::of_port(y3, 2), Endpoint::of_leaf(outs[2]));
  g.connect(Endpoint::of_port(y3, 3), Endpoint::of_leaf(outs[3]));
  PortGraph norm = fanout_normalize(g);
  CHECK_FALSE(isomorphic(norm, g));
  CHECK(isomorphic(fanout_normalize(norm), norm));
  PortGraph expect;
  {
    LeafId in2 = expect.add_leaf(LeafDir::In);
    std::vector<LeafId> o2;
    for (int i = 0; i < 4; ++i) o2.push_back(expect.add_leaf(LeafDir::Out));
    NodeId a = expect.add_gate(GateKind::fanout());
    NodeId b = expect.add_gate(GateKind::fanout());
    NodeId c = expect.add_gate(GateKind::fanout());
    expect.connect(Endpoint::of_leaf(in2), Endpoint::of_port(a, 1));
    expect.connect(Endpoint::of_port(a, 2), Endpoint::of_port(b, 1));
    expect.connect(Endpoint::of_port(a, 3), Endpoint::of_leaf(o2[3]));
    expect.connect(Endpoint::of_port(b, 2), Endpoint::of_port(c, 1));
    expect.connect(Endpoint::of_port(b, 3), Endpoint::of_leaf(o2[2]));
    expect.connect(Endpoint::of_port(c, 2), Endpoint::of_leaf(o2[0]));
    expect.connect(Endpoint::of_port(c, 3), Endpoint::of_leaf(o2[1]));
  }
  CHECK(isomorphic(norm, expect));
  PortGraph i = glc::testing::i_graph();
  CHECK(isomorphic(fanout_normalize(i), i));
}

TEST_CASE("alpha-converted terms produce isomorphic normal forms") {
  std::mt19937_64 rng(5150);
  for (int t = 0; t < 60; ++t) {
    TermPtr a = random_closed_term(rng, 10);
    std::function<TermPtr(const TermPtr&, std::map<std::string, std::string>&)>
        ren = [&](const TermPtr& u,
                  std::map<std::string, std::string>& env) -> TermPtr {
      switch (u->kind) {
        case LambdaTerm::Kind::Var:
          return var(env.count(u->name) ? env.at(u->name) : u->name);
        case LambdaTerm::Kind::Abs: {
          std::string nn = u->name + "r";
          auto saved = env.count(u->name)
                           ? std::optional<std::string>(env[u->name])
                           : std::nullopt;
          env[u->name] = nn;
          TermPtr body = ren(u->left, env);
          if (saved)
            env[u->name] = *saved;
          else
            env.erase(u->name);
          return abs(nn, body);
        }
        case LambdaTerm::Kind::App: {
          TermPtr l = ren(u->left, env);
          TermPtr r = ren(u->right, env);
          return app(l, r);
        }
      }
      return u;
    };
    std::map<std::string, std::string> env;
    TermPtr b = ren(a, env);
    CHECK(alpha_eq(a, b));
    CHECK(isomorphic(fanout_normalize(to_graph(a)),
                     fanout_normalize(to_graph(b))));
  }
}

TEST_CASE("one graphic beta matches one term beta (corpus)") {
  // closed arguments plus single-occurrence open arguments; both fresh and
  // non-fresh binders
  std::vector<std::pair<std::string, std::string>> corpus = {
      {"(\\x.x) (\\y.y)", ""},
      {"(\\x.\\y.x) (\\z.z)", ""},
      {"(\\x.x x) (\\y.y)", ""},
      {"(\\x.\\y.y) (\\z.z z)", ""},
      {"(\\x.x (x y)) (\\z.z)", ""},
      {"\\w.(\\x.\\z.x) (\\y.y w)", "0"},
      {"((\\x.x) (\\y.y)) (\\z.z)", "0"},
      {"(\\x.(x x) x) (\\y.\\z.z)", ""},
      {"(\\x.y) (\\z.z)", ""},
      {"(\\x.\\y.x y) (\\z.z z)", ""},
  };
  std::mt19937_64 rng(909);
  int checked = 0;
  while (checked < 50) {
    std::string text;
    std::string path;
    if (checked < static_cast<int>(corpus.size())) {
      text = corpus[checked].first;
      path = corpus[checked].second;
    } else {
      TermPtr fn = random_closed_term(rng, 6);
      TermPtr arg = random_closed_term(rng, 5);
      if (fn->kind != LambdaTerm::Kind::Abs) continue;
      text = term_to_string(app(fn, arg));
      path = "";
    }
    CAPTURE(text);
    TermPtr t = parse_term(text);
    TermPtr after = beta_step(t, path);
    ConversionResult conv = to_graph_full(t);
    REQUIRE(conv.node_at_path.count(path));
    NodeId app_node = conv.node_at_path.at(path);
    REQUIRE(conv.node_at_path.count(path + "0"));
    NodeId lam_node = conv.node_at_path.at(path + "0");
    Binding b{"beta", true};
    b.nodes["lambda"] = lam_node;
    b.nodes["app"] = app_node;
    PortGraph stepped = apply_move(conv.graph, b).graph;
    PortGraph lhs = settle(std::move(stepped));
    PortGraph rhs = settle(to_graph(after));
    CHECK(iso_modulo_in_labels(lhs, rhs));
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("eta: one ext1 redex recovers the function graph") {
  for (const char* a : {"\\y.y", "\\y.\\z.y", "\\y.\\z.\\w.((y w)(z w))"}) {
    TermPtr fn = parse_term(a);
    TermPtr eta = abs("x", app(fn, var("x")));
    REQUIRE(free_vars(fn).count("x") == 0);
    PortGraph g = to_graph(eta);
    auto bs = enumerate_redexes(g, "ext1", true);
    REQUIRE(bs.size() == 1);
    PortGraph out = apply_move(g, bs.front()).graph;
    CHECK(isomorphic(out, to_graph(fn)));
  }
}
