#include <fstream>
#include <sstream>

#include "doctest.h"
#include "glc/emergent.hpp"
#include "glc/error.hpp"
#include "glc/graph.hpp"
#include "glc/graph_io.hpp"
#include "glc/lambda.hpp"
#include "glc/macros.hpp"
#include "test_helpers.hpp"

using namespace glc;
using glc::testing::i_graph;
using glc::testing::random_graph;
using glc::testing::shuffled_copy;

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK(Rat::parse("-3/9") == Rat(-1, 3));
  CHECK(Rat(3, 7).inverse() == Rat(7, 3));
  CHECK_THROWS_AS(Rat(1, 0), Error);
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
}

TEST_CASE("group elements normalize, multiply and invert") {
  GroupElem half(Rat(1, 2));
  GroupElem two(Rat(2));
  CHECK((half * two).is_identity());
  GroupElem a = GroupElem(Rat(3)) * GroupElem::symbol("s", 2);
  CHECK((a * a.inverse()).is_identity());
  CHECK(GroupElem::parse("2/4") == GroupElem(Rat(1, 2)));
  CHECK(GroupElem::parse("1*a^1") == GroupElem::symbol("a"));
  CHECK(GroupElem::parse("2/3*a^-1*b^2").str() == "2/3*a^-1*b^2");
  CHECK_THROWS_AS(GroupElem(Rat(-1)), Error);
  std::map<std::string, Rat> assign{{"a", Rat(1, 2)}};
  CHECK(GroupElem::parse("3*a^2").value(assign) == Rat(3, 4));
  CHECK_THROWS_AS(GroupElem::symbol("q").value(assign), Error);
}

TEST_CASE("gate construction tracks pending ports") {
  PortGraph g;
  NodeId lam = g.add_gate(GateKind::lambda());
  CHECK(g.nodes().size() == 1);
  CHECK(g.validate().size() == 3);  // three uncovered ports
  PortGraph g2;
  g2.add_gate(GateKind::term());
  CHECK(g2.validate().size() == 1);
  NodeId app = g.add_gate(GateKind::app());
  CHECK(g.validate().size() == 6);
  (void)lam;
  (void)app;
}

TEST_CASE("connect enforces orientation compatibility") {
  PortGraph g;
  NodeId lam = g.add_gate(GateKind::lambda());
  NodeId app = g.add_gate(GateKind::app());
  CHECK_NOTHROW(g.connect(Endpoint::of_port(lam, 3), Endpoint::of_port(app, 1)));
  // both out-ports
  CHECK_THROWS_AS(
      g.connect(Endpoint::of_port(app, 3), Endpoint::of_port(lam, 3)), Error);
  // self wiring of the I combinator is fine
  CHECK_NOTHROW(g.connect(Endpoint::of_port(lam, 2), Endpoint::of_port(lam, 1)));
  CHECK_THROWS_AS(
      g.connect(Endpoint::of_port(lam, 2), Endpoint::of_port(app, 2)), Error);
}

TEST_CASE("validate accepts the I graph and free loops") {
  CHECK(i_graph().is_valid());
  PortGraph loops;
  loops.add_loops(2);
  CHECK(loops.is_valid());
  PortGraph bad;
  NodeId lam = bad.add_gate(GateKind::lambda());
  LeafId out = bad.add_leaf(LeafDir::Out);
  bad.connect(Endpoint::of_port(lam, 3), Endpoint::of_leaf(out));
  CHECK(bad.validate().size() == 2);  // ports 1 and 2 dangling
}

TEST_CASE("isomorphism respects structure, boundary and loops") {
  std::mt19937_64 rng(7);
  // same graph built in two orders
  PortGraph a = i_graph();
  PortGraph b;
  {
    LeafId out = b.add_leaf(LeafDir::Out, "root");
    NodeId lam = b.add_gate(GateKind::lambda());
    b.connect(Endpoint::of_port(lam, 3), Endpoint::of_leaf(out));
    b.connect(Endpoint::of_port(lam, 2), Endpoint::of_port(lam, 1));
  }
  CHECK(isomorphic(a, b));
  // wire + 1 loop vs wire + 2 loops
  PortGraph w1 = parallel_wires(1), w2 = parallel_wires(1);
  w1.add_loops(1);
  w2.add_loops(2);
  CHECK_FALSE(isomorphic(w1, w2));
  // empty graph fixed sentinel
  PortGraph e1, e2;
  CHECK(e1.canonical_form() == e2.canonical_form());
  // dilation scales compare exactly
  PortGraph d1, d2;
  auto mk = [](PortGraph& g, const GroupElem& s) {
    NodeId d = g.add_gate(GateKind::dilation(s));
    LeafId x = g.add_leaf(LeafDir::In), y = g.add_leaf(LeafDir::In),
           o = g.add_leaf(LeafDir::Out);
    g.connect(Endpoint::of_leaf(x), Endpoint::of_port(d, 1));
    g.connect(Endpoint::of_leaf(y), Endpoint::of_port(d, 2));
    g.connect(Endpoint::of_port(d, 3), Endpoint::of_leaf(o));
  };
  mk(d1, GroupElem(Rat(1, 2)));
  mk(d2, GroupElem(Rat(2, 4)));
  CHECK(isomorphic(d1, d2));
  PortGraph d3;
  mk(d3, GroupElem(Rat(1, 3)));
  CHECK_FALSE(isomorphic(d1, d3));
}

TEST_CASE("canonical form is invariant under relabeling (200 trials)") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    PortGraph g = random_graph(rng, 8);
    PortGraph h = shuffled_copy(g, rng);
    CHECK(g.canonical_form() == h.canonical_form());
    auto iso = find_isomorphism(g, h);
    REQUIRE(iso.has_value());
  }
}

TEST_CASE("glc format round-trips") {
  std::string text =
      "# the I combinator\n"
      "node n1 lambda\n"
      "edge n1.2 -> n1.1\n"
      "out n1.3 -> r\n";
  PortGraph g = parse_glc(text);
  CHECK(isomorphic(g, i_graph()));
  CHECK(isomorphic(parse_glc(emit_glc(g)), g));

  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    PortGraph r = random_graph(rng, 7);
    CHECK(isomorphic(parse_glc(emit_glc(r)), r));
  }
}

TEST_CASE("glc parse errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_glc("edge n9.1 -> n1.1\n"),
                       doctest::Contains("undeclared node 'n9'"), Error);
  try {
    parse_glc("node n1 lambda\nbogus line here\n");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("dot export mentions gates and loops") {
  std::string dot = to_dot(i_graph());
  CHECK(dot.find("lambda") != std::string::npos);
  PortGraph w = parallel_wires(1);
  w.add_loops(1);
  std::string dot2 = to_dot(w);
  CHECK(dot2.find("loopmark0") != std::string::npos);
  // K renders two lambdas and one termination gate
  std::string dot3 = to_dot(to_graph(parse_term("\\x.\\y.x")));
  size_t lambdas = 0, terms = 0;
  for (size_t p = dot3.find("\"lambda\""); p != std::string::npos;
       p = dot3.find("\"lambda\"", p + 1))
    ++lambdas;
  for (size_t p = dot3.find("\"term\""); p != std::string::npos;
       p = dot3.find("\"term\"", p + 1))
    ++terms;
  CHECK(lambdas == 2);
  CHECK(terms == 1);
}

TEST_CASE("port/leaf counting invariant") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    PortGraph g = random_graph(rng, 8);
    size_t port_endpoints = 0, leaf_endpoints = 0;
    for (const auto& [id, e] : g.edges()) {
      port_endpoints += e.tail.is_port() + e.head.is_port();
      leaf_endpoints += e.tail.is_leaf() + e.head.is_leaf();
    }
    size_t total_ports = 0;
    for (const auto& [n, k] : g.nodes()) total_ports += port_count(k.type);
    CHECK(total_ports == port_endpoints);
    CHECK(g.leaves().size() == leaf_endpoints);
  }
}

TEST_CASE("golden graphs parse back to their constructions") {
  auto check = [](const std::string& file, const PortGraph& expect) {
    std::ifstream f(std::string(GLC_SOURCE_DIR) + "/golden/" + file);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    PortGraph g = parse_glc(os.str());
    CHECK(isomorphic(g, expect));
    CHECK(isomorphic(parse_glc(emit_glc(g)), expect));
  };
  check("i.glc", combinator("I").graph);
  check("k.glc", combinator("K").graph);
  check("s.glc", combinator("S").graph);
  check("omega.glc", to_graph(parse_term("(\\x.x x) (\\x.x x)")));
  check("zipper2.glc", zipper(2).graph);
  check("packer.glc", pack_arrows().packer.graph);
  check("unpacker.glc", pack_arrows().unpacker.graph);
  check("sum.glc",
        build_emer_macro(EmerKind::Sum, GroupElem::symbol("a")).macro.graph);
  check("inverse.glc",
        build_emer_macro(EmerKind::Inverse, GroupElem::symbol("a")).macro.graph);
}

TEST_CASE("double covering a port is rejected") {
  PortGraph g;
  NodeId lam = g.add_gate(GateKind::lambda());
  NodeId ap = g.add_gate(GateKind::app());
  g.connect(Endpoint::of_port(lam, 3), Endpoint::of_port(ap, 1));
  try {
    g.connect(Endpoint::of_port(lam, 3), Endpoint::of_port(ap, 2));
    FAIL("expected PortAlreadyCovered");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PortAlreadyCovered);
  }
}
