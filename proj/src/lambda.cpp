#include "glc/lambda.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "glc/error.hpp"
#include "glc/moves.hpp"

namespace glc {

TermPtr var(const std::string& name) {
  if (name.empty()) fail(Errc::BadArgument, "empty variable name");
  return std::make_shared<LambdaTerm>(
      LambdaTerm{LambdaTerm::Kind::Var, name, nullptr, nullptr});
}

TermPtr abs(const std::string& name, TermPtr body) {
  if (name.empty()) fail(Errc::BadArgument, "empty binder name");
  return std::make_shared<LambdaTerm>(
      LambdaTerm{LambdaTerm::Kind::Abs, name, std::move(body), nullptr});
}

TermPtr app(TermPtr fun, TermPtr arg) {
  return std::make_shared<LambdaTerm>(
      LambdaTerm{LambdaTerm::Kind::App, "", std::move(fun), std::move(arg)});
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  [[noreturn]] void err(const std::string& msg) {
    fail(Errc::SyntaxError, msg + " at offset " + std::to_string(i));
  }
  bool at_lambda() {
    if (s[i] == '\\') return true;
    // UTF-8 lambda
    return i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xCE &&
           static_cast<unsigned char>(s[i + 1]) == 0xBB;
  }
  void eat_lambda() { i += s[i] == '\\' ? 1 : 2; }
  std::string ident() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && (isalnum(static_cast<unsigned char>(s[i])) ||
                            s[i] == '_' || s[i] == '\''))
      ++i;
    if (i == start) err("expected identifier");
    return s.substr(start, i - start);
  }

  TermPtr atom() {
    skip_ws();
    if (i >= s.size()) err("unexpected end of input");
    if (s[i] == '(') {
      ++i;
      TermPtr t = term();
      skip_ws();
      if (i >= s.size() || s[i] != ')') err("expected ')'");
      ++i;
      return t;
    }
    if (at_lambda()) {
      eat_lambda();
      std::string name = ident();
      skip_ws();
      if (i >= s.size() || s[i] != '.') err("expected '.' after binder");
      ++i;
      return abs(name, term());
    }
    if (s[i] == ')' || s[i] == '.') err("unexpected token");
    return var(ident());
  }

  TermPtr term() {
    TermPtr t = atom();
    while (true) {
      skip_ws();
      if (i >= s.size() || s[i] == ')') break;
      t = app(t, atom());
    }
    return t;
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) {
  Parser p(text);
  TermPtr t = p.term();
  if (!p.eof()) p.err("trailing input");
  return t;
}

std::string term_to_string(const TermPtr& t) {
  switch (t->kind) {
    case LambdaTerm::Kind::Var:
      return t->name;
    case LambdaTerm::Kind::Abs:
      return "\\" + t->name + "." + term_to_string(t->left);
    case LambdaTerm::Kind::App: {
      std::string f = term_to_string(t->left);
      std::string a = term_to_string(t->right);
      if (t->left->kind == LambdaTerm::Kind::Abs) f = "(" + f + ")";
      if (t->right->kind != LambdaTerm::Kind::Var) a = "(" + a + ")";
      return f + " " + a;
    }
  }
  return "?";
}

// --- term operations --------------------------------------------------------

std::set<std::string> free_vars(const TermPtr& t) {
  switch (t->kind) {
    case LambdaTerm::Kind::Var:
      return {t->name};
    case LambdaTerm::Kind::Abs: {
      auto fv = free_vars(t->left);
      fv.erase(t->name);
      return fv;
    }
    case LambdaTerm::Kind::App: {
      auto fv = free_vars(t->left);
      auto fr = free_vars(t->right);
      fv.insert(fr.begin(), fr.end());
      return fv;
    }
  }
  return {};
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  for (int k = 1;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace

TermPtr subst(const TermPtr& t, const std::string& name, const TermPtr& repl) {
  switch (t->kind) {
    case LambdaTerm::Kind::Var:
      return t->name == name ? repl : t;
    case LambdaTerm::Kind::App:
      return app(subst(t->left, name, repl), subst(t->right, name, repl));
    case LambdaTerm::Kind::Abs: {
      if (t->name == name) return t;
      auto fv_repl = free_vars(repl);
      if (fv_repl.count(t->name) && free_vars(t->left).count(name)) {
        // capture: rename the binder first
        std::set<std::string> used = fv_repl;
        auto fv_body = free_vars(t->left);
        used.insert(fv_body.begin(), fv_body.end());
        used.insert(name);
        std::string nn = fresh_name(t->name, used);
        TermPtr renamed = subst(t->left, t->name, var(nn));
        return abs(nn, subst(renamed, name, repl));
      }
      return abs(t->name, subst(t->left, name, repl));
    }
  }
  return t;
}

namespace {

void alpha_render(const TermPtr& t, std::map<std::string, int>& env, int& next,
                  std::ostream& os) {
  switch (t->kind) {
    case LambdaTerm::Kind::Var:
      if (env.count(t->name))
        os << "b" << env.at(t->name);
      else
        os << "f" << t->name;
      break;
    case LambdaTerm::Kind::Abs: {
      int mine = next++;
      auto saved = env.count(t->name) ? std::optional<int>(env[t->name])
                                      : std::nullopt;
      env[t->name] = mine;
      os << "L" << mine << ".";
      alpha_render(t->left, env, next, os);
      if (saved)
        env[t->name] = *saved;
      else
        env.erase(t->name);
      break;
    }
    case LambdaTerm::Kind::App:
      os << "(";
      alpha_render(t->left, env, next, os);
      os << " ";
      alpha_render(t->right, env, next, os);
      os << ")";
      break;
  }
}

}  // namespace

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  std::ostringstream oa, ob;
  std::map<std::string, int> env;
  int next = 0;
  alpha_render(a, env, next, oa);
  env.clear();
  next = 0;
  alpha_render(b, env, next, ob);
  return oa.str() == ob.str();
}

TermPtr beta_step(const TermPtr& t, const std::string& path) {
  if (path.empty()) {
    if (t->kind != LambdaTerm::Kind::App ||
        t->left->kind != LambdaTerm::Kind::Abs)
      fail(Errc::NotARedex, "path does not address a redex");
    return subst(t->left->left, t->left->name, t->right);
  }
  char c = path[0];
  std::string rest = path.substr(1);
  switch (t->kind) {
    case LambdaTerm::Kind::Abs:
      if (c != '0') fail(Errc::NotARedex, "bad path");
      return abs(t->name, beta_step(t->left, rest));
    case LambdaTerm::Kind::App:
      if (c == '0') return app(beta_step(t->left, rest), t->right);
      if (c == '1') return app(t->left, beta_step(t->right, rest));
      fail(Errc::NotARedex, "bad path");
    case LambdaTerm::Kind::Var:
      fail(Errc::NotARedex, "path runs past a variable");
  }
  fail(Errc::NotARedex, "bad path");
}

std::vector<std::string> redex_paths(const TermPtr& t) {
  std::vector<std::string> out;
  std::function<void(const TermPtr&, std::string)> walk =
      [&](const TermPtr& u, std::string path) {
        switch (u->kind) {
          case LambdaTerm::Kind::Var:
            return;
          case LambdaTerm::Kind::Abs:
            walk(u->left, path + "0");
            return;
          case LambdaTerm::Kind::App:
            if (u->left->kind == LambdaTerm::Kind::Abs) out.push_back(path);
            walk(u->left, path + "0");
            walk(u->right, path + "1");
            return;
        }
      };
  walk(t, "");
  return out;
}

// --- step 1: path words -----------------------------------------------------

std::string path_word_str(const PathWord& w) {
  std::ostringstream os;
  for (PathLetter l : w) {
    switch (l) {
      case PathLetter::LamL: os << "\xce\xbb^L "; break;
      case PathLetter::LamR: os << "\xce\xbb^R "; break;
      case PathLetter::AppL: os << "^^L "; break;
      case PathLetter::AppR: os << "^^R "; break;
    }
  }
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

namespace {

void scan_leaves(const TermPtr& t, std::vector<PathLetter>& up,
                 std::vector<std::pair<std::string, PathWord>>& binders) {
  switch (t->kind) {
    case LambdaTerm::Kind::Var:
      return;  // occurrences are not binder leaves
    case LambdaTerm::Kind::Abs: {
      // binder-name leaf hangs on the lambda's left leg and is scanned first
      PathWord w;
      w.push_back(PathLetter::LamL);
      w.insert(w.end(), up.rbegin(), up.rend());
      binders.push_back({t->name, w});
      up.push_back(PathLetter::LamR);
      scan_leaves(t->left, up, binders);
      up.pop_back();
      return;
    }
    case LambdaTerm::Kind::App:
      up.push_back(PathLetter::AppL);
      scan_leaves(t->left, up, binders);
      up.pop_back();
      up.push_back(PathLetter::AppR);
      scan_leaves(t->right, up, binders);
      up.pop_back();
      return;
  }
}

}  // namespace

std::vector<std::pair<std::string, PathWord>> bound_list(const TermPtr& t) {
  std::vector<std::pair<std::string, PathWord>> out;
  std::vector<PathLetter> up;
  scan_leaves(t, up, out);
  return out;
}

// --- conversion to GRAPH ----------------------------------------------------

namespace {

struct Converter {
  PortGraph g;
  std::map<std::string, NodeId> provenance;
  struct Binder {
    std::string name;
    NodeId lam;
    std::vector<Endpoint> occs;
  };
  std::vector<Binder> binders;  // stack
  std::vector<std::string> free_order;
  std::map<std::string, std::vector<Endpoint>> free_occs;

  // Left comb over consumers in occurrence order: the root fans out to the
  // comb of all but the last, and to the last.
  Endpoint make_comb(const std::vector<Endpoint>& occs, size_t n) {
    if (n == 1) return occs[0];
    NodeId y = g.add_gate(GateKind::fanout());
    Endpoint sub = make_comb(occs, n - 1);
    g.connect(Endpoint::of_port(y, 2), sub);
    g.connect(Endpoint::of_port(y, 3), occs[n - 1]);
    return Endpoint::of_port(y, 1);
  }

  void attach(const std::vector<Endpoint>& occs, Endpoint source) {
    Endpoint sink = make_comb(occs, occs.size());
    g.connect(source, sink);
  }

  void build(const TermPtr& t, Endpoint parent_in, const std::string& path) {
    switch (t->kind) {
      case LambdaTerm::Kind::Var: {
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          if (it->name == t->name) {
            it->occs.push_back(parent_in);
            return;
          }
        }
        if (!free_occs.count(t->name)) free_order.push_back(t->name);
        free_occs[t->name].push_back(parent_in);
        return;
      }
      case LambdaTerm::Kind::Abs: {
        NodeId L = g.add_gate(GateKind::lambda());
        provenance[path] = L;
        g.connect(Endpoint::of_port(L, 3), parent_in);
        binders.push_back({t->name, L, {}});
        build(t->left, Endpoint::of_port(L, 1), path + "0");
        Binder b = binders.back();
        binders.pop_back();
        if (b.occs.empty()) {
          NodeId top = g.add_gate(GateKind::term());
          g.connect(Endpoint::of_port(L, 2), Endpoint::of_port(top, 1));
        } else {
          attach(b.occs, Endpoint::of_port(L, 2));
        }
        return;
      }
      case LambdaTerm::Kind::App: {
        NodeId A = g.add_gate(GateKind::app());
        provenance[path] = A;
        g.connect(Endpoint::of_port(A, 3), parent_in);
        build(t->left, Endpoint::of_port(A, 1), path + "0");
        build(t->right, Endpoint::of_port(A, 2), path + "1");
        return;
      }
    }
  }
};

}  // namespace

ConversionResult to_graph_full(const TermPtr& t) {
  Converter c;
  LeafId root = c.g.add_leaf(LeafDir::Out, "r");
  c.build(t, Endpoint::of_leaf(root), "");
  for (const std::string& name : c.free_order) {
    LeafId in = c.g.add_leaf(LeafDir::In, name);
    c.attach(c.free_occs.at(name), Endpoint::of_leaf(in));
  }
  return {std::move(c.g), std::move(c.provenance)};
}

PortGraph to_graph(const TermPtr& t) { return to_graph_full(t).graph; }

// --- lambda-graph predicate ---------------------------------------------------

namespace {

// Directed edge reachability; edges satisfying `absorb` are collected but
// not expanded (a path may stop there).
template <typename Pred>
std::set<EdgeId> reachable_edges(const PortGraph& g, EdgeId start,
                                 Pred absorb) {
  std::set<EdgeId> seen{start};
  std::deque<EdgeId> queue;
  if (!absorb(start)) queue.push_back(start);
  while (!queue.empty()) {
    EdgeId e = queue.front();
    queue.pop_front();
    const Edge& ed = g.edge(e);
    if (!ed.head.is_port()) continue;
    NodeId n = ed.head.port.node;
    const GateKind& k = g.gate(n);
    for (int p = 1; p <= port_count(k.type); ++p) {
      if (port_is_in(k.type, p)) continue;
      EdgeId next = g.edge_at_port({n, p});
      if (next && seen.insert(next).second && !absorb(next))
        queue.push_back(next);
    }
  }
  return seen;
}

}  // namespace

bool is_lambda_graph(const PortGraph& g) {
  if (!g.is_valid()) fail(Errc::InvalidGraph, "is_lambda_graph");
  for (const auto& [n, k] : g.nodes())
    if (k.type == GateType::Dilation) return false;
  for (const auto& [n, k] : g.nodes()) {
    if (k.type != GateType::Lambda) continue;
    EdgeId start = g.edge_at_port({n, 2});
    EdgeId body_in = g.edge_at_port({n, 1});
    auto success = [&](EdgeId e) {
      const Edge& ed = g.edge(e);
      return e == body_in ||
             (ed.head.is_port() &&
              g.gate(ed.head.port.node).type == GateType::Term);
    };
    // Every path from the bound output must be completable to one that stops
    // at a termination gate or at this lambda's own body input; paths are
    // considered complete as soon as they reach such an edge.
    for (EdgeId e : reachable_edges(g, start, success)) {
      bool ok = false;
      for (EdgeId r : reachable_edges(g, e, success)) {
        if (success(r)) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
  }
  return true;
}

PortGraph fanout_normalize(PortGraph g) {
  if (!g.is_valid()) fail(Errc::InvalidGraph, "fanout_normalize");
  for (int iter = 0; iter < 100000; ++iter) {
    auto bs = enumerate_redexes(g, "co_assoc", /*forward=*/false);
    if (bs.empty()) return g;
    g = apply_move(g, bs.front()).graph;
  }
  fail(Errc::InvalidGraph, "fanout_normalize did not terminate");
}

bool iso_modulo_in_labels(const PortGraph& a, const PortGraph& b) {
  auto ina = a.in_leaves();
  auto inb = b.in_leaves();
  if (ina.size() != inb.size()) return false;
  // Rebuild b with its IN leaves reordered to match a's labels.
  std::vector<LeafId> order;
  std::set<LeafId> used;
  for (LeafId la : ina) {
    const std::string& want = a.leaf(la).label;
    bool found = false;
    for (LeafId lb : inb) {
      if (!used.count(lb) && b.leaf(lb).label == want) {
        order.push_back(lb);
        used.insert(lb);
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  // Construct a relabelled copy of b with the new IN order.
  PortGraph c;
  std::map<NodeId, NodeId> nmap;
  std::map<LeafId, LeafId> lmap;
  for (const auto& [n, k] : b.nodes()) nmap[n] = c.add_gate(k);
  for (LeafId lb : order) lmap[lb] = c.add_leaf(LeafDir::In, b.leaf(lb).label);
  for (LeafId lb : b.out_leaves())
    lmap[lb] = c.add_leaf(LeafDir::Out, b.leaf(lb).label);
  auto conv = [&](const Endpoint& ep) {
    if (ep.is_port())
      return Endpoint::of_port(nmap.at(ep.port.node), ep.port.port);
    return Endpoint::of_leaf(lmap.at(ep.leaf));
  };
  for (const auto& [id, e] : b.edges()) c.connect(conv(e.tail), conv(e.head));
  c.add_loops(b.loops());
  return isomorphic(a, c);
}

TermPtr random_closed_term(std::mt19937_64& rng, int max_size) {
  const std::vector<std::string> pool{"x", "y", "z"};
  std::function<TermPtr(int, std::vector<std::string>&)> gen =
      [&](int budget, std::vector<std::string>& env) -> TermPtr {
    auto pick_var = [&]() -> TermPtr {
      std::uniform_int_distribution<size_t> d(0, env.size() - 1);
      return var(env[d(rng)]);
    };
    if (budget <= 1) {
      if (!env.empty()) return pick_var();
      std::uniform_int_distribution<size_t> d(0, pool.size() - 1);
      std::string n = pool[d(rng)];
      env.push_back(n);
      auto v = pick_var();
      env.pop_back();
      return abs(n, v);
    }
    std::uniform_int_distribution<int> d(0, env.empty() ? 0 : 5);
    int roll = d(rng);
    if (env.empty() || roll <= 1) {  // abstraction
      std::uniform_int_distribution<size_t> dp(0, pool.size() - 1);
      std::string n = pool[dp(rng)];
      env.push_back(n);
      TermPtr body = gen(budget - 1, env);
      env.pop_back();
      return abs(n, body);
    }
    if (roll <= 3) {  // application
      std::uniform_int_distribution<int> ds(1, budget - 2 > 0 ? budget - 2 : 1);
      int ls = ds(rng);
      TermPtr f = gen(ls, env);
      TermPtr a = gen(budget - 1 - ls, env);
      return app(f, a);
    }
    return pick_var();
  };
  std::vector<std::string> env;
  return gen(max_size, env);
}

}  // namespace glc
