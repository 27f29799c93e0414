// Command-line surface for the graph calculus: convert terms, apply scripts,
// reduce, search, run the demos and the randomized soundness checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "glc/emergent.hpp"
#include "glc/error.hpp"
#include "glc/graph_io.hpp"
#include "glc/lambda.hpp"
#include "glc/macros.hpp"
#include "glc/tangle.hpp"

namespace {

struct Config {
  uint64_t seed = 20240101;
  int max_steps = 200;
  int max_depth = 8;
  int trials = 100;
  int dims = 2;
};

Config load_config() {
  Config c;
  const char* env = std::getenv("GLC_CONFIG");
  std::string path = env ? env : "glc.conf";
  std::ifstream f(path);
  if (!f) return c;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq);
    std::string v = line.substr(eq + 1);
    auto strip = [](std::string s) {
      while (!s.empty() && isspace(static_cast<unsigned char>(s.front())))
        s.erase(s.begin());
      while (!s.empty() && isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
      return s;
    };
    k = strip(k);
    v = strip(v);
    try {
      if (k == "seed") c.seed = std::stoull(v);
      else if (k == "max_steps") c.max_steps = std::stoi(v);
      else if (k == "max_depth") c.max_depth = std::stoi(v);
      else if (k == "trials") c.trials = std::stoi(v);
      else if (k == "dims") c.dims = std::stoi(v);
    } catch (const std::exception&) {
      std::cerr << "warning: bad config value for " << k << "\n";
    }
  }
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) glc::fail(glc::Errc::BadArgument, "cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int demo(const std::string& which, const Config& cfg) {
  using namespace glc;
  if (which == "omega") {
    TermPtr omega = parse_term("(\\x.x x) (\\x.x x)");
    PortGraph g = to_graph(omega);
    ReduceResult r = reduce(g, "beta-priority", cfg.max_steps);
    std::cout << "omega: " << r.trace.steps.size() << " moves, status "
              << (r.status == ReduceStatus::Cycle ? "cycle" : "other") << "\n"
              << r.trace.text();
    return r.status == ReduceStatus::Cycle ? 0 : 1;
  }
  if (which == "skk") {
    MacroGraph s = combinator("S"), k1 = combinator("K"), k2 = combinator("K");
    MacroGraph skk = apply_pair(apply_pair(s, k1), k2);
    ReduceResult r = reduce(skk.graph, "beta-priority", cfg.max_steps);
    std::cout << "(S K) K reduction trace:\n" << r.trace.text();
    auto counts = r.trace.counts();
    std::cout << "moves:";
    for (const auto& [m, n] : counts) std::cout << " " << m << "=" << n;
    std::cout << "\n";
    bool is_i = isomorphic(r.graph, combinator("I").graph);
    std::cout << "final isomorphic to I: " << (is_i ? "yes" : "no") << "\n";
    return is_i ? 0 : 1;
  }
  if (which.rfind("zipper:", 0) == 0) {
    int n = std::stoi(which.substr(7));
    MacroGraph z = zipper(n);
    ReduceResult r = reduce(z.graph, "beta-priority", cfg.max_steps);
    std::cout << "zipper(" << n << ") opens in " << r.trace.count("beta")
              << " beta moves\n";
    bool ok = r.trace.count("beta") == n &&
              isomorphic(r.graph, parallel_wires(n + 1));
    std::cout << (ok ? "opened to parallel wires\n" : "unexpected result\n");
    return ok ? 0 : 1;
  }
  if (which == "fixpoint") {
    Fixpoint f = fixpoint(as_unary(combinator("I")));
    auto [result, trace] = run_script(f.grafted, f.witness);
    bool ok = isomorphic(result, f.b.graph);
    std::cout << "fixpoint of I: witness script of " << f.witness.steps.size()
              << " moves, replay " << (ok ? "matches" : "fails") << "\n"
              << f.witness.text();
    return ok ? 0 : 1;
  }
  if (which == "packing") {
    Packing p = pack_arrows();
    PortGraph comp = pack_unpack_composition(p);
    ReduceResult r = reduce(comp, "beta-priority", cfg.max_steps);
    bool ok = r.trace.count("beta") == 3 &&
              isomorphic(r.graph, parallel_wires(2));
    std::cout << "pack/unpack opens with " << r.trace.count("beta")
              << " beta moves -> " << (ok ? "two wires" : "unexpected") << "\n";
    return ok ? 0 : 1;
  }
  std::cerr << "unknown demo '" << which << "'\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glc: rewrite engine for lambda-style port graphs"};
  app.require_subcommand(1);
  Config cfg = load_config();

  std::string term_text;
  auto* parse = app.add_subcommand("parse", "convert a term to a .glc graph");
  parse->add_option("term", term_text, "lambda term")->required();

  std::string show_path;
  bool show_ids = false;
  auto* show = app.add_subcommand("show", "render a .glc file as DOT");
  show->add_option("file", show_path, ".glc file")->required();
  show->add_flag("--ids", show_ids, "list node/edge ids instead of DOT");

  std::string apply_graph, apply_script, trace_dir;
  auto* apply = app.add_subcommand("apply", "run a move script on a graph");
  apply->add_option("graph", apply_graph, ".glc file")->required();
  apply->add_option("script", apply_script, "script file")->required();
  apply->add_option("--trace-dir", trace_dir, "write per-step snapshots here");

  std::string reduce_path, strategy = "beta-priority";
  int max_steps = -1;
  auto* red = app.add_subcommand("reduce", "reduce a graph");
  red->add_option("graph", reduce_path)->required();
  red->add_option("--strategy", strategy);
  red->add_option("--max-steps", max_steps);

  std::string s_from, s_to, s_moves = "beta,loop_add,loop_remove";
  int s_depth = -1;
  auto* sea = app.add_subcommand("search", "breadth-first script search");
  sea->add_option("from", s_from)->required();
  sea->add_option("to", s_to)->required();
  sea->add_option("--moves", s_moves, "comma-separated move names");
  sea->add_option("--depth", s_depth);

  std::string demo_name;
  auto* dem = app.add_subcommand("demo", "scripted demonstrations");
  dem->add_option("name", demo_name,
                  "omega|skk|zipper:<n>|fixpoint|packing")
      ->required();

  auto* emer = app.add_subcommand("emer", "emergent-algebra checks");
  std::string emer_move = "all";
  int emer_trials = -1, emer_dim = -1;
  uint64_t emer_seed = 0;
  auto* sound = emer->add_subcommand("soundness", "decoration oracle check");
  sound->add_option("--move", emer_move);
  sound->add_option("--trials", emer_trials);
  sound->add_option("--dim", emer_dim);
  sound->add_option("--seed", emer_seed);

  auto* tan = app.add_subcommand("tangle", "tangle diagram operations");
  std::string tan_file, tan_style = "lambda";
  auto* ttr = tan->add_subcommand("translate", "diagram to graph");
  ttr->add_option("file", tan_file)->required();
  ttr->add_option("--style", tan_style, "lambda|emergent");
  std::string tred_file;
  auto* tre = tan->add_subcommand("reduced", "reduced endpoint matching");
  tre->add_option("file", tred_file)->required();
  int class_depth = -1;
  auto* tcl = tan->add_subcommand("classify", "classify the oriented moves");
  tcl->add_option("--depth", class_depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    // usage problems exit 2, --help and friends exit 0
    return code == 0 ? 0 : 2;
  }

  if (max_steps < 0) max_steps = cfg.max_steps;
  if (s_depth < 0) s_depth = cfg.max_depth;
  if (emer_trials < 0) emer_trials = cfg.trials;
  if (emer_dim < 0) emer_dim = cfg.dims;
  if (emer_seed == 0) emer_seed = cfg.seed;
  if (class_depth < 0) class_depth = cfg.max_depth;

  try {
    if (*parse) {
      std::cout << glc::emit_glc(glc::to_graph(glc::parse_term(term_text)));
      return 0;
    }
    if (*show) {
      glc::PortGraph g = glc::parse_glc(slurp(show_path));
      std::cout << (show_ids ? glc::emit_glc(g, true) : glc::to_dot(g));
      return 0;
    }
    if (*apply) {
      glc::PortGraph g = glc::parse_glc(slurp(apply_graph));
      glc::MoveScript script = glc::parse_script(slurp(apply_script));
      auto [result, trace] = glc::run_script(g, script);
      if (!trace_dir.empty()) {
        glc::PortGraph cur = g;
        std::ofstream(trace_dir + "/step_0.glc") << glc::emit_glc(cur);
        int i = 0;
        for (const auto& step : trace.steps) {
          cur = glc::apply_move(cur, step.binding).graph;
          std::ofstream(trace_dir + "/step_" + std::to_string(++i) + ".glc")
              << glc::emit_glc(cur);
        }
        std::ofstream(trace_dir + "/script.txt") << script.text();
      }
      std::cout << glc::emit_glc(result);
      return 0;
    }
    if (*red) {
      glc::PortGraph g = glc::parse_glc(slurp(reduce_path));
      glc::ReduceResult r = glc::reduce(g, strategy, max_steps);
      const char* status = r.status == glc::ReduceStatus::Normal ? "normal"
                           : r.status == glc::ReduceStatus::Cycle ? "cycle"
                                                                  : "ceiling";
      std::cout << "# status " << status << ", " << r.trace.steps.size()
                << " moves\n"
                << glc::emit_glc(r.graph);
      return 0;
    }
    if (*sea) {
      glc::PortGraph from = glc::parse_glc(slurp(s_from));
      glc::PortGraph to = glc::parse_glc(slurp(s_to));
      std::vector<std::string> moves;
      std::istringstream ms(s_moves);
      std::string m;
      while (std::getline(ms, m, ',')) moves.push_back(m);
      glc::SearchResult res = glc::search(from, to, moves, s_depth);
      if (res.script) {
        std::cout << glc::script_from_bindings(*res.script).text();
        return 0;
      }
      std::cout << "# none within depth " << s_depth
                << (res.exhausted ? " (exhausted)" : " (truncated)") << "\n";
      return 1;
    }
    if (*dem) return demo(demo_name, cfg);
    if (*sound) {
      std::cout << "# seed " << emer_seed << " dim " << emer_dim << " trials "
                << emer_trials << "\n";
      std::vector<std::string> moves =
          emer_move == "all" ? glc::emergent_sound_moves()
                             : std::vector<std::string>{emer_move};
      bool all_ok = true;
      for (const std::string& mv : moves) {
        glc::SoundnessReport rep =
            glc::check_move_soundness(mv, emer_trials, emer_dim, emer_seed);
        std::cout << rep.text() << "\n";
        if (rep.failures) all_ok = false;
      }
      return all_ok ? 0 : 1;
    }
    if (*ttr) {
      glc::TangleDiagram t = glc::parse_tangle(slurp(tan_file));
      glc::CrossingStyle style =
          tan_style == "emergent"
              ? glc::CrossingStyle::emergent(glc::GroupElem::symbol("a"))
              : glc::CrossingStyle::lambda();
      std::cout << glc::emit_glc(glc::translate(t, style));
      return 0;
    }
    if (*tre) {
      glc::TangleDiagram t = glc::parse_tangle(slurp(tred_file));
      std::cout << glc::reduced(t).str() << "\n";
      return 0;
    }
    if (*tcl) {
      auto rows = glc::classify_moves(class_depth);
      std::cout << glc::classification_table(rows);
      int realizable = 0, obstructed = 0;
      for (const auto& r : rows) {
        if (r.verdict == glc::MoveVerdict::Realizable) ++realizable;
        if (r.verdict == glc::MoveVerdict::Obstructed) ++obstructed;
      }
      std::cout << "# " << realizable << " realizable, " << obstructed
                << " obstructed\n";
      return (realizable == 12 && obstructed == 4) ? 0 : 1;
    }
  } catch (const glc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
