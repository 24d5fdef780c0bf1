// seppath: generate graphs, build and check separating path systems, and
// localize a single faulty edge from probe outcomes.
//
// Exit codes: 0 ok, 1 parse or usage error, 2 strategy or solver failure,
// 3 inconsistent probe outcome, 4 system is not separating.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "report.hpp"
#include "seppath/seppath.hpp"

namespace {

using namespace seppath;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;
constexpr int kInconsistent = 3;
constexpr int kNotSeparating = 4;
constexpr std::uint64_t kDefaultSeed = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

Graph load_graph(const std::string& path) {
  try {
    return parse_graph(read_text(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

PathSystem load_system(const Graph& g, const std::string& path) {
  try {
    return parse_path_system(g, read_text(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

Graph generate(const std::string& family, std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw UsageError("size parameter must be >= 1");
  if (family == "path") return make_path_graph(n);
  if (family == "star") return make_star(n);
  if (family == "comb") return make_hair_comb(n);
  if (family == "ladder") return make_ladder(n);
  if (family == "complete") return make_complete(n);
  if (family == "tree-random") return make_random_tree(n, seed);
  if (family == "gnp") {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("gnp needs p in [0,1]");
    return make_gnp(n, p, seed);
  }
  throw UsageError("unknown family: " + family);
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string family_label(const std::string& family, std::size_t n, double p) {
  std::string s = family + "-" + std::to_string(n);
  if (family == "gnp") s += "-" + fmt_double(p).substr(0, 4);
  return s;
}

// Corpus spec: comma-separated items "family:lo..hi[:step][@p]". A trailing
// plural "s" on the family name is accepted ("paths:3..12").
struct CorpusItem {
  std::string family;
  std::size_t n;
  double p;
};

std::vector<CorpusItem> parse_corpus(const std::string& spec) {
  std::vector<CorpusItem> items;
  std::stringstream all(spec);
  std::string part;
  while (std::getline(all, part, ',')) {
    if (part.empty()) continue;
    double p = 0.0;
    if (auto at = part.find('@'); at != std::string::npos) {
      try {
        p = std::stod(part.substr(at + 1));
      } catch (const std::exception&) {
        throw UsageError("bad probability in corpus item: " + part);
      }
      part.resize(at);
    }
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw UsageError("corpus item needs family:range: " + part);
    std::string family = part.substr(0, colon);
    static const std::vector<std::string> known{"path", "star", "comb", "ladder", "complete", "gnp", "tree-random"};
    if (std::find(known.begin(), known.end(), family) == known.end() && !family.empty() &&
        family.back() == 's') {
      family.pop_back();
    }
    if (std::find(known.begin(), known.end(), family) == known.end()) {
      throw UsageError("unknown corpus family: " + family);
    }
    std::string range = part.substr(colon + 1);
    std::size_t step = 1;
    if (auto c2 = range.find(':'); c2 != std::string::npos) {
      step = std::stoul(range.substr(c2 + 1));
      range.resize(c2);
    }
    std::size_t lo = 0;
    std::size_t hi = 0;
    try {
      if (auto dots = range.find(".."); dots != std::string::npos) {
        lo = std::stoul(range.substr(0, dots));
        hi = std::stoul(range.substr(dots + 2));
      } else {
        lo = hi = std::stoul(range);
      }
    } catch (const std::exception&) {
      throw UsageError("bad range in corpus item: " + part);
    }
    if (step == 0 || lo == 0 || lo > hi) throw UsageError("bad range in corpus item: " + part);
    if (family == "gnp" && !(p > 0.0 && p <= 1.0)) throw UsageError("gnp corpus item needs @p");
    for (std::size_t n = lo; n <= hi; n += step) items.push_back({family, n, p});
  }
  if (items.empty()) throw UsageError("empty corpus");
  return items;
}

struct Options {
  std::string family;
  std::size_t n = 0;
  double p = -1.0;
  std::string graph_file;
  std::string system_file;
  std::vector<std::size_t> outcome;
  std::string strategy = "portfolio";
  StrategyParams params;
  bool entropy = false;
  ExactCaps caps;
  std::string out;
  std::string corpus;
  bool no_timing = false;
  bool diagnostics = false;
};

int cmd_gen(const Options& o) {
  const double p = o.p < 0.0 ? 0.5 : o.p;
  write_text(o.out, serialize(generate(o.family, o.n, p, o.params.seed)));
  return kOk;
}

int cmd_construct(const Options& o) {
  const Graph g = load_graph(o.graph_file);
  try {
    const StrategyOutcome out = run_strategy(o.strategy, g, o.params);
    write_text(o.out, serialize(out.system));
    std::cerr << "strategy=" << out.strategy_name << " size=" << out.size
              << " verified=" << (out.verified ? "true" : "false") << "\n";
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
    if (o.diagnostics) std::cerr << report::to_json(out).dump(2) << "\n";
    return out.verified ? kOk : kFailed;
  } catch (const StrategyFailed& e) {
    std::cerr << "strategy failed at stage '" << e.stage() << "': " << e.what() << "\n";
    return kFailed;
  } catch (const DecompositionError& e) {
    std::cerr << "strategy failed at stage 'decomposition': " << e.what() << "\n";
    return kFailed;
  }
}

int cmd_verify(const Options& o) {
  const Graph g = load_graph(o.graph_file);
  const PathSystem ps = load_system(g, o.system_file);
  const SeparationReport r = verify(g, ps);
  write_text(o.out, report::to_json(g, r).dump(2) + "\n");
  return r.separating ? kOk : kNotSeparating;
}

int cmd_localize(const Options& o) {
  const Graph g = load_graph(o.graph_file);
  const PathSystem ps = load_system(g, o.system_file);
  if (!verify(g, ps).separating) {
    std::cerr << "system is not separating\n";
    return kNotSeparating;
  }
  try {
    const EdgeId e = decode(g, ps, o.outcome);
    write_text(o.out, std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v) + "\n");
    return kOk;
  } catch (const DecodeError& e) {
    std::cerr << "inconsistent outcome: " << e.what() << "\n";
    return kInconsistent;
  }
}

int cmd_solve(const Options& o) {
  const Graph g = load_graph(o.graph_file);
  try {
    const ExactResult r = exact_min(g, o.caps);
    write_text(o.out, report::to_json(r).dump(2) + "\n");
    return kOk;
  } catch (const SolverLimit& e) {
    std::cerr << "solver limit: " << e.what() << "\n";
    return kFailed;
  }
}

int cmd_bench(const Options& o) {
  const auto corpus = parse_corpus(o.corpus);
  std::string csv = "graph,n,m,strategy,size,size_per_n,verified,millis\n";
  for (const auto& item : corpus) {
    const Graph g = generate(item.family, item.n, item.p, o.params.seed);
    const auto start = std::chrono::steady_clock::now();
    std::string strategy = o.strategy;
    std::string size;
    std::string per_n;
    bool verified = false;
    try {
      const StrategyOutcome out = run_strategy(o.strategy, g, o.params);
      strategy = out.strategy_name;
      verified = out.verified && verify(g, out.system).separating;
      size = std::to_string(out.size);
      per_n = fmt_double(static_cast<double>(out.size) / static_cast<double>(g.n()));
    } catch (const std::exception& e) {
      std::cerr << family_label(item.family, item.n, item.p) << ": " << e.what() << "\n";
    }
    const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    csv += family_label(item.family, item.n, item.p) + "," + std::to_string(g.n()) + "," +
           std::to_string(g.m()) + "," + strategy + "," + size + "," + per_n + "," +
           (verified ? "true" : "false") + "," + std::to_string(o.no_timing ? 0 : millis) + "\n";
  }
  write_text(o.out, csv);
  return kOk;
}

void add_strategy_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--strategy", o.strategy, "Strategy to run")
      ->check(CLI::IsMember({"tree", "path", "star", "comb", "ladder", "min-degree", "dense", "random",
                             "portfolio", "trivial"}))
      ->capture_default_str();
  cmd->add_option("--c", o.params.c, "Degree/density parameter c in (0,1]")->capture_default_str();
  cmd->add_option("--p", o.params.p, "Edge probability for the random-graph strategy (default: measured)");
  cmd->add_option("--max-retries", o.params.max_retries, "Random split attempts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_seed_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.params.seed, "Random seed")->capture_default_str();
  cmd->add_flag("--entropy", o.entropy, "Draw the seed from the system entropy source");
}

void add_out_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.params.seed = kDefaultSeed;
  CLI::App app{"Separating path systems: generate, construct, verify, localize, solve, bench"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a graph in edge-list format");
  gen->add_option("family", o.family, "path|star|comb|ladder|gnp|tree-random|complete")
      ->required()
      ->check(CLI::IsMember({"path", "star", "comb", "ladder", "gnp", "tree-random", "complete"}));
  gen->add_option("n", o.n, "Order (path, star, tree-random, gnp, complete) or k (comb, ladder)")
      ->required();
  gen->add_option("p", o.p, "Edge probability (gnp only)");
  add_seed_flags(gen, o);
  add_out_flag(gen, o);

  auto* construct = app.add_subcommand("construct", "Build a separating path system");
  construct->add_option("graph", o.graph_file, "Graph file ('-' for stdin)")->required();
  add_strategy_flags(construct, o);
  add_seed_flags(construct, o);
  add_out_flag(construct, o);
  construct->add_flag("--diagnostics", o.diagnostics, "Print strategy diagnostics as JSON on stderr");

  auto* ver = app.add_subcommand("verify", "Check that a path system separates the edges");
  ver->add_option("graph", o.graph_file, "Graph file")->required();
  ver->add_option("system", o.system_file, "Path system file")->required();
  add_out_flag(ver, o);

  auto* loc = app.add_subcommand("localize", "Name the faulty edge from the failed probes");
  loc->add_option("graph", o.graph_file, "Graph file")->required();
  loc->add_option("system", o.system_file, "Path system file")->required();
  loc->add_option("failed", o.outcome, "Indices of failed probe paths (none: all passed)");
  add_out_flag(loc, o);

  auto* solve = app.add_subcommand("solve", "Compute f(G) exactly on a small graph");
  solve->add_option("graph", o.graph_file, "Graph file")->required();
  solve->add_option("--catalog-cap", o.caps.catalog_cap, "Maximum number of catalogued paths")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--node-cap", o.caps.node_cap, "Maximum number of search nodes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_out_flag(solve, o);

  auto* bench = app.add_subcommand("bench", "Run a strategy over a generated corpus, CSV output");
  bench->add_option("corpus", o.corpus, "Items family:lo..hi[:step][@p], comma separated")->required();
  add_strategy_flags(bench, o);
  add_seed_flags(bench, o);
  add_out_flag(bench, o);
  bench->add_flag("--no-timing", o.no_timing, "Write 0 in the millis column (byte-stable output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (o.entropy) {
      std::random_device rd;
      o.params.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
      std::cerr << "seed=" << o.params.seed << "\n";
    }
    if (*gen) return cmd_gen(o);
    if (*construct) return cmd_construct(o);
    if (*ver) return cmd_verify(o);
    if (*loc) return cmd_localize(o);
    if (*solve) return cmd_solve(o);
    if (*bench) return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidPath& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
