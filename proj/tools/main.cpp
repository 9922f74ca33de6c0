// cruxkit: command-line surface over the graph library.
//
// Subcommands: gen, percolate, crux, expander, cycle, separate, experiment,
// selftest.  Global flags: --seed, --threads, --out, --format, --config.
// Exit codes: 0 success, 1 internal error, 2 usage/precondition error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cruxkit/brute.hpp"
#include "cruxkit/crux.hpp"
#include "cruxkit/cycles.hpp"
#include "cruxkit/expander.hpp"
#include "cruxkit/generators.hpp"
#include "cruxkit/graph.hpp"
#include "cruxkit/percolation.hpp"
#include "cruxkit/rational.hpp"
#include "cruxkit/rng.hpp"
#include "cruxkit/separators.hpp"

namespace {

using cruxkit::Edge;
using cruxkit::Graph;
using cruxkit::Rational;
using cruxkit::Vertex;
using cruxkit::VertexSet;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

// A usage or precondition problem: message to stderr, exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ---------------------------------------------------------------------------
// Global options and output plumbing
// ---------------------------------------------------------------------------

struct GlobalOpts {
  uint64_t seed = 0;
  int threads = 0;  // 0 = resolve from CRUXKIT_THREADS or hardware
  std::string out;  // empty = stdout
  std::string format;  // resolved per command when empty
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CRUXKIT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void write_artifact(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(g.out, std::ios::binary);
  if (!os) throw UsageError("cannot open output file: " + g.out);
  os << text;
}

// Fully-resolved config echo, in insertion order.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

std::string comment_header(const std::string& command, const ConfigEcho& cfg) {
  std::ostringstream os;
  os << "# cruxkit " << kVersion << "\n";
  os << "# command=" << command << "\n";
  for (const auto& [k, v] : cfg) os << "# " << k << "=" << v << "\n";
  return os.str();
}

json envelope(const std::string& command, const ConfigEcho& cfg, double wall_ms,
              json result) {
  json config = json::object();
  for (const auto& [k, v] : cfg) config[k] = v;
  return json{{"command", command},
              {"version", kVersion},
              {"config", std::move(config)},
              {"wall_ms", wall_ms},
              {"result", std::move(result)}};
}

void emit_json(const GlobalOpts& g, const json& doc) {
  write_artifact(g, doc.dump(2) + "\n");
}

json to_json(const VertexSet& s) {
  json arr = json::array();
  for (Vertex v : s.to_vector()) arr.push_back(v);
  return arr;
}

json to_json(const std::vector<Vertex>& vs) {
  json arr = json::array();
  for (Vertex v : vs) arr.push_back(v);
  return arr;
}

// ---------------------------------------------------------------------------
// Edge-list IO
// ---------------------------------------------------------------------------

std::string to_edge_list(const Graph& g, const std::string& command,
                         const ConfigEcho& cfg) {
  std::ostringstream os;
  os << comment_header(command, cfg);
  os << "# n=" << g.vertex_count() << "\n";
  for (const Edge& e : g.edges()) os << e.u << " " << e.v << "\n";
  return os.str();
}

Graph read_edge_list(std::istream& is) {
  int n = 0;
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.rfind("# n=", 0) == 0) {
      n = std::max(n, std::atoi(line.c_str() + 4));
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v))
      throw UsageError("edge list parse error at line " + std::to_string(lineno) +
                       ": expected \"u v\"");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    n = std::max<int>(n, static_cast<int>(std::max(u, v)) + 1);
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph read_graph_file(const std::string& path) {
  if (path == "-") return read_edge_list(std::cin);
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open input file: " + path);
  return read_edge_list(is);
}

// ---------------------------------------------------------------------------
// Generator dispatch (shared by gen and percolate)
// ---------------------------------------------------------------------------

struct GenSpec {
  std::string kind;
  int m = -1, r = -1, n = -1, a = -1, b = -1, q = -1;
};

void require_param(const GenSpec& s, int value, const std::string& flag) {
  if (value < 0)
    throw UsageError("gen: --" + flag + " is required for kind=" + s.kind);
}

Graph build_graph(const GenSpec& s, ConfigEcho& cfg) {
  cfg.emplace_back("kind", s.kind);
  auto note = [&](const std::string& k, int v) {
    cfg.emplace_back(k, std::to_string(v));
  };
  if (s.kind == "hypercube") {
    require_param(s, s.m, "m");
    note("m", s.m);
    return cruxkit::hypercube(s.m);
  }
  if (s.kind == "hamming") {
    require_param(s, s.m, "m");
    require_param(s, s.r, "r");
    note("m", s.m);
    note("r", s.r);
    return cruxkit::hamming(s.m, s.r);
  }
  if (s.kind == "complete") {
    require_param(s, s.n, "n");
    note("n", s.n);
    return cruxkit::complete(s.n);
  }
  if (s.kind == "complete_bipartite") {
    require_param(s, s.a, "a");
    require_param(s, s.b, "b");
    note("a", s.a);
    note("b", s.b);
    return cruxkit::complete_bipartite(s.a, s.b);
  }
  if (s.kind == "projective_incidence") {
    require_param(s, s.q, "q");
    note("q", s.q);
    return cruxkit::projective_incidence(s.q);
  }
  if (s.kind == "cycle") {
    require_param(s, s.n, "n");
    note("n", s.n);
    return cruxkit::cycle_graph(s.n);
  }
  if (s.kind == "path") {
    require_param(s, s.n, "n");
    note("n", s.n);
    return cruxkit::path_graph(s.n);
  }
  throw UsageError("gen: unknown kind \"" + s.kind + "\"");
}

// Input graph for analysis commands: --input file, or a generator spec.
Graph obtain_graph(const std::string& input, const GenSpec& gen, ConfigEcho& cfg) {
  if (!input.empty()) {
    cfg.emplace_back("input", input);
    return read_graph_file(input);
  }
  if (!gen.kind.empty()) return build_graph(gen, cfg);
  throw UsageError("no input graph: pass --input FILE or --kind KIND");
}

void add_gen_flags(CLI::App* cmd, GenSpec& spec, bool required) {
  auto* kind = cmd->add_option("--kind", spec.kind,
                               "graph family: hypercube, hamming, complete, "
                               "complete_bipartite, projective_incidence, cycle, path");
  if (required) kind->required();
  cmd->add_option("--m", spec.m, "dimension (hypercube, hamming)");
  cmd->add_option("--r", spec.r, "alphabet size (hamming)");
  cmd->add_option("--n", spec.n, "vertex count (complete, cycle, path)");
  cmd->add_option("--a", spec.a, "left side size (complete_bipartite)");
  cmd->add_option("--b", spec.b, "right side size (complete_bipartite)");
  cmd->add_option("--q", spec.q, "prime order (projective_incidence)");
}

// ---------------------------------------------------------------------------
// Result serialization helpers
// ---------------------------------------------------------------------------

json cycle_search_to_json(const cruxkit::CycleSearchResult& r) {
  json out;
  if (r.cycle) {
    out["cycle"] = to_json(r.cycle->vertices);
    out["length"] = r.cycle->length();
    out["method"] = cruxkit::to_string(r.cycle->method);
    if (r.cycle->bound_claimed)
      out["bound_claimed"] = *r.cycle->bound_claimed;
  } else {
    out["cycle"] = nullptr;
    out["length"] = 0;
  }
  out["hypothesis_met"] = r.hypothesis_met;
  out["meets_target"] = r.meets_target;
  out["note"] = r.note;
  return out;
}

json verification_to_json(const cruxkit::ExpanderVerification& v) {
  const char* status = v.status == cruxkit::ExpanderVerification::Status::exhaustive
                           ? "exhaustive"
                           : v.status == cruxkit::ExpanderVerification::Status::sampled
                                 ? "sampled"
                                 : "failed";
  json out{{"status", status}, {"samples_checked", v.samples_checked}};
  out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  return out;
}

json expander_report_to_json(const cruxkit::ExpanderReport& rep) {
  return json{{"subgraph", to_json(rep.subgraph)},
              {"size", rep.subgraph.size()},
              {"achieved_density", rep.achieved_density.str()},
              {"achieved_density_value", rep.achieved_density.to_double()},
              {"min_degree", rep.min_degree},
              {"delta", rep.delta},
              {"density_target", rep.density_target},
              {"verification", verification_to_json(rep.verification)},
              {"iterations", rep.iterations}};
}

json decomposition_to_json(const cruxkit::SeparatorDecomposition& d) {
  constexpr std::size_t kElideAbove = 10000;
  json nodes = json::array();
  for (const auto& node : d.nodes) {
    json jn;
    jn["size"] = node.set.size();
    if (node.set.size() <= kElideAbove)
      jn["set"] = to_json(node.set);
    jn["separator"] = to_json(node.separator);
    jn["leaf"] = node.leaf;
    jn["left"] = node.left;
    jn["right"] = node.right;
    nodes.push_back(std::move(jn));
  }
  json out;
  out["nodes"] = std::move(nodes);
  out["aggregate_size"] = d.aggregate.size();
  if (static_cast<std::size_t>(d.aggregate.size()) <= kElideAbove)
    out["aggregate"] = to_json(d.aggregate);
  out["max_leaf"] = d.max_leaf;
  out["depth"] = d.depth;
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand payloads
// ---------------------------------------------------------------------------

struct CruxArgs {
  std::string input, alpha;
  bool exact = false, heuristic = false;
};

struct ExpanderArgs {
  std::string input;
  double epsilon = 1.0 / 400.0;
  double t = 10.0;
  double C = 40.0;
};

struct CycleArgs {
  std::string input, method;
  std::string alpha = "1/2";
  double epsilon = -1;
  double t = -1;
  int restarts = -1;
  bool assume_expander = false;
};

struct SeparateArgs {
  std::string input;
  int s = 0, t = 0;
};

struct PercolateArgs {
  std::string input;
  double p = 0.5;
  uint64_t trial = 0;
};

struct ExperimentArgs {
  std::string q_list = "5,7,11,13";
  std::string c_list = "5";
  std::string m_list = "10";
  double eps = 0.5;
  int trials = 50;
};

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    auto dots = item.find("..");
    if (dots != std::string::npos) {
      int lo = std::stoi(item.substr(0, dots));
      int hi = std::stoi(item.substr(dots + 2));
      if (hi < lo) throw UsageError(std::string(flag) + ": bad range " + item);
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else if (!item.empty()) {
      out.push_back(std::stoi(item));
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::string resolve_format(const GlobalOpts& g, const std::string& def,
                           const std::vector<std::string>& allowed) {
  std::string f = g.format.empty() ? def : g.format;
  for (const auto& a : allowed)
    if (f == a) return f;
  std::string msg = "--format " + f + " is not supported here (allowed:";
  for (const auto& a : allowed) msg += " " + a;
  throw UsageError(msg + ")");
}

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

int run_gen(const GlobalOpts& g, const GenSpec& spec) {
  ConfigEcho cfg;
  double t0 = now_ms();
  Graph graph = build_graph(spec, cfg);
  double wall = now_ms() - t0;
  std::string format = resolve_format(g, "edgelist", {"edgelist", "json"});
  cfg.emplace_back("format", format);
  if (format == "edgelist") {
    write_artifact(g, to_edge_list(graph, "gen", cfg));
  } else {
    json edges = json::array();
    for (const Edge& e : graph.edges()) edges.push_back({e.u, e.v});
    emit_json(g, envelope("gen", cfg, wall,
                          json{{"n", graph.vertex_count()},
                               {"edge_count", graph.edge_count()},
                               {"edges", std::move(edges)}}));
  }
  return 0;
}

int run_percolate(const GlobalOpts& g, const PercolateArgs& args, const GenSpec& spec) {
  if (args.p < 0.0 || args.p > 1.0)
    throw UsageError("percolate: --p must lie in [0,1]");
  ConfigEcho cfg;
  double t0 = now_ms();
  Graph host = obtain_graph(args.input, spec, cfg);
  cfg.emplace_back("p", std::to_string(args.p));
  cfg.emplace_back("seed", std::to_string(g.seed));
  cfg.emplace_back("trial", std::to_string(args.trial));
  cruxkit::PercolationConfig pc{args.p, g.seed, args.trial};
  Graph sample = cruxkit::sample_subgraph(host, pc);
  double wall = now_ms() - t0;
  std::string format = resolve_format(g, "edgelist", {"edgelist", "json"});
  cfg.emplace_back("format", format);
  if (format == "edgelist") {
    write_artifact(g, to_edge_list(sample, "percolate", cfg));
  } else {
    json edges = json::array();
    for (const Edge& e : sample.edges()) edges.push_back({e.u, e.v});
    emit_json(g, envelope("percolate", cfg, wall,
                          json{{"n", sample.vertex_count()},
                               {"edge_count", sample.edge_count()},
                               {"edges", std::move(edges)}}));
  }
  return 0;
}

int run_crux(const GlobalOpts& g, const CruxArgs& args) {
  Rational alpha = cruxkit::parse_rational(args.alpha);
  if (!(alpha > Rational(0, 1) && alpha < Rational(1, 1)))
    throw UsageError("alpha must lie in (0,1)");
  if (args.exact && args.heuristic)
    throw UsageError("crux: --exact and --heuristic are mutually exclusive");
  ConfigEcho cfg;
  double t0 = now_ms();
  Graph graph = read_graph_file(args.input);
  cfg.emplace_back("input", args.input);
  cfg.emplace_back("alpha", alpha.str());
  bool exact = args.exact || (!args.heuristic && graph.vertex_count() <= 24);
  cfg.emplace_back("mode", exact ? "exact" : "heuristic");
  cfg.emplace_back("format", resolve_format(g, "json", {"json"}));
  cruxkit::CruxCertificate cert = exact ? cruxkit::crux_exact(graph, alpha)
                                        : cruxkit::crux_upper_heuristic(graph, alpha);
  double wall = now_ms() - t0;
  json result{{"alpha", cert.alpha.str()},
              {"lower", cert.lower_bound},
              {"upper", cert.upper_bound},
              {"method", cruxkit::to_string(cert.lower_method)}};
  result["witness"] = cert.witness ? to_json(*cert.witness) : json(nullptr);
  emit_json(g, envelope("crux", cfg, wall, std::move(result)));
  return 0;
}

int run_expander(const GlobalOpts& g, const std::string& action,
                 const ExpanderArgs& args) {
  if (args.epsilon <= 0) throw UsageError("expander: --epsilon must be positive");
  if (args.t <= 0) throw UsageError("expander: --t must be positive");
  ConfigEcho cfg;
  double t0 = now_ms();
  Graph graph = read_graph_file(args.input);
  cfg.emplace_back("input", args.input);
  cfg.emplace_back("epsilon", std::to_string(args.epsilon));
  cfg.emplace_back("t", std::to_string(args.t));
  cfg.emplace_back("seed", std::to_string(g.seed));
  cfg.emplace_back("format", resolve_format(g, "json", {"json"}));
  json result;
  if (action == "verify") {
    cruxkit::ExpanderParams params{args.epsilon, args.t};
    cruxkit::VerifyOptions vopts;
    vopts.seed = g.seed;
    result = json{{"verification",
                   verification_to_json(cruxkit::verify_expander(graph, params, vopts))}};
  } else {
    cfg.emplace_back("C", std::to_string(args.C));
    cruxkit::ExtractionParams params;
    params.epsilon = args.epsilon;
    params.t = args.t;
    params.C = args.C;
    params.seed = g.seed;
    result = expander_report_to_json(cruxkit::extract_expander(graph, params));
  }
  double wall = now_ms() - t0;
  emit_json(g, envelope("expander " + action, cfg, wall, std::move(result)));
  return 0;
}

int run_cycle(const GlobalOpts& g, const CycleArgs& args) {
  ConfigEcho cfg;
  double t0 = now_ms();
  Graph graph = read_graph_file(args.input);
  cfg.emplace_back("input", args.input);
  cfg.emplace_back("method", args.method);
  cfg.emplace_back("seed", std::to_string(g.seed));
  cfg.emplace_back("format", resolve_format(g, "json", {"json"}));
  json result;
  if (args.method == "greedy") {
    result = cycle_search_to_json(cruxkit::greedy_min_degree_cycle(graph));
  } else if (args.method == "posa") {
    int target = args.t >= 0 ? static_cast<int>(args.t)
                             : std::max(2, graph.vertex_count() - 1);
    cfg.emplace_back("target", std::to_string(target));
    cruxkit::PosaOptions opts;
    if (args.restarts > 0) opts.restarts = args.restarts;
    opts.seed = g.seed == 0 ? opts.seed : g.seed;
    result = cycle_search_to_json(cruxkit::posa_rotation_cycle(graph, target, opts));
  } else if (args.method == "pipeline") {
    Rational alpha = cruxkit::parse_rational(args.alpha);
    if (!(alpha > Rational(0, 1) && alpha < Rational(1, 1)))
      throw UsageError("alpha must lie in (0,1)");
    cfg.emplace_back("alpha", alpha.str());
    cruxkit::PipelineOptions opts;
    if (args.epsilon > 0) opts.epsilon = args.epsilon;
    opts.seed = g.seed == 0 ? opts.seed : g.seed;
    cruxkit::PipelineResult pr = cruxkit::cycle_via_crux_pipeline(graph, alpha, opts);
    result = cycle_search_to_json(pr.search);
    result["bounds"] = json{{"crux_bound", pr.bounds.crux_bound},
                            {"expander_bound_a", pr.bounds.expander_bound_a},
                            {"expander_bound_b", pr.bounds.expander_bound_b},
                            {"posa_t", pr.bounds.posa_t},
                            {"host_ratio", pr.bounds.host_ratio},
                            {"crux_estimate", pr.bounds.crux_estimate}};
    result["expander"] = expander_report_to_json(pr.expander);
  } else if (args.method == "dfs-stack") {
    double eps = args.epsilon > 0 ? args.epsilon : 1.0 / 500.0;
    double t = args.t > 0 ? args.t : 2.0;
    cfg.emplace_back("epsilon", std::to_string(eps));
    cfg.emplace_back("t", std::to_string(t));
    cruxkit::DfsStackOptions opts;
    opts.assume_expander = args.assume_expander;
    result = cycle_search_to_json(cruxkit::dfs_stack_cycle(graph, eps, t, opts));
  } else {
    throw UsageError("cycle: unknown --method \"" + args.method +
                     "\" (greedy, posa, pipeline, dfs-stack)");
  }
  double wall = now_ms() - t0;
  emit_json(g, envelope("cycle", cfg, wall, std::move(result)));
  return 0;
}

int run_separate(const GlobalOpts& g, const SeparateArgs& args) {
  if (args.s < 1 || args.t < 1) throw UsageError("separate: --s and --t must be >= 1");
  ConfigEcho cfg;
  double t0 = now_ms();
  Graph graph = read_graph_file(args.input);
  cfg.emplace_back("input", args.input);
  cfg.emplace_back("s", std::to_string(args.s));
  cfg.emplace_back("t", std::to_string(args.t));
  cfg.emplace_back("seed", std::to_string(g.seed));
  cfg.emplace_back("format", resolve_format(g, "json", {"json"}));
  cruxkit::SeparatorOptions opts;
  opts.seed = g.seed == 0 ? opts.seed : g.seed;
  cruxkit::SeparabilityVerdict verdict =
      cruxkit::separability_decompose(graph, args.s, args.t, opts);
  double wall = now_ms() - t0;
  json result{{"separable", verdict.separable},
              {"s", verdict.s_used},
              {"t", verdict.t_used}};
  result["decomposition"] =
      verdict.decomposition ? decomposition_to_json(*verdict.decomposition) : json(nullptr);
  if (verdict.evidence) {
    json ev;
    ev["piece_size"] = verdict.evidence->piece.size();
    if (verdict.evidence->piece.size() <= 10000)
      ev["piece"] = to_json(verdict.evidence->piece);
    ev["budget"] = verdict.evidence->budget;
    ev["exhaustive"] = verdict.evidence->exhaustive;
    ev["search_record"] = verdict.evidence->search_record;
    result["evidence"] = std::move(ev);
  } else {
    result["evidence"] = nullptr;
  }
  emit_json(g, envelope("separate", cfg, wall, std::move(result)));
  return 0;
}

int run_experiment_hypercube(const GlobalOpts& g, const ExperimentArgs& args) {
  std::vector<int> ms = parse_int_list(args.m_list, "--m");
  if (args.trials < 1) throw UsageError("experiment: --trials must be >= 1");
  int threads = resolve_threads(g.threads);
  ConfigEcho cfg;
  cfg.emplace_back("m", args.m_list);
  cfg.emplace_back("eps", std::to_string(args.eps));
  cfg.emplace_back("trials", std::to_string(args.trials));
  cfg.emplace_back("seed", std::to_string(g.seed));
  cfg.emplace_back("threads", std::to_string(threads));
  std::string format = resolve_format(g, "csv", {"csv", "json"});
  cfg.emplace_back("format", format);
  double t0 = now_ms();
  std::vector<cruxkit::HypercubeExperiment> exps;
  for (int m : ms)
    exps.push_back(
        cruxkit::hypercube_cycle_experiment(m, args.eps, args.trials, g.seed, threads));
  double wall = now_ms() - t0;
  if (format == "csv") {
    std::ostringstream os;
    os << comment_header("experiment hypercube", cfg);
    bool first = true;
    for (const auto& e : exps) {
      std::string body = cruxkit::to_csv(e);
      if (!first) {
        // Keep per-m comment lines, drop the repeated column header.
        std::size_t at = 0;
        while (at < body.size() && body[at] == '#')
          at = body.find('\n', at) + 1;
        std::size_t end = body.find('\n', at);
        body.erase(at, end + 1 - at);
      }
      os << body;
      first = false;
    }
    write_artifact(g, os.str());
  } else {
    json jexps = json::array();
    for (const auto& e : exps) {
      json rows = json::array();
      for (const auto& r : e.rows)
        rows.push_back(json{{"trial_id", r.trial_id},
                            {"c1", r.c1},
                            {"h_size", r.h_size},
                            {"cycle_len", r.cycle_len},
                            {"floor", r.floor_bound},
                            {"runtime_ms", r.wall_ms}});
      jexps.push_back(json{{"m", e.m},
                           {"p", e.p},
                           {"psi", e.psi},
                           {"s", e.s_param},
                           {"t", e.t_param},
                           {"rows", std::move(rows)}});
    }
    emit_json(g, envelope("experiment hypercube", cfg, wall,
                          json{{"experiments", std::move(jexps)}}));
  }
  return 0;
}

int run_experiment_c4free(const GlobalOpts& g, const ExperimentArgs& args) {
  std::vector<int> qs = parse_int_list(args.q_list, "--q");
  std::vector<double> cs = parse_double_list(args.c_list, "--c");
  if (args.trials < 1) throw UsageError("experiment: --trials must be >= 1");
  int threads = resolve_threads(g.threads);
  ConfigEcho cfg;
  cfg.emplace_back("q", args.q_list);
  cfg.emplace_back("c", args.c_list);
  cfg.emplace_back("trials", std::to_string(args.trials));
  cfg.emplace_back("seed", std::to_string(g.seed));
  cfg.emplace_back("threads", std::to_string(threads));
  std::string format = resolve_format(g, "csv", {"csv", "json"});
  cfg.emplace_back("format", format);
  double t0 = now_ms();
  cruxkit::C4FreeExperiment exp =
      cruxkit::c4free_cycle_experiment(qs, cs, args.trials, g.seed, threads);
  double wall = now_ms() - t0;
  if (format == "csv") {
    write_artifact(g, comment_header("experiment c4free", cfg) + cruxkit::to_csv(exp));
  } else {
    json rows = json::array();
    for (const auto& r : exp.rows)
      rows.push_back(json{{"trial_id", r.trial_id},
                          {"q", r.q},
                          {"k", r.k},
                          {"c", r.c},
                          {"p", r.p},
                          {"splice_len", r.splice_len},
                          {"posa_len", r.posa_len},
                          {"best_len", r.best_len},
                          {"ratio", r.ratio},
                          {"runtime_ms", r.wall_ms}});
    json fits = json::array();
    for (const auto& f : exp.fits)
      fits.push_back(json{{"c", f.c},
                          {"slope", f.slope},
                          {"intercept", f.intercept},
                          {"points", f.points}});
    emit_json(g, envelope("experiment c4free", cfg, wall,
                          json{{"rows", std::move(rows)}, {"fits", std::move(fits)}}));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// selftest: embedded brute-force cross-checks (n <= 12), deterministic CSV
// ---------------------------------------------------------------------------

Graph random_graph(int n, double p, uint64_t key) {
  std::vector<Edge> edges;
  int idx = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++idx)
      if (cruxkit::edge_uniform01(key, 0, 0, idx) < p) edges.push_back({u, v});
  return Graph::from_edges(n, std::move(edges));
}

int run_selftest(const GlobalOpts& g) {
  resolve_format(g, "csv", {"csv"});
  std::ostringstream body;
  body << "check,status,detail\n";
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    body << name << "," << (ok ? "pass" : "FAIL") << "," << detail << "\n";
    if (!ok) ++failures;
  };

  // Crux: exact enumeration against the independent mask-scan oracle.
  {
    int agree = 0, total = 0;
    std::vector<Rational> alphas{{3, 10}, {1, 2}, {7, 10}, {9, 10}};
    for (int i = 0; i < 12; ++i) {
      Graph h = random_graph(5 + i % 8, 0.35 + 0.05 * (i % 7), 0xC0DE + i);
      if (h.edge_count() == 0) continue;
      for (const Rational& a : alphas) {
        ++total;
        if (cruxkit::crux_exact(h, a).upper_bound == cruxkit::brute_crux(h, a)) ++agree;
      }
    }
    report("crux_exact_vs_oracle", agree == total,
           std::to_string(agree) + "/" + std::to_string(total));
  }

  // Crux: heuristic brackets the exact value.
  {
    int ok = 0, total = 0;
    for (int i = 0; i < 20; ++i) {
      Graph h = random_graph(6 + i % 7, 0.4, 0xBEA7 + i);
      if (h.edge_count() == 0) continue;
      ++total;
      auto exact = cruxkit::crux_exact(h, Rational(1, 2));
      auto heur = cruxkit::crux_upper_heuristic(h, Rational(1, 2));
      if (heur.lower_bound <= exact.upper_bound && exact.upper_bound <= heur.upper_bound)
        ++ok;
    }
    report("crux_heuristic_brackets", ok == total,
           std::to_string(ok) + "/" + std::to_string(total));
  }

  // Cycles: no search ever beats the brute-force longest cycle.
  {
    int ok = 0, match = 0, total = 0;
    for (int i = 0; i < 30; ++i) {
      Graph h = random_graph(5 + i % 6, 0.3 + 0.06 * (i % 8), 0xCAFE + i);
      int oracle = cruxkit::brute_longest_cycle(h);
      ++total;
      auto greedy = cruxkit::greedy_min_degree_cycle(h);
      auto posa = cruxkit::posa_rotation_cycle(h, h.vertex_count());
      int lg = greedy.cycle ? greedy.cycle->length() : 0;
      int lp = posa.cycle ? posa.cycle->length() : 0;
      if (lg <= oracle && lp <= oracle) ++ok;
      if (lp == oracle) ++match;
    }
    bool pass = ok == total && match * 10 >= total * 9;
    report("cycles_vs_oracle", pass,
           "never_exceed=" + std::to_string(ok) + "/" + std::to_string(total) +
               ";match=" + std::to_string(match) + "/" + std::to_string(total));
  }

  // Expander: C_8 verifies exhaustively at a modest rate; K_5 too.
  {
    cruxkit::ExpanderParams params{0.01, 2.0};
    auto v1 = cruxkit::verify_expander(cruxkit::cycle_graph(8), params);
    auto v2 = cruxkit::verify_expander(cruxkit::complete(5), params);
    bool pass = v1.status == cruxkit::ExpanderVerification::Status::exhaustive &&
                v2.status == cruxkit::ExpanderVerification::Status::exhaustive;
    report("expander_verify_small", pass, pass ? "exhaustive" : "unexpected status");
  }

  // Separators: exact decomposition of P_15 stays within the size bound.
  {
    auto verdict = cruxkit::separability_decompose(cruxkit::path_graph(15), 3, 4);
    bool pass = verdict.separable && verdict.decomposition &&
                verdict.decomposition->max_leaf < 4 &&
                verdict.decomposition->aggregate.size() * 3 * 4 <= 4 * 15 * 15;
    report("separator_p15", pass,
           pass ? "size=" + std::to_string(verdict.decomposition->aggregate.size())
                : "decomposition failed");
  }

  // Percolation: probe/sample coupling on the Heawood graph.
  {
    Graph heawood = cruxkit::projective_incidence(2);
    bool pass = true;
    for (uint64_t trial = 0; trial < 5 && pass; ++trial) {
      cruxkit::PercolationConfig cfg{0.5, 77, trial};
      auto dfs = cruxkit::dfs_with_unrevealed(heawood, cfg);
      Graph sample = cruxkit::sample_subgraph(heawood, cfg);
      std::size_t present = 0;
      for (const auto& [e, kept] : dfs.revealed)
        if (kept) ++present;
      for (const Edge& e : dfs.unrevealed_q)
        if (cruxkit::edge_present(cfg, heawood.edge_index(e.u, e.v))) ++present;
      if (present != sample.edge_count()) pass = false;
    }
    report("percolation_coupling_heawood", pass, pass ? "5/5" : "mismatch");
  }

  write_artifact(g, body.str());
  return failures == 0 ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"cruxkit: crux numbers, sublinear expanders, long cycles, "
               "separators, and percolation experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand
  app.set_config("--config", "", "key=value file merged under explicit flags");

  GlobalOpts g;
  app.add_option("--seed", g.seed, "PRNG seed (default 0)")->capture_default_str();
  app.add_option("--threads", g.threads,
                 "worker threads (default: CRUXKIT_THREADS or hardware)");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "output format: json, csv, edgelist")
      ->check(CLI::IsMember({"json", "csv", "edgelist"}));

  GenSpec gen_spec;
  auto* gen_cmd = app.add_subcommand("gen", "emit a generated graph");
  add_gen_flags(gen_cmd, gen_spec, /*required=*/true);

  PercolateArgs perc_args;
  GenSpec perc_spec;
  auto* perc_cmd = app.add_subcommand("percolate", "sample a bond-percolated subgraph");
  perc_cmd->add_option("--input", perc_args.input, "host graph edge list ('-' = stdin)");
  add_gen_flags(perc_cmd, perc_spec, /*required=*/false);
  perc_cmd->add_option("--p", perc_args.p, "keep probability")->required();
  perc_cmd->add_option("--trial", perc_args.trial, "trial id (default 0)");

  CruxArgs crux_args;
  auto* crux_cmd = app.add_subcommand("crux", "compute the crux number c_alpha");
  crux_cmd->add_option("--input", crux_args.input, "edge list file ('-' = stdin)")
      ->required();
  crux_cmd->add_option("--alpha", crux_args.alpha, "alpha in (0,1), e.g. 0.5 or 1/2")
      ->required();
  crux_cmd->add_flag("--exact", crux_args.exact, "force exact enumeration (n <= 24)");
  crux_cmd->add_flag("--heuristic", crux_args.heuristic, "force the peeling heuristic");

  ExpanderArgs exp_args;
  auto* expander_cmd = app.add_subcommand("expander", "verify or extract expanders");
  expander_cmd->require_subcommand(1);
  auto* verify_cmd = expander_cmd->add_subcommand("verify", "check (epsilon,t)-expansion");
  auto* extract_cmd =
      expander_cmd->add_subcommand("extract", "extract a dense expander subgraph");
  for (CLI::App* c : {verify_cmd, extract_cmd}) {
    c->add_option("--input", exp_args.input, "edge list file ('-' = stdin)")->required();
    c->add_option("--epsilon", exp_args.epsilon, "expansion epsilon")->required();
    c->add_option("--t", exp_args.t, "expansion scale t")->required();
  }
  extract_cmd->add_option("--C", exp_args.C, "extraction constant C (default 40)");

  CycleArgs cycle_args;
  auto* cycle_cmd = app.add_subcommand("cycle", "long-cycle searches");
  cycle_cmd->add_option("--input", cycle_args.input, "edge list file ('-' = stdin)")
      ->required();
  cycle_cmd
      ->add_option("--method", cycle_args.method,
                   "greedy, posa, pipeline, or dfs-stack")
      ->required();
  cycle_cmd->add_option("--alpha", cycle_args.alpha, "pipeline alpha (default 1/2)");
  cycle_cmd->add_option("--epsilon", cycle_args.epsilon, "expansion epsilon");
  cycle_cmd->add_option("--t", cycle_args.t, "posa target / dfs-stack scale");
  cycle_cmd->add_option("--restarts", cycle_args.restarts, "posa restart count");
  cycle_cmd->add_flag("--assume-expander", cycle_args.assume_expander,
                      "treat the host as a verified expander (dfs-stack)");

  SeparateArgs sep_args;
  auto* sep_cmd = app.add_subcommand("separate", "recursive separator decomposition");
  sep_cmd->add_option("--input", sep_args.input, "edge list file ('-' = stdin)")
      ->required();
  sep_cmd->add_option("--s", sep_args.s, "budget divisor: per-piece budget |X|/s")
      ->required();
  sep_cmd->add_option("--t", sep_args.t, "leaf threshold")->required();

  ExperimentArgs e_args;
  auto* exp_cmd = app.add_subcommand("experiment", "percolation experiments");
  exp_cmd->require_subcommand(1);
  auto* c4_cmd = exp_cmd->add_subcommand("c4free", "incidence-graph cycle experiment");
  c4_cmd->add_option("--q", e_args.q_list, "prime orders, e.g. 5,7,11,13");
  c4_cmd->add_option("--c", e_args.c_list, "mean-degree constants, e.g. 3,5");
  c4_cmd->add_option("--trials", e_args.trials, "trials per (q,c)");
  auto* hyp_cmd = exp_cmd->add_subcommand("hypercube", "hypercube cycle experiment");
  hyp_cmd->add_option("--m", e_args.m_list, "dimensions, e.g. 10,12,14 or 10..14");
  hyp_cmd->add_option("--eps", e_args.eps, "p = (1+eps)/m");
  hyp_cmd->add_option("--trials", e_args.trials, "trials per m");

  auto* self_cmd = app.add_subcommand("selftest", "embedded brute-force cross-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(g, gen_spec);
    if (perc_cmd->parsed()) return run_percolate(g, perc_args, perc_spec);
    if (crux_cmd->parsed()) return run_crux(g, crux_args);
    if (expander_cmd->parsed())
      return run_expander(g, verify_cmd->parsed() ? "verify" : "extract", exp_args);
    if (cycle_cmd->parsed()) return run_cycle(g, cycle_args);
    if (sep_cmd->parsed()) return run_separate(g, sep_args);
    if (exp_cmd->parsed())
      return c4_cmd->parsed() ? run_experiment_c4free(g, e_args)
                              : run_experiment_hypercube(g, e_args);
    if (self_cmd->parsed()) return run_selftest(g);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
