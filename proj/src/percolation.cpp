#include "cruxkit/percolation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cruxkit/parallel.hpp"
#include "cruxkit/rng.hpp"

namespace cruxkit {

namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

// Fixed-precision float formatting shared by both CSV writers so reruns are
// byte-identical.
std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << x;
  return os.str();
}

}  // namespace

RevealedDfs dfs_with_unrevealed(const Graph& host, const PercolationConfig& cfg) {
  int n = host.vertex_count();
  RevealedDfs r;
  r.k = host.min_degree();
  r.forest.parent.assign(n, -1);
  r.forest.depth.assign(n, 0);
  r.forest.order.assign(n, -1);

  std::vector<char> probed(host.edge_count(), 0);
  std::vector<int> cursor(n, 0);
  std::vector<Vertex> stack;
  int clock = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (r.forest.order[root] != -1) continue;
    r.forest.roots.push_back(root);
    r.forest.order[root] = clock++;
    stack.assign(1, root);
    while (!stack.empty()) {
      Vertex v = stack.back();
      auto nb = host.neighbors(v);
      bool advanced = false;
      while (cursor[v] < static_cast<int>(nb.size())) {
        Vertex u = nb[cursor[v]];
        if (r.forest.order[u] != -1) {
          ++cursor[v];  // already visited; this edge is never probed here
          continue;
        }
        std::size_t ei = host.edge_index(v, u);
        bool present = edge_present(cfg, ei);
        probed[ei] = 1;
        r.revealed.push_back({Edge{std::min(v, u), std::max(v, u)}, present});
        ++cursor[v];
        if (present) {
          r.forest.parent[u] = v;
          r.forest.depth[u] = r.forest.depth[v] + 1;
          r.forest.order[u] = clock++;
          stack.push_back(u);
          advanced = true;
          break;
        }
      }
      if (!advanced) stack.pop_back();
    }
  }
  const auto& all = host.edges();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!probed[i]) r.unrevealed_q.push_back(all[i]);
  build_euler_intervals(r.forest, host);
  return r;
}

DiagnosticsReport classify_vertices(const RevealedDfs& r, double eps) {
  if (eps < 0 || eps > 1)
    throw std::invalid_argument("classify_vertices: eps must lie in [0, 1]");
  int n = static_cast<int>(r.forest.parent.size());
  DiagnosticsReport rep;
  rep.eps = eps;
  rep.k = r.k;
  rep.per_vertex.assign(n, VertexDiagnostics{});
  double k = r.k;

  std::vector<int> q_deg(n, 0);
  for (const Edge& e : r.unrevealed_q) {
    ++q_deg[e.u];
    ++q_deg[e.v];
  }

  // Subtree sizes: children processed before parents in reverse push order.
  std::vector<long long> subtree(n, 1);
  std::vector<Vertex> by_order(n);
  for (int v = 0; v < n; ++v) by_order[r.forest.order[v]] = v;
  for (int i = n - 1; i >= 0; --i) {
    Vertex v = by_order[i];
    if (r.forest.parent[v] != -1) subtree[r.forest.parent[v]] += subtree[v];
  }

  // Near-descendant counts: every vertex credits its ancestors up to the
  // distance threshold (and itself at distance zero).
  double near_threshold = (1.0 - 10.0 * eps) * k * k;
  long long reach = near_threshold < 0 ? -1
                                       : static_cast<long long>(std::floor(
                                             near_threshold + 1e-9));
  std::vector<long long> near(n, 0);
  if (reach >= 0) {
    for (Vertex u = 0; u < n; ++u) {
      Vertex w = u;
      long long d = 0;
      while (w != -1 && d <= reach) {
        ++near[w];
        w = r.forest.parent[w];
        ++d;
      }
    }
  }

  double full_need = (1.0 - eps) * k;
  double poor_cap = eps * k * k;
  double light_cap = (1.0 - 9.0 * eps) * k * k;
  for (int v = 0; v < n; ++v) {
    auto& d = rep.per_vertex[v];
    d.full = q_deg[v] + 1e-9 >= full_need;
    d.poor = static_cast<double>(subtree[v]) <= poor_cap + 1e-9;
    d.rich = !d.poor;
    d.light = static_cast<double>(near[v]) <= light_cap + 1e-9;
    rep.full_count += d.full;
    rep.poor_count += d.poor;
    rep.light_count += d.light;
  }
  if (n > 0) {
    rep.full_fraction = static_cast<double>(rep.full_count) / n;
    rep.poor_fraction = static_cast<double>(rep.poor_count) / n;
    rep.light_fraction = static_cast<double>(rep.light_count) / n;
  }
  return rep;
}

long long count_long_unrevealed_chords(const RevealedDfs& r, double eps) {
  double k = r.k;
  double threshold = (1.0 - 20.0 * eps) * k * k;
  long long count = 0;
  for (const Edge& e : r.unrevealed_q) {
    long long dist = std::llabs(static_cast<long long>(r.forest.depth[e.u]) -
                                r.forest.depth[e.v]);
    if (static_cast<double>(dist) + 1e-9 >= threshold) ++count;
  }
  return count;
}

ExpansionCheck claim41_expansion_check(const Graph& host, const RevealedDfs& r,
                                       const VertexSet& a, double eps, double C) {
  int n = host.vertex_count();
  if (a.universe() != n)
    throw std::invalid_argument("claim41_expansion_check: set universe mismatch");
  double k = r.k;
  long long expected = static_cast<long long>(std::ceil(C * k - 1e-9));
  if (a.size() != expected)
    throw std::invalid_argument("claim41_expansion_check: |A| must be ceil(C*k) = " +
                                std::to_string(expected) + ", got " +
                                std::to_string(a.size()));
  std::vector<int> q_deg(n, 0);
  for (const Edge& e : r.unrevealed_q) {
    ++q_deg[e.u];
    ++q_deg[e.v];
  }
  double full_need = (1.0 - eps) * k;
  for (Vertex v : a.to_vector())
    if (q_deg[v] + 1e-9 < full_need)
      throw std::invalid_argument("claim41_expansion_check: vertex " +
                                  std::to_string(v) + " in A is not full");
  std::vector<char> hit(n, 0);
  for (const Edge& e : r.unrevealed_q) {
    if (a.contains(e.u) && !a.contains(e.v)) hit[e.v] = 1;
    if (a.contains(e.v) && !a.contains(e.u)) hit[e.u] = 1;
  }
  ExpansionCheck out;
  for (int v = 0; v < n; ++v) out.measured += hit[v];
  out.bound = (1.0 - 5.0 * eps) * k * k;
  out.vacuous = out.bound > static_cast<double>(n);
  return out;
}

ComponentReport giant_component(const Graph& g) {
  int n = g.vertex_count();
  ComponentReport rep;
  if (n == 0) return rep;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : g.edges()) {
    int a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<long long> size(n, 0);
  for (int v = 0; v < n; ++v) ++size[find(v)];
  for (int v = 0; v < n; ++v)
    if (size[v] > 0) rep.sizes.push_back(size[v]);
  std::sort(rep.sizes.rbegin(), rep.sizes.rend());
  rep.largest = rep.sizes.front();
  rep.fraction = static_cast<double>(rep.largest) / n;
  return rep;
}

// --------------------------------------------------------------------------
// Experiments
// --------------------------------------------------------------------------

namespace {

// Search effort per experiment trial; sized so full sweeps stay in budget
// (rotation steps are cheap and the search stops once the target is met).
constexpr int kTrialRestarts = 64;
constexpr long long kTrialStepFactor = 24;

CycleSearchResult experiment_posa(const Graph& g, int target) {
  PosaOptions opts;
  opts.restarts = std::min(kTrialRestarts, std::max(1, g.vertex_count()));
  opts.step_budget = kTrialStepFactor * std::max(32, g.vertex_count());
  opts.stop_at_target = true;
  return posa_rotation_cycle(g, target, opts);
}

}  // namespace

HypercubeExperiment hypercube_cycle_experiment(int m, double eps_theta, int trials,
                                               uint64_t seed, int threads) {
  if (m < 2 || m > 24)
    throw std::invalid_argument("hypercube_cycle_experiment: need 2 <= m <= 24");
  if (trials < 1) throw std::invalid_argument("hypercube_cycle_experiment: trials >= 1");
  HypercubeExperiment exp;
  exp.m = m;
  exp.eps_theta = eps_theta;
  exp.p = (1.0 + eps_theta) / m;
  exp.trials = trials;
  exp.seed = seed;
  exp.psi = m;
  Graph host = hypercube(m);
  long long n = host.vertex_count();
  CorollaryParams params = separability_corollary_params(n, exp.psi);
  exp.s_param = params.s;
  exp.t_param = params.t;
  double floor_bound = static_cast<double>(n) / (4.0 * std::pow(m, 32));
  exp.rows.assign(trials, HypercubeTrialRow{});

  parallel_for(trials, threads, [&](int tid) {
    double t0 = now_ms();
    HypercubeTrialRow row;
    row.trial_id = tid;
    row.floor_bound = floor_bound;
    PercolationConfig cfg{exp.p, seed, static_cast<uint64_t>(tid)};
    Graph sample = sample_subgraph(host, cfg);
    row.c1 = giant_component(sample).largest;
    SeparatorOptions sopts;
    sopts.seed = splitmix64(seed ^ (0x9E3779B97F4A7C15ULL + tid));
    SeparabilityVerdict verdict = separability_decompose(
        sample, static_cast<int>(exp.s_param), static_cast<int>(exp.t_param), sopts);
    if (!verdict.separable && verdict.evidence) {
      row.h_size = static_cast<long long>(verdict.evidence->piece.size());
      VertexSet hs(sample.vertex_count());
      for (Vertex v : verdict.evidence->piece) hs.add(v);
      Graph h = InducedSubgraphView(sample, hs).materialize(nullptr);
      int target = 12 * (m + 1);
      CycleSearchResult found = experiment_posa(h, target);
      if (found.cycle) row.cycle_len = found.cycle->length();
    }
    row.wall_ms = now_ms() - t0;
    exp.rows[tid] = std::move(row);
  });
  return exp;
}

C4FreeExperiment c4free_cycle_experiment(const std::vector<int>& qs,
                                         const std::vector<double>& cs, int trials,
                                         uint64_t seed, int threads) {
  if (qs.empty() || cs.empty() || trials < 1)
    throw std::invalid_argument("c4free_cycle_experiment: need qs, cs, trials >= 1");
  C4FreeExperiment exp;
  exp.qs = qs;
  exp.cs = cs;
  exp.trials = trials;
  exp.seed = seed;

  struct Job {
    int q, k;
    double c, p;
    int tid;
  };
  std::vector<Job> jobs;
  std::vector<Graph> hosts;
  for (int q : qs) hosts.push_back(projective_incidence(q));
  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    int k = qs[qi] + 1;
    for (double c : cs) {
      double p = std::min(1.0, c / k);
      for (int tid = 0; tid < trials; ++tid)
        jobs.push_back(Job{qs[qi], k, c, p, tid});
    }
  }
  exp.rows.assign(jobs.size(), C4FreeTrialRow{});

  // host lookup by q value
  auto host_of = [&](int q) -> const Graph& {
    for (std::size_t i = 0; i < qs.size(); ++i)
      if (qs[i] == q) return hosts[i];
    throw std::logic_error("c4free_cycle_experiment: host lookup failed");
  };

  parallel_for(static_cast<int>(jobs.size()), threads, [&](int ji) {
    const Job& job = jobs[ji];
    const Graph& host = host_of(job.q);
    double t0 = now_ms();
    C4FreeTrialRow row;
    row.trial_id = job.tid;
    row.q = job.q;
    row.k = job.k;
    row.c = job.c;
    row.p = job.p;
    PercolationConfig cfg{job.p, seed, static_cast<uint64_t>(job.tid)};
    Graph sample = sample_subgraph(host, cfg);
    RevealedDfs r = dfs_with_unrevealed(host, cfg);
    std::vector<Edge> chords;
    for (const Edge& e : r.unrevealed_q)
      if (sample.has_edge(e.u, e.v)) chords.push_back(e);
    CycleSearchResult spliced = chord_splice_cycle(r.forest, chords, sample);
    if (spliced.cycle) row.splice_len = spliced.cycle->length();
    // Stop only at a Hamiltonian cycle; cycles here can exceed k².
    CycleSearchResult rotated = experiment_posa(sample, sample.vertex_count() - 1);
    if (rotated.cycle) row.posa_len = rotated.cycle->length();
    row.best_len = std::max(row.splice_len, row.posa_len);
    row.ratio = static_cast<double>(row.best_len) / (static_cast<double>(job.k) * job.k);
    row.wall_ms = now_ms() - t0;
    exp.rows[ji] = std::move(row);
  });

  // Log-log fit per c: ln(median best_len over trials) against ln k.
  for (double c : cs) {
    LogLogFit fit;
    fit.c = c;
    std::vector<std::pair<double, double>> pts;  // (ln k, ln median)
    for (int q : qs) {
      std::vector<long long> lens;
      for (const auto& row : exp.rows)
        if (row.q == q && row.c == c) lens.push_back(row.best_len);
      std::sort(lens.begin(), lens.end());
      long long median = lens.empty() ? 0 : lens[(lens.size() - 1) / 2];
      if (median > 0)
        pts.push_back({std::log(static_cast<double>(q + 1)),
                       std::log(static_cast<double>(median))});
    }
    fit.points = static_cast<int>(pts.size());
    if (pts.size() >= 2) {
      double sx = 0, sy = 0;
      for (auto& [x, y] : pts) { sx += x; sy += y; }
      double mx = sx / pts.size(), my = sy / pts.size();
      double num = 0, den = 0;
      for (auto& [x, y] : pts) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
      }
      fit.slope = den > 0 ? num / den : 0;
      fit.intercept = my - fit.slope * mx;
    }
    exp.fits.push_back(fit);
  }
  return exp;
}

std::string to_csv(const HypercubeExperiment& e) {
  std::ostringstream os;
  os << "# command=experiment hypercube m=" << e.m << " eps=" << fmt(e.eps_theta, 4)
     << " p=" << fmt(e.p, 6) << " trials=" << e.trials << " seed=" << e.seed
     << " psi=" << fmt(e.psi, 2) << " s=" << e.s_param << " t=" << e.t_param << "\n";
  os << "trial_id,m,p,c1,h_size,cycle_len,floor,runtime_ms\n";
  for (const auto& r : e.rows)
    os << r.trial_id << "," << e.m << "," << fmt(e.p, 6) << "," << r.c1 << ","
       << r.h_size << "," << r.cycle_len << "," << std::scientific
       << std::setprecision(6) << r.floor_bound << std::defaultfloat << ","
       << fmt(r.wall_ms, 3) << "\n";
  return os.str();
}

std::string to_csv(const C4FreeExperiment& e) {
  std::ostringstream os;
  os << "# command=experiment c4free qs=";
  for (std::size_t i = 0; i < e.qs.size(); ++i) os << (i ? ";" : "") << e.qs[i];
  os << " cs=";
  for (std::size_t i = 0; i < e.cs.size(); ++i) os << (i ? ";" : "") << fmt(e.cs[i], 4);
  os << " trials=" << e.trials << " seed=" << e.seed << "\n";
  for (const auto& f : e.fits)
    os << "# fit c=" << fmt(f.c, 4) << " slope=" << fmt(f.slope, 6)
       << " intercept=" << fmt(f.intercept, 6) << " points=" << f.points << "\n";
  os << "trial_id,q,k,c,p,splice_len,posa_len,cycle_len,ratio,runtime_ms\n";
  for (const auto& r : e.rows)
    os << r.trial_id << "," << r.q << "," << r.k << "," << fmt(r.c, 4) << ","
       << fmt(r.p, 6) << "," << r.splice_len << "," << r.posa_len << ","
       << r.best_len << "," << fmt(r.ratio, 6) << "," << fmt(r.wall_ms, 3) << "\n";
  return os.str();
}

}  // namespace cruxkit
