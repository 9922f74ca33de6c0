#include "cruxkit/separators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "cruxkit/rng.hpp"

namespace cruxkit {

bool is_balanced_separator(const Graph& g, const BalancedSeparator& sep) {
  int n = g.vertex_count();
  if (sep.s.universe() != n || sep.a.universe() != n || sep.b.universe() != n)
    return false;
  if ((sep.a & sep.b).size() || (sep.a & sep.s).size() || (sep.b & sep.s).size())
    return false;
  if (!((sep.a | sep.b | sep.s) == VertexSet::full(n))) return false;
  int na = sep.a.size(), nb = sep.b.size();
  if (na == 0 || nb == 0) return false;
  if (3 * na > 2 * n || 3 * nb > 2 * n) return false;
  for (const Edge& e : g.edges()) {
    bool ua = sep.a.contains(e.u), ub = sep.b.contains(e.u);
    bool va = sep.a.contains(e.v), vb = sep.b.contains(e.v);
    if ((ua && vb) || (ub && va)) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<Vertex>> components_within(const Graph& g,
                                                   const std::vector<char>& alive) {
  int n = g.vertex_count();
  std::vector<std::vector<Vertex>> comps;
  std::vector<char> seen(n, 0);
  std::deque<Vertex> queue;
  for (Vertex r = 0; r < n; ++r) {
    if (!alive[r] || seen[r]) continue;
    comps.emplace_back();
    seen[r] = 1;
    queue.assign(1, r);
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      comps.back().push_back(v);
      for (Vertex u : g.neighbors(v))
        if (alive[u] && !seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

// Assigns whole components to sides A/B so that 3|A| <= 2n and 3|B| <= 2n
// with both nonempty.  Exact subset-sum when the table is small, otherwise a
// deterministic largest-first greedy.  Returns per-component side (0=A, 1=B).
std::optional<std::vector<int>> partition_components(const std::vector<int>& sizes,
                                                     int n_total) {
  int k = static_cast<int>(sizes.size());
  if (k < 2) return std::nullopt;
  long long total = 0;
  for (int c : sizes) total += c;
  auto fits = [&](long long side) {
    return side >= 1 && 3 * side <= 2LL * n_total && (total - side) >= 1 &&
           3 * (total - side) <= 2LL * n_total;
  };
  if (static_cast<long long>(k + 1) * (total + 1) <= (1 << 24)) {
    std::vector<std::vector<char>> reach(k + 1, std::vector<char>(total + 1, 0));
    reach[0][0] = 1;
    for (int i = 0; i < k; ++i)
      for (int s2 = 0; s2 <= total; ++s2)
        if (reach[i][s2]) {
          reach[i + 1][s2] = 1;
          if (s2 + sizes[i] <= total) reach[i + 1][s2 + sizes[i]] = 1;
        }
    for (long long s2 = 1; s2 < total; ++s2) {
      if (!reach[k][s2] || !fits(s2)) continue;
      std::vector<int> side(k, 1);
      long long rem = s2;
      for (int i = k; i-- > 0;) {
        if (rem >= sizes[i] && reach[i][rem - sizes[i]]) {
          side[i] = 0;
          rem -= sizes[i];
        }
      }
      return side;
    }
    return std::nullopt;
  }
  // Greedy: largest component first onto the lighter side.
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    return a < b;
  });
  std::vector<int> side(k, 0);
  long long wa = 0, wb = 0;
  for (int i : order) {
    if (wa <= wb) { side[i] = 0; wa += sizes[i]; }
    else { side[i] = 1; wb += sizes[i]; }
  }
  if (fits(wa)) return side;
  return std::nullopt;
}

std::optional<BalancedSeparator> separator_from_mask(const Graph& g, uint32_t mask) {
  int n = g.vertex_count();
  std::vector<char> alive(n, 1);
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1) alive[v] = 0;
  auto comps = components_within(g, alive);
  std::vector<int> sizes;
  for (auto& c : comps) sizes.push_back(static_cast<int>(c.size()));
  auto side = partition_components(sizes, n);
  if (!side) return std::nullopt;
  BalancedSeparator sep{VertexSet(n), VertexSet(n), VertexSet(n)};
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1) sep.s.add(v);
  for (int i = 0; i < static_cast<int>(comps.size()); ++i)
    for (Vertex v : comps[i]) ((*side)[i] == 0 ? sep.a : sep.b).add(v);
  return sep;
}

std::optional<BalancedSeparator> exact_separator(const Graph& g, int budget) {
  int n = g.vertex_count();
  int max_size = std::min(budget, n - 2);
  for (int size = 0; size <= max_size; ++size) {
    if (size == 0) {
      if (auto sep = separator_from_mask(g, 0)) return sep;
      continue;
    }
    uint32_t limit = 1u << n;
    uint32_t mask = (1u << size) - 1;
    while (mask < limit) {
      if (auto sep = separator_from_mask(g, mask)) return sep;
      uint32_t c = mask & -mask;
      uint32_t r = mask + c;
      uint32_t next = (((r ^ mask) >> 2) / c) | r;
      if (next <= mask) break;
      mask = next;
    }
  }
  return std::nullopt;
}

struct SideState {
  std::vector<char> side;  // 0 = A, 1 = B, 2 = S
  int na = 0, nb = 0, ns = 0;
};

// Local moves: pull separator vertices into whichever side they have no
// edge toward, as long as balance is preserved.  Only shrinks S.
void shrink_separator(const Graph& g, SideState& st) {
  int n = g.vertex_count();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (st.side[v] != 2) continue;
      bool has_a = false, has_b = false;
      for (Vertex u : g.neighbors(v)) {
        if (st.side[u] == 0) has_a = true;
        else if (st.side[u] == 1) has_b = true;
        if (has_a && has_b) break;
      }
      if (!has_b && 3 * (st.na + 1) <= 2 * n) {
        st.side[v] = 0;
        ++st.na;
        --st.ns;
        changed = true;
      } else if (!has_a && 3 * (st.nb + 1) <= 2 * n) {
        st.side[v] = 1;
        ++st.nb;
        --st.ns;
        changed = true;
      }
    }
  }
}

std::optional<BalancedSeparator> heuristic_separator(const Graph& g, int budget,
                                                     const SeparatorOptions& opts) {
  int n = g.vertex_count();
  // Free split across components when possible.
  {
    std::vector<char> alive(n, 1);
    auto comps = components_within(g, alive);
    if (comps.size() >= 2) {
      std::vector<int> sizes;
      for (auto& c : comps) sizes.push_back(static_cast<int>(c.size()));
      if (auto side = partition_components(sizes, n)) {
        BalancedSeparator sep{VertexSet(n), VertexSet(n), VertexSet(n)};
        for (int i = 0; i < static_cast<int>(comps.size()); ++i)
          for (Vertex v : comps[i]) ((*side)[i] == 0 ? sep.a : sep.b).add(v);
        return sep;
      }
    }
  }

  Splitmix rng(opts.seed);
  std::vector<Vertex> roots;
  std::vector<char> used(n, 0);
  for (int i = 0; i < opts.sweep_roots * 4 &&
                  static_cast<int>(roots.size()) < opts.sweep_roots;
       ++i) {
    Vertex r = static_cast<Vertex>(rng.below(static_cast<uint64_t>(n)));
    if (!used[r]) {
      used[r] = 1;
      roots.push_back(r);
    }
  }

  std::optional<SideState> best;
  auto consider = [&](SideState st) {
    shrink_separator(g, st);
    if (st.na == 0 || st.nb == 0) return;
    if (3 * st.na > 2 * n || 3 * st.nb > 2 * n) return;
    if (st.ns > budget) return;
    if (!best || st.ns < best->ns) best = std::move(st);
  };

  std::vector<int> layer(n);
  std::deque<Vertex> queue;
  for (Vertex root : roots) {
    std::fill(layer.begin(), layer.end(), -1);
    layer[root] = 0;
    queue.assign(1, root);
    std::vector<int> layer_size(1, 1);
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex u : g.neighbors(v))
        if (layer[u] == -1) {
          layer[u] = layer[v] + 1;
          if (layer[u] >= static_cast<int>(layer_size.size())) layer_size.push_back(0);
          ++layer_size[layer[u]];
          queue.push_back(u);
        }
    }
    int depth = static_cast<int>(layer_size.size());
    long long before = layer_size[0];
    for (int i = 1; i < depth; ++i) {
      // S = layer i, A = layers < i, B = everything else.
      long long na = before;
      long long ns = layer_size[i];
      long long nb = n - na - ns;
      before += layer_size[i];
      if (na < 1 || nb < 1) continue;
      if (3 * na > 2LL * n || 3 * nb > 2LL * n) continue;
      SideState st;
      st.side.assign(n, 1);
      st.na = static_cast<int>(na);
      st.nb = static_cast<int>(nb);
      st.ns = static_cast<int>(ns);
      for (int v = 0; v < n; ++v) {
        if (layer[v] == -1 || layer[v] > i) continue;      // stays B
        st.side[v] = layer[v] == i ? 2 : 0;
      }
      consider(std::move(st));
    }
  }

  if (!best) return std::nullopt;
  BalancedSeparator sep{VertexSet(n), VertexSet(n), VertexSet(n)};
  for (int v = 0; v < n; ++v) {
    if (best->side[v] == 0) sep.a.add(v);
    else if (best->side[v] == 1) sep.b.add(v);
    else sep.s.add(v);
  }
  return sep;
}

}  // namespace

std::optional<BalancedSeparator> find_balanced_separator(const Graph& g, int budget,
                                                         const SeparatorOptions& opts) {
  int n = g.vertex_count();
  if (n < 2 || budget < 0) return std::nullopt;
  bool exact;
  switch (opts.mode) {
    case SeparatorMode::exhaustive:
      if (n > 24)
        throw std::invalid_argument("find_balanced_separator: exhaustive mode needs n <= 24");
      exact = true;
      break;
    case SeparatorMode::heuristic:
      exact = false;
      break;
    default:
      exact = n <= 18;
  }
  auto sep = exact ? exact_separator(g, budget) : heuristic_separator(g, budget, opts);
  if (sep && !is_balanced_separator(g, *sep))
    throw std::logic_error("find_balanced_separator: produced invalid separator");
  return sep;
}

SeparabilityVerdict separability_decompose(const Graph& g, int s, int t,
                                           const SeparatorOptions& opts) {
  if (s <= 0 || t <= 0)
    throw std::invalid_argument("separability_decompose: s and t must be positive");
  int n = g.vertex_count();
  SeparabilityVerdict verdict;
  verdict.s_used = s;
  verdict.t_used = t;

  SeparatorDecomposition dec;
  dec.aggregate = VertexSet(n);
  dec.nodes.push_back(SeparatorNode{});
  {
    auto& root = dec.nodes[0].set;
    root.resize(n);
    for (int v = 0; v < n; ++v) root[v] = v;
  }

  int deepest_internal = -1;
  std::vector<std::pair<int, int>> work{{0, 0}};  // (node index, level)
  while (!work.empty()) {
    auto [idx, level] = work.back();
    work.pop_back();
    const std::vector<Vertex> piece = dec.nodes[idx].set;
    int pn = static_cast<int>(piece.size());
    if (pn < t) {
      dec.nodes[idx].leaf = true;
      dec.max_leaf = std::max(dec.max_leaf, pn);
      continue;
    }
    VertexSet pset(n);
    for (Vertex v : piece) pset.add(v);
    std::vector<Vertex> back;
    Graph sub = InducedSubgraphView(g, pset).materialize(&back);
    int budget = pn / s;
    SeparatorOptions node_opts = opts;
    node_opts.seed = splitmix64(opts.seed ^ static_cast<uint64_t>(idx));
    auto sep = find_balanced_separator(sub, budget, node_opts);
    if (!sep) {
      NonSeparabilityEvidence ev;
      ev.piece = piece;
      ev.budget = budget;
      ev.exhaustive = opts.mode == SeparatorMode::exhaustive ||
                      (opts.mode == SeparatorMode::automatic && pn <= 18);
      ev.search_record =
          (ev.exhaustive ? std::string("exhaustive") : std::string("heuristic")) +
          " search found no balanced separator of size <= " + std::to_string(budget) +
          " in a piece of " + std::to_string(pn) + " vertices";
      verdict.separable = false;
      verdict.evidence = std::move(ev);
      return verdict;
    }
    deepest_internal = std::max(deepest_internal, level);
    auto remap = [&](const VertexSet& local) {
      std::vector<Vertex> host;
      for (Vertex v : local.to_vector()) host.push_back(back[v]);
      std::sort(host.begin(), host.end());
      return host;
    };
    dec.nodes[idx].separator = remap(sep->s);
    for (Vertex v : dec.nodes[idx].separator) dec.aggregate.add(v);
    SeparatorNode left, right;
    left.set = remap(sep->a);
    right.set = remap(sep->b);
    int li = static_cast<int>(dec.nodes.size());
    dec.nodes.push_back(std::move(left));
    int ri = static_cast<int>(dec.nodes.size());
    dec.nodes.push_back(std::move(right));
    dec.nodes[idx].left = li;
    dec.nodes[idx].right = ri;
    work.push_back({li, level + 1});
    work.push_back({ri, level + 1});
  }

  dec.depth = std::max(0, deepest_internal);
  if (deepest_internal >= 0) {
    double limit = std::log(static_cast<double>(n) / t) / std::log(1.5);
    if (static_cast<double>(deepest_internal) > limit + 1e-9)
      throw std::logic_error("separability_decompose: depth bound violated");
    double size_limit = 4.0 * n * static_cast<double>(n) / (static_cast<double>(s) * t);
    if (static_cast<double>(dec.aggregate.size()) > size_limit + 1e-9)
      throw std::logic_error("separability_decompose: aggregate size bound violated");
  }
  verdict.separable = true;
  verdict.decomposition = std::move(dec);
  return verdict;
}

CorollaryParams separability_corollary_params(long long n, double psi) {
  if (psi < 1.0 || n < 1)
    throw std::invalid_argument("separability_corollary_params: need psi >= 1, n >= 1");
  CorollaryParams p;
  p.s = static_cast<long long>(std::ceil(4.0 * psi * psi * psi - 1e-9));
  p.t = static_cast<long long>(std::ceil(static_cast<double>(n) / psi - 1e-9));
  p.threshold_separator = static_cast<double>(n) / (psi * psi);
  p.threshold_piece = static_cast<double>(n) / psi;
  return p;
}

}  // namespace cruxkit
