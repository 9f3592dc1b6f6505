#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/hypergraph_sparsify.hpp"

namespace hgsparse {

struct FlowArc {
  std::size_t from;
  std::size_t to;
  double capacity;
};

struct FlowNetwork {
  std::size_t nodes = 0;
  std::vector<FlowArc> arcs;
  std::size_t source = 0;
  std::size_t sink = 0;
  /// Capacity used for arcs that must never be cut.
  double infinity = 0.0;
};

/// Digraph whose s-t max flow equals the hypergraph s-t min cut. Vertex v is
/// node v; hyperedge i becomes in-node n + 2i and out-node n + 2i + 1 joined by
/// an arc of capacity w_i.
inline FlowNetwork lawler_reduction(const Hypergraph& h, Vertex s, Vertex t) {
  const std::size_t n = h.num_vertices();
  if (s >= n || t >= n) throw std::out_of_range("terminal vertex out of range");
  if (s == t) throw std::invalid_argument("source and sink must differ");
  FlowNetwork net;
  net.nodes = n + 2 * h.num_edges();
  net.source = s;
  net.sink = t;
  net.infinity = h.total_weight() * (1.0 + 1e-6);
  for (EdgeId i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edge(i);
    const std::size_t in = n + 2 * i, out = in + 1;
    net.arcs.push_back({in, out, e.weight});
    for (Vertex v : e.vertices) {
      net.arcs.push_back({v, in, net.infinity});
      net.arcs.push_back({out, v, net.infinity});
    }
  }
  return net;
}

struct MaxFlowResult {
  double value = 0.0;
  /// Nodes reachable from the source in the final residual graph.
  std::vector<bool> source_side;
};

/// Dinic's algorithm: BFS level graph, DFS blocking flow.
class Dinic {
 public:
  explicit Dinic(const FlowNetwork& net)
      : n_(net.nodes), s_(net.source), t_(net.sink), head_(net.nodes, npos) {
    if (s_ >= n_ || t_ >= n_) throw std::out_of_range("flow terminal out of range");
    if (s_ == t_) throw std::invalid_argument("source and sink must differ");
    double cmax = 0.0;
    for (const auto& a : net.arcs) {
      if (a.from >= n_ || a.to >= n_) throw std::out_of_range("flow arc endpoint out of range");
      if (!(a.capacity >= 0.0)) throw std::invalid_argument("negative arc capacity");
      add(a.from, a.to, a.capacity);
      add(a.to, a.from, 0.0);
      cmax = std::max(cmax, a.capacity);
    }
    tiny_ = cmax * 1e-13;
  }

  MaxFlowResult run() {
    MaxFlowResult r;
    while (bfs()) {
      iter_ = head_;
      while (true) {
        const double pushed = dfs(s_, std::numeric_limits<double>::infinity());
        if (pushed <= tiny_) break;
        r.value += pushed;
      }
    }
    r.source_side.assign(n_, false);
    for (std::size_t v = 0; v < n_; ++v) r.source_side[v] = level_[v] >= 0;
    return r;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Edge {
    std::size_t to;
    std::size_t next;
    double residual;
  };

  void add(std::size_t u, std::size_t v, double cap) {
    edges_.push_back({v, head_[u], cap});
    head_[u] = edges_.size() - 1;
  }

  bool bfs() {
    level_.assign(n_, -1);
    std::queue<std::size_t> q;
    level_[s_] = 0;
    q.push(s_);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto i = head_[u]; i != npos; i = edges_[i].next) {
        const auto& e = edges_[i];
        if (e.residual > tiny_ && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t_] >= 0;
  }

  double dfs(std::size_t u, double limit) {
    if (u == t_) return limit;
    for (auto& i = iter_[u]; i != npos; i = edges_[i].next) {
      auto& e = edges_[i];
      if (e.residual <= tiny_ || level_[e.to] != level_[u] + 1) continue;
      const double got = dfs(e.to, std::min(limit, e.residual));
      if (got > tiny_) {
        e.residual -= got;
        edges_[i ^ 1].residual += got;
        return got;
      }
    }
    return 0.0;
  }

  std::size_t n_, s_, t_;
  std::vector<std::size_t> head_;
  std::vector<std::size_t> iter_;
  std::vector<Edge> edges_;
  std::vector<long> level_;
  double tiny_ = 0.0;
};

inline MaxFlowResult max_flow_with_cut(const FlowNetwork& net) { return Dinic(net).run(); }

inline double max_flow(const FlowNetwork& net) { return Dinic(net).run().value; }

struct StMincut {
  double value = 0.0;
  bool approximate = false;
  /// Vertices on the source side of the cut.
  std::vector<Vertex> source_side;
};

namespace detail {

inline StMincut exact_st_mincut(const Hypergraph& h, Vertex s, Vertex t) {
  const auto flow = max_flow_with_cut(lawler_reduction(h, s, t));
  StMincut out{flow.value, false, {}};
  for (Vertex v = 0; v < h.num_vertices(); ++v)
    if (flow.source_side[v]) out.source_side.push_back(v);
  return out;
}

}  // namespace detail

/// eps = 0 is exact; otherwise the flow runs on a sparsifier built at eps / 3.
inline StMincut st_mincut(const Hypergraph& h, Vertex s, Vertex t, double eps,
                          SparsifyConfig cfg = {}) {
  if (eps < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (eps == 0.0) return detail::exact_st_mincut(h, s, t);
  cfg.eps = eps / 3.0;
  const auto rep = sparsify_hypergraph(h, cfg);
  auto out = detail::exact_st_mincut(rep.output, s, t);
  out.approximate = true;
  return out;
}

struct GlobalMincut {
  double value = 0.0;
  bool approximate = false;
  /// One side of the cut; it never contains vertex 0.
  std::vector<Vertex> witness;
};

namespace detail {

inline std::vector<std::size_t> hyperedge_components(const Hypergraph& h) {
  std::vector<std::size_t> parent(h.num_vertices());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : h.edges()) {
    if (e.weight <= 0.0) continue;
    for (Vertex v : e.vertices) {
      auto a = find(e.vertices.front()), b = find(v);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> root(h.num_vertices());
  for (std::size_t v = 0; v < root.size(); ++v) root[v] = find(v);
  return root;
}

inline GlobalMincut exact_global_mincut(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  GlobalMincut best;
  const auto root = hyperedge_components(h);
  for (Vertex v = 1; v < n; ++v)
    if (root[v] != root[0]) {
      // Separating witness: the component of vertex v.
      for (Vertex u = 0; u < n; ++u)
        if (root[u] == root[v]) best.witness.push_back(u);
      best.value = 0.0;
      return best;
    }

  best.value = std::numeric_limits<double>::infinity();
  for (Vertex t = 1; t < n; ++t) {
    const auto cut = exact_st_mincut(h, 0, t);
    if (cut.value < best.value) {
      best.value = cut.value;
      std::vector<bool> side(n, false);
      for (Vertex v : cut.source_side) side[v] = true;
      best.witness.clear();
      for (Vertex v = 0; v < n; ++v)
        if (!side[v]) best.witness.push_back(v);
    }
  }
  return best;
}

}  // namespace detail

/// Min over t != 0 of the 0-t min cut. eps > 0 runs it on a sparsifier
/// built at eps / 3.
inline GlobalMincut global_mincut(const Hypergraph& h, double eps, SparsifyConfig cfg = {}) {
  if (h.num_vertices() < 2) throw std::invalid_argument("mincut needs at least two vertices");
  if (eps < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (eps == 0.0) return detail::exact_global_mincut(h);
  cfg.eps = eps / 3.0;
  const auto rep = sparsify_hypergraph(h, cfg);
  auto out = detail::exact_global_mincut(rep.output);
  out.approximate = true;
  return out;
}

}  // namespace hgsparse
