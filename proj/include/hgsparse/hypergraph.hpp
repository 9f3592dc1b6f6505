#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hgsparse/random.hpp"

namespace hgsparse {

using Vertex = std::size_t;
using EdgeId = std::size_t;

struct Hyperedge {
  std::vector<Vertex> vertices;
  double weight = 1.0;
};

/// Weighted undirected hypergraph on vertices 0..n-1. Immutable once built.
class Hypergraph {
 public:
  Hypergraph() = default;

  Hypergraph(std::size_t n, std::vector<Hyperedge> edges)
      : n_(n), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (e.vertices.size() < 2)
        throw std::invalid_argument("hyperedge " + std::to_string(i) +
                                    " has fewer than 2 vertices");
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
        throw std::invalid_argument("hyperedge " + std::to_string(i) +
                                    " has a negative or non-finite weight");
      auto sorted = e.vertices;
      std::sort(sorted.begin(), sorted.end());
      if (sorted.back() >= n_)
        throw std::out_of_range("hyperedge " + std::to_string(i) +
                                " references vertex out of range");
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("hyperedge " + std::to_string(i) +
                                    " repeats a vertex");
      rank_ = std::max(rank_, e.vertices.size());
    }
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t rank() const { return rank_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  const Hyperedge& edge(EdgeId e) const { return edges_[e]; }

  double total_weight() const {
    double s = 0.0;
    for (const auto& e : edges_) s += e.weight;
    return s;
  }

  Hypergraph scaled(double factor) const {
    auto copy = edges_;
    for (auto& e : copy) e.weight *= factor;
    return Hypergraph(n_, std::move(copy));
  }

 private:
  std::size_t n_ = 0;
  std::vector<Hyperedge> edges_;
  std::size_t rank_ = 0;
};

struct GraphEdge {
  Vertex u;
  Vertex v;
  double weight;
};

/// Undirected multigraph; parallel edges are kept distinct.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  WeightedGraph(std::size_t n, std::vector<GraphEdge> edges)
      : n_(n), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
      if (e.u >= n_ || e.v >= n_)
        throw std::out_of_range("graph edge references vertex out of range");
      if (e.u == e.v) throw std::invalid_argument("graph edge is a self-loop");
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
        throw std::invalid_argument("graph edge weight must be finite and >= 0");
    }
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<GraphEdge>& edges() const { return edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<GraphEdge> edges_;
};

// ---------------------------------------------------------------------------
// Energy and cuts

inline double hyperedge_energy(std::span<const Vertex> e,
                               std::span<const double> x) {
  // max over pairs of (x_i - x_j)^2 is (max - min)^2
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (Vertex v : e) {
    if (v >= x.size()) throw std::out_of_range("hyperedge vertex out of range");
    if (first) {
      lo = hi = x[v];
      first = false;
    } else {
      lo = std::min(lo, x[v]);
      hi = std::max(hi, x[v]);
    }
  }
  return (hi - lo) * (hi - lo);
}

inline double total_energy(const Hypergraph& h, std::span<const double> x) {
  if (x.size() != h.num_vertices())
    throw std::invalid_argument("energy vector has wrong dimension");
  double s = 0.0;
  for (const auto& e : h.edges()) {
    if (e.weight == 0.0) continue;
    s += e.weight * hyperedge_energy(e.vertices, x);
  }
  return s;
}

/// Weight of hyperedges with endpoints on both sides. `in_set` has length n.
inline double cut_value(const Hypergraph& h, const std::vector<bool>& in_set) {
  if (in_set.size() != h.num_vertices())
    throw std::invalid_argument("cut indicator has wrong dimension");
  double s = 0.0;
  for (const auto& e : h.edges()) {
    bool inside = false, outside = false;
    for (Vertex v : e.vertices) (in_set[v] ? inside : outside) = true;
    if (inside && outside) s += e.weight;
  }
  return s;
}

inline double cut_value(const Hypergraph& h, std::span<const Vertex> subset) {
  std::vector<bool> in_set(h.num_vertices(), false);
  for (Vertex v : subset) {
    if (v >= h.num_vertices()) throw std::out_of_range("cut vertex out of range");
    in_set[v] = true;
  }
  return cut_value(h, in_set);
}

// ---------------------------------------------------------------------------
// Star underlying graphs

/// Label of one star edge {anchor(e), other} belonging to hyperedge e.
struct StarLabel {
  EdgeId hyperedge;
  Vertex anchor;
  Vertex other;
};

/// Label space shared by every underlying graph derived from one hypergraph.
/// Star edges of hyperedge e occupy labels [offset(e), offset(e+1)).
class StarLayout {
 public:
  StarLayout(const Hypergraph& h, std::vector<Vertex> anchors)
      : n_(h.num_vertices()), rank_(h.rank()), anchors_(std::move(anchors)) {
    offsets_.reserve(h.num_edges() + 1);
    offsets_.push_back(0);
    hyperedge_weights_.reserve(h.num_edges());
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      const auto& edge = h.edge(e);
      hyperedge_weights_.push_back(edge.weight);
      bool found = false;
      for (Vertex v : edge.vertices) {
        if (v == anchors_[e]) {
          found = true;
          continue;
        }
        labels_.push_back({e, anchors_[e], v});
      }
      if (!found) throw std::invalid_argument("anchor is not a member of its hyperedge");
      offsets_.push_back(labels_.size());
    }
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_hyperedges() const { return anchors_.size(); }
  std::size_t num_labels() const { return labels_.size(); }
  std::size_t rank() const { return rank_; }
  Vertex anchor(EdgeId e) const { return anchors_[e]; }
  double hyperedge_weight(EdgeId e) const { return hyperedge_weights_[e]; }
  std::size_t begin(EdgeId e) const { return offsets_[e]; }
  std::size_t end(EdgeId e) const { return offsets_[e + 1]; }
  const StarLabel& label(std::size_t f) const { return labels_[f]; }
  const std::vector<StarLabel>& labels() const { return labels_; }

 private:
  std::size_t n_;
  std::size_t rank_;
  std::vector<Vertex> anchors_;
  std::vector<std::size_t> offsets_;
  std::vector<StarLabel> labels_;
  std::vector<double> hyperedge_weights_;
};

/// Star underlying graph: a weight per star label. The layout is shared, the
/// weights are owned.
class UnderlyingGraph {
 public:
  UnderlyingGraph(std::shared_ptr<const StarLayout> layout,
                  std::vector<double> weights)
      : layout_(std::move(layout)), weights_(std::move(weights)) {
    if (weights_.size() != layout_->num_labels())
      throw std::invalid_argument("underlying graph weight vector has wrong size");
    for (double c : weights_)
      if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("underlying graph weights must be finite and >= 0");
  }

  const StarLayout& layout() const { return *layout_; }
  const std::shared_ptr<const StarLayout>& shared_layout() const { return layout_; }
  std::size_t num_vertices() const { return layout_->num_vertices(); }
  std::size_t num_labels() const { return weights_.size(); }
  double weight(std::size_t f) const { return weights_[f]; }
  const std::vector<double>& weights() const { return weights_; }

  double star_mass(EdgeId e) const {
    double s = 0.0;
    for (auto f = layout_->begin(e); f < layout_->end(e); ++f) s += weights_[f];
    return s;
  }

  /// Largest relative violation of sum_{f in S_e} c_f = w_e over all stars.
  double max_star_deviation() const {
    double worst = 0.0;
    for (EdgeId e = 0; e < layout_->num_hyperedges(); ++e) {
      const double w = layout_->hyperedge_weight(e);
      const double mass = star_mass(e);
      if (w == 0.0 && mass == 0.0) continue;
      worst = std::max(worst, std::abs(mass - w) / std::max(w, 1e-300));
    }
    return worst;
  }

 private:
  std::shared_ptr<const StarLayout> layout_;
  std::vector<double> weights_;
};

struct AnchorRule {
  enum class Kind { MinVertex, SeededRandom };
  Kind kind = Kind::MinVertex;
  Seed seed = 0;

  static AnchorRule min_vertex() { return {}; }
  static AnchorRule seeded_random(Seed s) { return {Kind::SeededRandom, s}; }
};

inline std::vector<Vertex> choose_anchors(const Hypergraph& h, AnchorRule rule) {
  std::vector<Vertex> anchors;
  anchors.reserve(h.num_edges());
  Rng rng(derive_seed(rule.seed, "anchor"));
  for (const auto& e : h.edges()) {
    if (rule.kind == AnchorRule::Kind::MinVertex)
      anchors.push_back(*std::min_element(e.vertices.begin(), e.vertices.end()));
    else
      anchors.push_back(e.vertices[rng.below(e.vertices.size())]);
  }
  return anchors;
}

/// Round-one star weights: every star edge of e gets w_e / (|e| - 1).
inline UnderlyingGraph init_underlying(const Hypergraph& h,
                                       AnchorRule rule = AnchorRule::min_vertex()) {
  auto layout = std::make_shared<const StarLayout>(h, choose_anchors(h, rule));
  std::vector<double> weights(layout->num_labels());
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& edge = h.edge(e);
    if (edge.vertices.size() < 2)
      throw std::invalid_argument("hyperedge of size < 2 has no star");
    const double c = edge.weight / static_cast<double>(edge.vertices.size() - 1);
    for (auto f = layout->begin(e); f < layout->end(e); ++f) weights[f] = c;
  }
  return UnderlyingGraph(std::move(layout), std::move(weights));
}

/// Edge i of the result is star label i (zero weights included).
inline WeightedGraph flatten(const UnderlyingGraph& u) {
  std::vector<GraphEdge> edges;
  edges.reserve(u.num_labels());
  for (std::size_t f = 0; f < u.num_labels(); ++f) {
    const auto& lab = u.layout().label(f);
    edges.push_back({lab.anchor, lab.other, u.weight(f)});
  }
  return WeightedGraph(u.num_vertices(), std::move(edges));
}

/// New weights over the label space of `u`.
inline UnderlyingGraph with_weights(const UnderlyingGraph& u,
                                    std::vector<double> weights) {
  return UnderlyingGraph(u.shared_layout(), std::move(weights));
}

/// Rank-2 hypergraph viewed as an ordinary graph.
inline WeightedGraph as_graph(const Hypergraph& h) {
  std::vector<GraphEdge> edges;
  for (const auto& e : h.edges()) {
    if (e.vertices.size() != 2)
      throw std::invalid_argument("as_graph requires a rank-2 hypergraph");
    edges.push_back({e.vertices[0], e.vertices[1], e.weight});
  }
  return WeightedGraph(h.num_vertices(), std::move(edges));
}

}  // namespace hgsparse
