#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divrank/multigraph.hpp"

namespace divrank {

/// Multigraph plus a nonnegative integer weight per vertex.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  explicit WeightedGraph(Multigraph graph) : WeightedGraph(std::move(graph), {}) {}

  WeightedGraph(Multigraph graph, const std::map<std::string, long long>& weights) {
    auto impl = std::make_shared<Impl>();
    impl->graph = std::move(graph);
    impl->weights.assign(impl->graph.vertices().size(), 0);
    for (const auto& [id, w] : weights) {
      if (!impl->graph.has_vertex(id))
        fail(Errc::UnknownVertex, "weight given for unknown vertex '" + id + "'");
      if (w < 0) fail(Errc::InvalidArgument, "negative weight at '" + id + "'");
      impl->weights[impl->graph.vertex_index(id)] = w;
    }
    impl_ = std::move(impl);
  }

  const Multigraph& graph() const { return impl_->graph; }

  long long weight(const std::string& id) const {
    return impl_->weights.at(graph().vertex_index(id));
  }
  long long weight_at(int index) const { return impl_->weights.at(index); }
  const std::vector<long long>& weights() const { return impl_->weights; }

  long long total_weight() const {
    long long s = 0;
    for (long long w : impl_->weights) s += w;
    return s;
  }

  bool same_as(const WeightedGraph& other) const {
    if (impl_ == other.impl_) return true;
    return graph().same_as(other.graph()) && impl_->weights == other.impl_->weights;
  }

  const detail::CacheSlot& virtual_cache() const { return impl_->virtual_slot; }

 private:
  struct Impl {
    Multigraph graph;
    std::vector<long long> weights;
    detail::CacheSlot virtual_slot;
  };
  std::shared_ptr<const Impl> impl_ = std::make_shared<Impl>();
};

inline long long weighted_genus(const WeightedGraph& wg) {
  return genus(wg.graph()) + wg.total_weight();
}

/// Loopless graph obtained by materializing each weight unit as a loop and
/// then splitting every loop (original and added) into a pair of parallel
/// edges through a fresh vertex.
struct VirtualGraph {
  Multigraph graph;                    // loopless by construction
  std::vector<std::string> originals;  // V(G), declared order
  std::set<std::string> inserted;      // fresh vertices
  std::vector<int> edge_map;           // original edge id -> edge id in graph, -1 for loops
};

inline VirtualGraph virtual_loopless(const WeightedGraph& wg) {
  const Multigraph& g = wg.graph();
  g.ensure_valid();
  const int n = g.vertex_count();
  const int m = g.edge_count();

  VirtualGraph out;
  out.originals = g.vertices();
  std::vector<std::string> vertices = g.vertices();
  std::vector<std::pair<std::string, std::string>> edges;
  out.edge_map.assign(m, -1);

  for (int e = 0; e < m; ++e) {
    const auto& [a, b] = g.edges()[e];
    if (a == b) continue;
    out.edge_map[e] = static_cast<int>(edges.size());
    edges.emplace_back(a, b);
  }

  // fresh vertices: per original vertex, one for every original loop and one
  // per weight unit, numbered in that order
  for (int v = 0; v < n; ++v) {
    const std::string& id = g.vertices()[v];
    long long loop_count = 0;
    for (int e = 0; e < m; ++e) {
      const auto& [a, b] = g.edges()[e];
      if (a == b && a == id) ++loop_count;
    }
    long long total = loop_count + wg.weight_at(v);
    for (long long k = 0; k < total; ++k) {
      std::string fresh = "loop:" + id + ":" + std::to_string(k);
      vertices.push_back(fresh);
      out.inserted.insert(fresh);
      edges.emplace_back(id, fresh);
      edges.emplace_back(id, fresh);
    }
  }

  out.graph = Multigraph(std::move(vertices), std::move(edges));
  out.graph.ensure_valid();
  return out;
}

namespace detail {

/// Cached virtual loopless graph of a weighted graph.
inline std::shared_ptr<const VirtualGraph> virtual_of(const WeightedGraph& wg) {
  return wg.virtual_cache().get_or_build<VirtualGraph>(
      [&] { return std::make_shared<VirtualGraph>(virtual_loopless(wg)); });
}

}  // namespace detail

}  // namespace divrank
