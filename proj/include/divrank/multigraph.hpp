#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divrank/errors.hpp"

namespace divrank {

enum class Violation { None, DuplicateVertex, DanglingEdge, Disconnected };

struct ValidationResult {
  Violation code = Violation::None;
  std::string message;
  bool ok() const { return code == Violation::None; }
};

namespace detail {

/// Flattened adjacency with edge multiplicities; loops kept separately
/// (they never contribute to the Laplacian, burning, or connectivity).
struct Csr {
  int n = 0;
  int m = 0;  // total edges, loops included
  std::vector<int> off;        // n+1 offsets into adj/mult
  std::vector<int> adj;        // neighbour vertex index
  std::vector<int> mult;       // number of parallel edges to that neighbour
  std::vector<int> deg;        // non-loop valence of each vertex
  std::vector<int> loops;      // loop count at each vertex
  std::vector<std::pair<int, int>> edges;  // indexed endpoints, declaration order
};

/// Type-erased once-built cache attached to an immutable graph.
class CacheSlot {
 public:
  template <class T, class Builder>
  std::shared_ptr<const T> get_or_build(Builder&& build) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!value_) value_ = std::static_pointer_cast<const void>(std::shared_ptr<const T>(build()));
    return std::static_pointer_cast<const T>(value_);
  }

 private:
  mutable std::mutex mu_;
  mutable std::shared_ptr<const void> value_;
};

}  // namespace detail

/// Finite connected multigraph with parallel edges and loops.
///
/// Vertices are opaque string ids in declaration order; edges are indexed
/// 0..|E|-1 in declaration order so parallel edges stay addressable.
/// Instances are immutable; copies share the underlying representation.
class Multigraph {
 public:
  Multigraph() : impl_(empty_impl()) {}

  Multigraph(std::vector<std::string> vertices,
             std::vector<std::pair<std::string, std::string>> edges) {
    auto impl = std::make_shared<Impl>();
    impl->vertex_ids = std::move(vertices);
    impl->raw_edges = std::move(edges);
    for (int i = 0; i < static_cast<int>(impl->vertex_ids.size()); ++i) {
      auto [it, fresh] = impl->index.emplace(impl->vertex_ids[i], i);
      if (!fresh && impl->violation == Violation::None) {
        impl->violation = Violation::DuplicateVertex;
        impl->violation_msg = "vertex id declared twice: " + impl->vertex_ids[i];
      }
    }
    for (const auto& [a, b] : impl->raw_edges) {
      auto ia = impl->index.find(a);
      auto ib = impl->index.find(b);
      if (ia == impl->index.end() || ib == impl->index.end()) {
        if (impl->violation == Violation::None) {
          impl->violation = Violation::DanglingEdge;
          impl->violation_msg =
              "edge (" + a + "," + b + ") uses an undeclared vertex";
        }
        continue;
      }
      impl->csr.edges.emplace_back(ia->second, ib->second);
    }
    if (impl->violation == Violation::None) {
      build_csr(*impl);
      if (!connected(impl->csr) && impl->violation == Violation::None) {
        impl->violation = Violation::Disconnected;
        impl->violation_msg = "graph has more than one connected component";
      }
    }
    impl_ = std::move(impl);
  }

  int vertex_count() const { return static_cast<int>(impl_->vertex_ids.size()); }
  int edge_count() const { return static_cast<int>(impl_->raw_edges.size()); }

  const std::vector<std::string>& vertices() const { return impl_->vertex_ids; }
  const std::vector<std::pair<std::string, std::string>>& edges() const {
    return impl_->raw_edges;
  }

  bool has_vertex(const std::string& id) const {
    return impl_->index.find(id) != impl_->index.end();
  }

  int vertex_index(const std::string& id) const {
    auto it = impl_->index.find(id);
    if (it == impl_->index.end()) fail(Errc::UnknownVertex, "no vertex '" + id + "'");
    return it->second;
  }

  const std::string& vertex_id(int index) const { return impl_->vertex_ids.at(index); }

  /// Indexed endpoints of edge `e`; requires a structurally sound graph.
  std::pair<int, int> edge(int e) const {
    ensure_valid();
    if (e < 0 || e >= edge_count()) fail(Errc::UnknownEdge, "edge id " + std::to_string(e));
    return impl_->csr.edges[e];
  }

  bool is_loop(int e) const {
    auto [a, b] = edge(e);
    return a == b;
  }

  bool has_loops() const {
    ensure_valid();
    for (int c : impl_->csr.loops)
      if (c > 0) return true;
    return false;
  }

  ValidationResult validate() const {
    switch (impl_->violation) {
      case Violation::None: return {Violation::None, ""};
      default: return {impl_->violation, impl_->violation_msg};
    }
  }

  void ensure_valid() const {
    if (impl_->violation != Violation::None)
      fail(impl_->violation == Violation::Disconnected ? Errc::Disconnected
           : impl_->violation == Violation::DanglingEdge ? Errc::DanglingEdge
                                                         : Errc::DuplicateVertex,
           impl_->violation_msg);
  }

  /// Structural identity; used as the host tag for divisors.
  bool same_as(const Multigraph& other) const {
    if (impl_ == other.impl_) return true;
    return impl_->vertex_ids == other.impl_->vertex_ids &&
           impl_->raw_edges == other.impl_->raw_edges;
  }

  const detail::Csr& csr() const {
    ensure_valid();
    return impl_->csr;
  }

  const detail::CacheSlot& lattice_cache() const { return impl_->lattice_slot; }
  const detail::CacheSlot& signature_cache() const { return impl_->signature_slot; }

 private:
  struct Impl {
    std::vector<std::string> vertex_ids;
    std::unordered_map<std::string, int> index;
    std::vector<std::pair<std::string, std::string>> raw_edges;
    detail::Csr csr;
    Violation violation = Violation::None;
    std::string violation_msg;
    detail::CacheSlot lattice_slot;
    detail::CacheSlot signature_slot;
  };

  static void build_csr(Impl& impl) {
    detail::Csr& g = impl.csr;
    g.n = static_cast<int>(impl.vertex_ids.size());
    g.m = static_cast<int>(g.edges.size());
    g.deg.assign(g.n, 0);
    g.loops.assign(g.n, 0);
    std::vector<std::unordered_map<int, int>> nbr(g.n);
    for (auto [a, b] : g.edges) {
      if (a == b) {
        ++g.loops[a];
        continue;
      }
      ++nbr[a][b];
      ++nbr[b][a];
      ++g.deg[a];
      ++g.deg[b];
    }
    g.off.assign(g.n + 1, 0);
    for (int v = 0; v < g.n; ++v) g.off[v + 1] = g.off[v] + static_cast<int>(nbr[v].size());
    g.adj.resize(g.off[g.n]);
    g.mult.resize(g.off[g.n]);
    for (int v = 0; v < g.n; ++v) {
      std::vector<std::pair<int, int>> row(nbr[v].begin(), nbr[v].end());
      std::sort(row.begin(), row.end());
      int at = g.off[v];
      for (auto [w, k] : row) {
        g.adj[at] = w;
        g.mult[at] = k;
        ++at;
      }
    }
  }

  static bool connected(const detail::Csr& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int i = g.off[v]; i < g.off[v + 1]; ++i) {
        int w = g.adj[i];
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == g.n;
  }

  static std::shared_ptr<const Impl> empty_impl() {
    static const auto impl = [] {
      auto p = std::make_shared<Impl>();
      p->violation = Violation::Disconnected;
      p->violation_msg = "empty graph";
      return p;
    }();
    return impl;
  }

  std::shared_ptr<const Impl> impl_;
};

/// First Betti number |E| - |V| + 1; loops count as edges.
inline long long genus(const Multigraph& g) {
  g.ensure_valid();
  return static_cast<long long>(g.edge_count()) - g.vertex_count() + 1;
}

namespace detail {

/// Low-link bridge detection. Parallel pairs are skipped via the edge
/// multiplicity; loops never enter the traversal.
struct BridgeFinder {
  const Csr& g;
  std::vector<int> disc, low;
  int timer = 0;
  std::vector<std::pair<int, int>> bridge_pairs;  // (min,max) endpoint pairs

  explicit BridgeFinder(const Csr& csr) : g(csr), disc(csr.n, -1), low(csr.n, 0) {}

  void dfs(int root) {
    struct Frame {
      int v;
      int parent;       // vertex we entered from, -1 at root
      int parent_slot;  // slot in parent's row pointing at v
      int i;            // next adjacency slot of v to explore
    };
    std::vector<Frame> stack;
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1, -1, g.off[root]});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.i < g.off[f.v + 1]) {
        int slot = f.i++;
        int w = g.adj[slot];
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, slot, g.off[w]});
        } else if (w == f.parent) {
          // reverse view of the tree edge; only parallel copies act as
          // back edges
          if (g.mult[slot] >= 2) low[f.v] = std::min(low[f.v], disc[w]);
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& up = stack.back();
          low[up.v] = std::min(low[up.v], low[done.v]);
          if (low[done.v] > disc[up.v] && g.mult[done.parent_slot] == 1)
            bridge_pairs.emplace_back(std::min(up.v, done.v), std::max(up.v, done.v));
        }
      }
    }
  }
};

}  // namespace detail

/// Ids of all bridges, ascending. Loops and members of parallel pairs
/// are never bridges.
inline std::vector<int> bridges(const Multigraph& g) {
  g.ensure_valid();
  const detail::Csr& csr = g.csr();
  detail::BridgeFinder finder(csr);
  finder.dfs(0);
  std::sort(finder.bridge_pairs.begin(), finder.bridge_pairs.end());
  std::vector<int> out;
  for (int e = 0; e < csr.m; ++e) {
    auto [a, b] = csr.edges[e];
    if (a == b) continue;
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    if (std::binary_search(finder.bridge_pairs.begin(), finder.bridge_pairs.end(), key))
      out.push_back(e);
  }
  return out;
}

struct BridgeSplit {
  Multigraph g1;
  std::string v1;
  Multigraph g2;
  std::string v2;
};

/// Splits G at a bridge into the two components of G - e. The side of the
/// declared tail endpoint comes back as g1. Vertex order and relative edge
/// order are inherited from G.
inline BridgeSplit split_at_bridge(const Multigraph& g, int edge_id) {
  g.ensure_valid();
  auto bs = bridges(g);
  if (!std::binary_search(bs.begin(), bs.end(), edge_id))
    fail(Errc::NotABridge, "edge " + std::to_string(edge_id) + " is not a bridge");
  const detail::Csr& csr = g.csr();
  auto [t, h] = csr.edges[edge_id];

  // component of t in G - e (multiplicity-1 bridge: dropping one slot is
  // dropping the edge)
  std::vector<char> side(csr.n, 0);
  std::vector<int> stack = {t};
  side[t] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int i = csr.off[v]; i < csr.off[v + 1]; ++i) {
      int w = csr.adj[i];
      if ((v == t && w == h) || (v == h && w == t)) {
        if (csr.mult[i] == 1) continue;
      }
      if (!side[w]) {
        side[w] = 1;
        stack.push_back(w);
      }
    }
  }

  auto build = [&](char keep) {
    std::vector<std::string> vs;
    for (int v = 0; v < csr.n; ++v)
      if (side[v] == keep) vs.push_back(g.vertex_id(v));
    std::vector<std::pair<std::string, std::string>> es;
    for (int e = 0; e < csr.m; ++e) {
      if (e == edge_id) continue;
      auto [a, b] = csr.edges[e];
      if (side[a] == keep && side[b] == keep) es.push_back(g.edges()[e]);
    }
    return Multigraph(std::move(vs), std::move(es));
  };

  return BridgeSplit{build(1), g.vertex_id(t), build(0), g.vertex_id(h)};
}

}  // namespace divrank
