#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "divrank/divisor.hpp"

namespace divrank {
namespace detail {

struct DharScratch {
  std::vector<int> threat;   // edges into the burnt region, per vertex
  std::vector<char> burnt;
  std::vector<int> queue;
  std::vector<int> layer;    // BFS distance from the base vertex

  void resize(int n) {
    threat.assign(n, 0);
    burnt.assign(n, 0);
    queue.clear();
    queue.reserve(n);
    layer.assign(n, -1);
  }
};

/// One burning pass from q. Returns true when everything burns; otherwise
/// `scratch.threat[v]` holds, for each unburnt v, its edge count into the
/// burnt side (= what one firing of the unburnt set costs v).
inline bool burn_pass(const Csr& g, const std::vector<long long>& d, int q,
                      DharScratch& s) {
  std::fill(s.threat.begin(), s.threat.end(), 0);
  std::fill(s.burnt.begin(), s.burnt.end(), 0);
  s.queue.clear();
  s.burnt[q] = 1;
  s.queue.push_back(q);
  size_t head = 0;
  int nburnt = 1;
  while (head < s.queue.size()) {
    int u = s.queue[head++];
    for (int i = g.off[u]; i < g.off[u + 1]; ++i) {
      int w = g.adj[i];
      if (s.burnt[w]) continue;
      s.threat[w] += g.mult[i];
      if (s.threat[w] > d[w]) {
        s.burnt[w] = 1;
        ++nburnt;
        s.queue.push_back(w);
      }
    }
  }
  return nburnt == g.n;
}

/// In-place q-reduction: first clear deficits off q by firing balls around
/// q (farthest layer first; each ball firing only feeds the layer above and
/// drains the layer below), then run Dhar passes, firing the unburnt set as
/// many times as the boundary slack allows. `f` (optional) accumulates the
/// witness, one unit per set firing.
inline void dhar_reduce(const Csr& g, int q, std::vector<long long>& d,
                        std::vector<long long>* f, DharScratch& s) {
  const int n = g.n;
  s.resize(n);

  bool deficit = false;
  for (int v = 0; v < n; ++v)
    if (v != q && d[v] < 0) {
      deficit = true;
      break;
    }

  if (deficit) {
    // BFS layers from q
    std::fill(s.layer.begin(), s.layer.end(), -1);
    s.queue.clear();
    s.layer[q] = 0;
    s.queue.push_back(q);
    size_t head = 0;
    int maxlayer = 0;
    while (head < s.queue.size()) {
      int u = s.queue[head++];
      for (int i = g.off[u]; i < g.off[u + 1]; ++i) {
        int w = g.adj[i];
        if (s.layer[w] < 0) {
          s.layer[w] = s.layer[u] + 1;
          maxlayer = std::max(maxlayer, s.layer[w]);
          s.queue.push_back(w);
        }
      }
    }
    for (int r = maxlayer; r >= 1; --r) {
      long long k = 0;
      for (int v = 0; v < n; ++v) {
        if (s.layer[v] != r || d[v] >= 0) continue;
        long long feed = 0;
        for (int i = g.off[v]; i < g.off[v + 1]; ++i)
          if (s.layer[g.adj[i]] == r - 1) feed += g.mult[i];
        k = std::max(k, (-d[v] + feed - 1) / feed);
      }
      if (k == 0) continue;
      for (int u = 0; u < n; ++u) {
        if (s.layer[u] > r - 1) continue;
        if (f) (*f)[u] += k;
        if (s.layer[u] < r - 1) continue;
        for (int i = g.off[u]; i < g.off[u + 1]; ++i) {
          int w = g.adj[i];
          if (s.layer[w] == r) {
            long long moved = k * g.mult[i];
            d[u] -= moved;
            d[w] += moved;
          }
        }
      }
    }
  }

  long long rounds = 0;
  while (!burn_pass(g, d, q, s)) {
    if (++rounds > 50'000'000) fail(Errc::TooLarge, "reduction did not converge");
    // the unburnt set survives k rounds per its smallest slack
    long long k = -1;
    for (int v = 0; v < n; ++v) {
      if (s.burnt[v] || s.threat[v] == 0) continue;
      long long room = d[v] / s.threat[v];
      if (k < 0 || room < k) k = room;
    }
    if (k < 1) k = 1;
    for (int v = 0; v < n; ++v) {
      if (s.burnt[v]) continue;
      if (f) (*f)[v] += k;
      if (s.threat[v] == 0) continue;
      d[v] -= k * s.threat[v];
      for (int i = g.off[v]; i < g.off[v + 1]; ++i) {
        int w = g.adj[i];
        if (s.burnt[w]) d[w] += k * g.mult[i];
      }
    }
  }
}

inline void require_loopless_base(const Divisor& d, const std::string& v0, int* q_out) {
  d.host().ensure_valid();
  if (d.host().has_loops())
    fail(Errc::HasLoops, "reduced divisors are defined on loopless graphs");
  if (!d.host().has_vertex(v0)) fail(Errc::BadBaseVertex, "base vertex '" + v0 + "'");
  *q_out = d.host().vertex_index(v0);
}

}  // namespace detail

/// Is d v0-reduced? Nonnegative off v0, and the burning pass from v0
/// consumes the whole graph (equivalently: every nonempty subset avoiding
/// v0 has a non-saturated vertex).
inline bool is_reduced(const Divisor& d, const std::string& v0) {
  int q;
  detail::require_loopless_base(d, v0, &q);
  const auto& dense = d.dense();
  for (int v = 0; v < d.host().vertex_count(); ++v)
    if (v != q && dense[v] < 0) return false;
  detail::DharScratch s;
  s.resize(d.host().vertex_count());
  return detail::burn_pass(d.host().csr(), dense, q, s);
}

struct ReducedForm {
  Divisor reduced;
  IntFunction witness;  // div_of(witness) == reduced - input; zero at the base
  std::string base;
};

/// The unique v0-reduced divisor equivalent to d, with the witnessing
/// integer function (normalized to vanish at v0).
inline ReducedForm reduce(const Divisor& d, const std::string& v0) {
  int q;
  detail::require_loopless_base(d, v0, &q);
  std::vector<long long> x = d.dense();
  std::vector<long long> f(x.size(), 0);
  detail::DharScratch s;
  detail::dhar_reduce(d.host().csr(), q, x, &f, s);
  long long base_val = f[q];
  for (auto& v : f) v -= base_val;
  return ReducedForm{Divisor::from_dense(d.host(), std::move(x)),
                     IntFunction::from_dense(d.host(), std::move(f)), v0};
}

}  // namespace divrank
