#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "divrank/weighted_graph.hpp"

namespace divrank {

/// Fixed instances used throughout the tests and sweeps.
inline WeightedGraph named(const std::string& name) {
  using E = std::pair<std::string, std::string>;
  if (name == "C3")
    return WeightedGraph(Multigraph({"a", "b", "c"}, {E{"a", "b"}, E{"b", "c"}, E{"c", "a"}}));
  if (name == "C4")
    return WeightedGraph(
        Multigraph({"a", "b", "c", "d"}, {E{"a", "b"}, E{"b", "c"}, E{"c", "d"}, E{"d", "a"}}));
  if (name == "K4")
    return WeightedGraph(Multigraph({"v1", "v2", "v3", "v4"},
                                    {E{"v1", "v2"}, E{"v1", "v3"}, E{"v1", "v4"}, E{"v2", "v3"},
                                     E{"v2", "v4"}, E{"v3", "v4"}}));
  if (name == "banana3")
    return WeightedGraph(Multigraph({"u", "w"}, {E{"u", "w"}, E{"u", "w"}, E{"u", "w"}}));
  if (name == "dumbbell")
    return WeightedGraph(Multigraph({"v1", "a1", "b1", "v2", "a2", "b2"},
                                    {E{"v1", "a1"}, E{"a1", "b1"}, E{"b1", "v1"}, E{"v2", "a2"},
                                     E{"a2", "b2"}, E{"b2", "v2"}, E{"v1", "v2"}}));
  if (name == "loop1") return WeightedGraph(Multigraph({"v"}, {E{"v", "v"}}));
  if (name == "wt-point-g1") return WeightedGraph(Multigraph({"v"}, {}), {{"v", 1}});
  if (name == "K4-wt1") {
    WeightedGraph k4 = named("K4");
    return WeightedGraph(k4.graph(), {{"v1", 1}});
  }
  fail(Errc::UnknownName, "no named graph '" + name + "'");
}

inline const std::vector<std::string>& named_graph_names() {
  static const std::vector<std::string> names = {
      "C3", "C4", "K4", "banana3", "dumbbell", "loop1", "wt-point-g1", "K4-wt1"};
  return names;
}

struct Corpus {
  int max_v = 0;
  int max_e = 0;
  bool bridges_only = false;
  std::vector<std::pair<std::string, WeightedGraph>> graphs;
};

namespace detail {

/// All connected loopless multigraphs on up to max_v vertices with up to
/// max_e edges, one representative per canonical relabeling key (minimum
/// multiplicity vector over all vertex permutations, so the dedup is exact
/// at these sizes). Output order is the key order: byte-identical reruns.
inline std::vector<std::pair<int, std::vector<uint8_t>>> enumerate_keys(int max_v, int max_e) {
  std::vector<std::pair<int, std::vector<uint8_t>>> result;  // (n, slot multiplicities)
  for (int n = 1; n <= max_v; ++n) {
    if (n == 1) {
      result.push_back({1, {}});
      continue;
    }
    // slot s <-> vertex pair, lexicographic
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    const int p = static_cast<int>(slots.size());
    std::vector<int> slot_of(n * n, -1);
    for (int s = 0; s < p; ++s)
      slot_of[slots[s].first * n + slots[s].second] = s;

    // slot permutation induced by each vertex permutation
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> slot_perms;
    do {
      std::vector<int> sp(p);
      for (int s = 0; s < p; ++s) {
        int a = perm[slots[s].first], b = perm[slots[s].second];
        sp[s] = slot_of[std::min(a, b) * n + std::max(a, b)];
      }
      slot_perms.push_back(std::move(sp));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::vector<uint8_t>> seen;

    auto canonical = [&](const std::vector<uint8_t>& mult) {
      std::vector<uint8_t> best = mult;
      std::vector<uint8_t> cand(p);
      for (const auto& sp : slot_perms) {
        bool smaller = false;
        for (int s = 0; s < p; ++s) {
          cand[s] = mult[sp[s]];
          if (!smaller) {
            if (cand[s] > best[s]) goto next_perm;
            if (cand[s] < best[s]) smaller = true;
          }
        }
        if (smaller) best = cand;
      next_perm:;
      }
      return best;
    };

    // supports: connected spanning edge sets, then extra parallel copies
    std::vector<int> dsu(n);
    for (uint32_t mask = 1; mask < (1u << p); ++mask) {
      if (__builtin_popcount(mask) > max_e) continue;
      std::iota(dsu.begin(), dsu.end(), 0);
      auto find = [&](int x) {
        while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
        return x;
      };
      int parts = n;
      std::vector<char> touched(n, 0);
      for (int s = 0; s < p; ++s)
        if (mask & (1u << s)) {
          touched[slots[s].first] = touched[slots[s].second] = 1;
          int a = find(slots[s].first), b = find(slots[s].second);
          if (a != b) {
            dsu[a] = b;
            --parts;
          }
        }
      if (parts != 1 || std::count(touched.begin(), touched.end(), 1) != n) continue;

      std::vector<int> support;
      for (int s = 0; s < p; ++s)
        if (mask & (1u << s)) support.push_back(s);
      const int base = static_cast<int>(support.size());

      // distribute up to max_e - base extra copies over the support
      const int limit = max_e - base;
      std::vector<uint8_t> mult(p, 0);
      for (int s : support) mult[s] = 1;
      std::vector<int> extra(base, 0);
      int total = 0;
      while (true) {
        seen.push_back(canonical(mult));
        int i = 0;
        while (i < base) {
          if (total + 1 <= limit) {
            ++extra[i];
            ++mult[support[i]];
            ++total;
            break;
          }
          total -= extra[i];
          mult[support[i]] -= extra[i];
          extra[i] = 0;
          ++i;
        }
        if (i == base) break;
      }
    }

    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto& key : seen) result.push_back({n, std::move(key)});
  }
  return result;
}

inline Multigraph materialize(int n, const std::vector<uint8_t>& mult) {
  std::vector<std::string> vertices;
  for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  int s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++s)
      for (int k = 0; k < mult[s]; ++k) edges.emplace_back(vertices[i], vertices[j]);
  return Multigraph(std::move(vertices), std::move(edges));
}

}  // namespace detail

/// Deterministic small-graph corpus; the same parameters always produce the
/// same listing. Guard: at most 6 vertices and 12 edges.
inline Corpus enumerate_small(int max_v, int max_e, bool with_bridges_only) {
  if (max_v < 1 || max_v > 6 || max_e < 0 || max_e > 12)
    fail(Errc::BudgetExceeded, "corpus bounds limited to 6 vertices and 12 edges");
  Corpus corpus;
  corpus.max_v = max_v;
  corpus.max_e = max_e;
  corpus.bridges_only = with_bridges_only;

  auto keys = detail::enumerate_keys(max_v, max_e);
  // name per (n, edge count) group, in key order
  std::map<std::pair<int, int>, int> counter;
  for (auto& [n, key] : keys) {
    Multigraph g = detail::materialize(n, key);
    if (with_bridges_only && bridges(g).empty()) continue;
    int m = g.edge_count();
    int idx = counter[{n, m}]++;
    std::string name =
        "v" + std::to_string(n) + "e" + std::to_string(m) + "-" + std::to_string(idx);
    corpus.graphs.emplace_back(std::move(name), WeightedGraph(std::move(g)));
  }
  return corpus;
}

}  // namespace divrank
