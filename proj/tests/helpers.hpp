#pragma once

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "divrank/divisor.hpp"
#include "divrank/weighted_graph.hpp"

namespace testutil {

using namespace divrank;

inline Multigraph graph(std::vector<std::string> vs,
                        std::vector<std::pair<std::string, std::string>> es) {
  return Multigraph(std::move(vs), std::move(es));
}

/// v0-reducedness straight from the definition: nonnegative off v0 and
/// every nonempty subset avoiding v0 contains a non-saturated vertex.
/// Exponential in |V|; the cross-check target for the burning route.
inline bool subset_oracle_is_reduced(const Divisor& d, const std::string& v0) {
  const auto& g = d.host().csr();
  const int q = d.host().vertex_index(v0);
  const auto& coeff = d.dense();
  for (int v = 0; v < g.n; ++v)
    if (v != q && coeff[v] < 0) return false;

  std::vector<int> others;
  for (int v = 0; v < g.n; ++v)
    if (v != q) others.push_back(v);
  const int k = static_cast<int>(others.size());
  std::vector<char> in_a(g.n, 0);
  for (uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::fill(in_a.begin(), in_a.end(), 0);
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) in_a[others[i]] = 1;
    bool has_non_saturated = false;
    for (int i = 0; i < k && !has_non_saturated; ++i) {
      if (!(mask & (1u << i))) continue;
      int v = others[i];
      long long outdeg = 0;
      for (int a = g.off[v]; a < g.off[v + 1]; ++a)
        if (!in_a[g.adj[a]]) outdeg += g.mult[a];
      if (coeff[v] < outdeg) has_non_saturated = true;
    }
    if (!has_non_saturated) return false;
  }
  return true;
}

/// All coefficient vectors in [lo,hi]^n, odometer order.
inline std::vector<std::vector<long long>> window_vectors(int n, long long lo, long long hi) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> c(n, lo);
  while (true) {
    out.push_back(c);
    int i = 0;
    while (i < n && c[i] == hi) c[i++] = lo;
    if (i == n) break;
    ++c[i];
  }
  return out;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("divrank-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name, const std::string& contents) const {
    auto p = path_ / name;
    std::ofstream out(p);
    out << contents;
    return p.string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
