#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "divrank/reduced.hpp"

namespace divrank {
namespace detail {

struct VecHash {
  size_t operator()(const std::vector<int32_t>& v) const {
    uint64_t h = 1469598103934665603ULL;
    for (int32_t x : v) {
      h ^= static_cast<uint64_t>(static_cast<uint32_t>(x));
      h *= 1099511628211ULL;
    }
    return static_cast<size_t>(h);
  }
};

/// Baker-Norine rank of a divisor on a loopless connected graph, via
/// r(d) = 1 + min over v of r(d - [v]) applied to reduced forms, with the
/// memo keyed by reduced form so equivalent states collapse. The memo
/// lives and dies with one evaluation.
class RankEngine {
 public:
  explicit RankEngine(const Csr& g) : g_(g) { scratch_.resize(g.n); }

  int rank(std::vector<long long> d) {
    long long deg = 0;
    for (long long c : d) deg += c;
    return go(std::move(d), deg);
  }

 private:
  int go(std::vector<long long> x, long long degx) {
    if (degx < 0) return -1;
    dhar_reduce(g_, 0, x, nullptr, scratch_);

    key_.clear();
    key_.push_back(static_cast<int32_t>(x[0]));
    for (int v = 1; v < g_.n; ++v)
      if (x[v] != 0) {
        key_.push_back(v);
        key_.push_back(static_cast<int32_t>(x[v]));
      }
    if (auto it = memo_.find(key_); it != memo_.end()) return it->second;
    std::vector<int32_t> key = key_;

    if (x[0] < 0) {
      memo_.emplace(std::move(key), -1);
      return -1;
    }

    // visit chip-poor vertices first: they reach empty systems sooner
    std::vector<int> order = bucket_order(x);
    int best = INT32_MAX;
    for (int v : order) {
      std::vector<long long> child = x;
      child[v] -= 1;
      int r = go(std::move(child), degx - 1);
      if (r == -1) {
        best = -1;
        break;
      }
      if (r < best) best = r;
    }
    int res = best + 1;
    memo_.emplace(std::move(key), res);
    return res;
  }

  std::vector<int> bucket_order(const std::vector<long long>& x) const {
    constexpr int kBuckets = 8;
    std::vector<std::vector<int>> buckets(kBuckets);
    for (int v = 0; v < g_.n; ++v) {
      long long c = x[v] < 0 ? 0 : x[v];
      buckets[c >= kBuckets ? kBuckets - 1 : c].push_back(v);
    }
    std::vector<int> order;
    order.reserve(g_.n);
    for (auto& b : buckets) order.insert(order.end(), b.begin(), b.end());
    return order;
  }

  const Csr& g_;
  DharScratch scratch_;
  std::vector<int32_t> key_;
  std::unordered_map<std::vector<int32_t>, int, VecHash> memo_;
};

inline int rank_dense(const Csr& g, std::vector<long long> d) {
  return RankEngine(g).rank(std::move(d));
}

/// Per-graph tables for the definitional rank oracle: for each degree k,
/// the set of linear-equivalence classes containing an effective divisor,
/// as a bitmap over mixed-radix residue codes.
struct SigTables {
  mutable std::mutex mu;
  mutable std::vector<std::shared_ptr<const std::vector<char>>> levels;

  static constexpr long long kEnumBudget = 30'000'000;

  std::vector<std::shared_ptr<const std::vector<char>>> ensure(
      const Csr& g, const LatticeCtx& ctx, int up_to) const {
    std::lock_guard<std::mutex> lock(mu);
    long long classes = 1;
    for (long long m : ctx.nt_mod) classes = checked_mul(classes, m);
    // enumeration cost check before building anything new
    long long cost = 0;
    for (int k = static_cast<int>(levels.size()); k <= up_to; ++k) {
      long long level = 1;  // C(n+k-1, k), capped
      for (int i = 1; i <= k; ++i) {
        level = level * (g.n + k - i) / i;
        if (level > kEnumBudget) break;
      }
      cost += level;
      if (cost > kEnumBudget) fail(Errc::TooLarge, "oracle enumeration budget exceeded");
    }
    for (int k = static_cast<int>(levels.size()); k <= up_to; ++k) {
      auto bitmap = std::make_shared<std::vector<char>>(classes, 0);
      std::vector<long long> sig(ctx.nt_mod.size(), 0);
      enumerate(g, ctx, k, 0, sig, *bitmap);
      levels.push_back(std::move(bitmap));
    }
    return {levels.begin(), levels.begin() + up_to + 1};
  }

  static long long encode(const LatticeCtx& ctx, const std::vector<long long>& sig) {
    long long code = 0, radix = 1;
    for (size_t i = 0; i < sig.size(); ++i) {
      code += sig[i] * radix;
      radix *= ctx.nt_mod[i];
    }
    return code;
  }

 private:
  static void enumerate(const Csr& g, const LatticeCtx& ctx, int chips, int vstart,
                        std::vector<long long>& sig, std::vector<char>& bitmap) {
    if (chips == 0) {
      bitmap[encode(ctx, sig)] = 1;
      return;
    }
    if (vstart == g.n) return;
    // place 0..chips chips on vstart, rest on later vertices
    std::vector<long long> saved = sig;
    for (int c = 0; c <= chips; ++c) {
      if (c > 0) {
        if (vstart >= 1)
          for (size_t i = 0; i < sig.size(); ++i)
            sig[i] = (sig[i] + ctx.nt_u_mod[i][vstart - 1]) % ctx.nt_mod[i];
      }
      if (vstart + 1 == g.n) {
        if (c == chips) bitmap[encode(ctx, sig)] = 1;
      } else {
        enumerate(g, ctx, chips - c, vstart + 1, sig, bitmap);
      }
    }
    sig = saved;
  }
};

inline std::shared_ptr<const SigTables> sig_tables_of(const Multigraph& g) {
  return g.signature_cache().get_or_build<SigTables>(
      [] { return std::make_shared<SigTables>(); });
}

}  // namespace detail

/// Baker-Norine rank. Hosts must be loopless; graphs with loops carry a
/// rank only through their virtual loopless model (see rank_weighted).
inline int rank(const Divisor& d) {
  d.host().ensure_valid();
  if (d.host().has_loops())
    fail(Errc::HasLoops, "rank on a graph with loops; use the weighted rank");
  return detail::rank_dense(d.host().csr(), d.dense());
}

/// Literal transcription of the rank definition, for cross-checking: walks
/// s = 0,1,2,... and, for every effective divisor e of degree s, decides
/// |d - e| != empty by lattice-membership against the (precomputed) classes
/// of effective divisors of matching degree. No reduction machinery.
inline int rank_oracle(const Divisor& d, long long s_max) {
  d.host().ensure_valid();
  if (d.host().has_loops()) fail(Errc::HasLoops, "oracle needs a loopless host");
  const long long deg = d.degree();
  if (deg > s_max) fail(Errc::TooLarge, "degree exceeds the oracle budget");
  if (deg < 0) return -1;

  const detail::Csr& g = d.host().csr();
  auto ctx = detail::lattice_of(d.host());
  auto tables = detail::sig_tables_of(d.host())->ensure(g, *ctx, static_cast<int>(deg));

  auto winnable = [&](const std::vector<long long>& sig, long long k) {
    if (k < 0) return false;
    return (*tables[k])[detail::SigTables::encode(*ctx, sig)] != 0;
  };

  std::vector<long long> sig_d = ctx->signature(d.dense());
  if (!winnable(sig_d, deg)) return -1;

  // basis signatures, negated: subtracting one chip at v adds neg_v
  std::vector<std::vector<long long>> neg(g.n, std::vector<long long>(ctx->nt_mod.size(), 0));
  for (int v = 1; v < g.n; ++v)
    for (size_t i = 0; i < ctx->nt_mod.size(); ++i)
      neg[v][i] = (ctx->nt_mod[i] - ctx->nt_u_mod[i][v - 1]) % ctx->nt_mod[i];

  // DFS over effective e of degree s; true when some e makes d - e empty
  std::function<bool(int, int, std::vector<long long>&, long long)> bad =
      [&](int remaining, int vstart, std::vector<long long>& sig, long long deg_rest) -> bool {
    if (remaining == 0) return !winnable(sig, deg_rest);
    if (vstart == g.n) return false;
    std::vector<long long> saved = sig;
    for (int c = 0; c <= remaining; ++c) {
      if (c > 0)
        for (size_t i = 0; i < sig.size(); ++i)
          sig[i] = (sig[i] + neg[vstart][i]) % ctx->nt_mod[i];
      if (vstart + 1 == g.n) {
        if (c == remaining && !winnable(sig, deg_rest)) return true;
      } else if (bad(remaining - c, vstart + 1, sig, deg_rest)) {
        sig = saved;
        return true;
      }
    }
    sig = saved;
    return false;
  };

  for (long long s = 1; s <= deg + 1; ++s) {
    std::vector<long long> sig = sig_d;
    if (bad(static_cast<int>(s), 0, sig, deg - s)) return static_cast<int>(s) - 1;
  }
  return static_cast<int>(deg);
}

/// Rank of a divisor on a vertex-weighted graph: the rank of its zero
/// extension on the virtual loopless graph.
inline int rank_weighted(const WeightedGraph& wg, const Divisor& d) {
  if (!d.host().same_as(wg.graph()))
    fail(Errc::HostMismatch, "divisor does not live on the weighted graph");
  auto vg = detail::virtual_of(wg);
  const detail::Csr& g = vg->graph.csr();
  std::vector<long long> x(g.n, 0);
  const auto& dd = d.dense();
  std::copy(dd.begin(), dd.end(), x.begin());  // originals come first
  return detail::rank_dense(g, std::move(x));
}

/// Base point test on the virtual graph. An empty system makes every
/// vertex a base point.
inline bool is_base_point(const WeightedGraph& wg, const Divisor& d, const std::string& v) {
  if (!d.host().same_as(wg.graph()))
    fail(Errc::HostMismatch, "divisor does not live on the weighted graph");
  auto vg = detail::virtual_of(wg);
  if (!vg->graph.has_vertex(v))
    fail(Errc::UnknownVertex, "'" + v + "' is not a vertex of the virtual graph");
  const detail::Csr& g = vg->graph.csr();
  std::vector<long long> x(g.n, 0);
  const auto& dd = d.dense();
  std::copy(dd.begin(), dd.end(), x.begin());
  int r = detail::rank_dense(g, x);
  if (r == -1) return true;
  x[vg->graph.vertex_index(v)] -= 1;
  return detail::rank_dense(g, std::move(x)) == r;
}

/// If the weighted rank is nonnegative, an effective divisor on G itself
/// that is linearly equivalent to d in G: restrict the witness function of
/// the reduction on the virtual graph back to V(G).
inline std::optional<Divisor> effective_representative(const WeightedGraph& wg,
                                                       const Divisor& d) {
  if (!d.host().same_as(wg.graph()))
    fail(Errc::HostMismatch, "divisor does not live on the weighted graph");
  auto vg = detail::virtual_of(wg);
  const detail::Csr& g = vg->graph.csr();
  std::vector<long long> x(g.n, 0);
  const auto& dd = d.dense();
  std::copy(dd.begin(), dd.end(), x.begin());
  std::vector<long long> f(g.n, 0);
  detail::DharScratch s;
  detail::dhar_reduce(g, 0, x, &f, s);
  if (x[0] < 0) return std::nullopt;

  const int n = wg.graph().vertex_count();
  std::vector<long long> f_restricted(f.begin(), f.begin() + n);
  Divisor e = d + div_of(IntFunction::from_dense(wg.graph(), std::move(f_restricted)));
  if (!e.is_effective())
    fail(Errc::InvalidArgument, "restricted witness lost effectivity");
  return e;
}

}  // namespace divrank
