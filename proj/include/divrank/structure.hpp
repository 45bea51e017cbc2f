#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divrank/rank.hpp"

namespace divrank {

namespace detail {

inline WeightedGraph restrict_weights(const WeightedGraph& wg, const Multigraph& part) {
  std::map<std::string, long long> w;
  for (const auto& id : part.vertices()) {
    long long val = wg.weight(id);
    if (val != 0) w[id] = val;
  }
  return WeightedGraph(part, w);
}

inline Divisor restrict_divisor(const Divisor& d, const Multigraph& part) {
  std::map<std::string, long long> c;
  for (const auto& id : part.vertices()) {
    long long val = d.at(id);
    if (val != 0) c[id] = val;
  }
  return Divisor(part, c);
}

}  // namespace detail

/// A degree-2, rank-1 divisor on the virtual loopless graph, if one exists.
/// Effective degree-2 divisors exhaust the candidate classes (a rank-1
/// class has an effective representative), deduplicated by reduced form.
inline std::optional<Divisor> hyperelliptic_witness(const WeightedGraph& wg) {
  if (weighted_genus(wg) < 2)
    fail(Errc::GenusTooSmall, "hyperellipticity needs genus >= 2");
  auto vg = detail::virtual_of(wg);
  const Multigraph& g = vg->graph;
  const int n = g.vertex_count();
  const std::string& base = g.vertex_id(0);
  std::set<std::vector<long long>> seen;
  for (int u = 0; u < n; ++u) {
    for (int w = u; w < n; ++w) {
      Divisor d = Divisor(g).plus_vertex(g.vertex_id(u)).plus_vertex(g.vertex_id(w));
      auto red = reduce(d, base);
      if (!seen.insert(red.reduced.dense()).second) continue;
      if (rank(d) == 1) return d;
    }
  }
  return std::nullopt;
}

inline bool is_hyperelliptic(const WeightedGraph& wg) {
  return hyperelliptic_witness(wg).has_value();
}

/// Glue v_i-reduced divisors across a bridge (v1, v2):
///   j1(d1 - d1(v1)[v1]) + j2(d2 - d2(v2)[v2]) + (d1(v1) + d2(v2))[v1],
/// which is v1-reduced on the joined graph.
inline Divisor glue_reduced(const Divisor& d1, const std::string& v1, const Divisor& d2,
                            const std::string& v2, const Multigraph& g) {
  g.ensure_valid();
  if (!is_reduced(d1, v1) || !is_reduced(d2, v2))
    fail(Errc::NotReducedInput, "inputs must be reduced at the bridge endpoints");
  for (const auto& id : d1.host().vertices())
    if (!g.has_vertex(id)) fail(Errc::VertexNotInHost, "'" + id + "'");
  for (const auto& id : d2.host().vertices()) {
    if (!g.has_vertex(id)) fail(Errc::VertexNotInHost, "'" + id + "'");
    if (d1.host().has_vertex(id))
      fail(Errc::InvalidArgument, "parts share vertex '" + id + "'");
  }
  if (d1.host().vertex_count() + d2.host().vertex_count() != g.vertex_count() ||
      g.edge_count() != d1.host().edge_count() + d2.host().edge_count() + 1)
    fail(Errc::InvalidArgument, "graph is not the parts joined by one bridge");

  Divisor a = embed(d1.plus_vertex(v1, -d1.at(v1)), g);
  Divisor b = embed(d2.plus_vertex(v2, -d2.at(v2)), g);
  return (a + b).plus_vertex(v1, d1.at(v1) + d2.at(v2));
}

/// One bridge check: both displayed rank inequalities for a divisor split
/// across a bridge.
struct BridgeReport {
  BridgeReport(Divisor d1_, Divisor d2_) : d1(std::move(d1_)), d2(std::move(d2_)) {}

  int bridge = -1;
  std::string v1, v2;
  Divisor d1, d2;
  int r = -1, r1 = -1, r2 = -1;
  int r1_minus = -1, r2_minus = -1;  // ranks of d_i - [v_i]
  bool v1_base = false, v2_base = false;
  bool basepoint_case = false;
  int bound_sum = 0;
  int bound_punctured = 0;
  bool holds = false;
};

inline BridgeReport check_bridge_inequalities(const WeightedGraph& wg, int edge_id,
                                              const Divisor& d) {
  if (!d.host().same_as(wg.graph()))
    fail(Errc::HostMismatch, "divisor does not live on the weighted graph");
  BridgeSplit split = split_at_bridge(wg.graph(), edge_id);

  WeightedGraph wg1 = detail::restrict_weights(wg, split.g1);
  WeightedGraph wg2 = detail::restrict_weights(wg, split.g2);
  BridgeReport rep(detail::restrict_divisor(d, split.g1),
                   detail::restrict_divisor(d, split.g2));
  rep.bridge = edge_id;
  rep.v1 = split.v1;
  rep.v2 = split.v2;

  rep.r = rank_weighted(wg, d);
  rep.r1 = rank_weighted(wg1, rep.d1);
  rep.r2 = rank_weighted(wg2, rep.d2);
  rep.r1_minus = rank_weighted(wg1, rep.d1.minus_vertex(split.v1));
  rep.r2_minus = rank_weighted(wg2, rep.d2.minus_vertex(split.v2));
  // empty system: every vertex is a base point
  rep.v1_base = rep.r1 == -1 || rep.r1_minus == rep.r1;
  rep.v2_base = rep.r2 == -1 || rep.r2_minus == rep.r2;
  rep.basepoint_case = rep.v1_base && rep.v2_base;
  rep.bound_sum = rep.r1 + rep.r2 + (rep.basepoint_case ? 1 : 0);
  rep.bound_punctured =
      rep.r1_minus + rep.r2_minus + ((!rep.v1_base && !rep.v2_base) ? 2 : 1);
  rep.holds = rep.r <= rep.bound_sum && rep.r <= rep.bound_punctured;
  return rep;
}

/// On a non-hyperelliptic graph of genus 3, every divisor class of degree
/// at most `deg_bound` (default 2) must have rank <= 0. Scans the window
/// of coefficients in [-2,3] up to that degree and returns the violators.
inline std::vector<Divisor> check_genus3_claim(const WeightedGraph& wg,
                                               long long deg_bound = 2) {
  if (weighted_genus(wg) != 3) fail(Errc::WrongGenus, "genus 3 required");
  if (is_hyperelliptic(wg)) fail(Errc::IsHyperelliptic, "graph is hyperelliptic");

  const Multigraph& g = wg.graph();
  const int n = g.vertex_count();
  std::vector<Divisor> violations;
  std::map<std::vector<long long>, int> class_rank;  // keyed by reduced form on the virtual graph

  auto vg = detail::virtual_of(wg);
  const std::string& base = vg->graph.vertex_id(0);

  std::vector<long long> coeff(n, -2);
  while (true) {
    long long deg = 0;
    for (long long c : coeff) deg += c;
    if (deg <= deg_bound) {
      Divisor d = Divisor::from_dense(g, coeff);
      Divisor on_virtual = embed(d, vg->graph);
      auto key = reduce(on_virtual, base).reduced.dense();
      auto it = class_rank.find(key);
      int r;
      if (it != class_rank.end()) {
        r = it->second;
      } else {
        r = rank_weighted(wg, d);
        class_rank.emplace(std::move(key), r);
      }
      if (r > 0) violations.push_back(d);
    }
    int i = 0;
    while (i < n && coeff[i] == 3) coeff[i++] = -2;
    if (i == n) break;
    ++coeff[i];
  }
  return violations;
}

/// rank(d) - rank(K - d) - (deg d + 1 - g); zero whenever graph
/// Riemann-Roch holds, i.e. always.
inline long long riemann_roch_residual(const WeightedGraph& wg, const Divisor& d) {
  Divisor k = canonical_weighted(wg);
  long long lhs = rank_weighted(wg, d);
  long long rhs = rank_weighted(wg, k - d);
  return lhs - rhs - (d.degree() + 1 - weighted_genus(wg));
}

/// Invariant factors (> 1) of the degree-0 divisor class group.
inline std::vector<long long> jacobian_invariants(const Multigraph& g) {
  g.ensure_valid();
  auto ctx = detail::lattice_of(g);
  std::vector<long long> out;
  for (long long v : ctx->diag)
    if (v > 1) out.push_back(v);
  return out;
}

/// Spanning tree count by the matrix-tree theorem (Bareiss determinant of
/// the reduced Laplacian; independent of the Smith form route).
inline long long spanning_tree_count(const Multigraph& g) {
  g.ensure_valid();
  return detail::lattice_of(g)->tree_count;
}

}  // namespace divrank
