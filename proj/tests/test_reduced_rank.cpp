#include <doctest.h>

#include <random>
#include <set>

#include "divrank/corpus.hpp"
#include "divrank/rank.hpp"
#include "divrank/structure.hpp"
#include "helpers.hpp"

using namespace divrank;
using testutil::graph;

TEST_CASE("is_reduced on the triangle") {
  auto c3 = named("C3").graph();
  CHECK(is_reduced(Divisor(c3, {{"b", 1}}), "a"));
  CHECK_FALSE(is_reduced(Divisor(c3, {{"b", 2}}), "a"));  // {b} is saturated
  CHECK_FALSE(is_reduced(Divisor(c3, {{"b", -1}}), "a"));
  CHECK(is_reduced(Divisor(c3, {{"a", -7}, {"b", 1}}), "a"));  // base may owe anything
  CHECK_FALSE(is_reduced(Divisor(c3, {{"b", 1}, {"c", 1}}), "a"));  // A={b,c} saturated

  CHECK_THROWS_AS(is_reduced(Divisor(named("loop1").graph()), "v"), Error);
  CHECK_THROWS_AS(is_reduced(Divisor(c3), "zz"), Error);
}

TEST_CASE("burning equals the subset definition across the corpus") {
  std::mt19937 rng(11);
  for (const auto& [name, wg] : enumerate_small(4, 6, false).graphs) {
    const Multigraph& g = wg.graph();
    if (g.has_loops()) continue;
    CAPTURE(name);
    for (const auto& coeff : testutil::window_vectors(g.vertex_count(), -1, 2)) {
      Divisor d = Divisor::from_dense(g, coeff);
      for (int q = 0; q < g.vertex_count(); ++q) {
        const std::string& v0 = g.vertex_id(q);
        CHECK(is_reduced(d, v0) == testutil::subset_oracle_is_reduced(d, v0));
      }
    }
  }
  // a couple of larger named graphs with random divisors
  for (const auto& name : {"dumbbell", "K4", "banana3"}) {
    Multigraph g = named(name).graph();
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<long long> coeff(g.vertex_count());
      for (auto& c : coeff) c = static_cast<long long>(rng() % 7) - 2;
      Divisor d = Divisor::from_dense(g, coeff);
      const std::string& v0 = g.vertex_id(rng() % g.vertex_count());
      CHECK(is_reduced(d, v0) == testutil::subset_oracle_is_reduced(d, v0));
    }
  }
}

TEST_CASE("reduce: examples, idempotence, witness") {
  auto c3 = named("C3").graph();

  ReducedForm rf = reduce(Divisor(c3, {{"b", 2}}), "a");
  CHECK(rf.reduced == Divisor(c3, {{"a", 1}, {"c", 1}}));
  CHECK(is_reduced(rf.reduced, "a"));

  ReducedForm already = reduce(Divisor(c3, {{"b", 1}}), "a");
  CHECK(already.reduced == Divisor(c3, {{"b", 1}}));
  for (int v = 0; v < 3; ++v) CHECK(already.witness.at_index(v) == 0);

  // witness: div_of(witness) = reduced - input, zero at the base
  Divisor wild(c3, {{"a", 5}, {"b", -3}, {"c", 1}});
  ReducedForm rw = reduce(wild, "b");
  CHECK(div_of(rw.witness) == rw.reduced - wild);
  CHECK(rw.witness.at("b") == 0);
  CHECK(is_reduced(rw.reduced, "b"));

  // idempotence
  ReducedForm twice = reduce(rw.reduced, "b");
  CHECK(twice.reduced == rw.reduced);

  CHECK_THROWS_AS(reduce(Divisor(named("loop1").graph()), "v"), Error);
}

TEST_CASE("reduce is a class invariant (uniqueness)") {
  std::mt19937 rng(23);
  for (const auto& [name, wg] : enumerate_small(5, 7, false).graphs) {
    const Multigraph& g = wg.graph();
    if (rng() % 4 != 0) continue;  // sample the corpus
    std::vector<long long> coeff(g.vertex_count()), fval(g.vertex_count());
    for (auto& c : coeff) c = static_cast<long long>(rng() % 9) - 4;
    for (auto& f : fval) f = static_cast<long long>(rng() % 7) - 3;
    Divisor d = Divisor::from_dense(g, coeff);
    Divisor e = d + div_of(IntFunction::from_dense(g, fval));
    const std::string& v0 = g.vertex_id(rng() % g.vertex_count());
    CHECK(reduce(d, v0).reduced == reduce(e, v0).reduced);
  }
}

TEST_CASE("equal reductions characterize linear equivalence") {
  // burning route vs lattice route, both directions
  std::mt19937 rng(29);
  for (const auto& [name, wg] : enumerate_small(4, 6, false).graphs) {
    const Multigraph& g = wg.graph();
    const std::string& v0 = g.vertex_id(0);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<long long> c1(g.vertex_count()), c2(g.vertex_count());
      for (auto& c : c1) c = static_cast<long long>(rng() % 7) - 3;
      for (auto& c : c2) c = static_cast<long long>(rng() % 7) - 3;
      Divisor d = Divisor::from_dense(g, c1);
      Divisor e = Divisor::from_dense(g, c2);
      bool same_reduction = reduce(d, v0).reduced == reduce(e, v0).reduced;
      CHECK(same_reduction == linearly_equivalent(d, e));
    }
  }
}

TEST_CASE("rank on the triangle") {
  auto c3 = named("C3").graph();
  CHECK(rank(Divisor(c3, {{"b", -1}})) == -1);
  CHECK(rank(Divisor(c3, {{"b", 1}})) == 0);
  CHECK(rank(Divisor(c3, {{"b", 1}, {"c", 1}})) == 1);  // genus 1: r = deg - g
  CHECK(rank(Divisor(c3)) == 0);
  CHECK_THROWS_AS(rank(Divisor(named("loop1").graph())), Error);
}

TEST_CASE("rank oracle: definitional enumeration") {
  auto c3 = named("C3").graph();
  CHECK(rank_oracle(Divisor(c3), 10) == 0);

  auto k4 = named("K4").graph();
  for (const auto& v : k4.vertices())
    CHECK(rank_oracle(Divisor(k4, {{v, 1}}), 10) == 0);

  auto banana = named("banana3").graph();
  CHECK(rank_oracle(Divisor(banana, {{"u", 1}, {"w", 1}}), 10) == 1);

  CHECK_THROWS_AS(rank_oracle(Divisor(c3, {{"a", 5}}), 3), Error);  // budget
  CHECK_THROWS_AS(rank_oracle(Divisor(named("loop1").graph()), 5), Error);
}

TEST_CASE("rank equals the oracle on sampled corpus divisors") {
  std::mt19937 rng(37);
  for (const auto& [name, wg] : enumerate_small(4, 7, false).graphs) {
    const Multigraph& g = wg.graph();
    if (g.has_loops()) continue;
    CAPTURE(name);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<long long> coeff(g.vertex_count());
      for (auto& c : coeff) c = static_cast<long long>(rng() % 6) - 2;
      Divisor d = Divisor::from_dense(g, coeff);
      CHECK(rank(d) == rank_oracle(d, std::max(0LL, d.degree())));
    }
  }
}

TEST_CASE("rank is a class invariant") {
  std::mt19937 rng(41);
  auto k4 = named("K4").graph();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long long> coeff(4), fval(4);
    for (auto& c : coeff) c = static_cast<long long>(rng() % 7) - 3;
    for (auto& f : fval) f = static_cast<long long>(rng() % 9) - 4;
    Divisor d = Divisor::from_dense(k4, coeff);
    Divisor e = d + div_of(IntFunction::from_dense(k4, fval));
    CHECK(rank(d) == rank(e));
  }
}

TEST_CASE("rank bounds from Riemann-Roch") {
  for (const auto& [name, wg] : enumerate_small(4, 6, false).graphs) {
    const Multigraph& g = wg.graph();
    if (g.has_loops()) continue;
    const long long gen = genus(g);
    for (const auto& coeff : testutil::window_vectors(g.vertex_count(), -1, 2)) {
      Divisor d = Divisor::from_dense(g, coeff);
      int r = rank(d);
      long long deg = d.degree();
      if (deg < 0) CHECK(r == -1);
      CHECK(r >= deg - gen);
      CHECK(r <= std::max(deg, -1LL));
      if (deg > 2 * gen - 2) CHECK(r == deg - gen);
    }
  }
}

TEST_CASE("rank is independent of the vertex declaration order") {
  // the engine picks its base vertex from the declaration order; ranks
  // must not care
  auto k4 = named("K4").graph();
  Multigraph shuffled({"v3", "v1", "v4", "v2"},
                      {{"v1", "v2"}, {"v1", "v3"}, {"v1", "v4"}, {"v2", "v3"},
                       {"v2", "v4"}, {"v3", "v4"}});
  for (const auto& coeff : testutil::window_vectors(4, -1, 2)) {
    Divisor d = Divisor::from_dense(k4, coeff);
    std::map<std::string, long long> m = d.support_map();
    Divisor d2(shuffled, m);
    CHECK(rank(d) == rank(d2));
  }
}

TEST_CASE("weighted rank goes through the virtual graph") {
  CHECK(rank_weighted(named("C3"), Divisor(named("C3").graph(), {{"b", 1}})) == 0);

  auto point = named("wt-point-g1");
  CHECK(rank_weighted(point, Divisor(point.graph(), {{"v", 1}})) == 0);
  CHECK(rank_weighted(point, Divisor(point.graph(), {{"v", 2}})) == 1);

  auto loop = named("loop1");
  CHECK(rank_weighted(loop, Divisor(loop.graph(), {{"v", 1}})) == 0);
  CHECK(rank_weighted(loop, Divisor(loop.graph(), {{"v", 2}})) == 1);

  CHECK_THROWS_AS(rank_weighted(loop, Divisor(named("C3").graph())), Error);
}

TEST_CASE("base points") {
  auto c3 = named("C3");
  Divisor d(c3.graph(), {{"a", 1}});
  CHECK(is_base_point(c3, d, "a"));       // r([a]) = r(0) = 0
  CHECK_FALSE(is_base_point(c3, d, "b"));  // [a]-[b] is a nontrivial class

  // empty system: every vertex is a base point, inserted ones included
  auto point = named("wt-point-g1");
  Divisor neg(point.graph(), {{"v", -1}});
  CHECK(is_base_point(point, neg, "v"));
  CHECK(is_base_point(point, neg, "loop:v:0"));

  CHECK_THROWS_AS(is_base_point(c3, d, "zz"), Error);
}

TEST_CASE("effective representatives inside the original graph") {
  auto c3 = named("C3");
  auto rep = effective_representative(c3, Divisor(c3.graph(), {{"b", 2}}));
  REQUIRE(rep.has_value());
  CHECK(*rep == Divisor(c3.graph(), {{"a", 1}, {"c", 1}}));

  auto loop = named("loop1");
  auto rep2 = effective_representative(loop, Divisor(loop.graph(), {{"v", 1}}));
  REQUIRE(rep2.has_value());
  CHECK(*rep2 == Divisor(loop.graph(), {{"v", 1}}));

  CHECK_FALSE(effective_representative(c3, Divisor(c3.graph(), {{"a", -1}})).has_value());

  // property: representative is effective, equivalent in G, same degree
  std::mt19937 rng(53);
  for (const auto& [name, wg0] : enumerate_small(4, 5, false).graphs) {
    const Multigraph& g = wg0.graph();
    WeightedGraph wg(g, {{g.vertex_id(0), 1}});
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<long long> coeff(g.vertex_count());
      for (auto& c : coeff) c = static_cast<long long>(rng() % 6) - 2;
      Divisor d = Divisor::from_dense(g, coeff);
      auto rep3 = effective_representative(wg, d);
      if (rank_weighted(wg, d) >= 0) {
        REQUIRE(rep3.has_value());
        CHECK(rep3->is_effective());
        CHECK(rep3->degree() == d.degree());
        if (!g.has_loops()) CHECK(linearly_equivalent(*rep3, d));
      } else {
        CHECK_FALSE(rep3.has_value());
      }
    }
  }
}

TEST_CASE("riemann-roch holds exactly") {
  auto c3 = named("C3");
  CHECK(riemann_roch_residual(c3, Divisor(c3.graph(), {{"b", 1}})) == 0);

  auto k4 = named("K4");
  CHECK(riemann_roch_residual(k4, canonical(k4.graph())) == 0);
  CHECK(riemann_roch_residual(k4, Divisor(k4.graph())) == 0);

  // weighted spot check
  auto k4w = named("K4-wt1");
  CHECK(riemann_roch_residual(k4w, Divisor(k4w.graph(), {{"v2", 2}})) == 0);
  CHECK(riemann_roch_residual(named("wt-point-g1"),
                              Divisor(named("wt-point-g1").graph(), {{"v", 1}})) == 0);
}
