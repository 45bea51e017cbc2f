#include <doctest.h>

#include <set>

#include "divrank/corpus.hpp"
#include "divrank/io.hpp"
#include "helpers.hpp"

using namespace divrank;

TEST_CASE("named graphs") {
  CHECK(genus(named("K4").graph()) == 3);
  CHECK(named("K4").graph().vertex_count() == 4);
  CHECK(genus(named("dumbbell").graph()) == 2);
  CHECK(bridges(named("dumbbell").graph()).size() == 1);
  CHECK(genus(named("C4").graph()) == 1);
  CHECK(named("banana3").graph().edge_count() == 3);
  CHECK(named("loop1").graph().has_loops());
  CHECK(weighted_genus(named("wt-point-g1")) == 1);
  CHECK(weighted_genus(named("K4-wt1")) == 4);
  CHECK_THROWS_AS(named("zzz"), Error);

  for (const auto& name : named_graph_names())
    CHECK(named(name).graph().validate().ok());
}

TEST_CASE("enumerate_small: tiny counts by hand") {
  // two vertices: one graph per multiplicity, plus the single vertex
  auto c23 = enumerate_small(2, 3, false);
  REQUIRE(c23.graphs.size() == 4);
  CHECK(c23.graphs[0].second.graph().vertex_count() == 1);
  for (int m = 1; m <= 3; ++m) {
    const auto& g = c23.graphs[static_cast<size_t>(m)].second.graph();
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == m);
  }

  // up to three vertices and edges: single vertex, three bananas, P3,
  // P3 with a doubled edge, C3
  auto c33 = enumerate_small(3, 3, false);
  CHECK(c33.graphs.size() == 7);
  int paths = 0, doubled = 0, triangles = 0;
  for (const auto& [name, wg] : c33.graphs) {
    if (wg.graph().vertex_count() != 3) continue;
    if (genus(wg.graph()) == 0) ++paths;
    if (genus(wg.graph()) == 1 && bridges(wg.graph()).size() == 1) ++doubled;
    if (genus(wg.graph()) == 1 && bridges(wg.graph()).empty()) ++triangles;
  }
  CHECK(paths == 1);
  CHECK(doubled == 1);
  CHECK(triangles == 1);
}

TEST_CASE("enumerate_small guards its budget") {
  CHECK_THROWS_AS(enumerate_small(6, 20, false), Error);
  CHECK_THROWS_AS(enumerate_small(7, 5, false), Error);
  CHECK_THROWS_AS(enumerate_small(0, 5, false), Error);
}

TEST_CASE("enumeration is deterministic and duplicate-free") {
  auto a = enumerate_small(4, 6, false);
  auto b = enumerate_small(4, 6, false);
  REQUIRE(a.graphs.size() == b.graphs.size());
  std::set<std::string> serialized;
  for (size_t i = 0; i < a.graphs.size(); ++i) {
    CHECK(a.graphs[i].first == b.graphs[i].first);
    CHECK(a.graphs[i].second.graph().same_as(b.graphs[i].second.graph()));
    CHECK(serialized.insert(graph_to_json(a.graphs[i].second).dump()).second);
  }
}

TEST_CASE("every corpus graph validates; bridged filter works") {
  auto all = enumerate_small(5, 7, false);
  CHECK(all.graphs.size() > 100);
  for (const auto& [name, wg] : all.graphs) {
    CAPTURE(name);
    CHECK(wg.graph().validate().ok());
    CHECK_FALSE(wg.graph().has_loops());
  }

  auto bridged = enumerate_small(5, 7, true);
  CHECK(!bridged.graphs.empty());
  CHECK(bridged.graphs.size() < all.graphs.size());
  for (const auto& [name, wg] : bridged.graphs) {
    CAPTURE(name);
    auto bs = bridges(wg.graph());
    REQUIRE(!bs.empty());
    auto split = split_at_bridge(wg.graph(), bs.front());
    CHECK(split.g1.validate().ok());
    CHECK(split.g2.validate().ok());
  }
}

TEST_CASE("no two corpus graphs share a canonical key (spot isomorphism check)") {
  // the dedup key is exact at these sizes: relabeling any output graph
  // must land back on an existing key, not create a new one
  auto corpus = enumerate_small(4, 5, false);
  std::set<std::string> keys;
  for (const auto& [name, wg] : corpus.graphs) keys.insert(graph_to_json(wg).dump());
  CHECK(keys.size() == corpus.graphs.size());
}
