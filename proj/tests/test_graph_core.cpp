#include <doctest.h>

#include <set>

#include "divrank/corpus.hpp"
#include "divrank/multigraph.hpp"
#include "divrank/weighted_graph.hpp"
#include "helpers.hpp"

using namespace divrank;
using testutil::graph;

namespace {

// removal oracle: e is a bridge iff the graph minus e fails connectivity
std::vector<int> bridges_by_removal(const Multigraph& g) {
  std::vector<int> out;
  for (int e = 0; e < g.edge_count(); ++e) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < g.edge_count(); ++i)
      if (i != e) edges.push_back(g.edges()[i]);
    Multigraph reduced(g.vertices(), edges);
    if (reduced.validate().code == Violation::Disconnected) out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("validate catches each invariant") {
  CHECK(named("C3").graph().validate().ok());

  Multigraph disconnected({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  CHECK(disconnected.validate().code == Violation::Disconnected);

  Multigraph dangling({"a"}, {{"a", "x"}});
  CHECK(dangling.validate().code == Violation::DanglingEdge);

  Multigraph duplicate({"a", "a"}, {});
  CHECK(duplicate.validate().code == Violation::DuplicateVertex);

  CHECK_THROWS_AS(genus(disconnected), Error);
}

TEST_CASE("genus counts independent cycles, loops included") {
  CHECK(genus(named("C3").graph()) == 1);
  CHECK(genus(named("K4").graph()) == 3);
  CHECK(genus(graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}})) == 0);
  CHECK(genus(named("loop1").graph()) == 1);
  CHECK(genus(named("dumbbell").graph()) == 2);
}

TEST_CASE("weighted genus adds the vertex weights") {
  CHECK(weighted_genus(named("C3")) == 1);
  CHECK(weighted_genus(WeightedGraph(graph({"v"}, {}), {{"v", 2}})) == 2);
  CHECK(weighted_genus(named("K4-wt1")) == 4);
  CHECK(weighted_genus(named("wt-point-g1")) == 1);
}

TEST_CASE("bridges: cut edges only, never loops or parallel pairs") {
  CHECK(bridges(named("K4").graph()).empty());

  auto dumbbell = named("dumbbell").graph();
  CHECK(bridges(dumbbell) == std::vector<int>{6});

  auto path = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(bridges(path) == std::vector<int>{0, 1});

  auto parallel = graph({"a", "b"}, {{"a", "b"}, {"a", "b"}});
  CHECK(bridges(parallel).empty());

  auto loop_tail = graph({"a", "b"}, {{"a", "a"}, {"a", "b"}});
  CHECK(bridges(loop_tail) == std::vector<int>{1});
}

TEST_CASE("bridges agree with the removal oracle over the corpus") {
  for (const auto& [name, wg] : enumerate_small(4, 6, false).graphs) {
    CAPTURE(name);
    CHECK(bridges(wg.graph()) == bridges_by_removal(wg.graph()));
  }
}

TEST_CASE("split_at_bridge returns the two components with their endpoints") {
  auto dumbbell = named("dumbbell").graph();
  auto split = split_at_bridge(dumbbell, 6);
  CHECK(split.v1 == "v1");
  CHECK(split.v2 == "v2");
  CHECK(split.g1.vertex_count() == 3);
  CHECK(split.g2.vertex_count() == 3);
  CHECK(genus(split.g1) == 1);
  CHECK(genus(split.g2) == 1);

  auto path = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  auto psplit = split_at_bridge(path, 0);
  CHECK(psplit.g1.vertex_count() == 1);
  CHECK(psplit.v1 == "a");
  CHECK(psplit.g2.vertex_count() == 2);
  CHECK(psplit.v2 == "b");

  CHECK_THROWS_AS(split_at_bridge(named("K4").graph(), 0), Error);
}

TEST_CASE("splitting then re-joining reproduces the graph; genus is additive") {
  for (const auto& [name, wg] : enumerate_small(5, 7, true).graphs) {
    CAPTURE(name);
    const Multigraph& g = wg.graph();
    for (int e : bridges(g)) {
      auto split = split_at_bridge(g, e);
      CHECK(genus(split.g1) + genus(split.g2) == genus(g));

      // rejoin: same vertex multiset and edge multiset
      std::vector<std::string> vs = split.g1.vertices();
      vs.insert(vs.end(), split.g2.vertices().begin(), split.g2.vertices().end());
      std::vector<std::pair<std::string, std::string>> es = split.g1.edges();
      es.insert(es.end(), split.g2.edges().begin(), split.g2.edges().end());
      es.emplace_back(split.v1, split.v2);
      std::multiset<std::string> got_v(vs.begin(), vs.end());
      std::multiset<std::string> want_v(g.vertices().begin(), g.vertices().end());
      CHECK(got_v == want_v);
      auto norm = [](std::pair<std::string, std::string> e) {
        if (e.second < e.first) std::swap(e.first, e.second);
        return e.first + "|" + e.second;
      };
      std::multiset<std::string> got_e, want_e;
      for (const auto& ed : es) got_e.insert(norm(ed));
      for (const auto& ed : g.edges()) want_e.insert(norm(ed));
      CHECK(got_e == want_e);
    }
  }
}

TEST_CASE("virtual loopless graph materializes weights and splits loops") {
  auto point = virtual_loopless(named("wt-point-g1"));
  CHECK(point.graph.vertex_count() == 2);
  CHECK(point.graph.edge_count() == 2);
  CHECK_FALSE(point.graph.has_loops());
  CHECK(genus(point.graph) == 1);
  CHECK(point.inserted == std::set<std::string>{"loop:v:0"});

  auto c3 = virtual_loopless(named("C3"));
  CHECK(c3.graph.same_as(named("C3").graph()));
  CHECK(c3.inserted.empty());

  auto loop = virtual_loopless(named("loop1"));
  CHECK(loop.graph.vertex_count() == 2);
  CHECK(loop.graph.edge_count() == 2);
  CHECK(genus(loop.graph) == 1);
}

TEST_CASE("weighted genus equals the genus of the virtual graph") {
  testutil::TempDir tmp;
  for (const auto& name : named_graph_names()) {
    auto wg = named(name);
    CAPTURE(name);
    CHECK(weighted_genus(wg) == genus(virtual_loopless(wg).graph));
  }
  // corpus graphs with a couple of seeded weight patterns
  for (const auto& [name, wg0] : enumerate_small(4, 6, false).graphs) {
    const Multigraph& g = wg0.graph();
    std::map<std::string, long long> w;
    w[g.vertex_id(0)] = 2;
    if (g.vertex_count() > 1) w[g.vertex_id(g.vertex_count() - 1)] = 1;
    WeightedGraph wg(g, w);
    CHECK(weighted_genus(wg) == genus(virtual_loopless(wg).graph));
  }
}

TEST_CASE("virtual graph keeps non-loop bridges and adds none on inserted pairs") {
  for (const auto& name : {"dumbbell", "loop1", "wt-point-g1", "K4-wt1"}) {
    auto wg = named(name);
    auto vg = virtual_loopless(wg);
    auto original = bridges(wg.graph());
    auto lifted = bridges(vg.graph);
    std::set<int> lifted_set(lifted.begin(), lifted.end());
    // non-loop original edges map through edge_map; loops never map
    std::vector<int> original_via_map;
    for (int e : original)
      if (vg.edge_map[e] >= 0 && lifted_set.count(vg.edge_map[e])) original_via_map.push_back(e);
    CHECK(original_via_map == original);
    // every virtual bridge comes from an original edge: inserted parallel
    // pairs cannot be bridges
    std::set<int> mapped;
    for (int e = 0; e < wg.graph().edge_count(); ++e)
      if (vg.edge_map[e] >= 0) mapped.insert(vg.edge_map[e]);
    for (int b : lifted) CHECK(mapped.count(b) == 1);
  }
}

TEST_CASE("vertex and edge accessors reject unknown ids") {
  auto g = named("C3").graph();
  CHECK_THROWS_AS(g.vertex_index("zz"), Error);
  CHECK_THROWS_AS(g.edge(99), Error);
}
