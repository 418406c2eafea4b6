#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "interp/delta.hpp"
#include "interp/error.hpp"
#include "interp/graph.hpp"
#include "interp/marking.hpp"
#include "interp/slope.hpp"

using namespace interp;

namespace {

std::string v(int i) { return "v" + std::to_string(100 + i); }

MetricGraph random_graph(std::mt19937_64& rng, int n, double p, bool weighted) {
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back(v(i));
  std::vector<WeightedEdge> es;
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<Weight> w(1, 5);
  for (int i = 0; i < n; ++i) {
    // A spanning path keeps it connected.
    if (i + 1 < n) es.push_back({v(i), v(i + 1), weighted ? w(rng) : kUnitWeight});
    for (int j = i + 2; j < n; ++j) {
      if (coin(rng)) es.push_back({v(i), v(j), weighted ? w(rng) : kUnitWeight});
    }
  }
  return MetricGraph(vs, es);
}

MetricGraph random_tree(std::mt19937_64& rng, int n) {
  std::vector<std::string> vs{v(0)};
  std::vector<WeightedEdge> es;
  for (int i = 1; i < n; ++i) {
    vs.push_back(v(i));
    es.push_back({v(static_cast<int>(rng() % i)), v(i)});
  }
  return MetricGraph(vs, es);
}

MetricGraph cycle(int n) {
  std::vector<std::string> vs;
  std::vector<WeightedEdge> es;
  for (int i = 0; i < n; ++i) {
    vs.push_back(v(i));
    es.push_back({v(i), v((i + 1) % n)});
  }
  return MetricGraph(vs, es);
}

std::vector<std::vector<Weight>> floyd_warshall(const MetricGraph& g) {
  const auto n = g.size();
  const Weight inf = kUnreachable / 4;
  std::vector<std::vector<Weight>> d(n, std::vector<Weight>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = std::min(d[e.u][e.v], e.weight);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// All 4-tuples, no pruning; result in unit terms.
Rational brute_delta(const MetricGraph& g) {
  auto d = floyd_warshall(g);
  const auto n = g.size();
  Weight best = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          Weight s[3] = {d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]};
          std::sort(s, s + 3);
          best = std::max(best, s[2] - s[1]);
        }
  return Rational(best, 2 * kUnitWeight);
}

NeighborFn farey_fn(std::int64_t height) {
  return [height](const std::string& key) {
    std::vector<std::string> out;
    for (const auto& s : farey_neighbors(Slope::parse(key), height)) out.push_back(s.to_string());
    return out;
  };
}

}  // namespace

TEST(Graph, DistanceExamples) {
  MetricGraph single({"a"}, {});
  EXPECT_EQ(distance(single, "a", "a"), 0);
  MetricGraph edge({"a", "b"}, {{"a", "b"}});
  EXPECT_EQ(distance(edge, "a", "b"), 2);
  MetricGraph tri({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  EXPECT_EQ(distance(tri, "a", "c"), 2);
}

TEST(Graph, ConstructionValidates) {
  EXPECT_THROW(MetricGraph({"a", "a"}, {}), InvalidArgument);
  EXPECT_THROW(MetricGraph({"a"}, {{"a", "a"}}), InvalidArgument);
  EXPECT_THROW(MetricGraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InvalidArgument);
  EXPECT_THROW(MetricGraph({"a", "b"}, {{"a", "b", 0}}), InvalidArgument);
  EXPECT_THROW(MetricGraph({"a"}, {{"a", "z"}}), InvalidArgument);
}

TEST(Graph, DistanceErrors) {
  MetricGraph g({"a", "b"}, {});
  EXPECT_THROW(distance(g, "a", "b"), RuntimeFailure);
  EXPECT_THROW(distance(g, "a", "q"), InvalidArgument);
  EXPECT_FALSE(g.is_connected());
}

TEST(Graph, ShortestPathsMatchFloydWarshall) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_graph(rng, 30, 0.1, trial % 2 == 0);
    auto oracle = floyd_warshall(g);
    DistanceMatrix d(g);
    ASSERT_TRUE(d.connected());
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(d(i, j), oracle[i][j]);
  }
}

TEST(Graph, MetricAxiomsExhaustive) {
  std::mt19937_64 rng(2);
  auto g = random_graph(rng, 200, 0.02, true);
  DistanceMatrix d(g);
  const auto n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(d(i, i), 0);
    for (std::size_t j = 0; j < n; ++j) {
      ASSERT_EQ(d(i, j), d(j, i));
      if (i != j) ASSERT_GT(d(i, j), 0);
      for (std::size_t k = 0; k < n; ++k) ASSERT_LE(d(i, k), d(i, j) + d(j, k));
    }
  }
}

TEST(Ball, RadiusZeroIsCentre) {
  auto g = ball(farey_fn(5), "0/1", 0);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.vertices().front(), "0/1");
}

TEST(Ball, FareyStar) {
  auto g = ball(farey_fn(3), "0/1", 1);
  std::set<std::string> expected{"0/1"};
  for (const auto& s : slopes_up_to_height(3)) {
    if (adjacent(SurfaceKind::Torus1, s, Slope(0, 1))) expected.insert(s.to_string());
  }
  EXPECT_EQ(std::set<std::string>(g.vertices().begin(), g.vertices().end()), expected);
  EXPECT_EQ(distance(g, "1/3", "1/2"), 2);
}

TEST(Ball, MarkingRadiusTwoMatchesMoveWords) {
  Marking11 start(Slope(0, 1), Slope::infinity());
  std::set<std::string> words{start.to_string()};
  for (int a = 0; a < 3; ++a) {
    auto m1 = marking_moves(start)[a];
    words.insert(m1.to_string());
    for (int b = 0; b < 3; ++b) words.insert(marking_moves(m1)[b].to_string());
  }
  NeighborFn fn = [](const std::string& key) {
    std::vector<std::string> out;
    for (const auto& m : marking_moves(Marking11::parse(key))) out.push_back(m.to_string());
    return out;
  };
  auto g = ball(fn, start.to_string(), 2);
  EXPECT_EQ(std::set<std::string>(g.vertices().begin(), g.vertices().end()), words);
}

TEST(Ball, SelfConsistent) {
  for (int r = 0; r <= 3; ++r) {
    auto g = ball(farey_fn(8), "0/1", r);
    auto c = *g.index_of("0/1");
    auto d = g.distances_from(c);
    for (auto w : d) EXPECT_LE(w, r * kUnitWeight);
    auto bigger = ball(farey_fn(8), "0/1", r + 1);
    auto c2 = *bigger.index_of("0/1");
    auto d2 = bigger.distances_from(c2);
    std::size_t inside = std::count_if(d2.begin(), d2.end(), [&](Weight w) { return w <= r * kUnitWeight; });
    EXPECT_EQ(inside, g.size());
  }
}

TEST(Ball, VertexCap) {
  BallOptions options;
  options.vertex_cap = 10;
  EXPECT_THROW(ball(farey_fn(20), "0/1", 3, options), RuntimeFailure);
}

TEST(Cone, PairAtDistanceSix) {
  auto path = MetricGraph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
  EXPECT_EQ(distance(path, "a", "d"), 6);
  auto coned = cone(path, {{"a", "d"}});
  EXPECT_EQ(distance(coned, "a", "d"), 2);
  EXPECT_TRUE(coned.contains(apex_key(0)));
}

TEST(Cone, SingletonChangesNothing) {
  std::mt19937_64 rng(3);
  auto g = random_graph(rng, 25, 0.1, false);
  auto coned = cone(g, {{v(4)}});
  for (const auto& x : g.vertices())
    for (const auto& y : g.vertices()) EXPECT_EQ(distance(g, x, y), distance(coned, x, y));
}

TEST(Cone, CliqueUnchanged) {
  MetricGraph tri({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  auto coned = cone(tri, {{"a", "b", "c"}});
  EXPECT_EQ(distance(coned, "a", "b"), 2);
}

TEST(Cone, NeverIncreasesAndBoundsDiameter) {
  std::mt19937_64 rng(4);
  auto g = random_graph(rng, 40, 0.06, false);
  std::vector<std::vector<std::string>> subsets;
  for (int s = 0; s < 3; ++s) {
    std::vector<std::string> sub;
    for (const auto& x : g.vertices()) {
      if (rng() % 4 == 0) sub.push_back(x);
    }
    if (!sub.empty()) subsets.push_back(sub);
  }
  auto coned = cone(g, subsets);
  for (const auto& x : g.vertices())
    for (const auto& y : g.vertices()) EXPECT_LE(distance(coned, x, y), distance(g, x, y));
  for (const auto& sub : subsets)
    for (const auto& x : sub)
      for (const auto& y : sub) EXPECT_LE(distance(coned, x, y), 2);
}

TEST(Cone, Errors) {
  MetricGraph g({"a", "b"}, {{"a", "b"}});
  EXPECT_THROW(cone(g, {{}}), InvalidArgument);
  EXPECT_THROW(cone(g, {{"z"}}), InvalidArgument);
}

TEST(Serialization, JsonRoundTrip) {
  std::mt19937_64 rng(5);
  auto g = random_graph(rng, 15, 0.2, true);
  auto j = to_json(g);
  EXPECT_EQ(graph_from_json(j), g);
  EXPECT_EQ(to_json(graph_from_json(j)).dump(), j.dump());
}

TEST(Serialization, ExactForms) {
  MetricGraph g({"b", "a"}, {{"b", "a", 3}});
  EXPECT_EQ(to_json(g).dump(), R"({"edges":[["a","b",3]],"vertices":["a","b"]})");
  EXPECT_EQ(to_dot(g), "graph G {\n  \"a\";\n  \"b\";\n  \"a\" -- \"b\" [weight=3];\n}\n");
}

TEST(Serialization, RejectsMalformed) {
  EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"vertices": ["a"]})")), InvalidArgument);
  EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"vertices": ["a"], "edges": [["a"]]})")),
               InvalidArgument);
}

TEST(Delta, TreesAreZero) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    EXPECT_EQ(estimate_delta(random_tree(rng, 40)), Rational(0));
  }
}

TEST(Delta, FourCycleIsOne) { EXPECT_EQ(estimate_delta(cycle(4)), Rational(1)); }

TEST(Delta, CyclesMatchBruteForce) {
  for (int n = 3; n <= 9; ++n) EXPECT_EQ(estimate_delta(cycle(n)), brute_delta(cycle(n))) << n;
}

TEST(Delta, RandomGraphsMatchBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    auto g = random_graph(rng, 14, 0.15, trial % 3 == 0);
    EXPECT_EQ(estimate_delta(g), brute_delta(g));
  }
}

TEST(Delta, PendantVertexLeavesDeltaUnchanged) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = random_graph(rng, 20, 0.1, false);
    auto before = estimate_delta(g);
    auto vs = g.vertices();
    std::vector<WeightedEdge> es;
    for (const auto& e : g.edges()) es.push_back({vs[e.u], vs[e.v], e.weight});
    vs.push_back("pendant");
    es.push_back({vs[trial], "pendant"});
    auto after = estimate_delta(MetricGraph(vs, es));
    EXPECT_GE(after, before);
    EXPECT_LE(after, Rational(before.num + before.den, before.den));
    EXPECT_EQ(after, before);
  }
}

TEST(Delta, IsomorphismInvariant) {
  std::mt19937_64 rng(9);
  auto g = random_graph(rng, 20, 0.12, false);
  std::vector<int> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < g.size(); ++i) vs.push_back("w" + std::to_string(perm[i]));
  std::vector<WeightedEdge> es;
  for (const auto& e : g.edges()) es.push_back({vs[e.u], vs[e.v], e.weight});
  EXPECT_EQ(estimate_delta(MetricGraph(vs, es)), estimate_delta(g));
}

TEST(Delta, Errors) {
  EXPECT_THROW(estimate_delta(MetricGraph({"a", "b"}, {})), RuntimeFailure);
  EXPECT_THROW(estimate_delta(cycle(12), 10), InvalidArgument);
}

TEST(Delta, FareyRadiusThreeFrozen) {
  auto g = ball(farey_fn(6), "0/1", 3);
  // Computed once by the unpruned search over all 4-tuples.
  EXPECT_EQ(estimate_delta(g), brute_delta(g));
  EXPECT_EQ(estimate_delta(g), Rational(1));
}
