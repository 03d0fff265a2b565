#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "forestlab/combinat.hpp"
#include "forestlab/local_stats.hpp"
#include "forestlab/sampler.hpp"
#include "oracle.hpp"

using namespace forestlab;

namespace {

LabeledGraph relabel(const LabeledGraph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back(make_edge(perm[e.u], perm[e.v]));
  return LabeledGraph(g.order(), edges);
}

std::vector<Vertex> random_perm(std::size_t n, std::mt19937_64& gen) {
  std::vector<Vertex> perm(n + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin() + 1, perm.end(), gen);
  return perm;
}

LabeledGraph random_graph(std::size_t n, double p, std::mt19937_64& gen) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (const auto& e : oracle::all_pairs(n))
    if (coin(gen)) edges.push_back(e);
  return LabeledGraph(n, edges);
}

LabeledGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back(Edge{v, v + 1});
  return LabeledGraph(n, edges);
}

std::set<Vertex> original(const std::vector<Vertex>& locals, const std::vector<Vertex>& labels) {
  std::set<Vertex> out;
  for (Vertex v : locals) out.insert(labels[v - 1]);
  return out;
}

// Some vertex has two cut-edges with the same largest far side.
bool has_pendant_tie(const LabeledGraph& g) {
  auto cut = oracle::bridges_by_removal(g);
  for (Vertex v = 1; v <= g.order(); ++v) {
    std::size_t best = 0, count = 0;
    for (Vertex w : g.neighbors(v)) {
      if (!cut.count(make_edge(v, w))) continue;
      std::size_t far = 0;
      for (const auto& c : oracle::component_sets(remove_edge(g, v, w)))
        if (std::binary_search(c.begin(), c.end(), w)) far = c.size();
      if (far > best) {
        best = far;
        count = 1;
      } else if (far == best) {
        ++count;
      }
    }
    if (count > 1) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("Small(G) examples") {
  CHECK(small_components(path_graph(5)).empty());
  CHECK(small_components(LabeledGraph(4, {{1, 2}, {3, 4}})).key() == "[()()]");
  LabeledGraph path_plus_dot(5, {{1, 2}, {2, 3}, {3, 4}});
  CHECK(small_components(path_plus_dot).key() == "()");
  CHECK(small_components(LabeledGraph(1)).empty());

  // non-tree small component gets the small-graph code
  LabeledGraph g(7, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {6, 7}});
  auto shape = small_components(g);
  REQUIRE(shape.parts().size() == 1);
  CHECK_FALSE(shape.parts()[0].is_tree);
  CHECK(shape.parts()[0].code == small_graph_code(LabeledGraph(3, {{1, 2}, {2, 3}, {1, 3}})));
}

TEST_CASE("pendant tree examples") {
  LabeledGraph p3(3, {{1, 2}, {2, 3}});
  CHECK(pendant_tree_at(p3, 1)->code == "()");
  auto mid = pendant_at(p3, 2);
  REQUIRE(mid);
  CHECK(mid->removed == Edge{1, 2});
  CHECK(mid->tree->code == "(())");
  CHECK_FALSE(pendant_at(LabeledGraph(3, {{1, 2}, {2, 3}, {1, 3}}), 1));

  auto profile = pendant_profile(p3, 2);
  CHECK(profile.counts == std::map<std::string, std::uint64_t>{{"()", 2}, {"(())", 1}});
  CHECK(profile.total() == 3);
  CHECK(pendant_profile(LabeledGraph(6)).counts.empty());

  LabeledGraph star(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}});
  auto sp = pendant_profile(star, 4);
  CHECK(sp.count("()") == 4);
  CHECK(sp.count("(()()())") == 1);
  CHECK(pendant_profile(star, 3).count("(()()())") == 0);
  CHECK(pendant_profile(star, 3).total() == 4);
}

TEST_CASE("pendant trees match the removal oracle on all graphs up to 6 vertices") {
  for (std::size_t n = 1; n <= 6; ++n) {
    oracle::for_each_graph(n, [&](const LabeledGraph& g) {
      for (Vertex v = 1; v <= n; ++v) {
        auto fast = pendant_at(g, v);
        auto slow = oracle::pendant_side(g, v);
        REQUIRE(fast.has_value() == slow.exists);
        if (!slow.exists) continue;
        REQUIRE(fast->removed == make_edge(v, slow.removed_neighbor));
        REQUIRE(fast->tree.has_value() == slow.is_tree);
        if (slow.is_tree) {
          auto sub = induced_subgraph(g, std::vector<Vertex>(slow.side.begin(), slow.side.end()));
          Vertex local = static_cast<Vertex>(std::find(sub.labels.begin(), sub.labels.end(), v) - sub.labels.begin() + 1);
          REQUIRE(fast->tree->code == canon_rooted(sub.graph, local).code);
        }
      }
    });
  }
}

TEST_CASE("forest mass identity and leaf law") {
  for (std::size_t n = 1; n <= 7; ++n) {
    for_each_forest(n, [&](const LabeledGraph& f) {
      std::size_t isolated = 0, leaves = 0;
      for (Vertex v = 1; v <= n; ++v) {
        if (f.degree(v) == 0) ++isolated;
        if (f.degree(v) == 1) ++leaves;
      }
      auto profile = pendant_profile(f, n);
      REQUIRE(profile.total() == n - isolated);
      if (n >= 2 && f.edge_count() == n - 1) REQUIRE(profile.count("()") == leaves);
    });
  }
}

TEST_CASE("the pendant tie-break can change the pendant shape") {
  // Exhaustive over labeled trees with at most 8 vertices: a vertex whose two
  // largest far sides tie, where the other choice would give another shape.
  std::size_t smallest = 0;
  for (std::size_t n = 2; n <= 8 && smallest == 0; ++n) {
    for (const auto& t : oracle::all_labeled_trees(n)) {
      for (Vertex v = 1; v <= n && smallest == 0; ++v) {
        auto chosen = pendant_at(t, v);
        if (!chosen) continue;
        std::size_t chosen_far = n - chosen->tree->size;
        for (Vertex w : t.neighbors(v)) {
          if (make_edge(v, w) == chosen->removed) continue;
          auto cut = remove_edge(t, v, w);
          auto side = canon_rooted(cut, v);
          if (n - side.size == chosen_far && side.code != chosen->tree->code) smallest = n;
        }
      }
      if (smallest) break;
    }
  }
  CHECK(smallest == 7);

  // centre 1 with a 3-chain on neighbor 2 and a cherry on neighbor 5
  LabeledGraph g(7, {{1, 2}, {2, 3}, {3, 4}, {1, 5}, {5, 6}, {5, 7}});
  auto p = pendant_at(g, 1);
  REQUIRE(p);
  CHECK(p->removed == Edge{1, 2});
  CHECK(p->tree->code == "((()()))");
  auto swapped = pendant_at(relabel(g, {0, 1, 5, 6, 7, 2, 3, 4}), 1);
  CHECK(swapped->tree->code == "(((())))");
}

TEST_CASE("ball examples") {
  CHECK(ball(path_graph(5), 3, 0).graph.order() == 1);
  auto b = ball(path_graph(5), 3, 1);
  CHECK(b.labels == std::vector<Vertex>{2, 3, 4});
  CHECK(ball_code(b) == "(()())");
  LabeledGraph g(6, {{1, 2}, {2, 3}, {4, 5}});
  auto whole = ball(g, 2, 6);
  CHECK(whole.labels == std::vector<Vertex>{1, 2, 3});
  auto tri = ball(LabeledGraph(3, {{1, 2}, {2, 3}, {1, 3}}), 1, 1);
  CHECK(ball_code(tri) == small_rooted_graph_code(LabeledGraph(3, {{1, 2}, {2, 3}, {1, 3}}), 1));
}

TEST_CASE("hull examples") {
  LabeledGraph small(4, {{1, 2}, {2, 3}, {2, 4}});
  auto h = hull(small, 2, 1);
  CHECK(h.graph.order() == 4);
  CHECK(h.exits.empty());

  auto p = hull(path_graph(12), 1, 2);
  CHECK(p.labels == std::vector<Vertex>{1, 2, 3});
  REQUIRE(p.exits.size() == 1);
  CHECK(p.labels[p.exits[0] - 1] == 3);
  CHECK(hull_code(p).code == "(({}))");
  CHECK(hull_code(p).exits == 1);

  // the small outside component is absorbed, the large one is an exit
  LabeledGraph g(12, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {1, 10}, {10, 11}});
  auto q = hull(g, 1, 0);
  CHECK(q.labels == std::vector<Vertex>{1, 10, 11});
  REQUIRE(q.exits.size() == 1);
  CHECK(q.labels[q.exits[0] - 1] == 1);
}

TEST_CASE("F-infinity hull at radius 1") {
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng(SeededStream{50, i});
    auto w = sample_F_infinity_hull(1, rng, 5000);
    if (w.overflow) continue;
    auto h = hull(w);
    REQUIRE(h.exits.size() == 1);
    REQUIRE(h.labels[h.exits[0] - 1] == w.spine_exit);
    // everything except the spine beyond the exit
    auto dist = oracle::distances(h.graph, h.root);
    REQUIRE(dist[h.exits[0]] == 1);
    REQUIRE(oracle::component_count(h.graph.order(), h.graph.edges()) == 1);
    ++checked;
  }
  CHECK(checked > 400);
  Rng rng(SeededStream{51, 0});
  CHECK_THROWS(hull(sample_F_infinity_ball(1, rng)));
}

TEST_CASE("hulls match the definition oracle") {
  std::mt19937_64 gen(17);
  auto compare = [](const LabeledGraph& g) {
    for (Vertex v = 1; v <= g.order(); ++v)
      for (std::size_t r = 0; r <= 3; ++r) {
        auto slow = oracle::hull_sets(g, v, r);
        auto h = hull(g, v, r);
        REQUIRE(std::set<Vertex>(h.labels.begin(), h.labels.end()) == slow.vertices);
        REQUIRE(original(h.exits, h.labels) == slow.exits);
        REQUIRE(h.labels[h.root - 1] == v);
        auto b = ball(g, v, r);
        for (Vertex x : b.labels) REQUIRE(slow.vertices.count(x));
        auto dist = oracle::distances(g, v);
        for (Vertex x : slow.exits) REQUIRE(dist[x] == r);
      }
  };
  for (std::size_t n = 1; n <= 7; ++n) for_each_forest(n, compare);
  for (int i = 0; i < 300; ++i) compare(random_graph(3 + gen() % 10, 0.2, gen));
  ForestSampler sampler(40);
  for (std::uint64_t i = 0; i < 40; ++i) compare(sampler.sample(SeededStream{52, i}));
}

TEST_CASE("outputs are invariant under relabeling") {
  std::mt19937_64 gen(23);
  ForestSampler sampler(8);
  for (int i = 0; i < 200; ++i) {
    LabeledGraph g = i % 2 ? sampler.sample(SeededStream{53, static_cast<std::uint64_t>(i)})
                           : random_graph(8, 0.25, gen);
    auto perm = random_perm(8, gen);
    auto h = relabel(g, perm);
    // profiles are label-free unless some vertex has tied cut-edges
    CHECK(pendant_profile(g).total() == pendant_profile(h).total());
    if (!has_pendant_tie(g)) CHECK(pendant_profile(g).counts == pendant_profile(h).counts);
    // the largest-component tie-break follows labels, so compare only when it is forced
    auto parts = components(g);
    std::size_t max_size = parts.largest().size(), ties = 0;
    for (const auto& b : parts.blocks)
      if (b.size() == max_size) ++ties;
    if (ties == 1) CHECK(small_components(g) == small_components(h));
    for (Vertex v = 1; v <= 8; ++v)
      for (std::size_t r = 0; r <= 2; ++r) {
        REQUIRE(ball_code(ball(g, v, r)) == ball_code(ball(h, perm[v], r)));
        auto hg = hull(g, v, r), hh = hull(h, perm[v], r);
        REQUIRE(hg.graph.order() == hh.graph.order());
        REQUIRE(hg.exits.size() == hh.exits.size());
        if (is_forest(hg.graph)) REQUIRE(hull_code(hg) == hull_code(hh));
      }
  }
}

TEST_CASE("empirical distributions") {
  auto one = empirical_distribution({"a", "a", "a"});
  CHECK(one.frequency("a") == 1.0);
  auto two = empirical_distribution({"x", "y"});
  CHECK(two.frequency("x") == 0.5);
  CHECK(two.frequency("y") == 0.5);
  CHECK(two.frequency("z") == 0.0);
  CHECK_THROWS(empirical_distribution({}));
  CHECK_THROWS(Distribution().frequencies());

  Distribution a, b;
  a.add("k", 2);
  a.add("m");
  b.add("m", 3);
  auto ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  CHECK(ab.counts() == ba.counts());
  CHECK(ab.total() == 6);
  double sum = 0;
  for (const auto& [_, f] : ab.frequencies()) {
    CHECK(f >= 0);
    sum += f;
  }
  CHECK(sum == doctest::Approx(1.0));

  Distribution q;
  q.add("(),[()()]");
  q.add("");
  std::ostringstream csv, json;
  write_distribution_csv(csv, q);
  CHECK(csv.str() == "key,count,frequency\n\"\",1,0.500000000000\n\"(),[()()]\",1,0.500000000000\n");
  write_distribution_json(json, q);
  CHECK(json.str().find("\"key\": \"(),[()()]\"") != std::string::npos);
}

TEST_CASE("removable pendant fraction") {
  auto forests = enumerate_forests(4);
  auto is_forest_oracle = [](const LabeledGraph& g) { return oracle::acyclic(g.order(), g.edges()); };
  for (const char* code : {"()", "(())", "(()())", "((()))"})
    CHECK(removable_pendant_fraction(forests, is_forest_oracle, RootedTreeCode::parse(code)) == 1);

  // the path on 3 vertices in a class that excludes two-component graphs
  std::vector<LabeledGraph> members{LabeledGraph(3, {{1, 2}, {2, 3}})};
  auto not_two = [](const LabeledGraph& g) { return oracle::component_count(g.order(), g.edges()) != 2; };
  CHECK(removable_pendant_fraction(members, not_two, RootedTreeCode::parse("()")) == 0);
  CHECK(removable_pendant_fraction(members, not_two, RootedTreeCode::parse("(())")) == 0);
  CHECK(removable_pendant_fraction(members, not_two, RootedTreeCode::parse("(()())")) == 1);

  // mixed: average of 1/2 (graph with two pendant leaves, one removable) and 1
  std::vector<LabeledGraph> pair{LabeledGraph(4, {{1, 2}, {2, 3}, {3, 4}}), LabeledGraph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}})};
  auto keeps_1_2 = [](const LabeledGraph& g) { return g.has_edge(1, 2); };
  CHECK(removable_pendant_fraction(pair, keeps_1_2, RootedTreeCode::parse("()")) == Rational(3, 4));
}
