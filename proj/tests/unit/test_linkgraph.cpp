#include <doctest.h>

#include <algorithm>

#include "kazhdan/linkgraph.hpp"

using namespace kazhdan;

namespace {

Presentation z2() {
  return {3, {parse_word("a1 a2 A3"), parse_word("a2 a1 A3")}, "z2"};
}

}  // namespace

TEST_CASE("Z2 presentation gives the six-cycle") {
  const auto lg = build_link_graph(z2());
  const auto& g = lg.graph;
  CHECK(lg.ignored_relators == 0);
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 6);
  for (int d : g.degrees()) CHECK(d == 2);
  CHECK(is_connected(g));
  // s1 - s2^-1 - s3^-1 - s1^-1 - s2 - s3 - s1, with s_i -> i-1 and s_i^-1 -> 3+i-1.
  std::vector<Edge> expect{{0, 4}, {4, 5}, {3, 5}, {1, 3}, {1, 2}, {0, 2}};
  for (Edge& e : expect) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(expect.begin(), expect.end());
  CHECK(g.sorted_edges() == expect);
  CHECK(g.label(0) == "a1");
  CHECK(g.label(4) == "A2");
}

TEST_CASE("parts take one edge per relator") {
  Rng rng(12);
  const auto p = sample_triangular(30, 0.45, rng, false);
  const auto lg = build_link_graph(p);
  const auto parts = split_link_parts(p);
  CHECK(lg.graph.edge_count() == 3 * p.relators.size());
  std::vector<Edge> merged;
  for (const auto& part : parts.parts) {
    CHECK(part.edge_count() == p.relators.size());
    const auto e = part.sorted_edges();
    merged.insert(merged.end(), e.begin(), e.end());
  }
  std::sort(merged.begin(), merged.end());
  CHECK(merged == lg.graph.sorted_edges());
}

TEST_CASE("relators of other lengths are ignored") {
  Presentation p{2, {parse_word("a1 a2 a1"), parse_word("a1 a2"), parse_word("a1 a1 a2 a2")}, ""};
  const auto lg = build_link_graph(p);
  CHECK(lg.ignored_relators == 2);
  CHECK(lg.graph.edge_count() == 3);
}

TEST_CASE("non-reduced relator is an error") {
  Presentation p{2, {parse_word("a1 A1 a2")}, ""};
  CHECK_THROWS_AS(build_link_graph(p), GraphError);
  Presentation wrap{2, {parse_word("a1 a2 A1")}, ""};
  CHECK_THROWS_AS(split_link_parts(wrap), GraphError);
}

TEST_CASE("positive triangular link graph is bipartite") {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = sample_triangular(25, 0.45, rng, true);
    const auto g = build_link_graph(p).graph;
    CHECK(is_bipartite(g));
    for (const Edge& e : g.edges()) CHECK((e.u < 25) != (e.v < 25));
  }
}

TEST_CASE("repeated relator gives a loop-free double edge") {
  Presentation p{3, {parse_word("a1 a2 a3"), parse_word("a1 a2 a3")}, ""};
  const auto g = build_link_graph(p).graph;
  CHECK(g.edge_count() == 6);
  const auto c = collapse_duplicates(g);
  CHECK(c.simple.edge_count() == 3);
  CHECK(c.removed.edge_count() == 3);
  CHECK(c.simple.vertex_count() == 6);
}

TEST_CASE("collapse keeps one copy of each edge") {
  Multigraph g(3);
  g.add_edge(0, 1, 3);
  g.add_edge(1, 2);
  g.add_edge(2, 2, 2);
  const auto c = collapse_duplicates(g);
  CHECK(c.simple.sorted_edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 2}});
  CHECK(c.removed.sorted_edges() == std::vector<Edge>{{0, 1}, {0, 1}, {2, 2}});
}
