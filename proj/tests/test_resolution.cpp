#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace ppht;
using test_util::g;

TEST_CASE("resolution graphs of the three-row example") {
  genotype_matrix a = g("220\n202\n022\n");
  auto graphs = build_all_resolution_graphs(a);
  REQUIRE(graphs.size() == 3);

  CHECK(graphs[0].anchor() == 0);
  CHECK(graphs[0].vertices() == std::vector<std::size_t>{0, 1, 2});
  CHECK(graphs[0].edges() ==
        std::vector<weighted_edge>{{0, 1, 1}, {0, 2, 1}});

  CHECK(graphs[1].vertices() == std::vector<std::size_t>{1, 2});
  CHECK(graphs[1].edges() == std::vector<weighted_edge>{{1, 2, 1}});

  CHECK(graphs[2].empty());
}

TEST_CASE("matrices without 2s yield empty graphs") {
  for (const auto& graph : build_all_resolution_graphs(g("010\n")))
    CHECK(graph.empty());
}

TEST_CASE("11 in the induced set forces a 0-weight edge") {
  auto graphs = build_all_resolution_graphs(g("22\n11\n"));
  CHECK(graphs[0].vertices() == std::vector<std::size_t>{0, 1});
  CHECK(graphs[0].edges() == std::vector<weighted_edge>{{0, 1, 0}});
  CHECK(graphs[1].empty());
}

TEST_CASE("a lone 2 makes a single-vertex graph") {
  auto graphs = build_all_resolution_graphs(g("2\n"));
  CHECK(graphs[0].vertices() == std::vector<std::size_t>{0});
  CHECK(graphs[0].edges().empty());
}

TEST_CASE("pairs shared by two owners get 0-weight edges in both graphs") {
  // the unit rows put 01 and 10 (never 11) into every pair's induced set,
  // so no column dominates another and the 2-rows get owners 0 and 1
  genotype_matrix a = g("2022\n0222\n1000\n0100\n0010\n0001\n");
  genotype_partition part = assign_genotypes(a);
  REQUIRE(part.owner[0] == 0);
  REQUIRE(part.owner[1] == 1);
  auto graphs = build_all_resolution_graphs(a);
  CHECK(graphs[0].has_edge(2, 3, 0));
  CHECK(graphs[1].has_edge(2, 3, 0));
}

TEST_CASE("graph construction invariants on random inputs") {
  std::mt19937_64 rng(211);
  for (int iter = 0; iter < 150; ++iter) {
    genotype_matrix a =
        test_util::random_genotypes(rng, 1 + rng() % 5, 1 + rng() % 5, 2);
    genotype_partition part = assign_genotypes(a);
    auto graphs = build_all_resolution_graphs(a);
    REQUIRE(graphs.size() == a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const auto& graph = graphs[i];
      CHECK(graph.anchor() == i);
      CHECK(graph.empty() == part.members[i].empty());
      if (!graph.empty()) CHECK(graph.has_vertex(i));
      for (std::size_t v : graph.vertices()) {
        bool owned_two = false;
        for (std::size_t r : part.members[i])
          if (a.at(r, v) == 2) owned_two = true;
        CHECK(owned_two);
      }
      for (const auto& e : graph.edges()) {
        CHECK(graph.has_vertex(e.a));
        CHECK(graph.has_vertex(e.b));
        bool shared_two = false;
        for (std::size_t r : part.members[i])
          if (a.at(r, e.a) == 2 && a.at(r, e.b) == 2) shared_two = true;
        CHECK(shared_two);
      }
      // the one-graph builder agrees with the batch builder
      CHECK(build_resolution_graph(a, part, i) == graph);
    }
    // determinism
    CHECK(build_all_resolution_graphs(a) == graphs);
    // a 2-pair shared across owner sets puts a 0-edge in both graphs
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t s = 0; s < a.rows(); ++s) {
        if (!part.owner[r] || !part.owner[s] || part.owner[r] == part.owner[s])
          continue;
        for (std::size_t k = 0; k + 1 < a.cols(); ++k)
          for (std::size_t l = k + 1; l < a.cols(); ++l)
            if (a.at(r, k) == 2 && a.at(r, l) == 2 && a.at(s, k) == 2 &&
                a.at(s, l) == 2) {
              CHECK(graphs[*part.owner[r]].has_edge(k, l, 0));
              CHECK(graphs[*part.owner[s]].has_edge(k, l, 0));
            }
      }
  }
}

TEST_CASE("resolution graph DOT serialization") {
  auto graphs = build_all_resolution_graphs(g("220\n202\n022\n"));
  CHECK(graphs[0].to_dot() ==
        "graph resolution_1 {\n"
        "  1;\n"
        "  2;\n"
        "  3;\n"
        "  1 -- 2 [w=1];\n"
        "  1 -- 3 [w=1];\n"
        "}\n");
}
