#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace ppht;
using test_util::g;
using test_util::h;

TEST_CASE("two-row tree") {
  haplotype_matrix b = h("0\n1\n");
  phylogeny_tree t = build_tree(b, false);
  REQUIRE(t.nodes.size() == 2);
  CHECK(t.nodes[t.root].row_labels == std::vector<std::size_t>{0});
  std::size_t leaf = t.root == 0 ? 1 : 0;
  CHECK(t.nodes[leaf].row_labels == std::vector<std::size_t>{1});
  CHECK(t.nodes[leaf].edge_columns == std::vector<std::size_t>{0});
  CHECK(verify_tree(b, t).ok);
}

TEST_CASE("gamete violations abort the build") {
  try {
    build_tree(h("00\n01\n10\n11\n"), false);
    FAIL("expected not_perfect_phylogeny");
  } catch (const not_perfect_phylogeny& e) {
    CHECK(e.violating_pair() == std::pair<std::size_t, std::size_t>{0, 1});
  }
}

TEST_CASE("directed star") {
  haplotype_matrix b = h("010\n100\n001\n");
  phylogeny_tree t = build_tree(b, true);
  REQUIRE(t.nodes.size() == 4);
  CHECK(t.nodes[t.root].row_labels.empty());  // no row is all-zero
  for (std::uint8_t v : t.nodes[t.root].haplotype) CHECK(v == 0);
  std::size_t pendant_edges = 0;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (i == t.root) continue;
    CHECK(t.nodes[i].parent == t.root);
    CHECK(t.nodes[i].edge_columns.size() == 1);
    CHECK(t.nodes[i].row_labels.size() == 1);
    ++pendant_edges;
  }
  CHECK(pendant_edges == 3);
  CHECK(verify_tree(b, t).ok);
}

TEST_CASE("verify_tree flags a moved column label") {
  haplotype_matrix b = h("00\n01\n10\n");
  phylogeny_tree t = build_tree(b, false);
  REQUIRE(verify_tree(b, t).ok);
  // swap the labels of the two edges
  phylogeny_tree broken = t;
  std::vector<std::size_t> edge_nodes;
  for (std::size_t i = 0; i < broken.nodes.size(); ++i)
    if (i != broken.root && !broken.nodes[i].edge_columns.empty())
      edge_nodes.push_back(i);
  REQUIRE(edge_nodes.size() == 2);
  std::swap(broken.nodes[edge_nodes[0]].edge_columns,
            broken.nodes[edge_nodes[1]].edge_columns);
  verify_result result = verify_tree(b, broken);
  CHECK_FALSE(result.ok);
  CHECK(result.violated_condition == 3);
}

TEST_CASE("verify_tree flags structural damage") {
  haplotype_matrix b = h("0\n1\n");
  phylogeny_tree t = build_tree(b, false);

  phylogeny_tree no_label = t;
  for (auto& node : no_label.nodes) node.row_labels.clear();
  CHECK(verify_tree(b, no_label).violated_condition == 1);

  phylogeny_tree no_column = t;
  for (auto& node : no_column.nodes)
    if (!node.edge_columns.empty()) node.edge_columns.clear();
  verify_result result = verify_tree(b, no_column);
  CHECK_FALSE(result.ok);
  CHECK(result.violated_condition == 2);
}

TEST_CASE("duplicate rows share a node and duplicate columns an edge") {
  haplotype_matrix b = h("0101\n0101\n1010\n");
  phylogeny_tree t = build_tree(b, true);
  CHECK(verify_tree(b, t).ok);
  bool found_pair = false;
  bool found_single = false;
  for (const auto& node : t.nodes) {
    if (node.row_labels == std::vector<std::size_t>{0, 1}) {
      found_pair = true;
      CHECK(node.edge_columns == std::vector<std::size_t>{1, 3});
    }
    if (node.row_labels == std::vector<std::size_t>{2}) {
      found_single = true;
      CHECK(node.edge_columns == std::vector<std::size_t>{0, 2});
    }
  }
  CHECK(found_pair);
  CHECK(found_single);
}

TEST_CASE("constant columns hang on a pendant edge") {
  haplotype_matrix b = h("01\n11\n");  // column 2 is constant
  phylogeny_tree t = build_tree(b, false);
  CHECK(verify_tree(b, t).ok);
  bool found_pendant = false;
  for (const auto& node : t.nodes)
    if (node.row_labels.empty() && node.edge_columns == std::vector<std::size_t>{1})
      found_pendant = true;
  CHECK(found_pendant);
}

TEST_CASE("end-to-end worked example") {
  genotype_matrix a = g("220\n202\n022\n");
  haplotype_matrix b = construct_haplotypes_dpph(a);
  phylogeny_tree t = build_tree(b, true);
  CHECK(verify_tree(b, t).ok);
  phylogeny_tree undirected = build_tree(b, false);
  CHECK(verify_tree(b, undirected).ok);
}

TEST_CASE("build and verify on random instances") {
  std::mt19937_64 rng(501);
  for (int iter = 0; iter < 100; ++iter) {
    planted_instance p = plant_instance(rng(), 1 + rng() % 6, 1 + rng() % 8);
    phylogeny_tree t = build_tree(p.haplotypes, false);
    CHECK(verify_tree(p.haplotypes, t).ok);
    phylogeny_tree directed = build_tree(p.haplotypes, true);
    CHECK(verify_tree(p.haplotypes, directed).ok);
  }
  for (int iter = 0; iter < 100; ++iter) {
    genotype_matrix a =
        test_util::random_genotypes(rng, 1 + rng() % 4, 1 + rng() % 5, 2);
    if (!decide_pph(a).admits) continue;
    haplotype_matrix b = construct_haplotypes_pph(a);
    phylogeny_tree t = build_tree(b, false);
    CHECK(verify_tree(b, t).ok);
  }
}

TEST_CASE("build succeeds exactly when the gamete check passes") {
  std::mt19937_64 rng(503);
  for (int iter = 0; iter < 200; ++iter) {
    haplotype_matrix b =
        test_util::random_haplotypes(rng, 1 + rng() % 5, 1 + rng() % 5);
    bool directed = rng() % 2 == 0;
    bool gamete_ok = directed ? !three_gamete_check(b).has_value()
                              : !four_gamete_check(b).has_value();
    if (gamete_ok) {
      phylogeny_tree t = build_tree(b, directed);
      CHECK(verify_tree(b, t).ok);
    } else {
      CHECK_THROWS_AS(build_tree(b, directed), not_perfect_phylogeny);
    }
  }
}

TEST_CASE("tree DOT serialization") {
  genotype_matrix a = g("2\n");
  haplotype_matrix b = construct_haplotypes_pph(a);
  phylogeny_tree t = build_tree(b, false);
  CHECK(t.to_dot() ==
        "graph phylogeny {\n"
        "  n0 [label=\"root rows=1 hap=0\"];\n"
        "  n1 [label=\"rows=2 hap=1\"];\n"
        "  n0 -- n1 [label=\"cols=1\"];\n"
        "}\n");

  haplotype_matrix star = h("010\n100\n001\n");
  phylogeny_tree star_tree = build_tree(star, true);
  CHECK(star_tree.to_dot() ==
        "graph phylogeny {\n"
        "  n0 [label=\"rows=1 hap=010\"];\n"
        "  n1 [label=\"rows=2 hap=100\"];\n"
        "  n2 [label=\"rows=3 hap=001\"];\n"
        "  n3 [label=\"root hap=000\"];\n"
        "  n3 -- n0 [label=\"cols=2\"];\n"
        "  n3 -- n1 [label=\"cols=1\"];\n"
        "  n3 -- n2 [label=\"cols=3\"];\n"
        "}\n");
}
