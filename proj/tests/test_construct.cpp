#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace ppht;
using test_util::g;
using test_util::h;

TEST_CASE("graph augmentation") {
  SECTION("connected graphs are unchanged") {
    auto graphs = build_all_resolution_graphs(g("220\n202\n022\n"));
    CHECK(augment_graph(graphs[0]) == graphs[0]);
  }
  SECTION("isolated vertices are wired to the anchor with 0-weight edges") {
    resolution_graph graph(0, {0, 4, 6}, {});
    resolution_graph augmented = augment_graph(graph);
    CHECK(augmented.edges() ==
          std::vector<weighted_edge>{{0, 4, 0}, {0, 6, 0}});
  }
  SECTION("empty graph stays empty") {
    CHECK(augment_graph(resolution_graph(2)).empty());
  }
  SECTION("odd cycles are rejected") {
    resolution_graph graph(0, {0, 1}, {{0, 1, 0}, {0, 1, 1}});
    CHECK_THROWS_AS(augment_graph(graph), odd_cycle_error);
  }
  SECTION("the anchor must be a vertex") {
    resolution_graph graph(9, {0, 1}, {{0, 1, 0}});
    CHECK_THROWS_AS(augment_graph(graph), error);
  }
}

TEST_CASE("parity labels") {
  SECTION("worked example") {
    auto graphs = build_all_resolution_graphs(g("220\n202\n022\n"));
    parity_labeling labels = parity_labels(augment_graph(graphs[0]));
    CHECK(labels.anchor == 0);
    CHECK_FALSE(labels.is_odd(0));
    CHECK(labels.is_odd(1));
    CHECK(labels.is_odd(2));
  }
  SECTION("single vertex") {
    parity_labeling labels = parity_labels(resolution_graph(3, {3}, {}));
    CHECK_FALSE(labels.is_odd(3));
  }
  SECTION("chain") {
    parity_labeling labels =
        parity_labels(resolution_graph(0, {0, 1, 2}, {{0, 1, 0}, {1, 2, 1}}));
    CHECK_FALSE(labels.is_odd(0));
    CHECK_FALSE(labels.is_odd(1));
    CHECK(labels.is_odd(2));
  }
  SECTION("disconnected graphs are rejected") {
    CHECK_THROWS_AS(parity_labels(resolution_graph(0, {0, 1}, {})), error);
  }
  SECTION("parallel edges of differing weight are an odd cycle") {
    CHECK_THROWS_AS(
        parity_labels(resolution_graph(0, {0, 1}, {{0, 1, 0}, {0, 1, 1}})),
        odd_cycle_error);
  }
}

TEST_CASE("directed construction") {
  SECTION("worked example, exact rows") {
    haplotype_matrix b = construct_haplotypes_dpph(g("220\n202\n022\n"));
    CHECK(b == h("010\n100\n001\n100\n001\n010\n"));
  }
  SECTION("rows without 2s are copied twice") {
    CHECK(construct_haplotypes_dpph(g("010\n")) == h("010\n010\n"));
  }
  SECTION("a single 2 resolves to (0,1)") {
    CHECK(construct_haplotypes_dpph(g("2\n")) == h("0\n1\n"));
  }
  SECTION("rejecting inputs throw with the witness") {
    try {
      construct_haplotypes_dpph(g("01\n10\n11\n22\n"));
      FAIL("expected not_admitting");
    } catch (const not_admitting& e) {
      CHECK_FALSE(e.why().admits);
      CHECK(format_witness(e.why()) == "gamete-pair 1 2");
    }
  }
}

TEST_CASE("undirected construction") {
  SECTION("flip, solve, unflip") {
    haplotype_matrix b = construct_haplotypes_pph(g("22\n11\n01\n10\n"));
    CHECK(b.row_text(0) == "10");
    CHECK(b.row_text(1) == "01");
    CHECK(b == h("10\n01\n11\n11\n01\n01\n10\n10\n"));
    CHECK(explains_matrix(b, g("22\n11\n01\n10\n")));
    CHECK_FALSE(four_gamete_check(b));
  }
  SECTION("pinned output for a mixed row") {
    haplotype_matrix b = construct_haplotypes_pph(g("012\n"));
    CHECK(b == h("010\n011\n"));
    CHECK(explains_matrix(b, g("012\n")));
    CHECK_FALSE(four_gamete_check(b));
  }
  SECTION("all-fixed input") {
    CHECK(construct_haplotypes_pph(g("00\n")) == h("00\n00\n"));
  }
  SECTION("rejecting inputs throw") {
    CHECK_THROWS_AS(construct_haplotypes_pph(g("22\n00\n01\n10\n11\n")),
                    not_admitting);
  }
}

TEST_CASE("construction soundness on random accepted instances") {
  std::mt19937_64 rng(401);
  std::size_t accepted = 0;
  for (int iter = 0; iter < 300; ++iter) {
    genotype_matrix a =
        test_util::random_genotypes(rng, 1 + rng() % 4, 1 + rng() % 5, 3);
    if (decide_dpph(a).admits) {
      ++accepted;
      haplotype_matrix b = construct_haplotypes_dpph(a);
      CHECK(explains_matrix(b, a));
      CHECK_FALSE(three_gamete_check(b));
      CHECK(construct_haplotypes_dpph(a) == b);  // deterministic
    }
    if (decide_pph(a).admits) {
      haplotype_matrix b = construct_haplotypes_pph(a);
      CHECK(explains_matrix(b, a));
      CHECK_FALSE(four_gamete_check(b));
    }
  }
  CHECK(accepted > 20);
}

TEST_CASE("same owner and 2-pair means same resolution") {
  std::mt19937_64 rng(409);
  for (int iter = 0; iter < 200; ++iter) {
    genotype_matrix a =
        test_util::random_genotypes(rng, 2 + rng() % 3, 2 + rng() % 4, 3);
    if (!decide_dpph(a).admits) continue;
    haplotype_matrix b = construct_haplotypes_dpph(a);
    genotype_partition part = assign_genotypes(a);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t s = r + 1; s < a.rows(); ++s) {
        if (!part.owner[r] || part.owner[r] != part.owner[s]) continue;
        for (std::size_t i = 0; i + 1 < a.cols(); ++i)
          for (std::size_t j = i + 1; j < a.cols(); ++j) {
            if (a.at(r, i) != 2 || a.at(r, j) != 2) continue;
            if (a.at(s, i) != 2 || a.at(s, j) != 2) continue;
            CHECK(classify_resolution(b.row(2 * r), b.row(2 * r + 1), i, j) ==
                  classify_resolution(b.row(2 * s), b.row(2 * s + 1), i, j));
          }
      }
  }
}
