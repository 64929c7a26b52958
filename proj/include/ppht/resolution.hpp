#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ppht/errors.hpp"
#include "ppht/matrix.hpp"
#include "ppht/ordering.hpp"

namespace ppht {

struct weighted_edge {
  std::size_t a;  // a < b
  std::size_t b;
  int weight;     // 0 = resolve equally, 1 = resolve unequally

  friend auto operator<=>(const weighted_edge&, const weighted_edge&) = default;
};

// Undirected multigraph on column indices with 0/1 edge weights. For an
// unordered pair at most one edge per weight is kept; a pair carrying both
// weights is a 2-edge cycle of odd weight and forces rejection downstream.
class resolution_graph {
 public:
  resolution_graph() = default;
  explicit resolution_graph(std::size_t anchor) : anchor_(anchor) {}
  resolution_graph(std::size_t anchor, std::vector<std::size_t> vertices,
                   std::vector<weighted_edge> edges)
      : anchor_(anchor), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    for (auto& e : edges_) normalize(e);
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& e : edges_)
      if (!has_vertex(e.a) || !has_vertex(e.b))
        throw error("edge endpoint is not a vertex of the graph");
  }

  std::size_t anchor() const { return anchor_; }
  const std::vector<std::size_t>& vertices() const { return vertices_; }
  const std::vector<weighted_edge>& edges() const { return edges_; }
  bool empty() const { return vertices_.empty(); }

  bool has_vertex(std::size_t v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }
  bool has_edge(std::size_t a, std::size_t b, int weight) const {
    weighted_edge e{a, b, weight};
    normalize(e);
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  void add_vertex(std::size_t v) {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) vertices_.insert(it, v);
  }
  void add_edge(std::size_t a, std::size_t b, int weight) {
    if (a == b) throw error("self loops are not allowed");
    weighted_edge e{a, b, weight};
    normalize(e);
    if (!has_vertex(e.a) || !has_vertex(e.b))
      throw error("edge endpoint is not a vertex of the graph");
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) edges_.insert(it, e);
  }

  bool operator==(const resolution_graph&) const = default;

  // Undirected DOT with the weight as attribute w; labels are 1-based.
  std::string to_dot() const {
    std::ostringstream out;
    out << "graph resolution_" << anchor_ + 1 << " {\n";
    for (std::size_t v : vertices_) out << "  " << v + 1 << ";\n";
    for (const auto& e : edges_)
      out << "  " << e.a + 1 << " -- " << e.b + 1 << " [w=" << e.weight << "];\n";
    out << "}\n";
    return out.str();
  }

 private:
  static void normalize(weighted_edge& e) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }

  std::size_t anchor_ = 0;
  std::vector<std::size_t> vertices_;
  std::vector<weighted_edge> edges_;
};

namespace detail {

// Distinct row contents only: identical rows share owner, vertices and
// pair sets, so duplicates add no information.
inline std::vector<std::size_t> distinct_row_indices(const genotype_matrix& a) {
  std::unordered_set<std::string> seen;
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (seen.insert(a.row_text(r)).second) rows.push_back(r);
  return rows;
}

// Tracks up to two distinct owners per column pair; enough to answer
// "does an owner other than i hold a genotype with 2s at both columns".
struct pair_owner_index {
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> owners;
  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  static std::uint64_t key(std::size_t k, std::size_t l, std::size_t cols) {
    return static_cast<std::uint64_t>(k) * cols + l;
  }

  void record(std::uint64_t k, std::size_t owner) {
    auto [it, fresh] = owners.try_emplace(k, std::pair{owner, none});
    if (fresh) return;
    auto& [first, second] = it->second;
    if (first != owner && second == none) second = owner;
  }

  bool other_owner(std::uint64_t k, std::size_t owner) const {
    auto it = owners.find(k);
    if (it == owners.end()) return false;
    return it->second.first != owner ||
           (it->second.second != none && it->second.second != owner);
  }
};

inline resolution_graph build_graph_from_pairs(
    const genotype_matrix& a, const column_order& order,
    const pair_owner_index& index, std::size_t anchor,
    std::vector<std::size_t> vertices,
    std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<weighted_edge> edges;
  for (auto [k, l] : pairs) {
    induced_set ind = order.masks().induced(k, l);
    bool foreign = index.other_owner(pair_owner_index::key(k, l, a.cols()), anchor);
    if (ind.contains(1, 1) || foreign) edges.push_back({k, l, 0});
    if (ind.contains(0, 1) && ind.contains(1, 0)) edges.push_back({k, l, 1});
  }
  return resolution_graph(anchor, std::move(vertices), std::move(edges));
}

}  // namespace detail

// Builds the resolution graph of every column in one pass. Vertices of
// graph i are the columns carrying a 2 in some genotype owned by i; a pair
// of such columns sharing a 2-carrying owned genotype gets a 0-weight edge
// when 11 is induced or another owner shares the pair, and a 1-weight edge
// when both 01 and 10 are induced.
inline std::vector<resolution_graph> build_all_resolution_graphs(
    const genotype_matrix& a, const column_order& order,
    const genotype_partition& partition) {
  const std::size_t m = a.cols();
  detail::pair_owner_index index;
  std::vector<std::vector<std::size_t>> vertices(m);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(m);
  std::vector<std::size_t> two_cols;
  for (std::size_t r : detail::distinct_row_indices(a)) {
    if (!partition.owner[r]) continue;
    std::size_t owner = *partition.owner[r];
    two_cols.clear();
    auto cells = a.row(r);
    for (std::size_t c = 0; c < m; ++c)
      if (cells[c] == 2) two_cols.push_back(c);
    auto& vs = vertices[owner];
    vs.insert(vs.end(), two_cols.begin(), two_cols.end());
    for (std::size_t x = 0; x + 1 < two_cols.size(); ++x)
      for (std::size_t y = x + 1; y < two_cols.size(); ++y) {
        pairs[owner].push_back({two_cols[x], two_cols[y]});
        index.record(detail::pair_owner_index::key(two_cols[x], two_cols[y], m),
                     owner);
      }
  }
  std::vector<resolution_graph> graphs;
  graphs.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    graphs.push_back(detail::build_graph_from_pairs(
        a, order, index, i, std::move(vertices[i]), std::move(pairs[i])));
  return graphs;
}

inline std::vector<resolution_graph> build_all_resolution_graphs(
    const genotype_matrix& a) {
  column_order order(a);
  return build_all_resolution_graphs(a, order, assign_genotypes(a, order));
}

// Single-graph variant of the same construction.
inline resolution_graph build_resolution_graph(const genotype_matrix& a,
                                               const genotype_partition& partition,
                                               std::size_t i) {
  detail::check_column(i, a.cols());
  column_order order(a);
  detail::pair_owner_index index;
  std::vector<std::size_t> two_cols;
  std::vector<std::size_t> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t r : detail::distinct_row_indices(a)) {
    if (!partition.owner[r]) continue;
    std::size_t owner = *partition.owner[r];
    two_cols.clear();
    auto cells = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (cells[c] == 2) two_cols.push_back(c);
    if (owner == i)
      vertices.insert(vertices.end(), two_cols.begin(), two_cols.end());
    for (std::size_t x = 0; x + 1 < two_cols.size(); ++x)
      for (std::size_t y = x + 1; y < two_cols.size(); ++y) {
        if (owner == i) pairs.push_back({two_cols[x], two_cols[y]});
        index.record(
            detail::pair_owner_index::key(two_cols[x], two_cols[y], a.cols()),
            owner);
      }
  }
  return detail::build_graph_from_pairs(a, order, index, i, std::move(vertices),
                                        std::move(pairs));
}

}  // namespace ppht
