#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ppht/errors.hpp"
#include "ppht/matrix.hpp"

namespace ppht {

class not_perfect_phylogeny : public error {
 public:
  not_perfect_phylogeny(std::pair<std::size_t, std::size_t> pair,
                        const std::string& message)
      : error(message), pair_(pair) {}

  std::pair<std::size_t, std::size_t> violating_pair() const { return pair_; }

 private:
  std::pair<std::size_t, std::size_t> pair_;
};

// Rooted tree with rows labeling nodes and columns labeling edges. The
// edge to the parent stores its column labels; the root has none. Nodes
// without row labels are permitted (the root of a directed tree when no
// row is all-zero, and the far ends of pendant edges for constant columns).
struct phylogeny_tree {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct node {
    std::size_t parent = npos;
    std::vector<std::size_t> edge_columns;   // labels on the edge to parent
    std::vector<std::size_t> row_labels;     // rows placed at this node
    std::vector<std::uint8_t> haplotype;     // implied value at every column
  };

  std::vector<node> nodes;
  std::size_t root = 0;
  std::size_t columns = 0;

  // Nodes carrying rows first, ordered by their smallest row; unlabeled
  // nodes follow in construction order.
  std::vector<std::size_t> display_order() const {
    std::vector<std::size_t> order(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) order[i] = i;
    auto rank = [&](std::size_t i) {
      return nodes[i].row_labels.empty() ? npos : nodes[i].row_labels.front();
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return rank(x) < rank(y); });
    return order;
  }

  std::string to_dot() const {
    std::vector<std::size_t> order = display_order();
    std::vector<std::size_t> name(nodes.size());
    for (std::size_t k = 0; k < order.size(); ++k) name[order[k]] = k;
    std::ostringstream out;
    out << "graph phylogeny {\n";
    for (std::size_t k = 0; k < order.size(); ++k) {
      const node& nd = nodes[order[k]];
      out << "  n" << k << " [label=\"";
      if (order[k] == root) out << "root ";
      if (!nd.row_labels.empty()) {
        out << "rows=";
        for (std::size_t i = 0; i < nd.row_labels.size(); ++i)
          out << (i ? "," : "") << nd.row_labels[i] + 1;
        out << " ";
      }
      out << "hap=";
      for (std::uint8_t v : nd.haplotype) out << static_cast<char>('0' + v);
      out << "\"];\n";
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      const node& nd = nodes[order[k]];
      if (nd.parent == npos) continue;
      out << "  n" << name[nd.parent] << " -- n" << k << " [label=\"cols=";
      for (std::size_t i = 0; i < nd.edge_columns.size(); ++i)
        out << (i ? "," : "") << nd.edge_columns[i] + 1;
      out << "\"];\n";
    }
    out << "}\n";
    return out.str();
  }
};

namespace detail {

inline std::size_t popcount_words(const std::vector<std::uint64_t>& words) {
  std::size_t count = 0;
  for (std::uint64_t w : words) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

inline bool word_subset(const std::vector<std::uint64_t>& sub,
                        const std::vector<std::uint64_t>& super) {
  for (std::size_t w = 0; w < sub.size(); ++w)
    if (sub[w] & ~super[w]) return false;
  return true;
}

inline bool word_bit(const std::vector<std::uint64_t>& words, std::size_t i) {
  return (words[i / 64] >> (i % 64)) & 1;
}

}  // namespace detail

// Assembles the perfect phylogeny of a haplotype matrix. Groups identical
// columns, nests the column classes by containment of their 1-sets (the
// gamete conditions make those sets laminar), hangs each row at the node
// reached by the chain of classes containing it, and gives every class
// one edge. Directed trees are rooted at the all-zero haplotype; the
// undirected build complements columns so that row 1 becomes the root.
inline phylogeny_tree build_tree(const haplotype_matrix& b, bool directed) {
  auto violation = directed ? three_gamete_check(b) : four_gamete_check(b);
  if (violation) {
    std::ostringstream msg;
    msg << "not a perfect phylogeny: columns " << violation->first + 1 << " and "
        << violation->second + 1 << " violate the "
        << (directed ? "three" : "four") << "-gamete condition";
    throw not_perfect_phylogeny(*violation, msg.str());
  }
  const std::size_t n = b.rows();
  const std::size_t m = b.cols();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint8_t> flip(m, 0);
  if (!directed)
    for (std::size_t c = 0; c < m; ++c) flip[c] = b.at(0, c);
  // 1-sets of the normalized matrix, one bit per row
  std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> classes;
  {
    std::vector<std::uint64_t> ones(words);
    for (std::size_t c = 0; c < m; ++c) {
      std::fill(ones.begin(), ones.end(), 0);
      for (std::size_t r = 0; r < n; ++r)
        if (b.at(r, c) ^ flip[c]) ones[r / 64] |= std::uint64_t{1} << (r % 64);
      classes[ones].push_back(c);
    }
  }
  std::vector<std::size_t> constant_columns;
  if (auto it = classes.find(std::vector<std::uint64_t>(words, 0));
      it != classes.end()) {
    constant_columns = it->second;
    classes.erase(it);
  }
  struct column_class {
    std::vector<std::uint64_t> ones;
    std::vector<std::size_t> columns;
    std::size_t size;
  };
  std::vector<column_class> ordered;
  ordered.reserve(classes.size());
  for (auto& [ones, columns] : classes)
    ordered.push_back({ones, columns, detail::popcount_words(ones)});
  std::sort(ordered.begin(), ordered.end(),
            [](const column_class& x, const column_class& y) {
              if (x.size != y.size) return x.size > y.size;
              return x.columns.front() < y.columns.front();
            });

  phylogeny_tree tree;
  tree.columns = m;
  tree.root = 0;
  tree.nodes.push_back({phylogeny_tree::npos, {}, {}, std::vector<std::uint8_t>(m, 0)});
  std::vector<std::size_t> class_node(ordered.size());
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    // parent class: the smallest earlier superset; laminarity makes the
    // minimal superset unique
    std::size_t parent = tree.root;
    for (std::size_t p = k; p-- > 0;) {
      if (detail::word_subset(ordered[k].ones, ordered[p].ones)) {
        parent = class_node[p];
        break;
      }
    }
    phylogeny_tree::node nd;
    nd.parent = parent;
    nd.edge_columns = ordered[k].columns;
    nd.haplotype = tree.nodes[parent].haplotype;
    for (std::size_t c : ordered[k].columns) nd.haplotype[c] = 1;
    class_node[k] = tree.nodes.size();
    tree.nodes.push_back(std::move(nd));
  }
  if (!constant_columns.empty()) {
    phylogeny_tree::node nd;
    nd.parent = tree.root;
    nd.edge_columns = constant_columns;
    nd.haplotype = tree.nodes[tree.root].haplotype;
    for (std::size_t c : constant_columns) nd.haplotype[c] = 1;
    tree.nodes.push_back(std::move(nd));
  }
  // each row hangs at its smallest containing class, or at the root
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t best = tree.root;
    std::size_t best_size = static_cast<std::size_t>(-1);
    for (std::size_t k = 0; k < ordered.size(); ++k)
      if (ordered[k].size < best_size && detail::word_bit(ordered[k].ones, r)) {
        best = class_node[k];
        best_size = ordered[k].size;
      }
    tree.nodes[best].row_labels.push_back(r);
  }
  for (auto& nd : tree.nodes)
    for (std::size_t c = 0; c < m; ++c) nd.haplotype[c] ^= flip[c];
  return tree;
}

struct verify_result {
  bool ok = true;
  int violated_condition = 0;  // 0 = malformed structure, else 1..3
  std::string detail;
};

// Brute-force checker for the three defining conditions; independent of
// build_tree so it can serve as its oracle. Condition 3 compares, for every
// row pair, the columns where the rows differ against the columns labeling
// the tree path between their nodes.
inline verify_result verify_tree(const haplotype_matrix& b,
                                 const phylogeny_tree& t) {
  auto fail = [](int condition, std::string detail) {
    return verify_result{false, condition, std::move(detail)};
  };
  const std::size_t node_count = t.nodes.size();
  if (node_count == 0) return fail(0, "tree has no nodes");
  if (t.root >= node_count || t.nodes[t.root].parent != phylogeny_tree::npos)
    return fail(0, "root is malformed");
  for (std::size_t i = 0; i < node_count; ++i) {
    if (i == t.root) continue;
    if (t.nodes[i].parent >= node_count) return fail(0, "dangling parent link");
    std::size_t hops = 0;
    for (std::size_t u = i; u != t.root; u = t.nodes[u].parent)
      if (++hops > node_count) return fail(0, "parent links contain a cycle");
  }

  // condition 1: each row labels exactly one node
  std::vector<std::size_t> row_node(b.rows(), phylogeny_tree::npos);
  for (std::size_t i = 0; i < node_count; ++i)
    for (std::size_t r : t.nodes[i].row_labels) {
      if (r >= b.rows())
        return fail(1, "row label " + std::to_string(r + 1) + " out of range");
      if (row_node[r] != phylogeny_tree::npos)
        return fail(1, "row " + std::to_string(r + 1) + " labels two nodes");
      row_node[r] = i;
    }
  for (std::size_t r = 0; r < b.rows(); ++r)
    if (row_node[r] == phylogeny_tree::npos)
      return fail(1, "row " + std::to_string(r + 1) + " labels no node");

  // condition 2: each column labels exactly one edge, each edge >= 1 column
  std::vector<std::size_t> column_count(b.cols(), 0);
  for (std::size_t i = 0; i < node_count; ++i) {
    if (i == t.root) {
      if (!t.nodes[i].edge_columns.empty())
        return fail(0, "root must not carry edge labels");
      continue;
    }
    if (t.nodes[i].edge_columns.empty())
      return fail(2, "an edge carries no column label");
    for (std::size_t c : t.nodes[i].edge_columns) {
      if (c >= b.cols())
        return fail(2, "column label " + std::to_string(c + 1) + " out of range");
      ++column_count[c];
    }
  }
  for (std::size_t c = 0; c < b.cols(); ++c)
    if (column_count[c] != 1)
      return fail(2, "column " + std::to_string(c + 1) + " labels " +
                         std::to_string(column_count[c]) + " edges");

  // condition 3: rows differ at a column exactly when its edge lies on the
  // path between them; root paths make the path set an xor of two masks
  const std::size_t words = (b.cols() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> path_columns(
      node_count, std::vector<std::uint64_t>(words, 0));
  {
    std::vector<int> done(node_count, 0);
    done[t.root] = 1;
    for (std::size_t i = 0; i < node_count; ++i) {
      std::vector<std::size_t> chain;
      for (std::size_t u = i; !done[u]; u = t.nodes[u].parent) chain.push_back(u);
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        path_columns[*it] = path_columns[t.nodes[*it].parent];
        for (std::size_t c : t.nodes[*it].edge_columns)
          path_columns[*it][c / 64] |= std::uint64_t{1} << (c % 64);
        done[*it] = 1;
      }
    }
  }
  std::vector<std::vector<std::uint64_t>> row_bits(
      b.rows(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      if (b.at(r, c)) row_bits[r][c / 64] |= std::uint64_t{1} << (c % 64);
  for (std::size_t r = 0; r + 1 < b.rows(); ++r)
    for (std::size_t s = r + 1; s < b.rows(); ++s) {
      const auto& pr = path_columns[row_node[r]];
      const auto& ps = path_columns[row_node[s]];
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t diff = (row_bits[r][w] ^ row_bits[s][w]) ^ (pr[w] ^ ps[w]);
        if (diff) {
          std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(diff));
          std::ostringstream msg;
          msg << "rows " << r + 1 << " and " << s + 1 << " disagree with the "
              << "path at column " << c + 1;
          return fail(3, msg.str());
        }
      }
    }
  return {};
}

}  // namespace ppht
