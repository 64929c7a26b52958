#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ppht/decide.hpp"
#include "ppht/errors.hpp"
#include "ppht/matrix.hpp"
#include "ppht/ordering.hpp"
#include "ppht/resolution.hpp"

namespace ppht {

enum class site_parity { even, odd };

// Path-weight parity from the anchor to every vertex of a connected graph
// without odd-weight cycles; well-defined because all paths to a vertex
// then share one parity.
struct parity_labeling {
  std::size_t anchor = 0;
  std::map<std::size_t, site_parity> parity;

  bool is_odd(std::size_t v) const {
    auto it = parity.find(v);
    if (it == parity.end()) throw error("vertex has no parity label");
    return it->second == site_parity::odd;
  }
};

// Connects every component not containing the anchor to the anchor with a
// 0-weight edge from the component's smallest vertex.
inline resolution_graph augment_graph(const resolution_graph& g) {
  if (g.empty()) return g;
  if (!g.has_vertex(g.anchor()))
    throw error("anchor column is not a vertex of the graph");
  if (auto cycle = find_odd_weight_cycle(g))
    throw odd_cycle_error("graph contains an odd-weight cycle");
  const auto& vs = g.vertices();
  auto index_of = [&](std::size_t v) {
    return static_cast<std::size_t>(
        std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  std::vector<std::size_t> root(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) root[i] = i;
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& e : g.edges()) root[find(index_of(e.a))] = find(index_of(e.b));
  resolution_graph out = g;
  std::size_t anchor_root = find(index_of(g.anchor()));
  std::map<std::size_t, std::size_t> component_min;  // root -> smallest vertex
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::size_t r = find(i);
    if (r == anchor_root) continue;
    auto [it, fresh] = component_min.try_emplace(r, vs[i]);
    if (!fresh && vs[i] < it->second) it->second = vs[i];
  }
  for (const auto& [r, v] : component_min) out.add_edge(v, g.anchor(), 0);
  return out;
}

// Breadth-first parity propagation from the anchor over all parallel edges.
inline parity_labeling parity_labels(const resolution_graph& g) {
  parity_labeling labels{g.anchor(), {}};
  if (g.empty()) return labels;
  if (!g.has_vertex(g.anchor()))
    throw error("anchor column is not a vertex of the graph");
  const auto& vs = g.vertices();
  auto index_of = [&](std::size_t v) {
    return static_cast<std::size_t>(
        std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(vs.size());
  for (const auto& e : g.edges()) {
    adj[index_of(e.a)].push_back({index_of(e.b), e.weight});
    adj[index_of(e.b)].push_back({index_of(e.a), e.weight});
  }
  std::vector<int> parity(vs.size(), -1);
  std::deque<std::size_t> queue{index_of(g.anchor())};
  parity[index_of(g.anchor())] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (auto [v, w] : adj[u]) {
      if (parity[v] == -1) {
        parity[v] = parity[u] ^ w;
        queue.push_back(v);
      } else if (parity[v] != (parity[u] ^ w)) {
        throw odd_cycle_error("graph contains an odd-weight cycle");
      }
    }
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (parity[i] == -1) throw error("graph is not connected");
    labels.parity[vs[i]] = parity[i] ? site_parity::odd : site_parity::even;
  }
  return labels;
}

// Constructs an explaining haplotype matrix for a directed-admitting
// genotype matrix: rows without 2s are copied twice; an owned genotype
// resolves each 2-site by the site's path parity from the owner column,
// even parity giving (0,1) and odd parity (1,0).
inline haplotype_matrix construct_haplotypes_dpph(const genotype_matrix& a) {
  column_order order(a);
  if (auto pair = gamete_precheck(order.masks()))
    throw not_admitting(verdict::no(gamete_witness{pair->first, pair->second}));
  auto partition = assign_genotypes(a, order);
  auto graphs = build_all_resolution_graphs(a, order, partition);
  std::vector<std::optional<parity_labeling>> labels(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    if (graphs[i].empty()) continue;
    if (auto cycle = find_odd_weight_cycle(graphs[i]))
      throw not_admitting(verdict::no(*cycle));
    labels[i] = parity_labels(augment_graph(graphs[i]));
  }
  haplotype_matrix b(2 * a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto cells = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) {
      std::uint8_t v = cells[c];
      if (v != 2) {
        b.set(2 * r, c, v);
        b.set(2 * r + 1, c, v);
      } else if (labels[*partition.owner[r]]->is_odd(c)) {
        b.set(2 * r, c, 1);
        b.set(2 * r + 1, c, 0);
      } else {
        b.set(2 * r, c, 0);
        b.set(2 * r + 1, c, 1);
      }
    }
  }
  return b;
}

// Undirected variant: normalize columns, construct for the directed
// instance, then undo the column flips on the output.
inline haplotype_matrix construct_haplotypes_pph(const genotype_matrix& a) {
  dpph_reduction reduced = pph_to_dpph(a);
  return unflip_haplotypes(construct_haplotypes_dpph(reduced.matrix),
                           reduced.flips);
}

}  // namespace ppht
