#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "ppht/errors.hpp"
#include "ppht/matrix.hpp"
#include "ppht/ordering.hpp"
#include "ppht/resolution.hpp"

namespace ppht {

// ---------------------------------------------------------------------------
// Witnesses and verdicts

struct gamete_witness {
  std::size_t col_a;
  std::size_t col_b;
  bool operator==(const gamete_witness&) const = default;
};

// Closed walk of odd total weight in the resolution graph of `anchor`.
// Edges are endpoint-normalized but listed in walk order.
struct cycle_witness {
  std::size_t anchor;
  std::vector<weighted_edge> edges;
  bool operator==(const cycle_witness&) const = default;
};

struct verdict {
  bool admits;
  std::optional<std::variant<gamete_witness, cycle_witness>> witness;

  static verdict yes() { return {true, std::nullopt}; }
  static verdict no(gamete_witness w) { return {false, w}; }
  static verdict no(cycle_witness w) { return {false, std::move(w)}; }
};

// "gamete-pair 1 2" or "odd-cycle 1 1-2:1 2-3:1 1-3:1"; indices 1-based.
inline std::string format_witness(const verdict& v) {
  if (!v.witness) return "";
  std::ostringstream out;
  if (const auto* g = std::get_if<gamete_witness>(&*v.witness)) {
    out << "gamete-pair " << g->col_a + 1 << " " << g->col_b + 1;
  } else {
    const auto& c = std::get<cycle_witness>(*v.witness);
    out << "odd-cycle " << c.anchor + 1;
    for (const auto& e : c.edges)
      out << " " << e.a + 1 << "-" << e.b + 1 << ":" << e.weight;
  }
  return out.str();
}

inline std::string format_verdict(const verdict& v) {
  return v.admits ? "YES" : "NO " + format_witness(v);
}

class not_admitting : public error {
 public:
  explicit not_admitting(verdict v)
      : error("instance admits no perfect phylogeny: " + format_witness(v)),
        verdict_(std::move(v)) {}

  const verdict& why() const { return verdict_; }

 private:
  verdict verdict_;
};

// ---------------------------------------------------------------------------
// Gamete pre-check

// Rejecting condition on the genotype matrix itself: a pair inducing all of
// {01,10,11} admits no directed perfect phylogeny, whatever the resolution.
inline std::optional<std::pair<std::size_t, std::size_t>> gamete_precheck(
    const genotype_column_masks& masks) {
  for (std::size_t i = 0; i + 1 < masks.cols(); ++i)
    for (std::size_t j = i + 1; j < masks.cols(); ++j) {
      induced_set s = masks.induced(i, j);
      if (s.contains(0, 1) && s.contains(1, 0) && s.contains(1, 1))
        return std::pair{i, j};
    }
  return std::nullopt;
}

inline std::optional<std::pair<std::size_t, std::size_t>> gamete_precheck(
    const genotype_matrix& a) {
  return gamete_precheck(genotype_column_masks(a));
}

// ---------------------------------------------------------------------------
// Odd-weight cycle detection (parity union-find route)

namespace detail {

class parity_dsu {
 public:
  explicit parity_dsu(std::size_t n) : parent_(n), parity_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  // (root, parity of x relative to root)
  std::pair<std::size_t, int> find(std::size_t x) {
    std::vector<std::size_t> chain;
    while (parent_[x] != x) {
      chain.push_back(x);
      x = parent_[x];
    }
    int below = 0;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      below ^= parity_[*it];
      parent_[*it] = x;
      parity_[*it] = static_cast<std::uint8_t>(below);
    }
    return {x, chain.empty() ? 0 : parity_[chain.front()]};
  }

  // joins two roots so that their trees sit at the given relative parity
  void link(std::size_t root_a, std::size_t root_b, int parity) {
    parent_[root_a] = root_b;
    parity_[root_a] = static_cast<std::uint8_t>(parity);
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> parity_;
};

}  // namespace detail

// Detects an odd-weight cycle by merging edge endpoints under the parity
// constraint of the edge weight; the first conflicting edge closes a cycle
// against the spanning forest accepted so far.
inline std::optional<cycle_witness> find_odd_weight_cycle(
    const resolution_graph& g) {
  const auto& vs = g.vertices();
  auto index_of = [&](std::size_t v) {
    return static_cast<std::size_t>(
        std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  detail::parity_dsu dsu(vs.size());
  std::vector<std::vector<std::pair<std::size_t, int>>> forest(vs.size());
  for (const auto& e : g.edges()) {
    std::size_t a = index_of(e.a);
    std::size_t b = index_of(e.b);
    auto [root_a, parity_a] = dsu.find(a);
    auto [root_b, parity_b] = dsu.find(b);
    if (root_a != root_b) {
      dsu.link(root_a, root_b, parity_a ^ parity_b ^ e.weight);
      forest[a].push_back({b, e.weight});
      forest[b].push_back({a, e.weight});
      continue;
    }
    if ((parity_a ^ parity_b) == e.weight) continue;  // consistent chord
    // walk from b back to a through the forest: conflict edge + path = cycle
    std::vector<std::size_t> prev(vs.size(), vs.size());
    std::deque<std::size_t> queue{b};
    prev[b] = b;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      if (u == a) break;
      for (auto [v, w] : forest[u])
        if (prev[v] == vs.size()) {
          prev[v] = u;
          queue.push_back(v);
        }
    }
    cycle_witness cycle{g.anchor(), {e}};
    for (std::size_t u = a; u != b; u = prev[u]) {
      int w = 0;
      for (auto [v, weight] : forest[u])
        if (v == prev[u]) {
          w = weight;
          break;
        }
      cycle.edges.push_back(
          {std::min(vs[u], vs[prev[u]]), std::max(vs[u], vs[prev[u]]), w});
    }
    return cycle;
  }
  return std::nullopt;
}

inline bool has_odd_weight_cycle(const resolution_graph& g) {
  return find_odd_weight_cycle(g).has_value();
}

// ---------------------------------------------------------------------------
// Bipartiteness route

// Vertex of the expanded unweighted graph: a column of one resolution graph,
// or the midpoint splitting one of its 0-weight edges.
struct expanded_vertex {
  std::size_t anchor;
  std::size_t col_a;
  std::size_t col_b;
  bool mid;

  static expanded_vertex column(std::size_t anchor, std::size_t c) {
    return {anchor, c, c, false};
  }
  static expanded_vertex midpoint(std::size_t anchor, std::size_t a,
                                  std::size_t b) {
    return {anchor, a, b, true};
  }
  bool operator==(const expanded_vertex&) const = default;
};

// Plain undirected graph: set semantics on edges, no self loops.
class plain_graph {
 public:
  std::size_t add_vertex(expanded_vertex desc) {
    descs_.push_back(desc);
    return descs_.size() - 1;
  }

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw error("self loops are not allowed");
    if (u >= descs_.size() || v >= descs_.size())
      throw error("edge endpoint is not a vertex of the graph");
    if (u > v) std::swap(u, v);
    std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    if (keys_.insert(key).second) edges_.push_back({u, v});
  }

  std::size_t vertex_count() const { return descs_.size(); }
  const expanded_vertex& descriptor(std::size_t v) const { return descs_[v]; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }

 private:
  std::vector<expanded_vertex> descs_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::unordered_set<std::uint64_t> keys_;
};

// Disjoint union of the resolution graphs with every 0-weight edge replaced
// by a length-2 path through a fresh midpoint vertex; weights dropped.
// Odd-weight cycles correspond exactly to odd-length cycles afterwards.
inline plain_graph expand_to_bipartite_instance(
    std::span<const resolution_graph> graphs) {
  plain_graph pg;
  for (const auto& g : graphs) {
    const auto& vs = g.vertices();
    std::vector<std::size_t> id(vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k)
      id[k] = pg.add_vertex(expanded_vertex::column(g.anchor(), vs[k]));
    auto index_of = [&](std::size_t v) {
      return id[static_cast<std::size_t>(
          std::lower_bound(vs.begin(), vs.end(), v) - vs.begin())];
    };
    for (const auto& e : g.edges()) {
      if (e.weight == 1) {
        pg.add_edge(index_of(e.a), index_of(e.b));
      } else {
        std::size_t mid =
            pg.add_vertex(expanded_vertex::midpoint(g.anchor(), e.a, e.b));
        pg.add_edge(index_of(e.a), mid);
        pg.add_edge(mid, index_of(e.b));
      }
    }
  }
  return pg;
}

struct bipartite_result {
  bool bipartite = true;
  std::vector<std::size_t> odd_cycle;  // vertex sequence, closed implicitly
};

// Standard traversal-based 2-coloring; on failure returns one odd cycle.
inline bipartite_result is_bipartite(const plain_graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<int> color(n, -1);
  std::vector<std::size_t> parent(n, unset);
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adj[u]) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          parent[v] = u;
          queue.push_back(v);
          continue;
        }
        if (color[v] != color[u]) continue;
        // same color: the tree paths to the root plus edge (u,v) close an
        // odd cycle through the lowest common ancestor
        auto path_to_root = [&](std::size_t x) {
          std::vector<std::size_t> path{x};
          while (parent[x] != unset) {
            x = parent[x];
            path.push_back(x);
          }
          return path;
        };
        std::vector<std::size_t> pu = path_to_root(u);
        std::vector<std::size_t> pv = path_to_root(v);
        while (pu.size() > 1 && pv.size() > 1 &&
               pu[pu.size() - 2] == pv[pv.size() - 2]) {
          pu.pop_back();
          pv.pop_back();
        }
        std::vector<std::size_t> cycle(pu.begin(), pu.end());
        for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it)
          cycle.push_back(*it);
        return {false, cycle};
      }
    }
  }
  return {true, {}};
}

namespace detail {

// Contracts midpoint vertices of an expanded odd cycle back into the
// weighted edges of the resolution graph it came from.
inline cycle_witness contract_expanded_cycle(const plain_graph& pg,
                                             const std::vector<std::size_t>& cycle) {
  cycle_witness out{pg.descriptor(cycle.front()).anchor, {}};
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& du = pg.descriptor(cycle[i]);
    if (du.mid) continue;
    const auto& dv = pg.descriptor(cycle[(i + 1) % n]);
    if (dv.mid) {
      out.edges.push_back({dv.col_a, dv.col_b, 0});
    } else {
      out.edges.push_back({std::min(du.col_a, dv.col_a),
                           std::max(du.col_a, dv.col_a), 1});
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Top-level deciders

enum class decide_route { parity, bipartite };

// Directed perfect phylogeny: the gamete pre-check must pass and no
// resolution graph may contain an odd-weight cycle. The two routes are
// independent implementations of the cycle criterion.
inline verdict decide_dpph(const genotype_matrix& a,
                           decide_route route = decide_route::parity) {
  column_order order(a);
  if (auto pair = gamete_precheck(order.masks()))
    return verdict::no(gamete_witness{pair->first, pair->second});
  auto graphs = build_all_resolution_graphs(a, order, assign_genotypes(a, order));
  if (route == decide_route::parity) {
    for (const auto& g : graphs)
      if (auto cycle = find_odd_weight_cycle(g)) return verdict::no(*cycle);
  } else {
    plain_graph expanded = expand_to_bipartite_instance(graphs);
    bipartite_result result = is_bipartite(expanded);
    if (!result.bipartite)
      return verdict::no(detail::contract_expanded_cycle(expanded, result.odd_cycle));
  }
  return verdict::yes();
}

// Undirected perfect phylogeny: normalize columns, then decide the directed
// instance. Witnesses refer to the normalized (column-flipped) matrix;
// column indices are unchanged by the flips.
inline verdict decide_pph(const genotype_matrix& a,
                          decide_route route = decide_route::parity) {
  return decide_dpph(pph_to_dpph(a).matrix, route);
}

// Re-derives a rejection witness from scratch on the directed instance it
// refers to. For decide_pph verdicts pass pph_to_dpph(a).matrix.
inline bool validate_witness(const genotype_matrix& dpph_instance,
                             const verdict& v) {
  if (v.admits || !v.witness) return false;
  if (const auto* g = std::get_if<gamete_witness>(&*v.witness)) {
    if (g->col_a >= dpph_instance.cols() || g->col_b >= dpph_instance.cols())
      return false;
    induced_set s = induced_set_genotypes(dpph_instance, g->col_a, g->col_b);
    return s.contains(0, 1) && s.contains(1, 0) && s.contains(1, 1);
  }
  const auto& c = std::get<cycle_witness>(*v.witness);
  if (c.anchor >= dpph_instance.cols() || c.edges.empty()) return false;
  resolution_graph graph = build_resolution_graph(
      dpph_instance, assign_genotypes(dpph_instance), c.anchor);
  int weight_sum = 0;
  for (const auto& e : c.edges) {
    if (!graph.has_edge(e.a, e.b, e.weight)) return false;
    weight_sum += e.weight;
  }
  if (weight_sum % 2 == 0) return false;
  // thread the edges into a closed walk
  const std::size_t n = c.edges.size();
  if (n == 1) return false;  // a single edge is not a cycle
  if (n == 2)
    return c.edges[0].a == c.edges[1].a && c.edges[0].b == c.edges[1].b &&
           c.edges[0].weight != c.edges[1].weight;
  auto threads_from = [&](std::size_t start) {
    std::size_t at = start;
    for (const auto& e : c.edges) {
      if (e.a == at)
        at = e.b;
      else if (e.b == at)
        at = e.a;
      else
        return false;
    }
    return at == start;
  };
  return threads_from(c.edges.front().a) || threads_from(c.edges.front().b);
}

}  // namespace ppht
