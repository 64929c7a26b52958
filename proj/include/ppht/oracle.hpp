#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

#include "ppht/errors.hpp"
#include "ppht/matrix.hpp"

namespace ppht {

inline constexpr std::size_t default_oracle_cap = 24;

namespace detail {

// Gamete check written against the raw rows, deliberately separate from the
// induced-set machinery used by the main pipeline.
inline bool passes_gamete_scan(const haplotype_matrix& b, bool directed) {
  const unsigned reject = directed ? 0b1110u : 0b1111u;  // 01,10,11 / all four
  for (std::size_t i = 0; i + 1 < b.cols(); ++i)
    for (std::size_t j = i + 1; j < b.cols(); ++j) {
      unsigned seen = 0;
      for (std::size_t r = 0; r < b.rows(); ++r) {
        seen |= 1u << (b.at(r, i) * 2 + b.at(r, j));
        if ((seen & reject) == reject) return false;
      }
    }
  return true;
}

}  // namespace detail

// Exhaustively enumerates explaining haplotype matrices that satisfy the
// four-gamete (three-gamete when directed) condition, in canonical order:
// rows resolve site by site, the first heterozygous site of each row pinned
// to 0 in the even output row. The callback returns false to stop early.
template <typename Fn>
void oracle_enumerate(const genotype_matrix& a, bool directed, std::size_t cap,
                      Fn&& on_solution) {
  std::vector<std::vector<std::size_t>> two_sites(a.rows());
  std::size_t total_twos = 0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a.at(r, c) == 2) {
        two_sites[r].push_back(c);
        ++total_twos;
      }
  if (total_twos > cap) {
    std::ostringstream msg;
    msg << "instance has " << total_twos << " heterozygous entries, above the cap of "
        << cap;
    throw too_large(msg.str());
  }
  haplotype_matrix b(2 * a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      std::uint8_t v = a.at(r, c);
      if (v != 2) {
        b.set(2 * r, c, v);
        b.set(2 * r + 1, c, v);
      }
    }
  bool stop = false;
  auto set_site = [&](std::size_t r, std::size_t c, std::uint8_t bit) {
    b.set(2 * r, c, bit);
    b.set(2 * r + 1, c, static_cast<std::uint8_t>(1 - bit));
  };
  auto resolve = [&](auto&& self, std::size_t r, std::size_t site) -> void {
    if (stop) return;
    if (r == a.rows()) {
      if (detail::passes_gamete_scan(b, directed) && !on_solution(b)) stop = true;
      return;
    }
    const auto& sites = two_sites[r];
    if (site == sites.size()) {
      self(self, r + 1, 0);
      return;
    }
    if (site == 0 && !sites.empty()) {
      set_site(r, sites[0], 0);  // canonical orientation for the pair
      self(self, r, 1);
      return;
    }
    for (std::uint8_t bit : {0, 1}) {
      set_site(r, sites[site], bit);
      self(self, r, site + 1);
      if (stop) return;
    }
  };
  resolve(resolve, 0, 0);
}

// True when some resolution of the 2-entries admits a (directed) perfect
// phylogeny. Ground truth for small instances.
inline bool oracle_decide(const genotype_matrix& a, bool directed,
                          std::size_t cap = default_oracle_cap) {
  bool found = false;
  oracle_enumerate(a, directed, cap, [&](const haplotype_matrix&) {
    found = true;
    return false;
  });
  return found;
}

inline std::vector<haplotype_matrix> oracle_solutions(
    const genotype_matrix& a, bool directed,
    std::size_t cap = default_oracle_cap) {
  std::vector<haplotype_matrix> out;
  oracle_enumerate(a, directed, cap, [&](const haplotype_matrix& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

struct planted_instance {
  genotype_matrix genotypes;
  haplotype_matrix haplotypes;  // rows 2i, 2i+1 explain genotype row i
};

// Samples a rooted tree with one column per edge by uniform attachment,
// reads off the node haplotypes, and pairs random nodes into genotypes.
// The genotype matrix therefore always admits a perfect phylogeny, with
// the returned haplotype matrix as witness.
inline planted_instance plant_instance(std::uint64_t seed,
                                       std::size_t n_genotypes,
                                       std::size_t m_cols) {
  if (n_genotypes == 0 || m_cols == 0)
    throw error("planted instances need at least one row and one column");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::uint8_t>> node_hap(
      m_cols + 1, std::vector<std::uint8_t>(m_cols, 0));
  for (std::size_t v = 1; v <= m_cols; ++v) {
    std::size_t parent = rng() % v;  // edge v joins a uniformly chosen node
    node_hap[v] = node_hap[parent];
    node_hap[v][v - 1] = 1;
  }
  planted_instance out{genotype_matrix(n_genotypes, m_cols),
                       haplotype_matrix(2 * n_genotypes, m_cols)};
  for (std::size_t r = 0; r < n_genotypes; ++r) {
    const auto& h = node_hap[rng() % (m_cols + 1)];
    const auto& h2 = node_hap[rng() % (m_cols + 1)];
    for (std::size_t c = 0; c < m_cols; ++c) {
      out.haplotypes.set(2 * r, c, h[c]);
      out.haplotypes.set(2 * r + 1, c, h2[c]);
      out.genotypes.set(r, c, h[c] == h2[c] ? h[c] : 2);
    }
  }
  return out;
}

}  // namespace ppht
