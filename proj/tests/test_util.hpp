#pragma once

#include <initializer_list>
#include <random>
#include <string>

#include "ppht/ppht.hpp"

namespace test_util {

inline ppht::genotype_matrix g(const std::string& text) {
  return ppht::parse_genotype_matrix(text);
}

inline ppht::haplotype_matrix h(const std::string& text) {
  return ppht::parse_haplotype_matrix(text);
}

inline std::vector<std::uint8_t> row(const std::string& digits) {
  std::vector<std::uint8_t> v;
  v.reserve(digits.size());
  for (char ch : digits) v.push_back(static_cast<std::uint8_t>(ch - '0'));
  return v;
}

inline ppht::induced_set ind(std::initializer_list<const char*> strings) {
  ppht::induced_set s;
  for (const char* xy : strings) s.insert(xy[0] - '0', xy[1] - '0');
  return s;
}

// Uniform random genotype matrix; two_weight skews the share of 2-entries.
inline ppht::genotype_matrix random_genotypes(std::mt19937_64& rng,
                                              std::size_t rows, std::size_t cols,
                                              unsigned two_weight = 1) {
  ppht::genotype_matrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      unsigned pick = rng() % (2 + two_weight);
      a.set(r, c, static_cast<std::uint8_t>(pick >= 2 ? 2 : pick));
    }
  return a;
}

inline ppht::haplotype_matrix random_haplotypes(std::mt19937_64& rng,
                                                std::size_t rows,
                                                std::size_t cols) {
  ppht::haplotype_matrix b(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      b.set(r, c, static_cast<std::uint8_t>(rng() % 2));
  return b;
}

}  // namespace test_util
