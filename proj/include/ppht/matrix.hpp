#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ppht/errors.hpp"

namespace ppht {

// Dense row-major matrix over the symbols {0, ..., MaxSymbol}. Genotype
// matrices use {0,1,2} where 2 marks a heterozygous site; haplotype
// matrices use {0,1}.
template <std::uint8_t MaxSymbol>
class symbol_matrix {
  static_assert(MaxSymbol >= 1 && MaxSymbol <= 9);

 public:
  symbol_matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols, 0) {
    if (rows == 0 || cols == 0) throw error("matrix dimensions must be positive");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint8_t at(std::size_t r, std::size_t c) const {
    check_index(r, c);
    return cells_[r * cols_ + c];
  }

  void set(std::size_t r, std::size_t c, std::uint8_t value) {
    check_index(r, c);
    if (value > MaxSymbol) throw error("symbol out of range");
    cells_[r * cols_ + c] = value;
  }

  std::span<const std::uint8_t> row(std::size_t r) const {
    if (r >= rows_) throw error("row index out of range");
    return {cells_.data() + r * cols_, cols_};
  }

  std::string row_text(std::size_t r) const {
    auto cells = row(r);
    std::string text(cols_, '0');
    for (std::size_t c = 0; c < cols_; ++c)
      text[c] = static_cast<char>('0' + cells[c]);
    return text;
  }

  // One row per line, no separators; parse() reads the same format back.
  std::string to_text() const {
    std::string text;
    text.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
      text.append(row_text(r));
      text.push_back('\n');
    }
    return text;
  }

  bool operator==(const symbol_matrix&) const = default;

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw error("matrix index out of range");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> cells_;
};

using genotype_matrix = symbol_matrix<2>;
using haplotype_matrix = symbol_matrix<1>;

template <std::uint8_t M>
std::ostream& operator<<(std::ostream& os, const symbol_matrix<M>& m) {
  return os << m.to_text();
}

// Reads lines of equal length over the matrix alphabet. Blank lines and
// lines starting with '#' are skipped; positions in errors are 1-based.
template <std::uint8_t MaxSymbol>
symbol_matrix<MaxSymbol> parse_symbol_matrix(std::istream& in) {
  std::vector<std::string> data_lines;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (line[c] < '0' || line[c] > static_cast<char>('0' + MaxSymbol)) {
        std::ostringstream msg;
        msg << "bad symbol '" << line[c] << "' at line " << line_no
            << ", column " << c + 1;
        throw parse_error(parse_fault::bad_symbol, line_no, c + 1, msg.str());
      }
    }
    if (data_lines.empty()) {
      width = line.size();
    } else if (line.size() != width) {
      std::ostringstream msg;
      msg << "ragged rows: line " << line_no << " has " << line.size()
          << " symbols, expected " << width;
      throw parse_error(parse_fault::ragged_rows, line_no, 0, msg.str());
    }
    data_lines.push_back(line);
  }
  if (data_lines.empty())
    throw parse_error(parse_fault::empty_input, 0, 0, "empty input: no data lines");
  symbol_matrix<MaxSymbol> m(data_lines.size(), width);
  for (std::size_t r = 0; r < data_lines.size(); ++r)
    for (std::size_t c = 0; c < width; ++c)
      m.set(r, c, static_cast<std::uint8_t>(data_lines[r][c] - '0'));
  return m;
}

inline genotype_matrix parse_genotype_matrix(std::istream& in) {
  return parse_symbol_matrix<2>(in);
}

inline genotype_matrix parse_genotype_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_symbol_matrix<2>(in);
}

inline haplotype_matrix parse_haplotype_matrix(std::istream& in) {
  return parse_symbol_matrix<1>(in);
}

inline haplotype_matrix parse_haplotype_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_symbol_matrix<1>(in);
}

// Subset of {00,01,10,11}: which two-column patterns occur, or are forced,
// at a column pair. Display order is fixed to 00,01,10,11.
class induced_set {
 public:
  constexpr induced_set() = default;

  static constexpr induced_set all() { return induced_set(0b1111); }

  constexpr void insert(int x, int y) { bits_ |= bit(x, y); }
  constexpr bool contains(int x, int y) const { return (bits_ & bit(x, y)) != 0; }
  constexpr bool subset_of(induced_set other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned bits() const { return bits_; }

  constexpr bool operator==(const induced_set&) const = default;

  std::string to_string() const {
    static constexpr const char* names[4] = {"00", "01", "10", "11"};
    std::string s = "{";
    for (int i = 0; i < 4; ++i) {
      if (!(bits_ & (1u << i))) continue;
      if (s.size() > 1) s += ",";
      s += names[i];
    }
    return s + "}";
  }

 private:
  explicit constexpr induced_set(unsigned bits) : bits_(bits) {}
  static constexpr unsigned bit(int x, int y) { return 1u << (x * 2 + y); }
  unsigned bits_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const induced_set& s) {
  return os << s.to_string();
}

namespace detail {

inline void check_column(std::size_t c, std::size_t cols) {
  if (c >= cols) {
    std::ostringstream msg;
    msg << "bad column index " << c + 1 << " for a matrix with " << cols
        << " columns";
    throw error(msg.str());
  }
}

}  // namespace detail

// Per-column bitmasks over rows (one bit per row); the workhorse behind
// pairwise induced-set queries.
class genotype_column_masks {
 public:
  explicit genotype_column_masks(const genotype_matrix& a)
      : cols_(a.cols()),
        words_((a.rows() + 63) / 64),
        masks_(3 * a.cols() * words_, 0) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      auto cells = a.row(r);
      for (std::size_t c = 0; c < cols_; ++c)
        word(cells[c], c, r / 64) |= std::uint64_t{1} << (r % 64);
    }
  }

  std::size_t cols() const { return cols_; }

  induced_set induced(std::size_t i, std::size_t j) const {
    induced_set s;
    const std::uint64_t* ti = slice(2, i);
    const std::uint64_t* tj = slice(2, j);
    for (int x = 0; x < 2; ++x) {
      const std::uint64_t* xi = slice(x, i);
      for (int y = 0; y < 2; ++y) {
        const std::uint64_t* yj = slice(y, j);
        for (std::size_t w = 0; w < words_; ++w) {
          if ((xi[w] & (yj[w] | tj[w])) | (ti[w] & yj[w])) {
            s.insert(x, y);
            break;
          }
        }
      }
    }
    return s;
  }

  bool columns_equal(std::size_t i, std::size_t j) const {
    for (int v = 0; v < 2; ++v) {
      const std::uint64_t* vi = slice(v, i);
      const std::uint64_t* vj = slice(v, j);
      if (!std::equal(vi, vi + words_, vj)) return false;
    }
    return true;  // zero and one masks match, so the 2-mask matches too
  }

 private:
  const std::uint64_t* slice(int value, std::size_t c) const {
    return masks_.data() + (static_cast<std::size_t>(value) * cols_ + c) * words_;
  }
  std::uint64_t& word(int value, std::size_t c, std::size_t w) {
    return masks_[(static_cast<std::size_t>(value) * cols_ + c) * words_ + w];
  }

  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> masks_;
};

class haplotype_column_masks {
 public:
  explicit haplotype_column_masks(const haplotype_matrix& b)
      : cols_(b.cols()),
        words_((b.rows() + 63) / 64),
        masks_(2 * b.cols() * words_, 0) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      auto cells = b.row(r);
      for (std::size_t c = 0; c < cols_; ++c)
        masks_[(static_cast<std::size_t>(cells[c]) * cols_ + c) * words_ + r / 64] |=
            std::uint64_t{1} << (r % 64);
    }
  }

  std::size_t cols() const { return cols_; }

  induced_set induced(std::size_t i, std::size_t j) const {
    induced_set s;
    for (int x = 0; x < 2; ++x) {
      const std::uint64_t* xi = slice(x, i);
      for (int y = 0; y < 2; ++y) {
        const std::uint64_t* yj = slice(y, j);
        for (std::size_t w = 0; w < words_; ++w) {
          if (xi[w] & yj[w]) {
            s.insert(x, y);
            break;
          }
        }
      }
    }
    return s;
  }

 private:
  const std::uint64_t* slice(int value, std::size_t c) const {
    return masks_.data() + (static_cast<std::size_t>(value) * cols_ + c) * words_;
  }

  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> masks_;
};

// ind^B(i,j): the two-column strings that actually appear in B.
inline induced_set induced_set_haplotypes(const haplotype_matrix& b,
                                          std::size_t i, std::size_t j) {
  detail::check_column(i, b.cols());
  detail::check_column(j, b.cols());
  induced_set s;
  for (std::size_t r = 0; r < b.rows(); ++r) s.insert(b.at(r, i), b.at(r, j));
  return s;
}

// ind^A(i,j): strings appearing or forced by a 2-entry on one side. A row
// with 2s at both columns contributes nothing.
inline induced_set induced_set_genotypes(const genotype_matrix& a,
                                         std::size_t i, std::size_t j) {
  detail::check_column(i, a.cols());
  detail::check_column(j, a.cols());
  if (i == j) throw error("induced set of a genotype matrix needs two distinct columns");
  induced_set s;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint8_t gi = a.at(r, i);
    std::uint8_t gj = a.at(r, j);
    if (gi == 2 && gj == 2) continue;
    if (gi == 2) {
      s.insert(0, gj);
      s.insert(1, gj);
    } else if (gj == 2) {
      s.insert(gi, 0);
      s.insert(gi, 1);
    } else {
      s.insert(gi, gj);
    }
  }
  return s;
}

// h and h2 explain g: 0/1 sites copied, 2 sites carry one 0 and one 1.
inline bool explains(std::span<const std::uint8_t> h,
                     std::span<const std::uint8_t> h2,
                     std::span<const std::uint8_t> g) {
  if (h.size() != h2.size() || h.size() != g.size())
    throw error("length mismatch between haplotypes and genotype");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 2) {
      if (h[i] == h2[i]) return false;
    } else {
      if (h[i] != g[i] || h2[i] != g[i]) return false;
    }
  }
  return true;
}

// Rows 2i and 2i+1 of b explain row i of a.
inline bool explains_matrix(const haplotype_matrix& b, const genotype_matrix& a) {
  if (b.rows() != 2 * a.rows() || b.cols() != a.cols()) {
    std::ostringstream msg;
    msg << "shape mismatch: " << b.rows() << "x" << b.cols()
        << " haplotypes cannot explain " << a.rows() << "x" << a.cols()
        << " genotypes";
    throw error(msg.str());
  }
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!explains(b.row(2 * r), b.row(2 * r + 1), a.row(r))) return false;
  return true;
}

enum class resolution_kind { equal, unequal };

// For a pair heterozygous at both i and j: equal when the pair places the
// same value at both sites, unequal otherwise.
inline resolution_kind classify_resolution(std::span<const std::uint8_t> h,
                                           std::span<const std::uint8_t> h2,
                                           std::size_t i, std::size_t j) {
  if (h.size() != h2.size()) throw error("length mismatch between haplotypes");
  detail::check_column(i, h.size());
  detail::check_column(j, h.size());
  for (std::size_t site : {i, j}) {
    if (h[site] == h2[site]) {
      std::ostringstream msg;
      msg << "site " << site + 1 << " is not heterozygous for the pair";
      throw error(msg.str());
    }
  }
  return h[i] == h[j] ? resolution_kind::equal : resolution_kind::unequal;
}

// B admits a perfect phylogeny iff no column pair induces all four strings.
// Returns the lexicographically smallest violating pair.
inline std::optional<std::pair<std::size_t, std::size_t>> four_gamete_check(
    const haplotype_matrix& b) {
  haplotype_column_masks masks(b);
  for (std::size_t i = 0; i + 1 < b.cols(); ++i)
    for (std::size_t j = i + 1; j < b.cols(); ++j)
      if (masks.induced(i, j) == induced_set::all()) return std::pair{i, j};
  return std::nullopt;
}

// Directed variant: no column pair may induce all of {01,10,11}. Same as
// the four-gamete check with an all-zero row appended.
inline std::optional<std::pair<std::size_t, std::size_t>> three_gamete_check(
    const haplotype_matrix& b) {
  haplotype_column_masks masks(b);
  for (std::size_t i = 0; i + 1 < b.cols(); ++i)
    for (std::size_t j = i + 1; j < b.cols(); ++j) {
      induced_set s = masks.induced(i, j);
      if (s.contains(0, 1) && s.contains(1, 0) && s.contains(1, 1))
        return std::pair{i, j};
    }
  return std::nullopt;
}

// Columns complemented by the undirected-to-directed reduction.
struct flip_set {
  std::vector<std::size_t> columns;  // ascending

  bool contains(std::size_t c) const {
    return std::binary_search(columns.begin(), columns.end(), c);
  }
  bool operator==(const flip_set&) const = default;
};

struct dpph_reduction {
  genotype_matrix matrix;
  flip_set flips;
};

// Complements every column whose topmost non-2 entry is 1 (0 and 1 swap,
// 2 stays). All-2 columns are never flipped.
inline dpph_reduction pph_to_dpph(const genotype_matrix& a) {
  dpph_reduction out{a, {}};
  for (std::size_t c = 0; c < a.cols(); ++c) {
    std::uint8_t top = 2;
    for (std::size_t r = 0; r < a.rows() && top == 2; ++r) top = a.at(r, c);
    if (top != 1) continue;
    out.flips.columns.push_back(c);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      std::uint8_t v = a.at(r, c);
      if (v != 2) out.matrix.set(r, c, static_cast<std::uint8_t>(1 - v));
    }
  }
  return out;
}

// Directed-to-undirected reduction.
inline genotype_matrix append_all_zero(const genotype_matrix& a) {
  genotype_matrix out(a.rows() + 1, a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
  return out;
}

// Inverse of the column complementation, applied to solver output.
inline haplotype_matrix unflip_haplotypes(const haplotype_matrix& b,
                                          const flip_set& flips) {
  for (std::size_t c : flips.columns) detail::check_column(c, b.cols());
  haplotype_matrix out = b;
  for (std::size_t c : flips.columns)
    for (std::size_t r = 0; r < b.rows(); ++r)
      out.set(r, c, static_cast<std::uint8_t>(1 - b.at(r, c)));
  return out;
}

}  // namespace ppht
