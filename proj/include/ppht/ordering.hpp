#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppht/errors.hpp"
#include "ppht/matrix.hpp"

namespace ppht {

// The column order: i is greater than j when ind^A(i,j) avoids 01 entirely
// and the two column vectors differ. Precomputes an m*m answer table up to
// the given threshold; beyond that, queries are answered from the column
// masks directly.
class column_order {
 public:
  explicit column_order(const genotype_matrix& a,
                        std::size_t table_threshold = 4096)
      : masks_(a), cols_(a.cols()) {
    if (cols_ > table_threshold) return;
    table_.assign(cols_ * cols_, false);
    for (std::size_t i = 0; i < cols_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j) table_[i * cols_ + j] = compute(i, j);
    have_table_ = true;
  }

  std::size_t cols() const { return cols_; }
  const genotype_column_masks& masks() const { return masks_; }

  // i > j in the column order
  bool greater(std::size_t i, std::size_t j) const {
    detail::check_column(i, cols_);
    detail::check_column(j, cols_);
    if (i == j) throw error("column order needs two distinct column indices");
    return have_table_ ? table_[i * cols_ + j] : compute(i, j);
  }

 private:
  bool compute(std::size_t i, std::size_t j) const {
    return !masks_.induced(i, j).contains(0, 1) && !masks_.columns_equal(i, j);
  }

  genotype_column_masks masks_;
  std::size_t cols_;
  bool have_table_ = false;
  std::vector<bool> table_;
};

inline bool column_greater(const genotype_matrix& a, std::size_t i, std::size_t j) {
  detail::check_column(i, a.cols());
  detail::check_column(j, a.cols());
  if (i == j) throw error("column order needs two distinct column indices");
  genotype_column_masks masks(a);
  return !masks.induced(i, j).contains(0, 1) && !masks.columns_equal(i, j);
}

// Assignment of 2-carrying genotypes to owner columns. Rows without a
// 2-entry have no owner.
struct genotype_partition {
  std::vector<std::optional<std::size_t>> owner;   // per row
  std::vector<std::vector<std::size_t>> members;   // per column, rows ascending
};

// The owner of a row is the lowest-index column among the maximal (w.r.t.
// the column order) columns carrying a 2 in that row.
inline genotype_partition assign_genotypes(const genotype_matrix& a,
                                           const column_order& order) {
  genotype_partition part;
  part.owner.assign(a.rows(), std::nullopt);
  part.members.assign(a.cols(), {});
  std::vector<std::size_t> two_cols;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    two_cols.clear();
    auto cells = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (cells[c] == 2) two_cols.push_back(c);
    if (two_cols.empty()) continue;
    for (std::size_t j : two_cols) {
      bool maximal = true;
      for (std::size_t k : two_cols) {
        if (k != j && order.greater(k, j)) {
          maximal = false;
          break;
        }
      }
      if (maximal) {  // two_cols ascending, so the first maximal wins
        part.owner[r] = j;
        part.members[j].push_back(r);
        break;
      }
    }
  }
  return part;
}

inline genotype_partition assign_genotypes(const genotype_matrix& a) {
  return assign_genotypes(a, column_order(a));
}

}  // namespace ppht
