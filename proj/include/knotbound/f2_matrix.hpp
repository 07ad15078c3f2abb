#pragma once

// Rank of matrices over F2.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace knotbound {

/// A sparse column: sorted, duplicate-free row indices.
using F2Column = std::vector<std::uint32_t>;

namespace detail {

inline void xor_into(F2Column& target, const F2Column& other, F2Column& scratch) {
  scratch.clear();
  scratch.reserve(target.size() + other.size());
  std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace detail

/// Normalizes a column given as a multiset of rows: sorts and cancels pairs.
inline F2Column f2_column_from_entries(std::vector<std::uint32_t> rows) {
  std::sort(rows.begin(), rows.end());
  F2Column out;
  out.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size();) {
    std::size_t m = k;
    while (m < rows.size() && rows[m] == rows[k]) ++m;
    if ((m - k) % 2 == 1) out.push_back(rows[k]);
    k = m;
  }
  return out;
}

/// Rank by column reduction with a pivot table keyed on the lowest
/// (largest) row. Columns are processed sparsest first.
inline std::size_t f2_rank_sparse(std::vector<F2Column> columns) {
  std::vector<std::size_t> order(columns.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return columns[a].size() < columns[b].size();
  });
  std::unordered_map<std::uint32_t, std::size_t> pivot_of_low;
  pivot_of_low.reserve(columns.size());
  F2Column scratch;
  std::size_t rank = 0;
  for (std::size_t idx : order) {
    F2Column& col = columns[idx];
    while (!col.empty()) {
      auto it = pivot_of_low.find(col.back());
      if (it == pivot_of_low.end()) break;
      detail::xor_into(col, columns[it->second], scratch);
    }
    if (!col.empty()) {
      pivot_of_low.emplace(col.back(), idx);
      ++rank;
    }
  }
  return rank;
}

/// Rank by Gaussian elimination on bit-packed rows.
inline std::size_t f2_rank_dense(const std::vector<F2Column>& columns, std::size_t rows) {
  const std::size_t cols = columns.size();
  if (rows == 0 || cols == 0) return 0;
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> m(rows * words, 0);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::uint32_t r : columns[c]) m[r * words + c / 64] ^= std::uint64_t{1} << (c % 64);

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t pivot = rank;
    while (pivot < rows && !(m[pivot * words + w] & bit)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(m.begin() + pivot * words, m.begin() + (pivot + 1) * words,
                       m.begin() + rank * words);
    }
    const std::uint64_t* prow = &m[rank * words];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint64_t* row = &m[r * words];
      if (row[w] & bit)
        for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
    }
    ++rank;
  }
  return rank;
}

/// Picks the dense route when the bit matrix stays small.
inline std::size_t f2_rank(std::vector<F2Column> columns, std::size_t rows) {
  constexpr std::size_t kDenseBitLimit = std::size_t{1} << 22;
  if (rows * columns.size() <= kDenseBitLimit) return f2_rank_dense(columns, rows);
  return f2_rank_sparse(std::move(columns));
}

}  // namespace knotbound
