#pragma once

// Hat knot Floer homology from a grid diagram, via the fully blocked
// ("tilde") complex: generators are all n! states, the differential counts
// empty rectangles avoiding every X and O. Its homology is HFK-hat tensored
// with (n-1) copies of a two-dimensional space supported in bigradings
// (0,0) and (-1,-1), which tilde_to_hat divides back out.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "knotbound/error.hpp"
#include "knotbound/f2_matrix.hpp"
#include "knotbound/grid.hpp"
#include "knotbound/hfk_table.hpp"

namespace knotbound {

/// Thrown when tilde dimensions are not a multiple of (1 + q^-1 t^-1)^(n-1).
class NotDivisibleError : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

struct TildeOptions {
  int max_grid = 10;
  bool check_d_squared = true;
  unsigned threads = 1;  ///< 0 picks the hardware concurrency
};

struct BigradedDims {
  std::map<Bigrading, long long> dims;
  int n = 0;

  long long total() const {
    long long s = 0;
    for (const auto& [g, d] : dims) s += d;
    return s;
  }
};

struct TildeStats {
  std::size_t states = 0;
  std::size_t differential_terms = 0;
};

namespace detail {

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

/// Lexicographic rank of a permutation of 0..n-1.
inline std::uint32_t perm_rank(const int* p, int n, const std::vector<std::uint32_t>& fact) {
  std::uint32_t used = 0;
  std::uint32_t rank = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t below = static_cast<std::uint32_t>(
        std::popcount(~used & ((1u << p[i]) - 1u)));
    rank += below * fact[n - 1 - i];
    used |= 1u << p[i];
  }
  return rank;
}

}  // namespace detail

/// Bigraded dimensions of the homology of the fully blocked grid complex.
inline BigradedDims tilde_homology(const GridDiagram& g, const TildeOptions& opt = {},
                                   TildeStats* stats = nullptr) {
  const int n = g.n;
  if (n > opt.max_grid) {
    throw LimitError("grid size " + std::to_string(n) + " exceeds the limit " +
                     std::to_string(opt.max_grid));
  }
  if (n > 12) throw LimitError("grid size " + std::to_string(n) + " is beyond desk scale");

  const GridGeometry geo(g);
  const std::uint32_t count = static_cast<std::uint32_t>(detail::factorial(n));
  std::vector<std::uint32_t> fact(n + 1);
  for (int k = 0; k <= n; ++k) fact[k] = static_cast<std::uint32_t>(detail::factorial(k));

  // Enumerate states in lexicographic order and grade them.
  std::vector<std::uint8_t> perms(static_cast<std::size_t>(count) * n);
  std::vector<std::int16_t> mu(count);
  std::vector<std::int16_t> alex(count);
  {
    std::vector<int> p(n);
    for (int k = 0; k < n; ++k) p[k] = k;
    for (std::uint32_t s = 0; s < count; ++s) {
      for (int k = 0; k < n; ++k) perms[static_cast<std::size_t>(s) * n + k] = p[k];
      const auto [m, a] = geo.gradings(p.data());
      mu[s] = static_cast<std::int16_t>(m);
      alex[s] = static_cast<std::int16_t>(a);
      std::next_permutation(p.begin(), p.end());
    }
  }

  // Group by Alexander grading, then Maslov grading.
  std::map<int, std::map<int, std::vector<std::uint32_t>>> blocks;
  std::vector<std::uint32_t> local(count);
  for (std::uint32_t s = 0; s < count; ++s) {
    auto& members = blocks[alex[s]][mu[s]];
    local[s] = static_cast<std::uint32_t>(members.size());
    members.push_back(s);
  }

  struct BlockResult {
    std::map<int, long long> dims;  // by Maslov grading
    std::size_t terms = 0;
    std::exception_ptr error;
  };
  std::vector<int> block_keys;
  for (const auto& [a, _] : blocks) block_keys.push_back(a);
  std::vector<BlockResult> results(block_keys.size());

  auto run_block = [&](std::size_t bi) {
    BlockResult& out = results[bi];
    try {
      const int a = block_keys[bi];
      const auto& by_mu = blocks.at(a);
      std::map<int, std::vector<F2Column>> diff;  // differential out of C_mu
      std::vector<int> p(n);
      std::vector<std::uint32_t> entries;
      for (const auto& [m, members] : by_mu) {
        auto& cols = diff[m];
        cols.reserve(members.size());
        for (std::uint32_t s : members) {
          for (int k = 0; k < n; ++k) p[k] = perms[static_cast<std::size_t>(s) * n + k];
          entries.clear();
          geo.for_each_rectangle(p.data(), [&](int i, int j, int coeff) {
            if (coeff == 0) return;
            std::swap(p[i], p[j]);
            const std::uint32_t t = detail::perm_rank(p.data(), n, fact);
            std::swap(p[i], p[j]);
            if (mu[t] != m - 1 || alex[t] != a) {
              throw ConsistencyError("rectangle does not lower Maslov grading by one");
            }
            entries.push_back(local[t]);
          });
          out.terms += entries.size();
          cols.push_back(f2_column_from_entries(entries));
        }
      }
      if (opt.check_d_squared) {
        for (const auto& [m, cols] : diff) {
          auto below = diff.find(m - 1);
          if (below == diff.end()) continue;
          for (const auto& col : cols) {
            entries.clear();
            for (std::uint32_t r : col) {
              const auto& c2 = below->second[r];
              entries.insert(entries.end(), c2.begin(), c2.end());
            }
            if (!f2_column_from_entries(entries).empty()) {
              throw ConsistencyError("differential squared is nonzero in Alexander grading " +
                                     std::to_string(a));
            }
          }
        }
      }
      std::map<int, std::size_t> rank;
      for (auto& [m, cols] : diff) {
        auto target = by_mu.find(m - 1);
        const std::size_t rows = target == by_mu.end() ? 0 : target->second.size();
        rank[m] = rows == 0 ? 0 : f2_rank(std::move(cols), rows);
      }
      for (const auto& [m, members] : by_mu) {
        const std::size_t r_out = rank[m];
        auto up = rank.find(m + 1);
        const std::size_t r_in = up == rank.end() ? 0 : up->second;
        const long long d = static_cast<long long>(members.size()) -
                            static_cast<long long>(r_out) - static_cast<long long>(r_in);
        if (d < 0) throw ConsistencyError("negative homology dimension");
        if (d > 0) out.dims[m] = d;
      }
    } catch (...) {
      out.error = std::current_exception();
    }
  };

  unsigned threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : opt.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(block_keys.size()));
  if (threads <= 1) {
    for (std::size_t bi = 0; bi < block_keys.size(); ++bi) run_block(bi);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t bi = next++; bi < block_keys.size(); bi = next++) run_block(bi);
      });
    }
  }

  BigradedDims out;
  out.n = n;
  TildeStats st;
  st.states = count;
  for (std::size_t bi = 0; bi < block_keys.size(); ++bi) {
    if (results[bi].error) std::rethrow_exception(results[bi].error);
    for (const auto& [m, d] : results[bi].dims) out.dims[{m, block_keys[bi]}] = d;
    st.differential_terms += results[bi].terms;
  }
  if (stats) *stats = st;
  return out;
}

/// Divides the bigraded Poincare polynomial by (1 + q^-1 t^-1)^(n-1).
inline HfkTable tilde_to_hat(const BigradedDims& tilde) {
  if (tilde.n < 1) throw ValidationError("tilde dimensions lack a grid size");
  std::map<Bigrading, long long> p = tilde.dims;
  for (int round = 0; round + 1 < tilde.n; ++round) {
    // (1 + z) Q = P with z: (mu, A) -> (mu - 1, A - 1); work along each
    // diagonal mu - A = const from the top Alexander grading down.
    std::map<int, std::map<int, long long>> diagonals;  // mu - A -> A -> dim
    for (const auto& [g, d] : p) diagonals[g.mu - g.A][g.A] = d;
    std::map<Bigrading, long long> q;
    for (const auto& [diag, cells] : diagonals) {
      const int top = cells.rbegin()->first;
      const int bottom = cells.begin()->first;
      long long above = 0;
      for (int a = top; a >= bottom; --a) {
        auto it = cells.find(a);
        const long long pa = it == cells.end() ? 0 : it->second;
        const long long qa = pa - above;
        if (qa < 0) {
          throw NotDivisibleError("tilde dimensions are not divisible at (" +
                                  std::to_string(diag + a) + ", " + std::to_string(a) + ")");
        }
        if (qa > 0 && a != bottom) q[{diag + a, a}] = qa;
        if (a == bottom && qa != 0) {
          throw NotDivisibleError("nonzero remainder on diagonal mu - A = " +
                                  std::to_string(diag));
        }
        above = qa;
      }
    }
    p = std::move(q);
  }
  HfkTable tab;
  for (const auto& [g, d] : p) tab.set(g.mu, g.A, d);
  return tab;
}

/// tilde_homology followed by tilde_to_hat, with the odd-rank check.
inline HfkTable grid_hfk_hat(const GridDiagram& g, const TildeOptions& opt = {}) {
  HfkTable tab = tilde_to_hat(tilde_homology(g, opt));
  if (tab.total_dimension() % 2 != 1) {
    throw ConsistencyError("hat homology has even total dimension");
  }
  return tab;
}

}  // namespace knotbound
