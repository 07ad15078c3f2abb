#pragma once

// Independent reference implementations used only by the tests. None of
// them share code paths with the library beyond basic value types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "knotbound/grid.hpp"
#include "knotbound/hfk_table.hpp"
#include "knotbound/laurent_poly.hpp"
#include "knotbound/pd_code.hpp"

namespace oracle {

using knotbound::BigInt;
using knotbound::IntLaurentPoly;

// ---------------------------------------------------------------------------
// Braids: PD code of a closure, and the Alexander polynomial of the closure
// from the reduced Burau representation,
//   det(I - psi(beta)) = Delta(t) (1 + t + ... + t^(k-1)).

/// Generators are +-i for sigma_i^(+-1), 1 <= i < strands.
inline knotbound::PDCode braid_closure_pd(int strands, const std::vector<int>& word) {
  std::vector<int> label(strands);
  for (int p = 0; p < strands; ++p) label[p] = p + 1;
  int next = strands + 1;
  std::vector<std::array<int, 4>> xs;
  for (int g : word) {
    const int i = std::abs(g) - 1;
    const int a = label[i], b = label[i + 1];
    const int c = next++, d = next++;  // top-left, top-right
    // Counter-clockwise corners: bottom-left a, bottom-right b, top-right d,
    // top-left c. The strand from a goes to d, the one from b to c.
    if (g > 0) {
      xs.push_back({b, d, c, a});
    } else {
      xs.push_back({a, b, d, c});
    }
    label[i] = c;
    label[i + 1] = d;
  }
  // Close up: the top label at each position is the bottom label there.
  std::map<int, int> rename;
  for (int p = 0; p < strands; ++p) rename[label[p]] = p + 1;
  for (auto& x : xs)
    for (int& e : x)
      if (auto it = rename.find(e); it != rename.end()) e = it->second;
  return knotbound::PDCode::from_crossings(xs);
}

using Matrix = std::vector<std::vector<IntLaurentPoly>>;

inline IntLaurentPoly mono(int e, long c = 1) { return IntLaurentPoly::monomial(e, BigInt(c)); }

inline Matrix identity(int n) {
  Matrix m(n, std::vector<IntLaurentPoly>(n));
  for (int i = 0; i < n; ++i) m[i][i] = mono(0);
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<IntLaurentPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] = c[i][j] + a[i][k] * b[k][j];
  return c;
}

/// Reduced Burau matrix of sigma_i^(+-1) on `strands` strands.
inline Matrix burau(int strands, int g) {
  const int n = strands - 1;
  const int i = std::abs(g) - 1;  // 0-based generator index
  Matrix m = identity(n);
  if (g > 0) {
    m[i][i] = mono(1, -1);
    if (i > 0) m[i][i - 1] = mono(1);
    if (i + 1 < n) m[i][i + 1] = mono(0);
  } else {
    m[i][i] = mono(-1, -1);
    if (i > 0) m[i][i - 1] = mono(0);
    if (i + 1 < n) m[i][i + 1] = mono(-1);
  }
  return m;
}

inline IntLaurentPoly determinant(Matrix m) {
  const std::size_t n = m.size();
  if (n == 0) return mono(0);
  if (n == 1) return m[0][0];
  IntLaurentPoly det;
  for (std::size_t col = 0; col < n; ++col) {
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<IntLaurentPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    IntLaurentPoly term = m[0][col] * determinant(minor);
    det = col % 2 == 0 ? det + term : det - term;
  }
  return det;
}

/// Exact division of Laurent polynomials; throws on a remainder.
inline IntLaurentPoly divide(IntLaurentPoly num, const IntLaurentPoly& den) {
  IntLaurentPoly q;
  const int dtop = den.max_exponent();
  const BigInt lead = den.coefficient(dtop);
  while (!num.is_zero()) {
    const int top = num.max_exponent();
    if (top - dtop < num.min_exponent() - den.min_exponent()) {
      throw std::runtime_error("inexact division");
    }
    const BigInt c = num.coefficient(top);
    if (c % lead != 0) throw std::runtime_error("inexact division");
    const IntLaurentPoly t = IntLaurentPoly::monomial(top - dtop, BigInt(c / lead));
    q = q + t;
    num = num - t * den;
  }
  return q;
}

inline IntLaurentPoly burau_alexander(int strands, const std::vector<int>& word) {
  Matrix b = identity(strands - 1);
  for (int g : word) b = multiply(b, burau(strands, g));
  Matrix a = identity(strands - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] = a[i][j] - b[i][j];
  IntLaurentPoly den;
  for (int e = 0; e < strands; ++e) den = den + mono(e);
  return divide(determinant(a), den).normalized();
}

/// Whether the braid closure has one component.
inline bool closure_is_knot(int strands, const std::vector<int>& word) {
  std::vector<int> perm(strands);
  for (int p = 0; p < strands; ++p) perm[p] = p;
  for (int g : word) std::swap(perm[std::abs(g) - 1], perm[std::abs(g)]);
  int p = 0, len = 0;
  do {
    p = perm[p];
    ++len;
  } while (p != 0);
  return len == strands;
}

// ---------------------------------------------------------------------------
// Grid gradings and rectangles straight from the definitions, in doubled
// coordinates: a state point (c, r) sits at (2c, 2r), a marker in cell
// (c, r) at (2c + 1, 2r + 1).

using Points = std::vector<std::pair<int, int>>;

inline long count_i(const Points& p, const Points& q) {
  long s = 0;
  for (auto [a1, a2] : p)
    for (auto [b1, b2] : q) s += (a1 < b1 && a2 < b2);
  return s;
}

/// 2 * M_P(x) = I(x,x) + I(x,x) - 2 (I(x,P) + I(P,x)) + 2 I(P,P) + 2.
inline int maslov(const Points& x, const Points& markers) {
  const long twice = 2 * count_i(x, x) - 2 * (count_i(x, markers) + count_i(markers, x)) +
                     2 * count_i(markers, markers) + 2;
  return static_cast<int>(twice / 2);
}

inline std::pair<int, int> gradings(const knotbound::GridDiagram& g, const std::vector<int>& perm) {
  Points x, os, xs;
  for (int c = 0; c < g.n; ++c) x.push_back({2 * c, 2 * perm[c]});
  for (int r = 0; r < g.n; ++r) {
    os.push_back({2 * g.os[r] + 1, 2 * r + 1});
    xs.push_back({2 * g.xs[r] + 1, 2 * r + 1});
  }
  const int mo = maslov(x, os);
  const int mx = maslov(x, xs);
  const int twice_a = mo - mx - (g.n - 1);
  if (twice_a % 2 != 0) throw std::runtime_error("half-integral Alexander grading");
  return {mo, twice_a / 2};
}

/// Empty rectangles from x, by enumerating the cells and lattice points of
/// each candidate rectangle on the torus. Keys are the target states, values
/// the number of empty rectangles.
inline std::map<std::vector<int>, int> empty_rectangles(const knotbound::GridDiagram& g,
                                                        const std::vector<int>& x) {
  const int n = g.n;
  std::vector<std::vector<bool>> marked(n, std::vector<bool>(n, false));  // [col][row]
  for (int r = 0; r < n; ++r) {
    marked[g.xs[r]][r] = true;
    marked[g.os[r]][r] = true;
  }
  std::map<std::vector<int>, int> out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      // Rectangle with lower-left corner (a, x[a]) and upper-right corner
      // (b, x[b]), both read cyclically.
      const int w = ((b - a) % n + n) % n;
      const int h = ((x[b] - x[a]) % n + n) % n;
      if (w == 0 || h == 0) continue;
      bool empty = true;
      for (int dc = 0; dc < w && empty; ++dc)
        for (int dr = 0; dr < h && empty; ++dr)
          if (marked[(a + dc) % n][(x[a] + dr) % n]) empty = false;
      for (int dc = 1; dc < w && empty; ++dc) {
        const int c = (a + dc) % n;
        for (int dr = 1; dr < h && empty; ++dr)
          if (x[c] == (x[a] + dr) % n) empty = false;
      }
      if (!empty) continue;
      std::vector<int> y = x;
      std::swap(y[a], y[b]);
      out[y] += 1;
    }
  }
  return out;
}

/// Every grid diagram of size n that describes a knot.
inline std::vector<knotbound::GridDiagram> all_knot_grids(int n) {
  std::vector<knotbound::GridDiagram> out;
  std::vector<int> xs(n), os(n);
  std::iota(xs.begin(), xs.end(), 0);
  do {
    std::iota(os.begin(), os.end(), 0);
    do {
      try {
        out.push_back(knotbound::GridDiagram::make(xs, os));
      } catch (const knotbound::ValidationError&) {
      }
    } while (std::next_permutation(os.begin(), os.end()));
  } while (std::next_permutation(xs.begin(), xs.end()));
  return out;
}

/// Rank over F2 by plain Gaussian elimination on a dense matrix.
inline std::size_t f2_rank(std::vector<std::vector<bool>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] != rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

/// Homology of the fully blocked complex from the definitions, by dense
/// linear algebra over all n! states.
inline std::map<knotbound::Bigrading, long long> tilde_homology(const knotbound::GridDiagram& g) {
  std::vector<std::vector<int>> states;
  std::vector<int> p(g.n);
  std::iota(p.begin(), p.end(), 0);
  do states.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, std::size_t> index;
  std::vector<knotbound::Bigrading> grade;
  for (std::size_t i = 0; i < states.size(); ++i) {
    index[states[i]] = i;
    auto [mu, a] = gradings(g, states[i]);
    grade.push_back({mu, a});
  }
  std::map<knotbound::Bigrading, std::vector<std::size_t>> by_grade;
  for (std::size_t i = 0; i < states.size(); ++i) by_grade[grade[i]].push_back(i);
  // rank of the differential out of each bigrading
  std::map<knotbound::Bigrading, std::size_t> rank_out;
  for (const auto& [gr, members] : by_grade) {
    const knotbound::Bigrading below{gr.mu - 1, gr.A};
    auto it = by_grade.find(below);
    if (it == by_grade.end()) {
      rank_out[gr] = 0;
      continue;
    }
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t k = 0; k < it->second.size(); ++k) row_of[it->second[k]] = k;
    std::vector<std::vector<bool>> m(it->second.size(), std::vector<bool>(members.size(), false));
    for (std::size_t c = 0; c < members.size(); ++c) {
      for (const auto& [y, count] : empty_rectangles(g, states[members[c]])) {
        const std::size_t j = index.at(y);
        if (grade[j].mu != gr.mu - 1 || grade[j].A != gr.A) {
          throw std::runtime_error("differential does not respect the gradings");
        }
        if (count % 2) m[row_of.at(j)][c] = !m[row_of.at(j)][c];
      }
    }
    rank_out[gr] = f2_rank(std::move(m));
  }
  std::map<knotbound::Bigrading, long long> out;
  for (const auto& [gr, members] : by_grade) {
    const knotbound::Bigrading above{gr.mu + 1, gr.A};
    const std::size_t in = rank_out.contains(above) ? rank_out[above] : 0;
    const long long d = static_cast<long long>(members.size() - rank_out[gr] - in);
    if (d) out[gr] = d;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pairings by exhaustive search.

/// Whether the generators, given as a list of bigradings, can all be paired
/// except one, using offsets (2n - 1, n) with 1 <= n <= max_n.
inline bool generator_pairing_exists(const std::vector<knotbound::Bigrading>& gens, int max_n) {
  const std::size_t N = gens.size();
  if (N % 2 == 0) return false;
  std::vector<bool> used(N, false);
  auto joins = [&](const knotbound::Bigrading& p, const knotbound::Bigrading& q) {
    for (const auto& [lo, hi] : {std::pair(p, q), std::pair(q, p)}) {
      const int n = hi.A - lo.A;
      if (n >= 1 && n <= max_n && hi.mu - lo.mu == 2 * n - 1) return true;
    }
    return false;
  };
  std::function<bool(bool)> go = [&](bool free_used) -> bool {
    std::size_t i = 0;
    while (i < N && used[i]) ++i;
    if (i == N) return free_used;
    used[i] = true;
    if (!free_used && go(true)) {
      used[i] = false;
      return true;
    }
    for (std::size_t j = i + 1; j < N; ++j) {
      if (used[j] || !joins(gens[i], gens[j])) continue;
      used[j] = true;
      const bool ok = go(free_used);
      used[j] = false;
      if (ok) {
        used[i] = false;
        return true;
      }
    }
    used[i] = false;
    return false;
  };
  return go(false);
}

inline std::vector<knotbound::Bigrading> generators(const knotbound::HfkTable& tab) {
  std::vector<knotbound::Bigrading> out;
  for (const auto& [g, d] : tab.cells())
    for (long long k = 0; k < d; ++k) out.push_back(g);
  return out;
}

/// Exhaustive search over cell multiplicities with memoization; feasible for
/// tables with a few dozen generators.
inline bool cell_pairing_exists(const knotbound::HfkTable& tab, int max_n) {
  std::vector<knotbound::Bigrading> cells;
  std::vector<int> dims;
  for (const auto& [g, d] : tab.cells()) {
    cells.push_back(g);
    dims.push_back(static_cast<int>(d));
  }
  const std::size_t m = cells.size();
  std::map<std::pair<std::vector<int>, bool>, bool> memo;
  std::function<bool(std::vector<int>&, bool)> go = [&](std::vector<int>& d, bool free_used) {
    std::size_t i = 0;
    while (i < m && d[i] == 0) ++i;
    if (i == m) return free_used;
    auto key = std::pair(d, free_used);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = false;
    --d[i];
    if (!free_used) ok = go(d, true);
    for (std::size_t j = i + 1; j < m && !ok; ++j) {
      if (d[j] == 0) continue;
      const auto& p = cells[i];
      const auto& q = cells[j];
      bool adj = false;
      for (const auto& [lo, hi] : {std::pair(p, q), std::pair(q, p)}) {
        const int n = hi.A - lo.A;
        adj = adj || (n >= 1 && n <= max_n && hi.mu - lo.mu == 2 * n - 1);
      }
      if (!adj) continue;
      --d[j];
      ok = go(d, free_used);
      ++d[j];
    }
    ++d[i];
    memo[key] = ok;
    return ok;
  };
  return go(dims, false);
}

/// Smallest max_n admitting a pairing, by exhaustive search.
inline int exhaustive_minmax(const knotbound::HfkTable& tab) {
  if (tab.total_dimension() == 1) return 0;
  for (int k = 1; k <= 64; ++k)
    if (cell_pairing_exists(tab, k)) return k;
  return -1;
}

/// Largest offset used by any pairing, by exhaustive search over
/// generator-level pairings. Small tables only.
inline int exhaustive_maxmax(const knotbound::HfkTable& tab) {
  const auto gens = generators(tab);
  const std::size_t N = gens.size();
  if (N == 1) return 0;
  int best = -1;
  std::vector<bool> used(N, false);
  std::function<void(bool, int)> go = [&](bool free_used, int cur) {
    std::size_t i = 0;
    while (i < N && used[i]) ++i;
    if (i == N) {
      if (free_used) best = std::max(best, cur);
      return;
    }
    used[i] = true;
    if (!free_used) go(true, cur);
    for (std::size_t j = i + 1; j < N; ++j) {
      if (used[j]) continue;
      for (const auto& [lo, hi] : {std::pair(gens[i], gens[j]), std::pair(gens[j], gens[i])}) {
        const int n = hi.A - lo.A;
        if (n >= 1 && hi.mu - lo.mu == 2 * n - 1) {
          used[j] = true;
          go(free_used, std::max(cur, n));
          used[j] = false;
        }
      }
    }
    used[i] = false;
  };
  go(false, 0);
  return best;
}

}  // namespace oracle
