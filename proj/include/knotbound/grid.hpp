#pragma once

// Grid diagrams and the combinatorics of the fully blocked grid complex.
//
// Coordinates: vertical grid lines are columns 0..n-1, horizontal lines are
// rows 0..n-1, both increasing to the right/up and wrapping around the
// torus. A marker listed for row r and column c sits in the unit square
// [c, c+1] x [r, r+1]. A state puts one point on each vertical line:
// point (c, perm[c]).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotbound/error.hpp"
#include "knotbound/text.hpp"

namespace knotbound {

inline constexpr int kMaxGridSupported = 16;

struct GridDiagram {
  int n = 0;
  std::vector<int> xs;  ///< 0-based column of the X marker in each row
  std::vector<int> os;  ///< 0-based column of the O marker in each row

  /// Validates permutations, marker collisions and single-component closure.
  static GridDiagram make(std::vector<int> xs, std::vector<int> os) {
    GridDiagram g;
    g.n = static_cast<int>(xs.size());
    g.xs = std::move(xs);
    g.os = std::move(os);
    g.validate();
    return g;
  }

  /// Cyclic translation of the rows on the torus.
  GridDiagram rows_rotated(int shift) const {
    std::vector<int> x(n), o(n);
    for (int r = 0; r < n; ++r) {
      const int to = ((r + shift) % n + n) % n;
      x[to] = xs[r];
      o[to] = os[r];
    }
    return make(std::move(x), std::move(o));
  }

  /// Cyclic translation of the columns on the torus.
  GridDiagram columns_rotated(int shift) const {
    std::vector<int> x(n), o(n);
    for (int r = 0; r < n; ++r) {
      x[r] = ((xs[r] + shift) % n + n) % n;
      o[r] = ((os[r] + shift) % n + n) % n;
    }
    return make(std::move(x), std::move(o));
  }

  std::string to_text() const {
    std::ostringstream os_;
    os_ << n << "\nX:";
    for (int c : xs) os_ << ' ' << c + 1;
    os_ << "\nO:";
    for (int c : os) os_ << ' ' << c + 1;
    os_ << '\n';
    return os_.str();
  }

 private:
  void validate() const {
    if (n < 1) throw ValidationError("grid size must be at least 1");
    if (n > kMaxGridSupported) {
      throw ValidationError("grid size " + std::to_string(n) + " exceeds the supported " +
                            std::to_string(kMaxGridSupported));
    }
    if (static_cast<int>(os.size()) != n) {
      throw ValidationError("X and O rows have different lengths");
    }
    auto check_perm = [this](const std::vector<int>& v, const char* what) {
      std::vector<bool> seen(n, false);
      for (int c : v) {
        if (c < 0 || c >= n || seen[c]) {
          throw ValidationError(std::string(what) + " columns are not a permutation of 1.." +
                                std::to_string(n));
        }
        seen[c] = true;
      }
    };
    check_perm(xs, "X");
    check_perm(os, "O");
    if (n >= 2) {
      for (int r = 0; r < n; ++r) {
        if (xs[r] == os[r]) {
          throw ValidationError("X and O collide in row " + std::to_string(r + 1));
        }
      }
    }
    // Follow the knot: along row r from O to X, then along that column to
    // the row holding its O.
    std::vector<int> o_row_of_col(n);
    for (int r = 0; r < n; ++r) o_row_of_col[os[r]] = r;
    int r = 0;
    int steps = 0;
    do {
      r = o_row_of_col[xs[r]];
      ++steps;
    } while (r != 0);
    if (steps != n) {
      throw ValidationError("grid describes a link with more than one component");
    }
  }
};

/// One intersection point per vertical line; `perm[c]` is the row.
struct GridState {
  std::vector<int> perm;
  friend bool operator==(const GridState&, const GridState&) = default;
};

/// Parses the `.grd` format: `n`, then `X: c1 .. cn`, then `O: c1 .. cn`
/// (1-based columns, one entry per row from the bottom), `#` comments.
inline GridDiagram parse_grid(std::string_view text) {
  int n = -1;
  std::vector<int> xs, os;
  bool have_x = false;
  bool have_o = false;
  detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    auto lt = detail::tokenize(line);
    if (lt.tokens.empty()) return;
    if (n < 0) {
      if (lt.tokens.size() != 1) {
        throw ParseError("expected the grid size on its own line", line_no,
                         lt.tokens[0].second);
      }
      const long v = detail::parse_int(lt.tokens[0].first, line_no, lt.tokens[0].second);
      if (v < 1 || v > kMaxGridSupported) {
        throw ParseError("grid size out of range", line_no, lt.tokens[0].second);
      }
      n = static_cast<int>(v);
      return;
    }
    auto [head, col] = lt.tokens[0];
    std::vector<int>* target = nullptr;
    if (head == "X:" || head == "X") {
      if (have_x) throw ParseError("duplicate X line", line_no, col);
      have_x = true;
      target = &xs;
    } else if (head == "O:" || head == "O") {
      if (have_o) throw ParseError("duplicate O line", line_no, col);
      have_o = true;
      target = &os;
    } else {
      throw ParseError("expected 'X:' or 'O:'", line_no, col);
    }
    std::size_t first = 1;
    if (lt.tokens.size() > 1 && lt.tokens[1].first == ":") first = 2;
    if (lt.tokens.size() - first != static_cast<std::size_t>(n)) {
      throw ParseError("expected " + std::to_string(n) + " columns", line_no, col);
    }
    for (std::size_t k = first; k < lt.tokens.size(); ++k) {
      const long v = detail::parse_int(lt.tokens[k].first, line_no, lt.tokens[k].second);
      if (v < 1 || v > n) {
        throw ParseError("column out of range 1.." + std::to_string(n), line_no,
                         lt.tokens[k].second);
      }
      target->push_back(static_cast<int>(v) - 1);
    }
  });
  if (n < 0 || !have_x || !have_o) throw ParseError("incomplete grid", 0, 0);
  return GridDiagram::make(std::move(xs), std::move(os));
}

/// Precomputed marker data for fast grading and rectangle queries.
class GridGeometry {
 public:
  explicit GridGeometry(const GridDiagram& g) : n_(g.n) {
    const int n = n_;
    full_ = n == 32 ? ~0u : ((1u << n) - 1u);
    std::vector<std::uint32_t> col_rows(n, 0);
    for (int r = 0; r < n; ++r) {
      col_rows[g.xs[r]] |= 1u << r;
      col_rows[g.os[r]] |= 1u << r;
    }
    span_.assign((n + 1) * (n + 1), 0);
    for (int i = 0; i <= n; ++i) {
      std::uint32_t acc = 0;
      for (int j = i; j <= n; ++j) {
        span_[i * (n + 1) + j] = acc;
        if (j < n) acc |= col_rows[j];
      }
    }
    // ne[c][row]: markers strictly up-right of lattice point (c,row);
    // sw[c][row]: strictly down-left.
    const int stride = n + 1;
    o_ne_.assign(stride * stride, 0);
    o_sw_.assign(stride * stride, 0);
    x_ne_.assign(stride * stride, 0);
    x_sw_.assign(stride * stride, 0);
    for (int c = 0; c <= n; ++c) {
      for (int row = 0; row <= n; ++row) {
        for (int r = 0; r < n; ++r) {
          if (g.os[r] >= c && r >= row) ++o_ne_[c * stride + row];
          if (g.os[r] < c && r < row) ++o_sw_[c * stride + row];
          if (g.xs[r] >= c && r >= row) ++x_ne_[c * stride + row];
          if (g.xs[r] < c && r < row) ++x_sw_[c * stride + row];
        }
      }
    }
    o_self_ = self_pairs(g.os);
    x_self_ = self_pairs(g.xs);
  }

  int n() const noexcept { return n_; }

  /// (Maslov, Alexander) of a state. M_O(x) = J(x,x) - 2J(x,O) + J(O,O) + 1
  /// with J symmetrized over strict north-east pairs; M_X likewise and
  /// A = (M_O - M_X - (n-1)) / 2.
  std::pair<int, int> gradings(const int* perm) const {
    const int stride = n_ + 1;
    int inv = 0;
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) inv += perm[a] < perm[b];
    int o_cross = 0;
    int x_cross = 0;
    for (int c = 0; c < n_; ++c) {
      const int k = c * stride + perm[c];
      o_cross += o_ne_[k] + o_sw_[k];
      x_cross += x_ne_[k] + x_sw_[k];
    }
    const int m_o = inv - o_cross + o_self_ + 1;
    const int m_x = inv - x_cross + x_self_ + 1;
    const int twice_a = m_o - m_x - (n_ - 1);
    if (twice_a % 2 != 0) {
      throw ConsistencyError("non-integral Alexander grading; grid is not a knot");
    }
    return {m_o, twice_a / 2};
  }

  /// Calls fn(i, j, coefficient) for every pair of columns i < j whose
  /// swap is reached by an empty rectangle; the coefficient is the number
  /// of empty rectangles mod 2 (0 only when both rectangles are empty).
  template <typename Fn>
  void for_each_rectangle(const int* perm, Fn&& fn) const {
    const int n = n_;
    for (int i = 0; i < n; ++i) {
      std::uint32_t between = 0;  // rows of points in columns strictly between
      const int pi = perm[i];
      for (int j = i + 1; j < n; ++j) {
        const int pj = perm[j];
        const std::uint32_t outside = full_ & ~between & ~(1u << pi) & ~(1u << pj);
        const std::uint32_t inner_markers = span(i, j);
        const std::uint32_t outer_markers = span(0, i) | span(j, n);
        bool first = false;
        bool second = false;
        if (pi < pj) {
          const std::uint32_t cells = range(pi, pj);     // rows [pi, pj)
          const std::uint32_t open = range(pi + 1, pj);  // rows (pi, pj)
          first = !(inner_markers & cells) && !(between & open);
          second = !(outer_markers & ~cells & full_) &&
                   !(outside & ~range(pi, pj + 1) & full_);
        } else {
          const std::uint32_t cells = range(pj, pi);
          const std::uint32_t open = range(pj + 1, pi);
          first = !(inner_markers & ~cells & full_) &&
                  !(between & ~range(pj, pi + 1) & full_);
          second = !(outer_markers & cells) && !(outside & open);
        }
        if (first || second) fn(i, j, (first != second) ? 1 : 0);
        between |= 1u << pj;
      }
    }
  }

 private:
  static int self_pairs(const std::vector<int>& cols) {
    // markers (cols[r], r): count strict north-east pairs.
    int s = 0;
    const int n = static_cast<int>(cols.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) s += cols[a] < cols[b] && a < b;
    return s;
  }

  std::uint32_t span(int i, int j) const { return span_[i * (n_ + 1) + j]; }

  static std::uint32_t range(int lo, int hi) {
    if (hi <= lo) return 0;
    const std::uint32_t upto_hi = hi >= 32 ? ~0u : ((1u << hi) - 1u);
    const std::uint32_t upto_lo = (1u << lo) - 1u;
    return upto_hi & ~upto_lo;
  }

  int n_;
  std::uint32_t full_ = 0;
  std::vector<std::uint32_t> span_;  // marker rows over columns [i, j)
  std::vector<int> o_ne_, o_sw_, x_ne_, x_sw_;
  int o_self_ = 0;
  int x_self_ = 0;
};

inline void validate_state(const GridDiagram& g, const GridState& x) {
  if (static_cast<int>(x.perm.size()) != g.n) {
    throw ValidationError("state size does not match the grid");
  }
  std::vector<bool> seen(g.n, false);
  for (int r : x.perm) {
    if (r < 0 || r >= g.n || seen[r]) throw ValidationError("state is not a permutation");
    seen[r] = true;
  }
}

/// (Maslov, Alexander) gradings of a state.
inline std::pair<int, int> gradings(const GridDiagram& g, const GridState& x) {
  validate_state(g, x);
  return GridGeometry(g).gradings(x.perm.data());
}

struct RectangleTarget {
  GridState target;
  int count = 0;  ///< number of empty rectangles mod 2
};

/// States reached from x by an empty rectangle: x-corners lower-left and
/// upper-right, no X, O or x-point in the interior. Every listed target is
/// checked to drop the Maslov grading by one and keep the Alexander grading.
inline std::vector<RectangleTarget> empty_rectangles(const GridDiagram& g,
                                                     const GridState& x) {
  validate_state(g, x);
  const GridGeometry geo(g);
  const auto [mu, a] = geo.gradings(x.perm.data());
  std::vector<RectangleTarget> out;
  geo.for_each_rectangle(x.perm.data(), [&](int i, int j, int coeff) {
    GridState y = x;
    std::swap(y.perm[i], y.perm[j]);
    const auto [mu_y, a_y] = geo.gradings(y.perm.data());
    if (mu_y != mu - 1 || a_y != a) {
      throw ConsistencyError("rectangle does not lower Maslov grading by one");
    }
    out.push_back({std::move(y), coeff});
  });
  return out;
}

}  // namespace knotbound
