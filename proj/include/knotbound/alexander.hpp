#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "knotbound/error.hpp"
#include "knotbound/laurent_poly.hpp"
#include "knotbound/pd_code.hpp"

namespace knotbound {

namespace detail {

/// Dense polynomial in t over Z; index = exponent. Empty means zero.
using ZPoly = std::vector<BigInt>;

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ZPoly poly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

inline ZPoly poly_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

/// Exact division in Z[t]; throws if the divisor does not divide.
inline ZPoly poly_div_exact(ZPoly num, const ZPoly& den) {
  if (den.empty()) throw ConsistencyError("polynomial division by zero");
  if (num.empty()) return {};
  if (num.size() < den.size()) throw ConsistencyError("inexact polynomial division");
  ZPoly q(num.size() - den.size() + 1, BigInt(0));
  const BigInt& lead = den.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    BigInt& top = num[i + den.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
      throw ConsistencyError("inexact polynomial division");
    }
    BigInt c = top / lead;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    q[i] = c;
  }
  for (const auto& r : num) {
    if (r != 0) throw ConsistencyError("inexact polynomial division");
  }
  trim(q);
  return q;
}

/// Fraction-free (Bareiss) determinant over Z[t].
inline ZPoly bareiss_determinant(std::vector<std::vector<ZPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return {BigInt(1)};
  ZPoly prev{BigInt(1)};
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k].empty()) ++pivot;
    if (pivot == n) return {};
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        ZPoly v = poly_sub(poly_mul(m[k][k], m[i][j]), poly_mul(m[i][k], m[k][j]));
        m[i][j] = poly_div_exact(std::move(v), prev);
      }
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  ZPoly det = m[n - 1][n - 1];
  if (negate)
    for (auto& c : det) c = -c;
  return det;
}

}  // namespace detail

/// Alexander polynomial from the Wirtinger presentation: Fox derivatives of
/// the crossing relations give a square matrix over Z[t]; any first minor,
/// normalized to a symmetric exponent range with value +1 at t = 1, is the
/// polynomial.
inline IntLaurentPoly alexander_polynomial(const PDCode& pd) {
  const std::size_t n = pd.crossing_count();
  if (n == 0) return IntLaurentPoly(BigInt(1));

  // Arcs: the over-strand is unbroken, so b and d share an arc.
  std::map<int, int> parent;
  for (int e : pd.traversal()) parent[e] = e;
  auto find = [&](int e) {
    while (parent[e] != e) {
      parent[e] = parent[parent[e]];
      e = parent[e];
    }
    return e;
  };
  for (const auto& c : pd.crossings()) {
    const int a = find(c.slots[1]);
    const int b = find(c.slots[3]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::size_t> arc_index;
  for (int e : pd.traversal()) {
    const int root = find(e);
    if (!arc_index.contains(root)) {
      const std::size_t next = arc_index.size();
      arc_index[root] = next;
    }
  }
  if (arc_index.size() != n) {
    throw ConsistencyError("diagram has " + std::to_string(arc_index.size()) +
                           " arcs for " + std::to_string(n) + " crossings");
  }

  using detail::ZPoly;
  const ZPoly one_minus_t{BigInt(1), BigInt(-1)};
  const ZPoly t{BigInt(0), BigInt(1)};
  const ZPoly minus_one{BigInt(-1)};

  std::vector<std::vector<ZPoly>> m(n, std::vector<ZPoly>(n));
  auto add = [](ZPoly& cell, const ZPoly& v) {
    ZPoly sum(std::max(cell.size(), v.size()), BigInt(0));
    for (std::size_t i = 0; i < cell.size(); ++i) sum[i] += cell[i];
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
    detail::trim(sum);
    cell = std::move(sum);
  };
  for (std::size_t row = 0; row < n; ++row) {
    const auto& c = pd.crossings()[row];
    const std::size_t over = arc_index.at(find(c.slots[1]));
    const std::size_t in = arc_index.at(find(c.slots[0]));
    const std::size_t out = arc_index.at(find(c.slots[2]));
    add(m[row][over], one_minus_t);
    if (c.sign() > 0) {
      add(m[row][in], t);
      add(m[row][out], minus_one);
    } else {
      add(m[row][in], minus_one);
      add(m[row][out], t);
    }
  }

  std::vector<std::vector<ZPoly>> minor(n - 1, std::vector<ZPoly>(n - 1));
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) minor[i][j] = m[i][j];
  const ZPoly det = detail::bareiss_determinant(std::move(minor));

  IntLaurentPoly p;
  for (std::size_t e = 0; e < det.size(); ++e) p.add_term(static_cast<int>(e), det[e]);
  const BigInt at_one = p.evaluate_at_one();
  if (at_one != 1 && at_one != -1) {
    throw ValidationError("Alexander determinant evaluates to " + at_one.get_str() +
                          " at t = 1; the diagram is not a classical knot");
  }
  return p.normalized();
}

}  // namespace knotbound
