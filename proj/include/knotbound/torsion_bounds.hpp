#pragma once

// Bounds on the maximal U-torsion order t(K) read off a hat table.
//
// The associated graded minus complex splits into one free rank-one summand
// and summands U^n: (i, j) -> (i + 2n - 1, j + n). Its hat reduction therefore
// pairs all generators of the table but one, each pair joining (i, j) to
// (i + 2n - 1, j + n). The true splitting is one such pairing, so the
// minimum over pairings of the largest n is a lower bound for t(K) and the
// maximum is an upper bound. Pairs change Maslov parity, which makes the
// problem a bipartite flow between grading classes.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "knotbound/error.hpp"
#include "knotbound/hfk_table.hpp"
#include "knotbound/max_flow.hpp"

namespace knotbound {

class UnverifiedTableError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// `count` parallel pairs from `low` to `high = low + (2n - 1, n)`.
struct CellPair {
  Bigrading low;
  Bigrading high;
  int n = 0;
  long long count = 0;
  friend bool operator==(const CellPair&, const CellPair&) = default;
};

struct Pairing {
  std::optional<Bigrading> free_cell;
  std::vector<CellPair> pairs;

  int max_n() const {
    int m = 0;
    for (const auto& p : pairs) m = std::max(m, p.n);
    return m;
  }
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

struct DiagonalCheck {
  int value = 0;
  long long green_dim = 0;          ///< d(0, 0)
  std::vector<Bigrading> red_cells; ///< blocking cells inside the table's box
};

struct TorsionBound {
  int value = 0;
  Pairing certificate;
};

struct TorsionInterval {
  int lower = 0;
  std::optional<int> upper;  ///< empty means unbounded
  std::string provenance;
};

namespace detail {

inline bool is_pair_offset(const Bigrading& low, const Bigrading& high, int n) {
  return n >= 1 && high.mu - low.mu == 2 * n - 1 && high.A - low.A == n;
}

/// Grading classes of a table and the admissible class-to-class pairs.
class PairingModel {
 public:
  struct Edge {
    int low;
    int high;
    int n;
  };

  explicit PairingModel(const HfkTable& tab) {
    for (const auto& [g, d] : tab.cells()) {
      cells_.push_back(g);
      dims_.push_back(d);
    }
    for (int a = 0; a < size(); ++a) {
      for (int b = 0; b < size(); ++b) {
        const int n = cells_[b].A - cells_[a].A;
        if (is_pair_offset(cells_[a], cells_[b], n)) edges_.push_back({a, b, n});
      }
    }
    std::sort(edges_.begin(), edges_.end(), [&](const Edge& x, const Edge& y) {
      const auto kx = std::tuple(x.n, cells_[x.low], cells_[x.high]);
      const auto ky = std::tuple(y.n, cells_[y.low], cells_[y.high]);
      return kx < ky;
    });
    if (!cells_.empty()) {
      const int span = tab.mu_max() - tab.mu_min();
      n_limit_ = std::max(1, (span + 1) / 2);
    }
  }

  int size() const { return static_cast<int>(cells_.size()); }
  const std::vector<Bigrading>& cells() const { return cells_; }
  const std::vector<long long>& dims() const { return dims_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int n_limit() const { return n_limit_; }

  /// Largest number of pairs using offsets n <= max_n; fills `pairs` with
  /// one optimal pairing when requested.
  long long max_pairs(const std::vector<long long>& dims, int max_n,
                      std::vector<CellPair>* pairs = nullptr) const {
    const int s = size();
    const int t = s + 1;
    MaxFlow flow(s + 2);
    for (int c = 0; c < s; ++c) {
      if (dims[c] == 0) continue;
      if (even(c)) {
        flow.add_edge(s, c, dims[c]);
      } else {
        flow.add_edge(c, t, dims[c]);
      }
    }
    std::vector<std::pair<int, std::size_t>> arc_of_edge;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.n > max_n || dims[ed.low] == 0 || dims[ed.high] == 0) continue;
      const int from = even(ed.low) ? ed.low : ed.high;
      const int to = even(ed.low) ? ed.high : ed.low;
      arc_of_edge.emplace_back(flow.add_edge(from, to, MaxFlow::kInfinite), e);
    }
    const long long value = flow.run(s, t);
    if (pairs) {
      pairs->clear();
      for (const auto& [arc, e] : arc_of_edge) {
        const long long f = flow.flow_on(arc);
        if (f == 0) continue;
        const Edge& ed = edges_[e];
        pairs->push_back({cells_[ed.low], cells_[ed.high], ed.n, f});
      }
    }
    return value;
  }

  /// Whether every generator but one can be paired with offsets <= max_n.
  bool feasible(const std::vector<long long>& dims, int max_n) const {
    long long total = 0;
    for (long long d : dims) total += d;
    if (total % 2 == 0) return false;
    return max_pairs(dims, max_n) == (total - 1) / 2;
  }

  /// The certificate with the smallest free cell in (mu, A) order; the
  /// pairs are listed by (n, low, high).
  std::optional<Pairing> certificate(std::vector<long long> dims, int max_n) const {
    for (int c = 0; c < size(); ++c) {
      if (dims[c] == 0) continue;
      --dims[c];
      long long total = 0;
      for (long long d : dims) total += d;
      std::vector<CellPair> pairs;
      if (total % 2 == 0 && max_pairs(dims, max_n, &pairs) == total / 2) {
        Pairing p;
        p.free_cell = cells_[c];
        p.pairs = std::move(pairs);
        return p;
      }
      ++dims[c];
    }
    return std::nullopt;
  }

 private:
  bool even(int c) const { return cells_[c].mu % 2 == 0; }

  std::vector<Bigrading> cells_;
  std::vector<long long> dims_;
  std::vector<Edge> edges_;
  int n_limit_ = 1;
};

inline void require_verified(const HfkTable& tab) {
  if (!tab.is_verified()) {
    throw UnverifiedTableError("table" + (tab.name().empty() ? "" : " " + tab.name()) +
                               " has not passed verification");
  }
}

inline void merge_pair(std::vector<CellPair>& pairs, const CellPair& extra) {
  for (auto& p : pairs) {
    if (p.low == extra.low && p.high == extra.high) {
      p.count += extra.count;
      return;
    }
  }
  pairs.push_back(extra);
  std::sort(pairs.begin(), pairs.end(), [](const CellPair& a, const CellPair& b) {
    return std::tuple(a.n, a.low, a.high) < std::tuple(b.n, b.low, b.high);
  });
}

}  // namespace detail

/// Whether the table's generators admit a pairing, leaving exactly one
/// generator unpaired, that uses only offsets n <= max_n.
inline bool pairing_feasible(const HfkTable& tab, int max_n) {
  const detail::PairingModel model(tab);
  return model.feasible(model.dims(), max_n);
}

/// Checks a pairing against a table without reference to how it was found.
inline bool is_valid_pairing(const HfkTable& tab, const Pairing& p, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::map<Bigrading, long long> used;
  for (const auto& pr : p.pairs) {
    if (!detail::is_pair_offset(pr.low, pr.high, pr.n)) {
      return fail("pair does not have offset (2n-1, n)");
    }
    if (pr.count <= 0) return fail("pair with nonpositive multiplicity");
    used[pr.low] += pr.count;
    used[pr.high] += pr.count;
  }
  if (!p.free_cell) return fail("no free generator");
  used[*p.free_cell] += 1;
  for (const auto& [g, d] : used) {
    if (tab.dim(g.mu, g.A) != d) {
      return fail("cell (" + std::to_string(g.mu) + "," + std::to_string(g.A) + ") used " +
                  std::to_string(d) + " times, dimension " +
                  std::to_string(tab.dim(g.mu, g.A)));
    }
  }
  for (const auto& [g, d] : tab.cells()) {
    if (!used.contains(g)) return fail("cell left uncovered");
  }
  return true;
}

/// The diagonal argument: generators at (0, 0) beyond the single free one
/// must pair, and pairing with n < value is blocked in both directions.
inline DiagonalCheck diagonal_check(const HfkTable& tab) {
  detail::require_verified(tab);
  DiagonalCheck out;
  out.green_dim = tab.dim(0, 0);
  if (out.green_dim < 2) return out;
  const int limit = (tab.mu_max() - tab.mu_min() + 1) / 2;
  int value = 1;
  for (int n = 1;; ++n) {
    if (tab.dim(2 * n - 1, n) != 0 || tab.dim(1 - 2 * n, -n) != 0) break;
    if (n > limit) {
      throw ConsistencyError("generators at (0,0) cannot pair with anything");
    }
    value = n + 1;
  }
  out.value = value;
  auto inside = [&](int mu, int A) {
    return mu >= tab.mu_min() && mu <= tab.mu_max() && A >= tab.A_min() && A <= tab.A_max();
  };
  for (int n = 1; n < value; ++n) {
    if (inside(1 - 2 * n, -n)) out.red_cells.push_back({1 - 2 * n, -n});
    if (inside(2 * n - 1, n)) out.red_cells.push_back({2 * n - 1, n});
  }
  std::sort(out.red_cells.begin(), out.red_cells.end());
  return out;
}

/// Minimum over admissible pairings of the largest offset used.
inline TorsionBound minmax_torsion_bound(const HfkTable& tab) {
  detail::require_verified(tab);
  const detail::PairingModel model(tab);
  TorsionBound out;
  if (tab.total_dimension() == 1) {
    out.certificate.free_cell = tab.cells().begin()->first;
    return out;
  }
  int lo = 1;
  int hi = model.n_limit();
  if (!model.feasible(model.dims(), hi)) {
    throw ConsistencyError("no admissible pairing exists; the table is corrupt");
  }
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (model.feasible(model.dims(), mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.value = lo;
  out.certificate = *model.certificate(model.dims(), lo);
  return out;
}

/// Maximum over admissible pairings of the largest offset used.
inline TorsionBound maxmax_torsion_bound(const HfkTable& tab) {
  detail::require_verified(tab);
  const detail::PairingModel model(tab);
  TorsionBound out;
  if (tab.total_dimension() == 1) {
    out.certificate.free_cell = tab.cells().begin()->first;
    return out;
  }
  std::vector<int> ns;
  for (const auto& e : model.edges()) ns.push_back(e.n);
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (auto n = ns.rbegin(); n != ns.rend(); ++n) {
    for (const auto& e : model.edges()) {
      if (e.n != *n) continue;
      std::vector<long long> dims = model.dims();
      --dims[e.low];
      --dims[e.high];
      if (auto rest = model.certificate(dims, model.n_limit())) {
        out.value = e.n;
        out.certificate = std::move(*rest);
        detail::merge_pair(out.certificate.pairs,
                           {model.cells()[e.low], model.cells()[e.high], e.n, 1});
        return out;
      }
    }
  }
  throw ConsistencyError("no admissible pairing exists; the table is corrupt");
}

/// Certified interval for t(K). `external_upper` carries diagram-level
/// facts such as an unknotting sequence of known length.
inline TorsionInterval torsion_interval(const HfkTable& tab,
                                        std::optional<int> external_upper = std::nullopt) {
  const DiagonalCheck diag = diagonal_check(tab);
  const TorsionBound lo = minmax_torsion_bound(tab);
  const TorsionBound hi = maxmax_torsion_bound(tab);
  TorsionInterval out;
  out.lower = std::max(lo.value, diag.value);
  out.upper = hi.value;
  std::ostringstream prov;
  prov << "lower = max(minmax " << lo.value << ", diagonal " << diag.value << "); upper = ";
  if (external_upper && *external_upper < hi.value) {
    out.upper = *external_upper;
    prov << "external " << *external_upper << " (maxmax " << hi.value << ")";
  } else {
    prov << "maxmax " << hi.value;
  }
  out.provenance = prov.str();
  if (out.lower > *out.upper) {
    throw ContradictionError("empty torsion interval [" + std::to_string(out.lower) + ", " +
                             std::to_string(*out.upper) + "]");
  }
  return out;
}

inline nlohmann::json to_json(const Bigrading& g) { return {{"mu", g.mu}, {"A", g.A}}; }

inline nlohmann::json to_json(const Pairing& p) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& pr : p.pairs) {
    pairs.push_back({{"low", to_json(pr.low)},
                     {"high", to_json(pr.high)},
                     {"n", pr.n},
                     {"count", pr.count}});
  }
  nlohmann::json j;
  j["free"] = p.free_cell ? to_json(*p.free_cell) : nlohmann::json(nullptr);
  j["pairs"] = std::move(pairs);
  return j;
}

}  // namespace knotbound
