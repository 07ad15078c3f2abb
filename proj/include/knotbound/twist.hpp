#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knotbound/error.hpp"
#include "knotbound/pd_code.hpp"

namespace knotbound {

enum class StrandDirection { Up, Down };

/// A disk crossed by 2l strands of a diagram. Edges are listed left to
/// right across the disk; `Up` strands pass through the disk from bottom to
/// top along the knot orientation.
struct TwistSite {
  std::vector<int> edges;
  std::vector<StrandDirection> directions;
  int sign = +1;  ///< +1 right-handed full twist, -1 left-handed
};

/// Inserts a full twist on the strands of `site`.
///
/// Each site edge is cut; the piece below the disk keeps the original label
/// and the piece above it gets a fresh one. Between them the braid
/// (s_1 s_2 ... s_{k-1})^k is inserted, with s_i a generator of handedness
/// `site.sign`; k = 2l, so k(k-1) crossings are added. A right-handed
/// generator puts the strand coming from the left on top. Crossings between
/// strands with equal directions get oriented sign `site.sign`; crossings
/// between opposite strands get the opposite oriented sign. The input is not
/// modified, and the same site can be reused on the result to stack a
/// second twist directly below the first.
inline PDCode insert_full_twist(const PDCode& pd, const TwistSite& site) {
  const std::size_t k = site.edges.size();
  if (site.directions.size() != k) {
    throw ValidationError("twist site needs one direction per edge");
  }
  if (site.sign != 1 && site.sign != -1) {
    throw ValidationError("twist sign must be +1 or -1");
  }
  if (k < 2 || k % 2 != 0) {
    throw ValidationError("twist site needs an even, positive number of strands");
  }
  const auto ups = std::count(site.directions.begin(), site.directions.end(),
                              StrandDirection::Up);
  if (static_cast<std::size_t>(ups) * 2 != k) {
    throw ValidationError("orientation imbalance: " + std::to_string(ups) +
                          " strands up and " + std::to_string(k - ups) +
                          " down; a null-homologous twist needs half of each");
  }
  std::set<int> distinct(site.edges.begin(), site.edges.end());
  if (distinct.size() != k) throw ValidationError("twist site repeats an edge");
  for (int e : site.edges) {
    if (!pd.has_edge(e)) throw ValidationError("unknown edge label " + std::to_string(e));
  }

  std::vector<std::array<int, 4>> raw;
  raw.reserve(pd.crossing_count() + k * (k - 1));
  for (const auto& c : pd.crossings()) raw.push_back(c.slots);

  int next_label = pd.max_label() + 1;
  std::vector<int> current(site.edges);  // segment label at each position
  std::vector<std::size_t> strand_at(k);
  for (std::size_t p = 0; p < k; ++p) strand_at[p] = p;

  for (std::size_t band = 0; band < k; ++band) {
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const int bl = current[i];
      const int br = current[i + 1];
      const int tl = next_label++;
      const int tr = next_label++;
      const bool left_up = site.directions[strand_at[i]] == StrandDirection::Up;
      const bool right_up = site.directions[strand_at[i + 1]] == StrandDirection::Up;

      // Endpoints counter-clockwise: BL, BR, TR, TL. The left strand joins
      // BL-TR, the right strand BR-TL.
      const std::array<int, 4> ring{bl, br, tr, tl};
      int under_in = 0;  // index into ring
      if (site.sign > 0) {
        under_in = right_up ? 1 : 3;  // right strand is under
      } else {
        under_in = left_up ? 0 : 2;  // left strand is under
      }
      raw.push_back({ring[under_in], ring[(under_in + 1) % 4],
                     ring[(under_in + 2) % 4], ring[(under_in + 3) % 4]});

      current[i] = tl;
      current[i + 1] = tr;
      std::swap(strand_at[i], strand_at[i + 1]);
    }
  }

  // The full twist is a pure braid, so each strand ends at its start position.
  for (std::size_t p = 0; p < k; ++p) {
    const int e = site.edges[p];
    const auto& ends = pd.ends(e);
    const auto top = site.directions[p] == StrandDirection::Up ? ends.head : ends.tail;
    raw[top.crossing][top.slot] = current[p];
  }
  return PDCode::from_crossings(std::move(raw));
}

/// One side of a face: an edge and whether walking the face boundary
/// counter-clockwise follows the edge's orientation.
struct FaceSide {
  int edge = 0;
  bool along = false;
};

/// Faces of the diagram, each listed counter-clockwise, assuming the PD code
/// is planar. Arriving at a crossing, the walk continues on the next edge
/// clockwise around the crossing, which keeps the face on its left.
inline std::vector<std::vector<FaceSide>> faces(const PDCode& pd) {
  std::vector<std::vector<FaceSide>> out;
  const auto& cs = pd.crossings();
  std::set<std::pair<std::size_t, int>> used;  // (crossing, slot) left from
  for (std::size_t c0 = 0; c0 < cs.size(); ++c0) {
    for (int s0 = 0; s0 < 4; ++s0) {
      if (used.contains({c0, s0})) continue;
      std::vector<FaceSide> face;
      std::size_t c = c0;
      int s = s0;
      while (used.insert({c, s}).second) {
        const int label = cs[c].slots[s];
        const auto& ends = pd.ends(label);
        const PDCode::Occurrence from{c, s};
        const PDCode::Occurrence to = ends.tail == from ? ends.head : ends.tail;
        face.push_back({label, ends.tail == from});
        c = to.crossing;
        s = (to.slot + 3) % 4;
      }
      out.push_back(std::move(face));
    }
  }
  return out;
}

/// A twist site on `strands` edges met by a simple path through distinct
/// faces, so that inserting the twist keeps the diagram planar. Edges are
/// ordered along the path; the first site found in a fixed search order is
/// returned.
inline std::optional<TwistSite> planar_twist_site(const PDCode& pd, std::size_t strands,
                                                  int sign = +1) {
  if (strands < 2 || strands % 2 != 0) return std::nullopt;
  const auto fs = faces(pd);
  // For each edge: the face on its left (walked along it) and on its right.
  std::map<int, std::pair<int, int>> sides;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    for (const auto& side : fs[f]) {
      auto& lr = sides.try_emplace(side.edge, -1, -1).first->second;
      (side.along ? lr.first : lr.second) = static_cast<int>(f);
    }
  }
  std::vector<std::vector<std::pair<int, int>>> adj(fs.size());  // (edge, next face)
  for (const auto& [e, lr] : sides) {
    if (lr.first < 0 || lr.second < 0 || lr.first == lr.second) continue;
    adj[lr.first].emplace_back(e, lr.second);
    adj[lr.second].emplace_back(e, lr.first);
  }

  TwistSite site;
  site.sign = sign;
  std::vector<bool> visited(fs.size(), false);
  std::size_t ups = 0;
  std::function<bool(int)> extend = [&](int f) -> bool {
    if (site.edges.size() == strands) return ups * 2 == strands;
    for (const auto& [e, g] : adj[f]) {
      if (visited[g]) continue;
      // Leaving the edge's left face means crossing it from below.
      const bool up = sides.at(e).first == f;
      if (up && (ups + 1) * 2 > strands) continue;
      if (!up && (site.edges.size() - ups + 1) * 2 > strands) continue;
      visited[g] = true;
      site.edges.push_back(e);
      site.directions.push_back(up ? StrandDirection::Up : StrandDirection::Down);
      ups += up;
      if (extend(g)) return true;
      ups -= up;
      site.edges.pop_back();
      site.directions.pop_back();
      visited[g] = false;
    }
    return false;
  };
  for (std::size_t f = 0; f < fs.size(); ++f) {
    visited.assign(fs.size(), false);
    visited[f] = true;
    if (extend(static_cast<int>(f))) return site;
  }
  return std::nullopt;
}

}  // namespace knotbound
