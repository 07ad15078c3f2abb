#pragma once

// Oriented planar-diagram (PD) codes for knots.
//
// A crossing is written `X a b c d`: `a` is the incoming under-strand, and
// the remaining labels follow counter-clockwise, so the under-strand runs
// a -> c and the over-strand joins b and d. The direction of the over-strand
// is not part of the syntax; it is recovered by tracing the knot and stored
// per crossing. With the under-strand pointing up, an over-strand running
// d -> b (left to right) makes a positive crossing.

#include <algorithm>
#include <array>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotbound/error.hpp"
#include "knotbound/text.hpp"

namespace knotbound {

class PDCode {
 public:
  struct Crossing {
    std::array<int, 4> slots{};
    bool over_b_to_d = false;

    int sign() const noexcept { return over_b_to_d ? -1 : +1; }
    int over_in_slot() const noexcept { return over_b_to_d ? 1 : 3; }
    int over_out_slot() const noexcept { return over_b_to_d ? 3 : 1; }
  };

  struct Occurrence {
    std::size_t crossing = 0;
    int slot = 0;
    friend bool operator==(const Occurrence&, const Occurrence&) = default;
  };

  /// Where an edge leaves a crossing (tail) and where it enters one (head).
  struct EdgeEnds {
    Occurrence tail;
    Occurrence head;
  };

  PDCode() = default;

  /// Validates labels and traces the single knot component. `order_hint`,
  /// when non-empty, lists edges that must appear in this cyclic order
  /// along the orientation.
  static PDCode from_crossings(std::vector<std::array<int, 4>> crossings,
                               std::span<const int> order_hint = {}) {
    PDCode pd;
    pd.crossings_.reserve(crossings.size());
    for (const auto& c : crossings) pd.crossings_.push_back(Crossing{c, false});
    pd.trace();
    if (!order_hint.empty()) pd.check_hint(order_hint);
    return pd;
  }

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  bool is_trivial_diagram() const noexcept { return crossings_.empty(); }

  /// Edge labels in orientation order, starting at the smallest label.
  const std::vector<int>& traversal() const noexcept { return traversal_; }

  std::vector<int> edges() const {
    std::vector<int> out = traversal_;
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_edge(int label) const { return ends_.contains(label); }

  int max_label() const { return ends_.empty() ? 0 : ends_.rbegin()->first; }

  const EdgeEnds& ends(int label) const {
    auto it = ends_.find(label);
    if (it == ends_.end()) {
      throw ValidationError("unknown edge label " + std::to_string(label));
    }
    return it->second;
  }

  int writhe() const {
    int w = 0;
    for (const auto& c : crossings_) w += c.sign();
    return w;
  }

  PDCode relabeled(const std::map<int, int>& mapping) const {
    std::vector<std::array<int, 4>> raw;
    raw.reserve(crossings_.size());
    for (const auto& c : crossings_) {
      std::array<int, 4> r{};
      for (int s = 0; s < 4; ++s) r[s] = mapping.at(c.slots[s]);
      raw.push_back(r);
    }
    return from_crossings(std::move(raw));
  }

  /// Serializes in the `.pd` text format, with an `O` line recording the
  /// traversal order.
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& c : crossings_) {
      os << "X " << c.slots[0] << ' ' << c.slots[1] << ' ' << c.slots[2] << ' '
         << c.slots[3] << '\n';
    }
    if (!traversal_.empty()) {
      os << 'O';
      for (int e : traversal_) os << ' ' << e;
      os << '\n';
    }
    return os.str();
  }

  friend bool operator==(const PDCode& a, const PDCode& b) {
    if (a.crossings_.size() != b.crossings_.size()) return false;
    for (std::size_t i = 0; i < a.crossings_.size(); ++i) {
      if (a.crossings_[i].slots != b.crossings_[i].slots) return false;
    }
    return true;
  }

 private:
  void trace() {
    std::map<int, std::vector<Occurrence>> occ;
    for (std::size_t i = 0; i < crossings_.size(); ++i) {
      for (int s = 0; s < 4; ++s) {
        const int label = crossings_[i].slots[s];
        if (label <= 0) {
          throw ValidationError("edge labels must be positive, got " +
                                std::to_string(label));
        }
        occ[label].push_back({i, s});
      }
    }
    for (const auto& [label, list] : occ) {
      if (list.size() != 2) {
        throw ValidationError("edge label " + std::to_string(label) +
                              " occurs " + std::to_string(list.size()) +
                              " times; every label must occur exactly twice");
      }
    }
    if (crossings_.empty()) return;

    std::vector<signed char> over_dir(crossings_.size(), -1);  // -1 unknown
    auto other = [&](int label, Occurrence o) {
      const auto& l = occ.at(label);
      return l[0] == o ? l[1] : l[0];
    };

    // Start on the outgoing under-strand of the first crossing.
    const Occurrence start{0, 2};
    Occurrence tail = start;
    std::vector<int> walk;
    std::map<int, EdgeEnds> ends;
    for (;;) {
      const int label = crossings_[tail.crossing].slots[tail.slot];
      if (ends.contains(label)) {
        throw ValidationError("edge " + std::to_string(label) +
                              " traversed twice; inconsistent orientation");
      }
      const Occurrence head = other(label, tail);
      ends[label] = {tail, head};
      walk.push_back(label);
      Occurrence next{head.crossing, 0};
      switch (head.slot) {
        case 0:
          next.slot = 2;
          break;
        case 2:
          throw ValidationError("edge " + std::to_string(label) +
                                " leaves crossings at both ends; orientation "
                                "conflict");
        default: {
          const signed char dir = head.slot == 1 ? 1 : 0;  // 1: b -> d
          auto& known = over_dir[head.crossing];
          if (known != -1 && known != dir) {
            throw ValidationError("inconsistent over-strand direction at crossing " +
                                  std::to_string(head.crossing + 1));
          }
          known = dir;
          next.slot = head.slot == 1 ? 3 : 1;
        }
      }
      if (next == start) break;
      tail = next;
    }
    if (walk.size() != occ.size()) {
      throw ValidationError("diagram has more than one component (" +
                            std::to_string(walk.size()) + " of " +
                            std::to_string(occ.size()) +
                            " edges reached); links are not supported");
    }
    for (std::size_t i = 0; i < crossings_.size(); ++i) {
      crossings_[i].over_b_to_d = over_dir[i] == 1;
    }
    const auto smallest = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), smallest, walk.end());
    traversal_ = std::move(walk);
    ends_ = std::move(ends);
  }

  void check_hint(std::span<const int> hint) const {
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < traversal_.size(); ++i) pos[traversal_[i]] = i;
    for (int e : hint) {
      if (!pos.contains(e)) {
        throw ValidationError("orientation hint names unknown edge " +
                              std::to_string(e));
      }
    }
    // A cyclic sequence is respected iff positions wrap around at most once.
    std::size_t descents = 0;
    for (std::size_t i = 0; i < hint.size(); ++i) {
      const std::size_t a = pos[hint[i]];
      const std::size_t b = pos[hint[(i + 1) % hint.size()]];
      if (a == b && hint.size() > 1) {
        throw ValidationError("orientation hint repeats edge " +
                              std::to_string(hint[i]));
      }
      if (b <= a) ++descents;
    }
    if (hint.size() > 1 && descents > 1) {
      throw ValidationError(
          "orientation hint disagrees with the orientation traced from the "
          "crossings");
    }
  }

  std::vector<Crossing> crossings_;
  std::vector<int> traversal_;
  std::map<int, EdgeEnds> ends_;
};


/// Parses the `.pd` text format.
inline PDCode parse_pd(std::string_view text) {
  std::vector<std::array<int, 4>> crossings;
  std::vector<int> hint;
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> seen;

  detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto lt = detail::tokenize(line);
    if (lt.tokens.empty()) return;
    const auto [kw, kw_col] = lt.tokens.front();
    if (kw == "X") {
      if (lt.tokens.size() != 5) {
        throw ParseError("crossing needs exactly 4 edge labels",
                         line_no, kw_col);
      }
      std::array<int, 4> c{};
      for (int s = 0; s < 4; ++s) {
        const auto [tok, col] = lt.tokens[s + 1];
        const long v = detail::parse_int(tok, line_no, col);
        if (v <= 0 || v > 1'000'000'000) {
          throw ParseError("edge labels must be positive", line_no, col);
        }
        c[s] = static_cast<int>(v);
        auto& where = seen[c[s]];
        where.emplace_back(line_no, col);
        if (where.size() > 2) {
          throw ValidationError("line " + std::to_string(line_no) + ", column " +
                                std::to_string(col) + ": edge label " +
                                std::to_string(c[s]) +
                                " occurs more than twice");
        }
      }
      crossings.push_back(c);
    } else if (kw == "O") {
      for (std::size_t k = 1; k < lt.tokens.size(); ++k) {
        const auto [tok, col] = lt.tokens[k];
        hint.push_back(static_cast<int>(detail::parse_int(tok, line_no, col)));
      }
    } else {
      throw ParseError("unknown record '" + std::string(kw) + "'", line_no, kw_col);
    }
  });

  for (const auto& [label, where] : seen) {
    if (where.size() != 2) {
      throw ValidationError("line " + std::to_string(where.front().first) +
                            ": edge label " + std::to_string(label) +
                            " occurs only once");
    }
  }
  return PDCode::from_crossings(std::move(crossings), hint);
}

}  // namespace knotbound
