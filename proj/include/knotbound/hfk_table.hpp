#pragma once

// Bigraded dimension tables of hat knot Floer homology over F2, with the
// consistency checks used to certify transcribed data.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "knotbound/error.hpp"
#include "knotbound/laurent_poly.hpp"
#include "knotbound/text.hpp"

namespace knotbound {

/// (Maslov, Alexander) bigrading.
struct Bigrading {
  int mu = 0;
  int A = 0;
  friend auto operator<=>(const Bigrading&, const Bigrading&) = default;
};

class HfkTable;
struct VerificationReport;
VerificationReport verify_table(HfkTable& tab);

/// Sparse table d(mu, A) of positive dimensions; absent cells are zero.
class HfkTable {
 public:
  using Cells = std::map<Bigrading, long long>;

  HfkTable() = default;
  explicit HfkTable(Cells cells, std::string name = {}) : name_(std::move(name)) {
    for (const auto& [g, d] : cells) set(g.mu, g.A, d);
  }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const Cells& cells() const noexcept { return cells_; }
  bool empty() const noexcept { return cells_.empty(); }

  long long dim(int mu, int A) const {
    auto it = cells_.find({mu, A});
    return it == cells_.end() ? 0 : it->second;
  }

  void set(int mu, int A, long long d) {
    if (d < 0) throw ValidationError("negative dimension at (" + std::to_string(mu) +
                                     ", " + std::to_string(A) + ")");
    verified_ = false;
    if (d == 0) {
      cells_.erase({mu, A});
    } else {
      cells_[{mu, A}] = d;
    }
  }

  long long total_dimension() const {
    long long s = 0;
    for (const auto& [g, d] : cells_) s += d;
    return s;
  }

  int mu_min() const { return extreme([](const Bigrading& g) { return g.mu; }, true); }
  int mu_max() const { return extreme([](const Bigrading& g) { return g.mu; }, false); }
  int A_min() const { return extreme([](const Bigrading& g) { return g.A; }, true); }
  int A_max() const { return extreme([](const Bigrading& g) { return g.A; }, false); }

  /// Set only by verify_table; any mutation clears it.
  bool is_verified() const noexcept { return verified_; }

  /// Equality of the dimension data; names and flags are ignored.
  friend bool operator==(const HfkTable& a, const HfkTable& b) {
    return a.cells_ == b.cells_;
  }

 private:
  friend VerificationReport verify_table(HfkTable& tab);

  template <typename Fn>
  int extreme(Fn key, bool min) const {
    if (cells_.empty()) return 0;
    int best = key(cells_.begin()->first);
    for (const auto& [g, d] : cells_) {
      const int v = key(g);
      best = min ? std::min(best, v) : std::max(best, v);
    }
    return best;
  }

  Cells cells_;
  std::string name_;
  bool verified_ = false;
};

/// Graded Euler characteristic sum (-1)^mu d(mu, A) t^A.
inline IntLaurentPoly euler_characteristic(const HfkTable& tab) {
  IntLaurentPoly p;
  for (const auto& [g, d] : tab.cells()) {
    const bool odd = (g.mu % 2) != 0;
    p.add_term(g.A, BigInt(static_cast<long>(odd ? -d : d)));
  }
  return p;
}

struct SymmetryMismatch {
  Bigrading cell;
  long long dim = 0;
  Bigrading partner;
  long long partner_dim = 0;
};

struct SymmetryReport {
  bool pass = true;
  std::vector<SymmetryMismatch> mismatches;
};

/// Checks d(mu, A) = d(mu - 2A, -A) on every cell.
inline SymmetryReport check_symmetry(const HfkTable& tab) {
  SymmetryReport r;
  for (const auto& [g, d] : tab.cells()) {
    const Bigrading partner{g.mu - 2 * g.A, -g.A};
    const long long pd = tab.dim(partner.mu, partner.A);
    if (pd != d) r.mismatches.push_back({g, d, partner, pd});
  }
  // Absent partners of present cells are found above; nothing else can fail.
  r.pass = r.mismatches.empty();
  return r;
}

struct VerificationReport {
  bool parity_ok = false;
  bool symmetry_ok = false;
  bool euler_ok = false;
  long long total_dimension = 0;
  IntLaurentPoly euler;
  SymmetryReport symmetry;

  bool verified() const noexcept { return parity_ok && symmetry_ok && euler_ok; }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    if (!parity_ok) {
      out.push_back("parity: total dimension " + std::to_string(total_dimension) +
                    " is even");
    }
    if (!symmetry_ok) {
      for (const auto& m : symmetry.mismatches) {
        out.push_back("symmetry: d(" + std::to_string(m.cell.mu) + "," +
                      std::to_string(m.cell.A) + ")=" + std::to_string(m.dim) +
                      " but d(" + std::to_string(m.partner.mu) + "," +
                      std::to_string(m.partner.A) + ")=" +
                      std::to_string(m.partner_dim));
      }
    }
    if (!euler_ok) {
      out.push_back("euler: value at t=1 is " + euler.evaluate_at_one().get_str() +
                    ", expected +-1");
    }
    return out;
  }
};

/// Runs the parity, symmetry and Euler-characteristic checks and marks the
/// table verified iff all three pass.
inline VerificationReport verify_table(HfkTable& tab) {
  VerificationReport r;
  r.total_dimension = tab.total_dimension();
  r.parity_ok = r.total_dimension % 2 == 1;
  r.symmetry = check_symmetry(tab);
  r.symmetry_ok = r.symmetry.pass;
  r.euler = euler_characteristic(tab);
  const BigInt at_one = r.euler.evaluate_at_one();
  r.euler_ok = at_one == 1 || at_one == -1;
  tab.verified_ = r.verified();
  return r;
}

// ---------------------------------------------------------------------------
// .hfk CSV and JSON

/// Parses `.hfk` CSV: header `A,mu,dim`, one row per nonzero cell, `#`
/// comments. A `# name: <label>` comment sets the table name.
inline HfkTable parse_hfk_csv(std::string_view text) {
  HfkTable tab;
  bool header_seen = false;
  HfkTable::Cells cells;
  detail::for_each_line(text, [&](std::string_view raw, std::size_t line_no) {
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      std::string_view comment = line.substr(hash + 1);
      while (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
      if (comment.starts_with("name:")) {
        std::string_view v = comment.substr(5);
        while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\r')) v.remove_suffix(1);
        tab.set_name(std::string(v));
      }
      line = line.substr(0, hash);
    }
    const auto lt = detail::tokenize(line);
    if (lt.tokens.empty()) return;
    if (!header_seen) {
      if (lt.tokens.size() != 3 || lt.tokens[0].first != "A" ||
          lt.tokens[1].first != "mu" || lt.tokens[2].first != "dim") {
        throw ParseError("expected header 'A,mu,dim'", line_no, lt.tokens[0].second);
      }
      header_seen = true;
      return;
    }
    if (lt.tokens.size() != 3) {
      throw ParseError("expected 3 fields", line_no, lt.tokens[0].second);
    }
    const long A = detail::parse_int(lt.tokens[0].first, line_no, lt.tokens[0].second);
    const long mu = detail::parse_int(lt.tokens[1].first, line_no, lt.tokens[1].second);
    const long d = detail::parse_int(lt.tokens[2].first, line_no, lt.tokens[2].second);
    if (d <= 0) {
      throw ParseError("dimension must be positive", line_no, lt.tokens[2].second);
    }
    const Bigrading g{static_cast<int>(mu), static_cast<int>(A)};
    if (!cells.emplace(g, d).second) {
      throw ParseError("duplicate cell", line_no, lt.tokens[0].second);
    }
  });
  if (!header_seen) throw ParseError("missing header 'A,mu,dim'", 1, 1);
  for (const auto& [g, d] : cells) tab.set(g.mu, g.A, d);
  return tab;
}

inline std::string to_hfk_csv(const HfkTable& tab) {
  std::ostringstream os;
  if (!tab.name().empty()) os << "# name: " << tab.name() << '\n';
  os << "A,mu,dim\n";
  std::vector<std::pair<Bigrading, long long>> rows(tab.cells().begin(), tab.cells().end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::pair(a.first.A, a.first.mu) < std::pair(b.first.A, b.first.mu);
  });
  for (const auto& [g, d] : rows) os << g.A << ',' << g.mu << ',' << d << '\n';
  return os.str();
}

inline nlohmann::json to_json(const HfkTable& tab) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [g, d] : tab.cells()) cells.push_back({{"A", g.A}, {"mu", g.mu}, {"dim", d}});
  nlohmann::json j;
  j["name"] = tab.name();
  j["cells"] = std::move(cells);
  return j;
}

inline HfkTable hfk_from_json(const nlohmann::json& j) {
  try {
    HfkTable tab;
    tab.set_name(j.value("name", std::string{}));
    HfkTable::Cells cells;
    for (const auto& c : j.at("cells")) {
      const Bigrading g{c.at("mu").get<int>(), c.at("A").get<int>()};
      const long long d = c.at("dim").get<long long>();
      if (d <= 0) throw ValidationError("dimension must be positive");
      if (!cells.emplace(g, d).second) throw ValidationError("duplicate cell");
    }
    for (const auto& [g, d] : cells) tab.set(g.mu, g.A, d);
    return tab;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad table JSON: ") + e.what(), 0, 0);
  }
}

/// Accepts either the CSV or the JSON form.
inline HfkTable parse_hfk(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\t' ||
                             text[i] == '\r')) {
    ++i;
  }
  if (i < text.size() && text[i] == '{') {
    try {
      return hfk_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("bad table JSON: ") + e.what(), 0, 0);
    }
  }
  return parse_hfk_csv(text);
}

}  // namespace knotbound
