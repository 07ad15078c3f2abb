#pragma once

// Forward-chaining propagation of bounds on torsion order, Gordian distance
// and unknotting number, with a derivation record for every fact.
//
// Bounds narrow monotonically: a new torsion interval is intersected with
// the current one, Gordian and unknotting bounds keep the best value. Only
// facts that add information are stored, so derivation reaches a fixpoint.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "knotbound/error.hpp"

namespace knotbound {

inline const std::string kUnknot = "unknot";

enum class PropertyKind { DoublySlice, Amphicheiral, SmoothlySlice };

inline std::string to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::DoublySlice: return "doubly-slice";
    case PropertyKind::Amphicheiral: return "amphicheiral";
    case PropertyKind::SmoothlySlice: return "smoothly-slice";
  }
  return "?";
}

inline PropertyKind property_from_string(const std::string& s) {
  if (s == "doubly-slice") return PropertyKind::DoublySlice;
  if (s == "amphicheiral") return PropertyKind::Amphicheiral;
  if (s == "smoothly-slice") return PropertyKind::SmoothlySlice;
  throw ValidationError("unknown property '" + s + "'");
}

namespace fact {

struct TorsionInterval {
  std::string knot;
  int lower = 0;
  std::optional<int> upper;
  friend bool operator==(const TorsionInterval&, const TorsionInterval&) = default;
};
struct GordianLE {
  std::string a, b;
  int d = 0;
  friend bool operator==(const GordianLE&, const GordianLE&) = default;
};
struct GordianGE {
  std::string a, b;
  int d = 0;
  friend bool operator==(const GordianGE&, const GordianGE&) = default;
};
/// K and J differ by a null-homologous twist; `witness` names the knot
/// produced by the crossing-change rule.
struct NullHomologousTwist {
  std::string knot, target, witness;
  friend bool operator==(const NullHomologousTwist&, const NullHomologousTwist&) = default;
};
struct CrossingChange {
  std::string a, b;
  friend bool operator==(const CrossingChange&, const CrossingChange&) = default;
};
struct SEquivalent {
  std::string a, b;
  friend bool operator==(const SEquivalent&, const SEquivalent&) = default;
};
struct AlexanderOne {
  std::string knot;
  friend bool operator==(const AlexanderOne&, const AlexanderOne&) = default;
};
struct UnknottingLE {
  std::string knot;
  int u = 0;
  friend bool operator==(const UnknottingLE&, const UnknottingLE&) = default;
};
struct UnknottingGE {
  std::string knot;
  int u = 0;
  friend bool operator==(const UnknottingGE&, const UnknottingGE&) = default;
};
/// sum = summand # -summand
struct ConnectedSumWithInverse {
  std::string sum, summand;
  friend bool operator==(const ConnectedSumWithInverse&, const ConnectedSumWithInverse&) = default;
};
struct Property {
  std::string knot;
  PropertyKind kind = PropertyKind::DoublySlice;
  friend bool operator==(const Property&, const Property&) = default;
};

}  // namespace fact

using Fact = std::variant<fact::TorsionInterval, fact::GordianLE, fact::GordianGE,
                          fact::NullHomologousTwist, fact::CrossingChange, fact::SEquivalent,
                          fact::AlexanderOne, fact::UnknottingLE, fact::UnknottingGE,
                          fact::ConnectedSumWithInverse, fact::Property>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

inline std::string describe(const Fact& f) {
  return std::visit(
      Overloaded{
          [](const fact::TorsionInterval& x) {
            return "TorsionInterval(" + x.knot + ", [" + std::to_string(x.lower) + ", " +
                   (x.upper ? std::to_string(*x.upper) : std::string("inf")) + "])";
          },
          [](const fact::GordianLE& x) {
            return "GordianLE(" + x.a + ", " + x.b + ", " + std::to_string(x.d) + ")";
          },
          [](const fact::GordianGE& x) {
            return "GordianGE(" + x.a + ", " + x.b + ", " + std::to_string(x.d) + ")";
          },
          [](const fact::NullHomologousTwist& x) {
            return "NullHomologousTwist(" + x.knot + ", " + x.target + "; witness " +
                   x.witness + ")";
          },
          [](const fact::CrossingChange& x) {
            return "CrossingChange(" + x.a + ", " + x.b + ")";
          },
          [](const fact::SEquivalent& x) { return "SEquivalent(" + x.a + ", " + x.b + ")"; },
          [](const fact::AlexanderOne& x) { return "AlexanderOne(" + x.knot + ")"; },
          [](const fact::UnknottingLE& x) {
            return "UnknottingLE(" + x.knot + ", " + std::to_string(x.u) + ")";
          },
          [](const fact::UnknottingGE& x) {
            return "UnknottingGE(" + x.knot + ", " + std::to_string(x.u) + ")";
          },
          [](const fact::ConnectedSumWithInverse& x) {
            return "ConnectedSumWithInverse(" + x.sum + ", " + x.summand + ")";
          },
          [](const fact::Property& x) {
            return "Property(" + x.knot + ", " + to_string(x.kind) + ")";
          },
      },
      f);
}

inline std::vector<std::string> knots_of(const Fact& f) {
  return std::visit(
      Overloaded{
          [](const fact::TorsionInterval& x) { return std::vector{x.knot}; },
          [](const fact::GordianLE& x) { return std::vector{x.a, x.b}; },
          [](const fact::GordianGE& x) { return std::vector{x.a, x.b}; },
          [](const fact::NullHomologousTwist& x) { return std::vector{x.knot, x.target}; },
          [](const fact::CrossingChange& x) { return std::vector{x.a, x.b}; },
          [](const fact::SEquivalent& x) { return std::vector{x.a, x.b}; },
          [](const fact::AlexanderOne& x) { return std::vector{x.knot}; },
          [](const fact::UnknottingLE& x) { return std::vector{x.knot}; },
          [](const fact::UnknottingGE& x) { return std::vector{x.knot}; },
          [](const fact::ConnectedSumWithInverse& x) { return std::vector{x.sum, x.summand}; },
          [](const fact::Property& x) { return std::vector{x.knot}; },
      },
      f);
}

// ---------------------------------------------------------------------------
// JSON form of facts

inline nlohmann::json to_json(const Fact& f) {
  using nlohmann::json;
  return std::visit(
      Overloaded{
          [](const fact::TorsionInterval& x) {
            return json{{"kind", "TorsionInterval"},
                        {"knot", x.knot},
                        {"lower", x.lower},
                        {"upper", x.upper ? json(*x.upper) : json(nullptr)}};
          },
          [](const fact::GordianLE& x) {
            return json{{"kind", "GordianLE"}, {"knot", x.a}, {"other", x.b}, {"value", x.d}};
          },
          [](const fact::GordianGE& x) {
            return json{{"kind", "GordianGE"}, {"knot", x.a}, {"other", x.b}, {"value", x.d}};
          },
          [](const fact::NullHomologousTwist& x) {
            return json{{"kind", "NullHomologousTwist"},
                        {"knot", x.knot},
                        {"other", x.target},
                        {"witness", x.witness}};
          },
          [](const fact::CrossingChange& x) {
            return json{{"kind", "CrossingChange"}, {"knot", x.a}, {"other", x.b}};
          },
          [](const fact::SEquivalent& x) {
            return json{{"kind", "SEquivalent"}, {"knot", x.a}, {"other", x.b}};
          },
          [](const fact::AlexanderOne& x) {
            return json{{"kind", "AlexanderOne"}, {"knot", x.knot}};
          },
          [](const fact::UnknottingLE& x) {
            return json{{"kind", "UnknottingLE"}, {"knot", x.knot}, {"value", x.u}};
          },
          [](const fact::UnknottingGE& x) {
            return json{{"kind", "UnknottingGE"}, {"knot", x.knot}, {"value", x.u}};
          },
          [](const fact::ConnectedSumWithInverse& x) {
            return json{{"kind", "ConnectedSumWithInverse"}, {"knot", x.sum}, {"other", x.summand}};
          },
          [](const fact::Property& x) {
            return json{{"kind", "Property"}, {"knot", x.knot}, {"property", to_string(x.kind)}};
          },
      },
      f);
}

inline Fact fact_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    auto str = [&](const char* k) { return j.at(k).get<std::string>(); };
    auto num = [&](const char* k) {
      const int v = j.at(k).get<int>();
      if (v < 0) throw ValidationError(std::string("field '") + k + "' must be nonnegative");
      return v;
    };
    if (kind == "TorsionInterval") {
      fact::TorsionInterval f{str("knot"), num("lower"), std::nullopt};
      if (j.contains("upper") && !j.at("upper").is_null()) f.upper = num("upper");
      return f;
    }
    if (kind == "GordianLE") return fact::GordianLE{str("knot"), str("other"), num("value")};
    if (kind == "GordianGE") return fact::GordianGE{str("knot"), str("other"), num("value")};
    if (kind == "NullHomologousTwist") {
      const std::string target = str("other");
      return fact::NullHomologousTwist{str("knot"), target,
                                       j.contains("witness") ? str("witness") : target + "'"};
    }
    if (kind == "CrossingChange") return fact::CrossingChange{str("knot"), str("other")};
    if (kind == "SEquivalent") return fact::SEquivalent{str("knot"), str("other")};
    if (kind == "AlexanderOne") return fact::AlexanderOne{str("knot")};
    if (kind == "UnknottingLE") return fact::UnknottingLE{str("knot"), num("value")};
    if (kind == "UnknottingGE") return fact::UnknottingGE{str("knot"), num("value")};
    if (kind == "ConnectedSumWithInverse") {
      return fact::ConnectedSumWithInverse{str("knot"), str("other")};
    }
    if (kind == "Property") return fact::Property{str("knot"), property_from_string(str("property"))};
    throw ValidationError("unknown fact kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed fact: ") + e.what(), 0, 0);
  }
}

// ---------------------------------------------------------------------------
// Rules

struct RuleInfo {
  const char* id;
  const char* statement;
};

inline const std::vector<RuleInfo>& rule_table() {
  static const std::vector<RuleInfo> rules = {
      {"R1", "d_G(K, J) >= |t(K) - t(J)|"},
      {"R2", "d_G(K, J) <= d gives |t(K) - t(J)| <= d"},
      {"R3", "a null-homologous twist from K to J is matched by a crossing change from K to "
             "some J' S-equivalent to J"},
      {"R4", "S-equivalent knots have the same Alexander polynomial"},
      {"R5", "t(J # -J) = max(t(J), t(-J)) = t(J)"},
      {"R6", "J # -J is doubly slice and amphicheiral, and Delta(J # -J) = Delta(J)^2"},
      {"R7", "t(K) <= u(K), the case J = unknot of R1 and R2"},
      {"GD1", "a single crossing change gives Gordian distance at most 1"},
      {"MEET", "two valid intervals for t(K) intersect"},
      {"SLICE", "a doubly slice knot is slice"},
  };
  return rules;
}

inline const char* rule_statement(const std::string& id) {
  for (const auto& r : rule_table()) {
    if (id == r.id) return r.statement;
  }
  return "";
}

struct Provenance {
  enum class Kind { Seed, Asserted, Derived };
  Kind kind = Kind::Asserted;
  std::string rule;                  ///< derived facts only
  std::vector<std::size_t> premises; ///< ids of earlier facts
  std::string note;                  ///< free text for asserted facts
};

inline std::string to_string(Provenance::Kind k) {
  switch (k) {
    case Provenance::Kind::Seed: return "seed";
    case Provenance::Kind::Asserted: return "asserted";
    case Provenance::Kind::Derived: return "derived";
  }
  return "?";
}

struct StoredFact {
  std::size_t id = 0;
  Fact fact;
  Provenance provenance;
};

enum class BoundKind { Torsion, UnknottingGE, UnknottingLE, GordianGE, GordianLE };

inline BoundKind bound_kind_from_string(const std::string& s) {
  if (s == "TorsionInterval" || s == "torsion") return BoundKind::Torsion;
  if (s == "UnknottingGE") return BoundKind::UnknottingGE;
  if (s == "UnknottingLE") return BoundKind::UnknottingLE;
  if (s == "GordianGE") return BoundKind::GordianGE;
  if (s == "GordianLE") return BoundKind::GordianLE;
  throw ValidationError("unknown bound kind '" + s + "'");
}

struct QueryResult {
  bool known = false;
  std::optional<std::size_t> fact_id;
  std::string value;  ///< rendered bound, or "unbounded"
  std::string trace;
};

struct AuditReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

class FactStore {
 public:
  FactStore() {
    Provenance seed{Provenance::Kind::Seed, {}, {}, "the unknot"};
    add(fact::TorsionInterval{kUnknot, 0, 0}, seed);
    add(fact::UnknottingGE{kUnknot, 0}, seed);
    add(fact::UnknottingLE{kUnknot, 0}, seed);
    add(fact::AlexanderOne{kUnknot}, seed);
  }

  const std::vector<StoredFact>& facts() const noexcept { return facts_; }

  /// Stores a fact with provenance "asserted". Returns its id, or the id of
  /// the fact that already implies it.
  std::size_t assert_fact(const Fact& f, std::string note = {}) {
    validate(f);
    if (auto id = add(f, {Provenance::Kind::Asserted, {}, {}, std::move(note)})) return *id;
    return *implied_by(f);
  }

  /// Applies the rules to a fixpoint; returns the ids of new facts.
  std::vector<std::size_t> derive() {
    const std::size_t before = facts_.size();
    for (;;) {
      const std::size_t round_start = facts_.size();
      rule_unknotting_upper();
      rule_twist();
      rule_crossing_change();
      rule_s_equivalence();
      rule_gordian_transfer();
      rule_sum_with_inverse();
      rule_sum_properties();
      rule_slice();
      rule_gordian_lower();
      rule_unknotting_lower();
      if (facts_.size() == round_start) break;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = before; i < facts_.size(); ++i) out.push_back(i);
    return out;
  }

  std::set<std::string> knots() const {
    std::set<std::string> out{kUnknot};
    for (const auto& sf : facts_)
      for (auto& k : knots_of(sf.fact)) out.insert(k);
    for (const auto& [key, w] : witnesses_) out.insert(w);
    return out;
  }

  std::optional<fact::TorsionInterval> torsion(const std::string& k) const {
    auto it = current_.find("TI|" + k);
    if (it == current_.end()) return std::nullopt;
    return std::get<fact::TorsionInterval>(facts_[it->second].fact);
  }

  std::optional<std::size_t> current(const std::string& slot) const {
    auto it = current_.find(slot);
    if (it == current_.end()) return std::nullopt;
    return it->second;
  }

  bool holds(const Fact& f) const { return plain_.contains(plain_key(f)); }

  QueryResult query(const std::string& k, BoundKind kind, const std::string& other = {}) const {
    if (!knots().contains(k)) throw ValidationError("unknown knot '" + k + "'");
    std::string slot;
    switch (kind) {
      case BoundKind::Torsion: slot = "TI|" + k; break;
      case BoundKind::UnknottingGE: slot = "UGE|" + k; break;
      case BoundKind::UnknottingLE: slot = "ULE|" + k; break;
      case BoundKind::GordianGE: slot = "GGE|" + pair_key(k, other); break;
      case BoundKind::GordianLE: slot = "GLE|" + pair_key(k, other); break;
    }
    QueryResult r;
    auto id = current(slot);
    if (!id) {
      r.value = "unbounded";
      return r;
    }
    r.known = true;
    r.fact_id = *id;
    r.value = describe(facts_[*id].fact);
    r.trace = render_trace(*id);
    return r;
  }

  /// Indented derivation tree; repeated subtrees are elided.
  std::string render_trace(std::size_t id) const {
    std::ostringstream os;
    std::set<std::size_t> shown;
    render(os, id, 0, shown);
    return os.str();
  }

  /// Re-checks every derived fact against its rule and premises.
  AuditReport audit() const;

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    nlohmann::json log = nlohmann::json::array();
    for (const auto& sf : facts_) {
      nlohmann::json j;
      j["id"] = sf.id;
      j["fact"] = knotbound::to_json(sf.fact);
      j["text"] = describe(sf.fact);
      nlohmann::json p;
      p["kind"] = to_string(sf.provenance.kind);
      if (sf.provenance.kind == Provenance::Kind::Derived) {
        p["rule"] = sf.provenance.rule;
        p["premises"] = sf.provenance.premises;
        log.push_back({{"fact", sf.id}, {"rule", sf.provenance.rule}});
      }
      if (!sf.provenance.note.empty()) p["note"] = sf.provenance.note;
      j["provenance"] = std::move(p);
      arr.push_back(std::move(j));
    }
    return {{"facts", std::move(arr)}, {"rule_log", std::move(log)}};
  }

 private:
  static std::string pair_key(const std::string& a, const std::string& b) {
    return a < b ? a + "|" + b : b + "|" + a;
  }

  static std::string plain_key(const Fact& f) {
    // Plain (non-numeric) facts are deduplicated on their rendering, with
    // symmetric relations normalized.
    return std::visit(
        Overloaded{
            [](const fact::CrossingChange& x) { return "CC|" + pair_key(x.a, x.b); },
            [](const fact::SEquivalent& x) { return "SE|" + pair_key(x.a, x.b); },
            [&](const auto&) { return describe(f); },
        },
        f);
  }

  static void validate(const Fact& f) {
    for (const auto& k : knots_of(f)) {
      if (k.empty()) throw ValidationError("empty knot identifier in " + describe(f));
    }
    std::visit(Overloaded{
                   [](const fact::TorsionInterval& x) {
                     if (x.lower < 0 || (x.upper && *x.upper < 0))
                       throw ValidationError("negative bound");
                     if (x.upper && x.lower > *x.upper)
                       throw ContradictionError("empty interval in " + describe(x));
                   },
                   [](const fact::NullHomologousTwist& x) {
                     if (x.witness.empty()) throw ValidationError("empty witness name");
                     if (x.witness == x.knot || x.witness == x.target)
                       throw ValidationError("witness must be a new knot: " + describe(x));
                   },
                   [](const auto& x) {
                     if constexpr (requires { x.d; }) {
                       if (x.d < 0) throw ValidationError("negative bound");
                     }
                     if constexpr (requires { x.u; }) {
                       if (x.u < 0) throw ValidationError("negative bound");
                     }
                   },
               },
               f);
  }

  std::size_t push(const Fact& f, Provenance p) {
    const std::size_t id = facts_.size();
    facts_.push_back({id, f, std::move(p)});
    return id;
  }

  /// The stored fact making `f` redundant, if any.
  std::optional<std::size_t> implied_by(const Fact& f) const {
    if (auto it = plain_.find(plain_key(f)); it != plain_.end()) return it->second;
    return std::visit(
        Overloaded{
            [&](const fact::TorsionInterval& x) { return current("TI|" + x.knot); },
            [&](const fact::GordianLE& x) { return current("GLE|" + pair_key(x.a, x.b)); },
            [&](const fact::GordianGE& x) { return current("GGE|" + pair_key(x.a, x.b)); },
            [&](const fact::UnknottingLE& x) { return current("ULE|" + x.knot); },
            [&](const fact::UnknottingGE& x) { return current("UGE|" + x.knot); },
            [](const auto&) { return std::optional<std::size_t>{}; },
        },
        f);
  }

  [[noreturn]] void contradiction(const Fact& incoming, const Provenance& p,
                                  std::size_t existing) const {
    std::ostringstream os;
    os << "contradiction: " << describe(incoming) << " conflicts with "
       << describe(facts_[existing].fact) << "\n--- existing ---\n"
       << render_trace(existing) << "--- incoming ---\n"
       << describe(incoming) << "  [" << (p.rule.empty() ? to_string(p.kind) : p.rule)
       << "]\n";
    std::set<std::size_t> shown;
    for (std::size_t pr : p.premises) render(os, pr, 1, shown);
    throw ContradictionError(os.str());
  }

  /// Stores f if it adds information. Returns the id of the resulting
  /// current fact for its slot, or nothing when f was redundant.
  std::optional<std::size_t> add(const Fact& f, const Provenance& p) {
    return std::visit(
        Overloaded{
            [&](const fact::TorsionInterval& x) -> std::optional<std::size_t> {
              if (x.upper && x.lower > *x.upper) throw ContradictionError("empty interval");
              const std::string slot = "TI|" + x.knot;
              auto cur = current(slot);
              if (!cur) return current_[slot] = push(f, p);
              const auto& old = std::get<fact::TorsionInterval>(facts_[*cur].fact);
              fact::TorsionInterval meet{x.knot, std::max(old.lower, x.lower), old.upper};
              if (x.upper) meet.upper = meet.upper ? std::min(*meet.upper, *x.upper) : *x.upper;
              if (meet.upper && meet.lower > *meet.upper) contradiction(f, p, *cur);
              if (meet == old) return std::nullopt;
              const std::size_t id = push(f, p);
              if (meet == x) return current_[slot] = id;
              return current_[slot] = push(meet, {Provenance::Kind::Derived, "MEET", {*cur, id}, {}});
            },
            [&](const fact::GordianLE& x) {
              return add_bound(f, p, "GLE|" + pair_key(x.a, x.b), "GGE|" + pair_key(x.a, x.b),
                               x.d, true);
            },
            [&](const fact::GordianGE& x) {
              return add_bound(f, p, "GGE|" + pair_key(x.a, x.b), "GLE|" + pair_key(x.a, x.b),
                               x.d, false);
            },
            [&](const fact::UnknottingLE& x) {
              return add_bound(f, p, "ULE|" + x.knot, "UGE|" + x.knot, x.u, true);
            },
            [&](const fact::UnknottingGE& x) {
              return add_bound(f, p, "UGE|" + x.knot, "ULE|" + x.knot, x.u, false);
            },
            [&](const auto&) -> std::optional<std::size_t> {
              const std::string key = plain_key(f);
              if (plain_.contains(key)) return std::nullopt;
              return plain_[key] = push(f, p);
            },
        },
        f);
  }

  static int bound_value(const Fact& f) {
    return std::visit(Overloaded{
                          [](const fact::GordianLE& x) { return x.d; },
                          [](const fact::GordianGE& x) { return x.d; },
                          [](const fact::UnknottingLE& x) { return x.u; },
                          [](const fact::UnknottingGE& x) { return x.u; },
                          [](const auto&) { return 0; },
                      },
                      f);
  }

  std::optional<std::size_t> add_bound(const Fact& f, const Provenance& p, const std::string& slot,
                                       const std::string& opposite, int v, bool upper) {
    if (auto cur = current(slot)) {
      const int old = bound_value(facts_[*cur].fact);
      if (upper ? v >= old : v <= old) return std::nullopt;
    }
    if (auto opp = current(opposite)) {
      const int o = bound_value(facts_[*opp].fact);
      if (upper ? v < o : v > o) contradiction(f, p, *opp);
    }
    return current_[slot] = push(f, p);
  }

  void derived(const Fact& f, const char* rule, std::vector<std::size_t> premises) {
    add(f, {Provenance::Kind::Derived, rule, std::move(premises), {}});
  }

  template <typename T>
  std::vector<std::pair<std::size_t, T>> all() const {
    std::vector<std::pair<std::size_t, T>> out;
    for (const auto& sf : facts_) {
      if (const T* x = std::get_if<T>(&sf.fact)) out.emplace_back(sf.id, *x);
    }
    return out;
  }

  std::vector<std::pair<std::size_t, fact::TorsionInterval>> current_intervals() const {
    std::vector<std::pair<std::size_t, fact::TorsionInterval>> out;
    for (const auto& [slot, id] : current_) {
      if (slot.starts_with("TI|")) {
        out.emplace_back(id, std::get<fact::TorsionInterval>(facts_[id].fact));
      }
    }
    return out;
  }

  void rule_unknotting_upper() {
    for (const auto& [slot, id] : std::map(current_)) {
      if (!slot.starts_with("ULE|")) continue;
      const auto& x = std::get<fact::UnknottingLE>(facts_[id].fact);
      derived(fact::TorsionInterval{x.knot, 0, x.u}, "R7", {id});
    }
  }

  void rule_twist() {
    for (const auto& [id, x] : all<fact::NullHomologousTwist>()) {
      const auto key = std::pair(x.knot, x.target);
      if (witnesses_.contains(key)) continue;
      for (const auto& sf : facts_) {
        const auto names = knots_of(sf.fact);
        if (std::find(names.begin(), names.end(), x.witness) == names.end()) continue;
        const auto* s = std::get_if<fact::ConnectedSumWithInverse>(&sf.fact);
        if (!s || s->summand != x.witness) {
          throw ValidationError("witness name '" + x.witness + "' for " + describe(x) +
                                " is already used by " + describe(sf.fact));
        }
      }
      for (const auto& [other, w] : witnesses_) {
        if (w == x.witness) {
          throw ValidationError("witness name '" + x.witness + "' is used by two twists");
        }
      }
      witnesses_[key] = x.witness;
      derived(fact::CrossingChange{x.knot, x.witness}, "R3", {id});
      derived(fact::SEquivalent{x.target, x.witness}, "R3", {id});
    }
  }

  void rule_crossing_change() {
    for (const auto& [id, x] : all<fact::CrossingChange>()) {
      derived(fact::GordianLE{x.a, x.b, 1}, "GD1", {id});
    }
  }

  void rule_s_equivalence() {
    for (const auto& [id, x] : all<fact::SEquivalent>()) {
      for (const auto& [from, to] : {std::pair(x.a, x.b), std::pair(x.b, x.a)}) {
        auto it = plain_.find(describe(fact::AlexanderOne{from}));
        if (it != plain_.end()) derived(fact::AlexanderOne{to}, "R4", {id, it->second});
      }
    }
  }

  void rule_gordian_transfer() {
    for (const auto& [slot, id] : std::map(current_)) {
      if (!slot.starts_with("GLE|")) continue;
      const auto x = std::get<fact::GordianLE>(facts_[id].fact);
      for (const auto& [from, to] : {std::pair(x.a, x.b), std::pair(x.b, x.a)}) {
        auto t = current("TI|" + from);
        if (!t) continue;
        const auto iv = std::get<fact::TorsionInterval>(facts_[*t].fact);
        fact::TorsionInterval out{to, std::max(0, iv.lower - x.d), std::nullopt};
        if (iv.upper) out.upper = *iv.upper + x.d;
        derived(out, "R2", {id, *t});
      }
    }
  }

  void rule_sum_with_inverse() {
    for (const auto& [id, x] : all<fact::ConnectedSumWithInverse>()) {
      auto t = current("TI|" + x.summand);
      if (!t) continue;
      const auto iv = std::get<fact::TorsionInterval>(facts_[*t].fact);
      derived(fact::TorsionInterval{x.sum, iv.lower, iv.upper}, "R5", {id, *t});
    }
  }

  void rule_sum_properties() {
    for (const auto& [id, x] : all<fact::ConnectedSumWithInverse>()) {
      derived(fact::Property{x.sum, PropertyKind::DoublySlice}, "R6", {id});
      derived(fact::Property{x.sum, PropertyKind::Amphicheiral}, "R6", {id});
      auto it = plain_.find(describe(fact::AlexanderOne{x.summand}));
      if (it != plain_.end()) derived(fact::AlexanderOne{x.sum}, "R6", {id, it->second});
    }
  }

  void rule_slice() {
    for (const auto& [id, x] : all<fact::Property>()) {
      if (x.kind == PropertyKind::DoublySlice) {
        derived(fact::Property{x.knot, PropertyKind::SmoothlySlice}, "SLICE", {id});
      }
    }
  }

  void rule_gordian_lower() {
    const auto ivs = current_intervals();
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      for (std::size_t j = i + 1; j < ivs.size(); ++j) {
        const auto& [ik, k] = ivs[i];
        const auto& [jk, l] = ivs[j];
        int d = 0;
        if (l.upper) d = std::max(d, k.lower - *l.upper);
        if (k.upper) d = std::max(d, l.lower - *k.upper);
        if (d > 0) derived(fact::GordianGE{k.knot, l.knot, d}, "R1", {ik, jk});
      }
    }
  }

  void rule_unknotting_lower() {
    for (const auto& [id, x] : current_intervals()) {
      if (x.lower > 0) derived(fact::UnknottingGE{x.knot, x.lower}, "R7", {id});
    }
  }

  void render(std::ostringstream& os, std::size_t id, int depth,
              std::set<std::size_t>& shown) const {
    const auto& sf = facts_[id];
    os << std::string(2 * depth, ' ') << '#' << id << ' ' << describe(sf.fact) << "  [";
    if (sf.provenance.kind == Provenance::Kind::Derived) {
      os << sf.provenance.rule << ": " << rule_statement(sf.provenance.rule);
    } else {
      os << to_string(sf.provenance.kind);
      if (!sf.provenance.note.empty()) os << ": " << sf.provenance.note;
    }
    os << ']';
    if (!shown.insert(id).second && !sf.provenance.premises.empty()) {
      os << " (shown above)\n";
      return;
    }
    os << '\n';
    for (std::size_t p : sf.provenance.premises) render(os, p, depth + 1, shown);
  }

  std::vector<StoredFact> facts_;
  std::map<std::string, std::size_t> current_;  // bound slots
  std::map<std::string, std::size_t> plain_;    // plain facts
  std::map<std::pair<std::string, std::string>, std::string> witnesses_;
};

inline AuditReport FactStore::audit() const {
  AuditReport rep;
  auto fail = [&](std::size_t id, const std::string& why) {
    rep.failures.push_back("#" + std::to_string(id) + " " + describe(facts_[id].fact) + ": " +
                           why);
  };
  for (const auto& sf : facts_) {
    const auto& p = sf.provenance;
    if (p.kind != Provenance::Kind::Derived) {
      if (!p.premises.empty()) fail(sf.id, "non-derived fact with premises");
      continue;
    }
    ++rep.checked;
    bool ordered = !p.premises.empty();
    for (std::size_t q : p.premises) ordered = ordered && q < sf.id;
    if (!ordered) {
      fail(sf.id, "premises missing or not earlier than the conclusion");
      continue;
    }
    std::vector<const Fact*> pr;
    for (std::size_t q : p.premises) pr.push_back(&facts_[q].fact);
    auto as = [&](std::size_t i, auto tag) {
      using T = decltype(tag);
      return i < pr.size() ? std::get_if<T>(pr[i]) : nullptr;
    };
    const Fact& c = sf.fact;
    bool ok = false;
    const std::string& r = p.rule;
    if (r == "R1" && pr.size() == 2) {
      const auto* k = as(0, fact::TorsionInterval{});
      const auto* j = as(1, fact::TorsionInterval{});
      const auto* g = std::get_if<fact::GordianGE>(&c);
      if (k && j && g && g->a == k->knot && g->b == j->knot) {
        int d = 0;
        if (j->upper) d = std::max(d, k->lower - *j->upper);
        if (k->upper) d = std::max(d, j->lower - *k->upper);
        ok = g->d == d;
      }
    } else if (r == "R2" && pr.size() == 2) {
      const auto* g = as(0, fact::GordianLE{});
      const auto* t = as(1, fact::TorsionInterval{});
      const auto* o = std::get_if<fact::TorsionInterval>(&c);
      if (g && t && o) {
        const bool linked = (t->knot == g->a && o->knot == g->b) ||
                            (t->knot == g->b && o->knot == g->a);
        const std::optional<int> up =
            t->upper ? std::optional<int>(*t->upper + g->d) : std::nullopt;
        ok = linked && o->lower == std::max(0, t->lower - g->d) && o->upper == up;
      }
    } else if (r == "R3" && pr.size() == 1) {
      if (const auto* n = as(0, fact::NullHomologousTwist{})) {
        ok = c == Fact{fact::CrossingChange{n->knot, n->witness}} ||
             c == Fact{fact::SEquivalent{n->target, n->witness}};
      }
    } else if (r == "GD1" && pr.size() == 1) {
      if (const auto* x = as(0, fact::CrossingChange{})) ok = c == Fact{fact::GordianLE{x->a, x->b, 1}};
    } else if (r == "R4" && pr.size() == 2) {
      const auto* s = as(0, fact::SEquivalent{});
      const auto* a = as(1, fact::AlexanderOne{});
      const auto* o = std::get_if<fact::AlexanderOne>(&c);
      if (s && a && o) {
        ok = (a->knot == s->a && o->knot == s->b) || (a->knot == s->b && o->knot == s->a);
      }
    } else if (r == "R5" && pr.size() == 2) {
      const auto* s = as(0, fact::ConnectedSumWithInverse{});
      const auto* t = as(1, fact::TorsionInterval{});
      if (s && t && t->knot == s->summand) {
        ok = c == Fact{fact::TorsionInterval{s->sum, t->lower, t->upper}};
      }
    } else if (r == "R6") {
      const auto* s = as(0, fact::ConnectedSumWithInverse{});
      if (s && pr.size() == 1) {
        ok = c == Fact{fact::Property{s->sum, PropertyKind::DoublySlice}} ||
             c == Fact{fact::Property{s->sum, PropertyKind::Amphicheiral}};
      } else if (s && pr.size() == 2) {
        const auto* a = as(1, fact::AlexanderOne{});
        ok = a && a->knot == s->summand && c == Fact{fact::AlexanderOne{s->sum}};
      }
    } else if (r == "R7" && pr.size() == 1) {
      if (const auto* t = as(0, fact::TorsionInterval{})) {
        ok = c == Fact{fact::UnknottingGE{t->knot, t->lower}};
      } else if (const auto* u = as(0, fact::UnknottingLE{})) {
        ok = c == Fact{fact::TorsionInterval{u->knot, 0, u->u}};
      }
    } else if (r == "MEET" && pr.size() == 2) {
      const auto* a = as(0, fact::TorsionInterval{});
      const auto* b = as(1, fact::TorsionInterval{});
      const auto* o = std::get_if<fact::TorsionInterval>(&c);
      if (a && b && o && a->knot == b->knot && o->knot == a->knot) {
        std::optional<int> up = a->upper;
        if (b->upper) up = up ? std::min(*up, *b->upper) : *b->upper;
        ok = o->lower == std::max(a->lower, b->lower) && o->upper == up;
      }
    } else if (r == "SLICE" && pr.size() == 1) {
      const auto* x = as(0, fact::Property{});
      ok = x && x->kind == PropertyKind::DoublySlice &&
           c == Fact{fact::Property{x->knot, PropertyKind::SmoothlySlice}};
    }
    if (!ok) fail(sf.id, "does not follow from its premises by " + r);
  }
  return rep;
}

}  // namespace knotbound
