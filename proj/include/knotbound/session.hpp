#pragma once

// Session files: knots with optional table attachments, asserted facts,
// claims to check against the derived store, and queries to answer.
//
//   {
//     "knots":   [{"id": "K", "table": "k.hfk", "external_upper": 3}],
//     "facts":   [{"kind": "AlexanderOne", "knot": "J", "note": "..."}],
//     "claims":  [{"statement": "u(L) = 5", "facts": [...]}],
//     "queries": [{"knot": "L", "kind": "UnknottingGE"}]
//   }
//
// A table attachment is verified, turned into a torsion interval and
// asserted before the listed facts. Paths are relative to the session file.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "knotbound/bound_engine.hpp"
#include "knotbound/error.hpp"
#include "knotbound/hfk_table.hpp"
#include "knotbound/torsion_bounds.hpp"

namespace knotbound {

struct SessionKnot {
  std::string id;
  std::string table;  ///< empty when no table is attached
  std::optional<int> external_upper;
};

struct SessionFact {
  Fact fact;
  std::string note;
};

struct SessionClaim {
  std::string statement;
  std::vector<Fact> facts;  ///< the claim holds iff all of these are implied
};

struct SessionQuery {
  std::string knot;
  BoundKind kind = BoundKind::Torsion;
  std::string kind_name;
  std::string other;
};

struct Session {
  std::vector<SessionKnot> knots;
  std::vector<SessionFact> facts;
  std::vector<SessionClaim> claims;
  std::vector<SessionQuery> queries;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Session parse_session(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad session JSON: ") + e.what(), 0, 0);
  }
  if (!j.is_object()) throw ParseError("session must be a JSON object", 0, 0);
  Session s;
  try {
    for (const auto& k : j.value("knots", nlohmann::json::array())) {
      SessionKnot sk{k.at("id").get<std::string>(), k.value("table", std::string{}), {}};
      if (k.contains("external_upper")) sk.external_upper = k.at("external_upper").get<int>();
      s.knots.push_back(std::move(sk));
    }
    for (const auto& f : j.value("facts", nlohmann::json::array())) {
      s.facts.push_back({fact_from_json(f), f.value("note", std::string{})});
    }
    for (const auto& c : j.value("claims", nlohmann::json::array())) {
      SessionClaim cl{c.at("statement").get<std::string>(), {}};
      for (const auto& f : c.value("facts", nlohmann::json::array())) {
        cl.facts.push_back(fact_from_json(f));
      }
      s.claims.push_back(std::move(cl));
    }
    for (const auto& q : j.value("queries", nlohmann::json::array())) {
      SessionQuery sq;
      sq.knot = q.at("knot").get<std::string>();
      sq.kind_name = q.at("kind").get<std::string>();
      sq.kind = bound_kind_from_string(sq.kind_name);
      sq.other = q.value("other", std::string{});
      s.queries.push_back(std::move(sq));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed session: ") + e.what(), 0, 0);
  }
  return s;
}

/// Whether the store implies a fact: plain facts must be present, bounds
/// must be at least as strong.
inline bool store_implies(const FactStore& store, const Fact& f) {
  auto bound = [&](const std::string& slot) -> std::optional<Fact> {
    if (auto id = store.current(slot)) return store.facts()[*id].fact;
    return std::nullopt;
  };
  auto pk = [](const std::string& a, const std::string& b) {
    return a < b ? a + "|" + b : b + "|" + a;
  };
  return std::visit(
      Overloaded{
          [&](const fact::TorsionInterval& x) {
            auto t = store.torsion(x.knot);
            if (!t || t->lower < x.lower) return false;
            if (!x.upper) return true;
            return t->upper.has_value() && *t->upper <= *x.upper;
          },
          [&](const fact::UnknottingGE& x) {
            auto b = bound("UGE|" + x.knot);
            return b && std::get<fact::UnknottingGE>(*b).u >= x.u;
          },
          [&](const fact::UnknottingLE& x) {
            auto b = bound("ULE|" + x.knot);
            return b && std::get<fact::UnknottingLE>(*b).u <= x.u;
          },
          [&](const fact::GordianGE& x) {
            auto b = bound("GGE|" + pk(x.a, x.b));
            return b && std::get<fact::GordianGE>(*b).d >= x.d;
          },
          [&](const fact::GordianLE& x) {
            auto b = bound("GLE|" + pk(x.a, x.b));
            return b && std::get<fact::GordianLE>(*b).d <= x.d;
          },
          [&](const auto&) { return store.holds(f); },
      },
      f);
}

struct SessionOutcome {
  FactStore store;
  std::vector<std::size_t> derived;
  AuditReport audit;
  nlohmann::json report;
  std::string text;
};

inline SessionOutcome run_session(const Session& s, const std::filesystem::path& base_dir) {
  SessionOutcome out;
  FactStore& store = out.store;
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& k : s.knots) {
    if (k.table.empty()) continue;
    HfkTable tab = parse_hfk(read_file(base_dir / k.table));
    const auto rep = verify_table(tab);
    if (!rep.verified()) {
      std::string msg = "table for " + k.id + " fails verification";
      for (const auto& f : rep.failures()) msg += "; " + f;
      throw ValidationError(msg);
    }
    const TorsionInterval iv = torsion_interval(tab, k.external_upper);
    store.assert_fact(fact::TorsionInterval{k.id, iv.lower, iv.upper},
                      "computed from table " + k.table + ": " + iv.provenance);
    tables.push_back({{"knot", k.id},
                      {"table", k.table},
                      {"lower", iv.lower},
                      {"upper", iv.upper ? nlohmann::json(*iv.upper) : nlohmann::json(nullptr)},
                      {"provenance", iv.provenance}});
  }
  for (const auto& f : s.facts) store.assert_fact(f.fact, f.note);
  out.derived = store.derive();
  out.audit = store.audit();

  std::ostringstream text;
  text << "derived " << out.derived.size() << " new fact"
       << (out.derived.size() == 1 ? "" : "s") << '\n';
  for (std::size_t id : out.derived) {
    const auto& sf = store.facts()[id];
    text << "  #" << id << ' ' << describe(sf.fact) << "  [" << sf.provenance.rule << "]\n";
  }

  nlohmann::json queries = nlohmann::json::array();
  for (const auto& q : s.queries) {
    const QueryResult r = store.query(q.knot, q.kind, q.other);
    text << "\nquery " << q.kind_name << '(' << q.knot << (q.other.empty() ? "" : ", " + q.other)
         << "): " << r.value << '\n';
    if (r.known) text << r.trace;
    nlohmann::json jq{{"knot", q.knot}, {"kind", q.kind_name}, {"known", r.known},
                      {"value", r.value}};
    if (r.fact_id) jq["fact"] = *r.fact_id;
    if (!q.other.empty()) jq["other"] = q.other;
    queries.push_back(std::move(jq));
  }

  nlohmann::json claims = nlohmann::json::array();
  for (const auto& c : s.claims) {
    nlohmann::json parts = nlohmann::json::array();
    bool all = true;
    for (const auto& f : c.facts) {
      const bool ok = store_implies(store, f);
      all = all && ok;
      parts.push_back({{"fact", describe(f)}, {"machine_derived", ok}});
    }
    const std::string status = all ? "machine-derived" : "external, not machine-derived";
    text << "\nclaim \"" << c.statement << "\": " << status << '\n';
    for (const auto& p : parts) {
      text << "  " << p["fact"].get<std::string>() << ": "
           << (p["machine_derived"].get<bool>() ? "derived" : "not derived") << '\n';
    }
    claims.push_back({{"statement", c.statement}, {"status", status}, {"parts", parts}});
  }

  text << "\ntrace audit: " << (out.audit.pass() ? "pass" : "FAIL") << " ("
       << out.audit.checked << " derived facts replayed)\n";
  for (const auto& f : out.audit.failures) text << "  " << f << '\n';

  out.report = store.to_json();
  out.report["tables"] = std::move(tables);
  out.report["queries"] = std::move(queries);
  out.report["claims"] = std::move(claims);
  out.report["audit"] = {{"pass", out.audit.pass()},
                         {"checked", out.audit.checked},
                         {"failures", out.audit.failures}};
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : rule_table()) rules.push_back({{"id", r.id}, {"statement", r.statement}});
  out.report["rules"] = std::move(rules);
  out.text = text.str();
  return out;
}

}  // namespace knotbound
