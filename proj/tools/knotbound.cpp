// knotbound: command-line front end.
//
// Exit codes: 0 success, 1 domain failure (verification, contradiction,
// size limit, inconsistent data), 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotbound/knotbound.hpp"

namespace fs = std::filesystem;
using namespace knotbound;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Output {
  bool json = false;
  std::string out_file;

  void emit(const std::string& text, const nlohmann::json& j) const {
    const std::string body = json ? j.dump(2) + "\n" : text;
    if (out_file.empty()) {
      std::cout << body;
    } else {
      std::ofstream f(out_file, std::ios::binary);
      if (!f) throw ValidationError("cannot write " + out_file);
      f << body;
    }
  }
};

std::string cell(const Bigrading& g) {
  return "(" + std::to_string(g.mu) + "," + std::to_string(g.A) + ")";
}

nlohmann::json verification_json(const VerificationReport& r) {
  nlohmann::json mism = nlohmann::json::array();
  for (const auto& m : r.symmetry.mismatches) {
    mism.push_back({{"cell", to_json(m.cell)},
                    {"dim", m.dim},
                    {"partner", to_json(m.partner)},
                    {"partner_dim", m.partner_dim}});
  }
  return {{"verified", r.verified()},
          {"parity", r.parity_ok},
          {"symmetry", r.symmetry_ok},
          {"euler", r.euler_ok},
          {"total_dimension", r.total_dimension},
          {"euler_characteristic", r.euler.to_string()},
          {"symmetry_mismatches", std::move(mism)}};
}

std::string verification_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "total dimension " << r.total_dimension << ", Euler characteristic "
     << r.euler.to_string() << '\n'
     << "verification: " << (r.verified() ? "pass" : "FAIL") << '\n';
  for (const auto& f : r.failures()) os << "  " << f << '\n';
  return os.str();
}

std::string pairing_text(const Pairing& p) {
  std::ostringstream os;
  if (p.free_cell) os << "    free generator " << cell(*p.free_cell) << '\n';
  for (const auto& pr : p.pairs) {
    os << "    n=" << pr.n << ' ' << cell(pr.low) << " -> " << cell(pr.high);
    if (pr.count > 1) os << " x" << pr.count;
    os << '\n';
  }
  return os.str();
}

HfkTable load_table(const std::string& path) {
  HfkTable tab = parse_hfk(read_file(path));
  if (tab.name().empty()) tab.set_name(fs::path(path).stem().string());
  return tab;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    out.push_back(static_cast<int>(detail::parse_int(tok, 0, 0)));
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_compute_hfk(const std::string& path, int max_grid, unsigned threads, const Output& out) {
  const GridDiagram g = parse_grid(read_file(path));
  TildeOptions opt;
  opt.max_grid = max_grid;
  opt.threads = threads;
  TildeStats stats;
  const BigradedDims tilde = tilde_homology(g, opt, &stats);
  HfkTable tab = tilde_to_hat(tilde);
  tab.set_name(fs::path(path).stem().string());
  const auto rep = verify_table(tab);

  std::ostringstream text;
  text << to_hfk_csv(tab) << "# grid size " << g.n << ", " << stats.states << " states, "
       << tilde.total() << " tilde generators in homology\n";
  std::istringstream vr(verification_text(rep));
  for (std::string line; std::getline(vr, line);) text << "# " << line << '\n';
  nlohmann::json j{{"table", to_json(tab)},
                   {"grid_size", g.n},
                   {"states", stats.states},
                   {"tilde_total", tilde.total()},
                   {"verification", verification_json(rep)}};
  out.emit(text.str(), j);
  return rep.verified() ? 0 : kExitDomain;
}

int cmd_bounds(const std::string& path, std::optional<int> external, const Output& out) {
  HfkTable tab = load_table(path);
  const auto rep = verify_table(tab);
  if (!rep.verified()) {
    std::cerr << "table " << tab.name() << " is not verified\n" << verification_text(rep);
    return kExitDomain;
  }
  const DiagonalCheck diag = diagonal_check(tab);
  const TorsionBound lo = minmax_torsion_bound(tab);
  const TorsionBound hi = maxmax_torsion_bound(tab);
  const TorsionInterval iv = torsion_interval(tab, external);
  for (const auto* b : {&lo, &hi}) {
    std::string why;
    if (!is_valid_pairing(tab, b->certificate, &why)) {
      throw ConsistencyError("certificate failed re-validation: " + why);
    }
  }

  std::ostringstream text;
  text << "table " << tab.name() << ": " << tab.total_dimension() << " generators, verified\n";
  text << "diagonal check: " << diag.value << "\n  green (0,0): dimension " << diag.green_dim
       << "\n  red (empty):";
  if (diag.red_cells.empty()) text << " none";
  for (const auto& c : diag.red_cells) text << ' ' << cell(c);
  text << "\nminmax: " << lo.value << '\n' << pairing_text(lo.certificate);
  text << "maxmax: " << hi.value << '\n' << pairing_text(hi.certificate);
  text << "torsion interval: [" << iv.lower << ", " << *iv.upper << "]\n  " << iv.provenance
       << '\n';

  nlohmann::json red = nlohmann::json::array();
  for (const auto& c : diag.red_cells) red.push_back(to_json(c));
  nlohmann::json j{
      {"table", tab.name()},
      {"total_dimension", tab.total_dimension()},
      {"diagonal", {{"value", diag.value}, {"green_dim", diag.green_dim}, {"red_cells", red}}},
      {"minmax", {{"value", lo.value}, {"certificate", to_json(lo.certificate)}}},
      {"maxmax", {{"value", hi.value}, {"certificate", to_json(hi.certificate)}}},
      {"interval", {{"lower", iv.lower}, {"upper", *iv.upper}, {"provenance", iv.provenance}}},
      {"external_upper", external ? nlohmann::json(*external) : nlohmann::json(nullptr)}};
  out.emit(text.str(), j);
  return 0;
}

int cmd_alexander(const std::string& path, const Output& out) {
  const PDCode pd = parse_pd(read_file(path));
  const IntLaurentPoly p = alexander_polynomial(pd);
  std::ostringstream text;
  text << p.to_string() << '\n';
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [e, c] : p.terms()) coeffs[std::to_string(e)] = c.get_str();
  nlohmann::json j{{"crossings", pd.crossing_count()},
                   {"writhe", pd.writhe()},
                   {"alexander", p.to_string()},
                   {"coefficients", coeffs}};
  out.emit(text.str(), j);
  return 0;
}

int cmd_twist(const std::string& path, const std::string& edges, const std::string& dirs,
              std::size_t auto_strands, int sign, const Output& out) {
  const PDCode pd = parse_pd(read_file(path));
  TwistSite site;
  if (auto_strands > 0) {
    auto found = planar_twist_site(pd, auto_strands, sign);
    if (!found) {
      throw ValidationError("no planar twist site on " + std::to_string(auto_strands) +
                            " strands");
    }
    site = *found;
  } else {
    site.edges = parse_int_list(edges);
    site.sign = sign;
    std::stringstream ss(dirs);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (tok == "u" || tok == "up") {
        site.directions.push_back(StrandDirection::Up);
      } else if (tok == "d" || tok == "down") {
        site.directions.push_back(StrandDirection::Down);
      } else {
        throw ParseError("direction must be u or d, got '" + tok + "'", 0, 0);
      }
    }
  }
  const PDCode twisted = insert_full_twist(pd, site);
  const IntLaurentPoly p = alexander_polynomial(twisted);
  std::ostringstream text;
  text << "# full twist, sign " << site.sign << ", edges";
  for (std::size_t i = 0; i < site.edges.size(); ++i) {
    text << ' ' << site.edges[i]
         << (site.directions[i] == StrandDirection::Up ? "u" : "d");
  }
  text << "\n# " << twisted.crossing_count() << " crossings, Alexander polynomial "
       << p.to_string() << '\n'
       << twisted.to_text();
  nlohmann::json dirs_json = nlohmann::json::array();
  for (auto d : site.directions) dirs_json.push_back(d == StrandDirection::Up ? "u" : "d");
  nlohmann::json j{{"site", {{"edges", site.edges}, {"directions", dirs_json}, {"sign", site.sign}}},
                   {"crossings", twisted.crossing_count()},
                   {"alexander", p.to_string()},
                   {"pd", twisted.to_text()}};
  out.emit(text.str(), j);
  return 0;
}

int cmd_derive(const std::string& path, const Output& out) {
  const Session s = parse_session(read_file(path));
  const SessionOutcome o = run_session(s, fs::path(path).parent_path());
  out.emit(o.text, o.report);
  return o.audit.pass() ? 0 : kExitDomain;
}

int cmd_verify_data(const std::string& dir, const Output& out) {
  const DataReport rep = verify_data(dir);
  std::ostringstream text;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : rep.files) {
    text << (f.pass() ? "ok   " : "FAIL ") << f.path;
    if (!f.present) text << ": missing";
    if (f.present && !f.checksum_ok) text << ": checksum mismatch";
    nlohmann::json jf{{"path", f.path},
                      {"present", f.present},
                      {"checksum", f.checksum_ok},
                      {"pass", f.pass()}};
    if (f.table) {
      text << "  [" << (f.name.empty() ? "table" : f.name) << ", total "
           << f.table->total_dimension << ", Euler " << f.table->euler.to_string() << "]";
      for (const auto& msg : f.table->failures()) text << "\n       " << msg;
      jf["table"] = verification_json(*f.table);
    }
    text << '\n';
    files.push_back(std::move(jf));
  }
  text << (rep.pass() ? "all bundled data verified\n" : "bundled data FAILED verification\n");
  out.emit(text.str(), {{"pass", rep.pass()}, {"files", files}});
  return rep.pass() ? 0 : kExitDomain;
}

int cmd_manifest(const std::string& dir, const Output& out) {
  Manifest m;
  std::vector<fs::path> paths;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().filename() != "MANIFEST.json") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    const std::string ext = p.extension().string();
    std::string kind;
    if (ext == ".hfk") kind = "hfk";
    else if (ext == ".grd") kind = "grid";
    else if (ext == ".pd") kind = "pd";
    else if (ext == ".json") kind = "session";
    else continue;
    const std::string rel = fs::relative(p, dir).generic_string();
    const std::string stem = p.stem().string();
    const std::string source =
        kind == "hfk" && stem.starts_with("mm") ? "transcribed" : "sample";
    m.files.push_back({rel, kind, source, sha256_hex(read_file(p))});
  }
  const std::string body = to_json(m).dump(2) + "\n";
  out.emit(body, to_json(m));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knot Floer homology tables, torsion bounds and bound propagation"};
  app.require_subcommand(1);
  Output out;

  std::string input;
  int max_grid = 10;
  unsigned threads = 1;
  auto* hfk = app.add_subcommand("compute-hfk", "hat knot Floer homology of a grid diagram");
  hfk->add_option("grid", input, ".grd file")->required()->check(CLI::ExistingFile);
  hfk->add_option("--max-grid", max_grid, "largest grid size accepted")->capture_default_str();
  hfk->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();

  std::optional<int> external;
  auto* bounds = app.add_subcommand("bounds", "torsion-order bounds from a table");
  bounds->add_option("table", input, ".hfk file")->required()->check(CLI::ExistingFile);
  bounds->add_option("--external-upper", external, "known upper bound on t(K)")
      ->check(CLI::NonNegativeNumber);

  auto* alex = app.add_subcommand("alexander", "Alexander polynomial of a PD code");
  alex->add_option("pd", input, ".pd file")->required()->check(CLI::ExistingFile);

  std::string edges, dirs;
  std::size_t auto_strands = 0;
  int sign = 1;
  auto* twist = app.add_subcommand("twist", "insert a full twist into a PD code");
  twist->add_option("pd", input, ".pd file")->required()->check(CLI::ExistingFile);
  auto* e_opt = twist->add_option("--edges", edges, "comma-separated edge labels");
  twist->add_option("--directions", dirs, "comma-separated u/d per edge")->needs(e_opt);
  twist->add_option("--auto", auto_strands, "find a planar site on this many strands")
      ->excludes(e_opt);
  twist->add_option("--sign", sign, "+1 right-handed, -1 left-handed")
      ->check(CLI::IsMember({1, -1}))
      ->capture_default_str();

  auto* derive = app.add_subcommand("derive", "run a bound-propagation session");
  derive->add_option("session", input, "session JSON file")->required()->check(CLI::ExistingFile);

  std::string data_dir = KNOTBOUND_DATA_DIR;
  auto* vdata = app.add_subcommand("verify-data", "check the bundled tables and checksums");
  vdata->add_option("--data-dir", data_dir)->capture_default_str();

  auto* manifest = app.add_subcommand("manifest", "print a manifest for a data directory");
  manifest->add_option("--data-dir", data_dir)->capture_default_str();

  for (auto* sub : {hfk, bounds, alex, twist, derive, vdata, manifest}) {
    sub->add_flag("--json", out.json, "emit JSON instead of text");
    sub->add_option("--out", out.out_file, "write the report to a file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*hfk) return cmd_compute_hfk(input, max_grid, threads, out);
    if (*bounds) return cmd_bounds(input, external, out);
    if (*alex) return cmd_alexander(input, out);
    if (*twist) {
      if (auto_strands == 0 && edges.empty()) {
        std::cerr << "twist: give --edges and --directions, or --auto\n";
        return kExitUsage;
      }
      return cmd_twist(input, edges, dirs, auto_strands, sign, out);
    }
    if (*derive) return cmd_derive(input, out);
    if (*vdata) return cmd_verify_data(data_dir, out);
    if (*manifest) return cmd_manifest(data_dir, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
