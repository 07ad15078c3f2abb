#pragma once

// Checksummed list of the bundled data files (data/MANIFEST.json).

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <json.hpp>

#include "knotbound/error.hpp"
#include "knotbound/hfk_table.hpp"
#include "knotbound/session.hpp"

namespace knotbound {

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

struct ManifestEntry {
  std::string path;  ///< relative to the data directory
  std::string kind;  ///< "hfk", "grid", "pd" or "session"
  std::string source;
  std::string sha256;
};

struct Manifest {
  std::vector<ManifestEntry> files;
};

inline Manifest parse_manifest(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Manifest m;
    for (const auto& f : j.at("files")) {
      m.files.push_back({f.at("path").get<std::string>(), f.at("kind").get<std::string>(),
                         f.value("source", std::string{}), f.at("sha256").get<std::string>()});
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad manifest: ") + e.what(), 0, 0);
  }
}

inline nlohmann::json to_json(const Manifest& m) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : m.files) {
    files.push_back(
        {{"path", f.path}, {"kind", f.kind}, {"source", f.source}, {"sha256", f.sha256}});
  }
  return {{"files", std::move(files)}};
}

struct DataFileCheck {
  std::string path;
  bool present = false;
  bool checksum_ok = false;
  std::optional<VerificationReport> table;  ///< .hfk files only
  std::string name;

  bool pass() const {
    return present && checksum_ok && (!table || table->verified());
  }
};

struct DataReport {
  std::vector<DataFileCheck> files;
  bool pass() const {
    for (const auto& f : files)
      if (!f.pass()) return false;
    return !files.empty();
  }
};

/// Checks every manifest entry under `dir`; tables are also verified.
inline DataReport verify_data(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "MANIFEST.json";
  if (!std::filesystem::exists(manifest_path)) {
    throw ValidationError("manifest missing: " + manifest_path.string());
  }
  const Manifest m = parse_manifest(read_file(manifest_path));
  DataReport rep;
  for (const auto& e : m.files) {
    DataFileCheck c;
    c.path = e.path;
    const auto p = dir / e.path;
    c.present = std::filesystem::exists(p);
    if (c.present) {
      const std::string text = read_file(p);
      c.checksum_ok = sha256_hex(text) == e.sha256;
      if (e.kind == "hfk") {
        try {
          HfkTable tab = parse_hfk(text);
          c.name = tab.name();
          c.table = verify_table(tab);
        } catch (const Error&) {
          c.table = VerificationReport{};
        }
      }
    }
    rep.files.push_back(std::move(c));
  }
  return rep;
}

}  // namespace knotbound
