#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "families.hpp"
#include "orbits.hpp"
#include "slice.hpp"
#include "spec_io.hpp"

namespace symorb {

inline constexpr const char* kReportSchemaVersion = "1";

/// Sign-pattern rendering of a mod-2 vector: 0 -> '+', 1 -> '-'.
inline std::string sign_string(const std::vector<std::uint32_t>& coords) {
  std::string s;
  s.reserve(coords.size());
  for (auto c : coords) s.push_back(c == 0 ? '+' : '-');
  return s;
}

struct OrbitRow {
  std::vector<std::uint32_t> representative;
  std::uint64_t size = 0;
  std::optional<std::string> diag;
  std::optional<std::vector<std::uint32_t>> canonical;
  std::optional<SignaturePair> signature;

  friend bool operator==(const OrbitRow& a, const OrbitRow& b) {
    return a.representative == b.representative && a.size == b.size && a.diag == b.diag &&
           a.canonical == b.canonical && a.signature == b.signature;
  }
  friend bool operator!=(const OrbitRow& a, const OrbitRow& b) { return !(a == b); }
};

/// Everything one classify run reports: the family, the orbit list with
/// per-orbit decorations, orbit counts per mode, and engine metadata.
struct ClassificationReport {
  std::string schema_version = kReportSchemaVersion;
  std::string family;
  std::uint64_t state_count = 0;
  double runtime_ms = 0.0;
  std::map<std::string, std::uint64_t> counts;
  std::vector<OrbitRow> orbits;

  friend bool operator==(const ClassificationReport& a, const ClassificationReport& b) {
    return a.schema_version == b.schema_version && a.family == b.family &&
           a.state_count == b.state_count && a.runtime_ms == b.runtime_ms &&
           a.counts == b.counts && a.orbits == b.orbits;
  }
  friend bool operator!=(const ClassificationReport& a, const ClassificationReport& b) {
    return !(a == b);
  }
};

inline nlohmann::json report_to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["schema_version"] = r.schema_version;
  j["family"] = r.family;
  j["engine"] = {{"state_count", r.state_count}, {"runtime_ms", r.runtime_ms}};
  j["counts"] = r.counts;
  j["orbits"] = nlohmann::json::array();
  for (const auto& row : r.orbits) {
    nlohmann::json o;
    o["representative"] = row.representative;
    o["size"] = row.size;
    if (row.diag) o["diag"] = *row.diag;
    if (row.canonical) o["canonical"] = *row.canonical;
    if (row.signature) o["signature"] = {{"pos", row.signature->pos}, {"neg", row.signature->neg}};
    j["orbits"].push_back(std::move(o));
  }
  return j;
}

/// Inverse of report_to_json.  Fields this version does not know are
/// ignored, so reports written by later schema revisions still load.
inline ClassificationReport report_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("report: top level must be an object");
  for (const char* required : {"schema_version", "family", "engine", "counts", "orbits"})
    if (!j.contains(required))
      throw ParseError(std::string("report: missing field '") + required + "'");
  ClassificationReport r;
  r.schema_version = j["schema_version"].get<std::string>();
  r.family = j["family"].get<std::string>();
  r.state_count = j["engine"]["state_count"].get<std::uint64_t>();
  r.runtime_ms = j["engine"]["runtime_ms"].get<double>();
  for (auto it = j["counts"].begin(); it != j["counts"].end(); ++it)
    r.counts[it.key()] = it.value().get<std::uint64_t>();
  for (const auto& o : j["orbits"]) {
    OrbitRow row;
    row.representative = o["representative"].get<std::vector<std::uint32_t>>();
    row.size = o["size"].get<std::uint64_t>();
    if (o.contains("diag")) row.diag = o["diag"].get<std::string>();
    if (o.contains("canonical")) row.canonical = o["canonical"].get<std::vector<std::uint32_t>>();
    if (o.contains("signature"))
      row.signature = SignaturePair{o["signature"]["pos"].get<int>(),
                                    o["signature"]["neg"].get<int>()};
    r.orbits.push_back(std::move(row));
  }
  return r;
}

inline ClassificationReport report_from_json_text(const std::string& text) {
  try {
    return report_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: invalid JSON: ") + e.what());
  }
}

namespace detail {

inline std::string coord_string(const std::vector<std::uint32_t>& coords) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  os << ')';
  return os.str();
}

/// Left-aligned column layout; widths derive solely from the cell content,
/// so equal inputs render to equal bytes.
inline std::string render_grid(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> widths;
  for (const auto& line : cells) {
    if (widths.size() < line.size()) widths.resize(line.size(), 0);
    for (std::size_t i = 0; i < line.size(); ++i)
      widths[i] = std::max(widths[i], line[i].size());
  }
  std::ostringstream os;
  for (const auto& line : cells) {
    os << ' ';
    for (std::size_t i = 0; i < line.size(); ++i) {
      std::string cell = line[i];
      if (i + 1 < line.size()) cell.resize(widths[i], ' ');
      os << ' ' << cell;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace detail

/// Fixed-layout text rendering.  Deliberately omits the runtime so that
/// identical inputs produce byte-identical output across runs.
inline std::string render_table(const ClassificationReport& r) {
  std::ostringstream os;
  os << "family: " << r.family << '\n';
  os << "states: " << r.state_count << '\n';
  os << "counts:";
  for (const auto& [k, v] : r.counts) os << ' ' << k << '=' << v;
  os << '\n';

  const bool have_diag = !r.orbits.empty() && r.orbits.front().diag.has_value();
  const bool have_canonical = !r.orbits.empty() && r.orbits.front().canonical.has_value();
  const bool have_signature = !r.orbits.empty() && r.orbits.front().signature.has_value();

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"representative", "size"};
  if (have_diag) head.insert(head.begin() + 1, "diag");
  if (have_canonical) head.push_back("canonical");
  if (have_signature) head.push_back("signature");
  cells.push_back(head);
  for (const auto& row : r.orbits) {
    std::vector<std::string> line{detail::coord_string(row.representative)};
    if (have_diag) line.push_back(row.diag ? *row.diag : "");
    line.push_back(std::to_string(row.size));
    if (have_canonical)
      line.push_back(row.canonical ? sign_string(*row.canonical) : "");
    if (have_signature)
      line.push_back(row.signature ? row.signature->to_string() : "");
    cells.push_back(std::move(line));
  }

  os << "orbits:\n" << detail::render_grid(cells);
  return os.str();
}

struct ClassifyRequest {
  FamilyMode mode = FamilyMode::twisted;
  bool compare = false;
  std::uint64_t limit = kDefaultEnumerationLimit;
  OrbitEngine engine = OrbitEngine::bfs;
};

namespace detail {

inline std::string counts_key(FamilyMode m) {
  switch (m) {
    case FamilyMode::twisted: return "twisted";
    case FamilyMode::plain_w0: return "plain_w0";
    case FamilyMode::plain_w00: return "plain_w00";
  }
  return "?";
}

}  // namespace detail

/// Classify the built-in family.  The orbit list describes the requested
/// mode; with compare set, the counts of all three modes are included.
/// Canonical forms and signatures decorate twisted-mode rows only, where
/// they are orbit invariants.
inline ClassificationReport classify_sl_so(int p, int q, const ClassifyRequest& req = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const TwistedAction action = build_family(p, q, req.mode, req.limit);
  const bool decorate = req.mode == FamilyMode::twisted;
  const OrbitSet os = orbits(action, {req.engine, decorate});

  ClassificationReport r;
  {
    std::ostringstream fam;
    fam << "sl-so p=" << p << " q=" << q << " mode=" << family_mode_name(req.mode);
    r.family = fam.str();
  }
  r.state_count = os.state_count();
  r.counts[detail::counts_key(req.mode)] = os.orbit_count();

  std::vector<GroupElement> forms;
  if (decorate) forms = sl_so_canonical_forms(p, q, req.limit);
  for (const auto& orbit : os.orbits()) {
    OrbitRow row;
    row.representative = orbit.representative.coords();
    row.size = orbit.size;
    row.diag = sign_string(row.representative);
    if (decorate) {
      const GroupElement* found = nullptr;
      for (const auto& f : forms) {
        for (const auto& m : *orbit.members) {
          if (m == f) {
            if (found)
              throw InternalError("classify: orbit meets the canonical list twice");
            found = &f;
          }
        }
      }
      if (!found) throw InternalError("classify: orbit misses the canonical list");
      row.canonical = found->coords();
      row.signature = signature(orbit.representative, p, q);
    }
    r.orbits.push_back(std::move(row));
  }

  if (req.compare) {
    for (FamilyMode other :
         {FamilyMode::twisted, FamilyMode::plain_w0, FamilyMode::plain_w00}) {
      if (other == req.mode) continue;
      const OrbitSet extra = orbits(build_family(p, q, other, req.limit), {req.engine, false});
      r.counts[detail::counts_key(other)] = extra.orbit_count();
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

/// Classify an action loaded from a spec file (or built directly).
inline ClassificationReport classify_action(const TwistedAction& action,
                                            const ClassifyRequest& req = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const OrbitSet os = orbits(action, {req.engine, false});
  ClassificationReport r;
  r.family = action.description().empty() ? "custom action" : action.description();
  r.state_count = os.state_count();
  r.counts["twisted"] = os.orbit_count();
  const bool diag = action.ambient()->all_mod2();
  for (const auto& orbit : os.orbits()) {
    OrbitRow row;
    row.representative = orbit.representative.coords();
    row.size = orbit.size;
    if (diag) row.diag = sign_string(row.representative);
    r.orbits.push_back(std::move(row));
  }
  const auto t1 = std::chrono::steady_clock::now();
  r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

/// One row of the family survey table: both counts plus whether the
/// block-wise plain count reproduces the twisted one (it does not, for any
/// p, q >= 2; the flag is computed, never assumed).
struct FamilyTableRow {
  int p = 0;
  int q = 0;
  std::uint64_t twisted = 0;
  std::uint64_t plain_w00 = 0;
  bool match = false;

  friend bool operator==(const FamilyTableRow& a, const FamilyTableRow& b) {
    return a.p == b.p && a.q == b.q && a.twisted == b.twisted && a.plain_w00 == b.plain_w00 &&
           a.match == b.match;
  }
};

struct FamilyTable {
  std::string schema_version = kReportSchemaVersion;
  int max_n = 0;
  std::vector<FamilyTableRow> rows;
};

inline FamilyTable build_family_table(int max_n, std::uint64_t limit = kDefaultEnumerationLimit) {
  if (max_n < 2) throw RankLimit("table: --max-n must be at least 2");
  if (max_n > kMaxFamilyRank) {
    std::ostringstream os;
    os << "table: --max-n " << max_n << " exceeds the rank limit " << kMaxFamilyRank;
    throw RankLimit(os.str());
  }
  FamilyTable t;
  t.max_n = max_n;
  for (int n = 2; n <= max_n; ++n) {
    for (int p = 1; p < n; ++p) {
      const int q = n - p;
      FamilyTableRow row;
      row.p = p;
      row.q = q;
      row.twisted = orbits(build_sl_so(p, q, limit)).orbit_count();
      row.plain_w00 = orbits(build_plain_w00(p, q, limit)).orbit_count();
      row.match = row.twisted == row.plain_w00;
      t.rows.push_back(row);
    }
  }
  return t;
}

inline nlohmann::json table_to_json(const FamilyTable& t) {
  nlohmann::json j;
  j["schema_version"] = t.schema_version;
  j["max_n"] = t.max_n;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : t.rows)
    j["rows"].push_back({{"p", r.p},
                         {"q", r.q},
                         {"twisted", r.twisted},
                         {"plain_w00", r.plain_w00},
                         {"match", r.match}});
  return j;
}

inline std::string render_table(const FamilyTable& t) {
  std::ostringstream os;
  os << "sl-so orbit counts, n = p+q up to " << t.max_n << '\n';
  std::vector<std::vector<std::string>> cells{{"p", "q", "twisted", "plain_w00", "match"}};
  for (const auto& r : t.rows)
    cells.push_back({std::to_string(r.p), std::to_string(r.q), std::to_string(r.twisted),
                     std::to_string(r.plain_w00), r.match ? "yes" : "no"});
  os << detail::render_grid(cells);
  return os.str();
}

}  // namespace symorb
