#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "action.hpp"
#include "errors.hpp"

namespace symorb {

namespace detail {

inline std::string json_position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << col;
  return os.str();
}

inline void reject_unknown_fields(const nlohmann::json& obj, const std::set<std::string>& known,
                                  const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key()))
      throw ParseError("action spec: unknown field '" + it.key() + "' in " + where);
  }
}

inline std::vector<std::int64_t> int_vector(const nlohmann::json& arr, std::size_t want,
                                            const std::string& where) {
  if (!arr.is_array() || arr.size() != want) {
    std::ostringstream os;
    os << "action spec: " << where << " must be an array of " << want << " integers";
    throw ParseError(os.str());
  }
  std::vector<std::int64_t> out;
  out.reserve(want);
  for (const auto& v : arr) {
    if (!v.is_number_integer())
      throw ParseError("action spec: " + where + " must contain only integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

}  // namespace detail

/// Build an action from its JSON description.  Schema:
///   {
///     "moduli": [m_1, ..., m_r],
///     "states": {"generators": [[...], ...]} | {"predicate": "even_weight"} | {"all": true},
///     "generators": [{"label": str, "perm": [1-based images],
///                     "units": [...], "twist": [...]}, ...],
///     "description": str            (optional)
///   }
/// Unknown fields are rejected.  The resulting action must pass validate().
inline TwistedAction parse_action_spec(const std::string& text,
                                       std::uint64_t limit = kDefaultEnumerationLimit) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("action spec: invalid JSON at " + detail::json_position(text, e.byte) +
                     ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("action spec: top level must be an object");
  detail::reject_unknown_fields(j, {"moduli", "states", "generators", "description"},
                                "the top-level object");
  for (const char* required : {"moduli", "states", "generators"})
    if (!j.contains(required))
      throw ParseError(std::string("action spec: missing field '") + required + "'");

  if (!j["moduli"].is_array() || j["moduli"].empty())
    throw ParseError("action spec: 'moduli' must be a non-empty array");
  std::vector<std::uint32_t> moduli;
  for (const auto& v : j["moduli"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      throw ParseError("action spec: every modulus must be an integer >= 1");
    moduli.push_back(static_cast<std::uint32_t>(v.get<std::int64_t>()));
  }
  const std::size_t r = moduli.size();
  GroupPtr ambient = make_group(std::move(moduli), limit);

  const nlohmann::json& st = j["states"];
  if (!st.is_object()) throw ParseError("action spec: 'states' must be an object");
  detail::reject_unknown_fields(st, {"generators", "predicate", "all"}, "'states'");
  if (st.size() != 1)
    throw ParseError("action spec: 'states' must contain exactly one of "
                     "'generators', 'predicate', 'all'");
  SubgroupSpec states = SubgroupSpec::trivial(ambient);
  if (st.contains("generators")) {
    if (!st["generators"].is_array())
      throw ParseError("action spec: 'states.generators' must be an array");
    std::vector<GroupElement> gens;
    std::size_t k = 0;
    for (const auto& row : st["generators"]) {
      std::ostringstream where;
      where << "'states.generators[" << k++ << "]'";
      gens.emplace_back(ambient, detail::int_vector(row, r, where.str()));
    }
    states = SubgroupSpec::generated_by(ambient, std::move(gens));
  } else if (st.contains("predicate")) {
    if (!st["predicate"].is_string() || st["predicate"].get<std::string>() != "even_weight")
      throw ParseError("action spec: the only supported states predicate is \"even_weight\"");
    if (!ambient->all_mod2())
      throw ParseError("action spec: the even_weight predicate needs a (Z/2)^r ambient group");
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i + 1 < r; ++i) {
      std::vector<std::uint32_t> c(r, 0);
      c[i] = 1;
      c[i + 1] = 1;
      gens.emplace_back(ambient, std::move(c));
    }
    states = SubgroupSpec::generated_by(ambient, std::move(gens));
  } else {
    if (!st["all"].is_boolean() || !st["all"].get<bool>())
      throw ParseError("action spec: 'states.all' must be true when present");
    states = SubgroupSpec::whole_group(ambient);
  }

  if (!j["generators"].is_array())
    throw ParseError("action spec: 'generators' must be an array");
  std::vector<TwistedGenerator> gens;
  std::size_t gi = 0;
  for (const auto& g : j["generators"]) {
    std::ostringstream at;
    at << "'generators[" << gi++ << "]'";
    if (!g.is_object()) throw ParseError("action spec: " + at.str() + " must be an object");
    detail::reject_unknown_fields(g, {"label", "perm", "units", "twist"}, at.str());
    for (const char* required : {"label", "perm", "units", "twist"})
      if (!g.contains(required))
        throw ParseError("action spec: " + at.str() + " is missing '" + required + "'");
    if (!g["label"].is_string())
      throw ParseError("action spec: " + at.str() + " label must be a string");
    const std::string label = g["label"].get<std::string>();

    std::vector<std::int64_t> perm1 = detail::int_vector(g["perm"], r, at.str() + ".perm");
    std::vector<std::uint32_t> perm(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (perm1[i] < 1 || perm1[i] > static_cast<std::int64_t>(r))
        throw ParseError("action spec: " + at.str() + ".perm entries must lie in 1.." +
                         std::to_string(r));
      perm[i] = static_cast<std::uint32_t>(perm1[i] - 1);
    }
    std::vector<std::int64_t> units = detail::int_vector(g["units"], r, at.str() + ".units");
    GroupElement twist(ambient, detail::int_vector(g["twist"], r, at.str() + ".twist"));
    try {
      gens.emplace_back(label, std::move(perm), units, std::move(twist));
    } catch (const InvalidArgument& e) {
      throw ParseError("action spec: " + at.str() + ": " + e.what());
    }
  }

  std::string description;
  if (j.contains("description")) {
    if (!j["description"].is_string())
      throw ParseError("action spec: 'description' must be a string");
    description = j["description"].get<std::string>();
  }

  try {
    TwistedAction action(ambient, std::move(states), std::move(gens), description);
    const ValidationReport rep = validate(action);
    if (!rep.ok)
      throw ValidationFailed("action spec: validation failed: " + rep.summary());
    return action;
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("action spec: ") + e.what());
  }
}

inline TwistedAction load_action_spec(const std::string& path,
                                      std::uint64_t limit = kDefaultEnumerationLimit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("action spec: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_action_spec(buf.str(), limit);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " [" + path + "]");
  }
}

}  // namespace symorb
