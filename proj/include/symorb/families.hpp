#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "action.hpp"
#include "orbits.hpp"

namespace symorb {

/// Largest supported p+q for the built-in family; keeps the mod-2 ambient
/// group within the default enumeration limit (2^24 states).
inline constexpr int kMaxFamilyRank = 24;

enum class FamilyMode { twisted, plain_w0, plain_w00 };

inline const char* family_mode_name(FamilyMode m) {
  switch (m) {
    case FamilyMode::twisted: return "twisted";
    case FamilyMode::plain_w0: return "plain-w0";
    case FamilyMode::plain_w00: return "plain-w00";
  }
  return "?";
}

namespace detail {

inline void check_family_params(int p, int q, int max_rank) {
  if (p < 1 || q < 1)
    throw RankLimit("family sl-so: p and q must both be at least 1 (degenerate signature)");
  if (p + q > max_rank) {
    std::ostringstream os;
    os << "family sl-so: p+q = " << p + q << " exceeds the rank limit " << max_rank;
    throw RankLimit(os.str());
  }
}

inline GroupPtr family_ambient(int p, int q, std::uint64_t limit) {
  return make_group(std::vector<std::uint32_t>(static_cast<std::size_t>(p + q), 2u), limit);
}

/// Even-weight subgroup of (Z/2)^n, generated by adjacent coordinate pairs.
inline SubgroupSpec even_weight_states(const GroupPtr& ambient) {
  const std::size_t n = ambient->rank();
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<std::uint32_t> c(n, 0);
    c[i] = 1;
    c[i + 1] = 1;
    gens.emplace_back(ambient, std::move(c));
  }
  return SubgroupSpec::generated_by(ambient, std::move(gens));
}

inline TwistedGenerator adjacent_swap(const GroupPtr& ambient, std::size_t i, bool crossing) {
  const std::size_t n = ambient->rank();
  std::vector<std::uint32_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = static_cast<std::uint32_t>(j);
  perm[i] = static_cast<std::uint32_t>(i + 1);
  perm[i + 1] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> twist(n, 0);
  if (crossing) {
    twist[i] = 1;
    twist[i + 1] = 1;
  }
  std::ostringstream label;
  label << "r" << i + 1;
  return TwistedGenerator(label.str(), std::move(perm), std::vector<std::int64_t>(n, 1),
                          GroupElement(ambient, std::move(twist)));
}

}  // namespace detail

/// Built-in sl-so family, signature (p, q), n = p+q.  States are the
/// even-weight vectors of (Z/2)^n (sign patterns with determinant one);
/// generators are the adjacent transpositions.  The single transposition
/// crossing position p carries the twist e_p + e_{p+1}; all others carry
/// twist zero, which is exactly what separates this action from plain
/// coordinate permutation.
inline TwistedAction build_sl_so(int p, int q,
                                 std::uint64_t limit = kDefaultEnumerationLimit,
                                 int max_rank = kMaxFamilyRank) {
  detail::check_family_params(p, q, max_rank);
  GroupPtr ambient = detail::family_ambient(p, q, limit);
  const int n = p + q;
  std::vector<TwistedGenerator> gens;
  for (int i = 0; i + 1 < n; ++i)
    gens.push_back(detail::adjacent_swap(ambient, static_cast<std::size_t>(i), i + 1 == p));
  std::ostringstream desc;
  desc << "sl-so p=" << p << " q=" << q << " (twisted)";
  return TwistedAction(ambient, detail::even_weight_states(ambient), std::move(gens), desc.str());
}

/// Same states, all adjacent transpositions, every twist zero: the full
/// permutation action.  Orbits are the even weight classes.
inline TwistedAction build_plain_w0(int p, int q,
                                    std::uint64_t limit = kDefaultEnumerationLimit,
                                    int max_rank = kMaxFamilyRank) {
  detail::check_family_params(p, q, max_rank);
  GroupPtr ambient = detail::family_ambient(p, q, limit);
  const int n = p + q;
  std::vector<TwistedGenerator> gens;
  for (int i = 0; i + 1 < n; ++i)
    gens.push_back(detail::adjacent_swap(ambient, static_cast<std::size_t>(i), false));
  std::ostringstream desc;
  desc << "sl-so p=" << p << " q=" << q << " (plain-w0)";
  return TwistedAction(ambient, detail::even_weight_states(ambient), std::move(gens), desc.str());
}

/// Untwisted action of the block subgroup that permutes the first p and the
/// last q coordinates separately, never across the block boundary.  Orbits
/// are the pairs of per-block weights, which overcounts the twisted
/// classification for every p, q >= 2.
inline TwistedAction build_plain_w00(int p, int q,
                                     std::uint64_t limit = kDefaultEnumerationLimit,
                                     int max_rank = kMaxFamilyRank) {
  detail::check_family_params(p, q, max_rank);
  GroupPtr ambient = detail::family_ambient(p, q, limit);
  const int n = p + q;
  std::vector<TwistedGenerator> gens;
  for (int i = 0; i + 1 < n; ++i) {
    if (i + 1 == p) continue;
    gens.push_back(detail::adjacent_swap(ambient, static_cast<std::size_t>(i), false));
  }
  std::ostringstream desc;
  desc << "sl-so p=" << p << " q=" << q << " (plain-w00)";
  return TwistedAction(ambient, detail::even_weight_states(ambient), std::move(gens), desc.str());
}

inline TwistedAction build_family(int p, int q, FamilyMode mode,
                                  std::uint64_t limit = kDefaultEnumerationLimit,
                                  int max_rank = kMaxFamilyRank) {
  switch (mode) {
    case FamilyMode::twisted: return build_sl_so(p, q, limit, max_rank);
    case FamilyMode::plain_w0: return build_plain_w0(p, q, limit, max_rank);
    case FamilyMode::plain_w00: return build_plain_w00(p, q, limit, max_rank);
  }
  throw InvalidArgument("build_family: unknown mode");
}

/// The closed-form orbit representatives for the twisted sl-so action:
///   s_k  = ones at positions p-2k+1 .. p          (0 <= 2k <= p)
///   s'_k = ones at positions p+1 .. p+2k          (1 <= 2k <= q)
/// (1-based positions).  There are floor(p/2) + floor(q/2) + 1 of them, and
/// the twisted action has exactly one per orbit.
inline std::vector<GroupElement> sl_so_canonical_forms(int p, int q,
                                                       std::uint64_t limit = kDefaultEnumerationLimit,
                                                       int max_rank = kMaxFamilyRank) {
  detail::check_family_params(p, q, max_rank);
  GroupPtr ambient = detail::family_ambient(p, q, limit);
  const std::size_t n = static_cast<std::size_t>(p + q);
  std::vector<GroupElement> out;
  for (int k = 0; 2 * k <= p; ++k) {
    std::vector<std::uint32_t> c(n, 0);
    for (int j = p - 2 * k; j < p; ++j) c[static_cast<std::size_t>(j)] = 1;
    out.emplace_back(ambient, std::move(c));
  }
  for (int k = 1; 2 * k <= q; ++k) {
    std::vector<std::uint32_t> c(n, 0);
    for (int j = p; j < p + 2 * k; ++j) c[static_cast<std::size_t>(j)] = 1;
    out.emplace_back(ambient, std::move(c));
  }
  return out;
}

/// Canonical orbit representative of a state under the twisted sl-so
/// action: walk the orbit of s and intersect it with the closed-form list.
/// Exactly one match must exist; anything else signals a broken action and
/// raises InternalError.
inline GroupElement canonical_form_sl_so(const TwistedAction& sl_so, const GroupElement& s,
                                         int p, int q) {
  const std::vector<GroupElement> forms = sl_so_canonical_forms(p, q);
  const Orbit orbit = orbit_of(sl_so, s);
  const GroupElement* found = nullptr;
  for (const auto& m : *orbit.members) {
    for (const auto& f : forms) {
      if (m == f) {
        if (found)
          throw InternalError("canonical_form_sl_so: orbit meets the canonical list twice");
        found = &m;
      }
    }
  }
  if (!found) throw InternalError("canonical_form_sl_so: orbit misses the canonical list");
  return *found;
}

inline GroupElement canonical_form_sl_so(const GroupElement& s, int p, int q,
                                         std::uint64_t limit = kDefaultEnumerationLimit) {
  return canonical_form_sl_so(build_sl_so(p, q, limit), s, p, q);
}

}  // namespace symorb
