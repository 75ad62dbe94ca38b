#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "action.hpp"
#include "errors.hpp"

namespace symorb {

namespace detail {

inline void check_slice_params(int p, int q, std::size_t rank) {
  if (p < 1 || q < 1) throw RankLimit("slice: p and q must both be at least 1");
  if (static_cast<std::size_t>(p + q) != rank)
    throw AmbientMismatch("slice: coordinate count does not match p+q");
}

inline bool even_weight(const std::vector<std::uint32_t>& coords) {
  std::uint32_t parity = 0;
  for (auto c : coords) parity ^= (c & 1u);
  return parity == 0;
}

}  // namespace detail

/// Fourth-root lift of a state of the (p, q) family: a point t of (Z/4)^r
/// whose coordinate-wise square recovers a state.  Entries encode fourth
/// roots of unity additively (0 -> 1, 1 -> i, 2 -> -1, 3 -> -i), so the
/// square of an entry is its value mod 2.  Lifts are only unique up to the
/// two-torsion translation {0,2}^r; comparisons go through
/// same_mod_two_torsion.
struct SlicePoint {
  GroupElement t;
  int p = 0;
  int q = 0;
};

inline SlicePoint make_slice_point(GroupElement t, int p, int q) {
  detail::check_slice_params(p, q, t.group()->rank());
  for (std::size_t i = 0; i < t.group()->rank(); ++i)
    if (t.group()->modulus(i) != 4)
      throw AmbientMismatch("slice: lift coordinates must live in (Z/4)^r");
  if (!detail::even_weight(t.coords()))
    throw NotAState("slice: the square of " + t.to_string() + " is not a state");
  return SlicePoint{std::move(t), p, q};
}

inline GroupPtr slice_group(int p, int q, std::uint64_t limit = kDefaultEnumerationLimit) {
  if (p < 1 || q < 1) throw RankLimit("slice: p and q must both be at least 1");
  return make_group(std::vector<std::uint32_t>(static_cast<std::size_t>(p + q), 4u), limit);
}

/// Coordinate-wise squaring (Z/4)^r -> (Z/2)^r: t_i -> t_i mod 2.
inline GroupElement square_map(const SlicePoint& x) {
  GroupPtr target = make_group(
      std::vector<std::uint32_t>(x.t.group()->rank(), 2u), x.t.group()->enumeration_limit());
  std::vector<std::uint32_t> c(x.t.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.t.coords()[i] & 1u;
  return GroupElement(target, std::move(c));
}

/// Canonical square root of a twist value: each mod-2 entry lifts to the
/// principal root (0 -> 0, 1 -> 1, i.e. sqrt(-1) = i).  Any other choice
/// differs by two-torsion, which the comparison quotients away.
inline SlicePoint sqrt_twist(const GroupElement& c, int p, int q) {
  detail::check_slice_params(p, q, c.group()->rank());
  for (std::size_t i = 0; i < c.group()->rank(); ++i)
    if (c.group()->modulus(i) != 2)
      throw AmbientMismatch("sqrt_twist: twist must live in (Z/2)^r");
  GroupPtr lifted = slice_group(p, q, c.group()->enumeration_limit());
  std::vector<std::uint32_t> out(c.coords().begin(), c.coords().end());
  return make_slice_point(GroupElement(lifted, std::move(out)), p, q);
}

/// Action of a state-level generator on lifts: permute coordinates (units
/// lift to 1) and translate by the canonical square root of the twist.
/// Squaring a slice orbit recovers the state orbit of the square.
inline SlicePoint slice_action(const TwistedGenerator& n, const SlicePoint& x) {
  if (n.ambient()->rank() != x.t.group()->rank())
    throw AmbientMismatch("slice_action: generator and lift ranks differ");
  for (std::size_t i = 0; i < n.ambient()->rank(); ++i) {
    if (n.ambient()->modulus(i) != 2)
      throw AmbientMismatch("slice_action: generator must act on (Z/2)^r states");
    if (n.units()[i] != 1)
      throw ValidationFailed("slice_action: generator '" + n.label() +
                             "' has a degenerate linear part");
  }
  const std::vector<std::uint32_t>& perm = n.perm();
  std::vector<std::uint32_t> out(x.t.coords().size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = x.t.coords()[i];
  for (std::size_t i = 0; i < perm.size(); ++i)
    out[i] = (out[i] + n.twist().coords()[i]) % 4u;
  return SlicePoint{GroupElement(x.t.group(), std::move(out)), x.p, x.q};
}

/// Reduce a lift to its canonical coset representative modulo the
/// two-torsion translations {0,2}^r: entries 0/1 survive, 2 -> 0, 3 -> 1.
inline SlicePoint reduce_mod_two_torsion(const SlicePoint& x) {
  std::vector<std::uint32_t> c(x.t.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.t.coords()[i] & 1u;
  return SlicePoint{GroupElement(x.t.group(), std::move(c)), x.p, x.q};
}

inline bool same_mod_two_torsion(const SlicePoint& a, const SlicePoint& b) {
  if (a.p != b.p || a.q != b.q) return false;
  if (a.t.coords().size() != b.t.coords().size()) return false;
  for (std::size_t i = 0; i < a.t.coords().size(); ++i)
    if ((a.t.coords()[i] & 1u) != (b.t.coords()[i] & 1u)) return false;
  return true;
}

/// Signature of the real form attached to a state of the (p, q) family.
struct SignaturePair {
  int pos = 0;
  int neg = 0;

  friend bool operator==(const SignaturePair& a, const SignaturePair& b) {
    return a.pos == b.pos && a.neg == b.neg;
  }
  friend bool operator!=(const SignaturePair& a, const SignaturePair& b) { return !(a == b); }
  friend bool operator<(const SignaturePair& a, const SignaturePair& b) {
    return a.pos != b.pos ? a.pos < b.pos : a.neg < b.neg;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(' << pos << ',' << neg << ')';
    return os.str();
  }
};

/// Count how many diagonal entries of the form defined by a state stay
/// positive: coordinate j contributes +1 when s_j flipped across the block
/// boundary is trivial, i.e. pos = #{j : s_j = 0, j <= p} + #{j : s_j = 1,
/// j > p} with 1-based j.  Constant on twisted orbits, and a complete orbit
/// invariant for the built-in family.
inline SignaturePair signature(const GroupElement& s, int p, int q) {
  detail::check_slice_params(p, q, s.group()->rank());
  for (std::size_t i = 0; i < s.group()->rank(); ++i)
    if (s.group()->modulus(i) != 2)
      throw AmbientMismatch("signature: state must live in (Z/2)^r");
  if (!detail::even_weight(s.coords()))
    throw NotAState("signature: " + s.to_string() + " is not a state (odd weight)");
  int pos = 0;
  const int n = p + q;
  for (int j = 0; j < n; ++j) {
    const std::uint32_t flipped = s.coords()[static_cast<std::size_t>(j)] ^ (j >= p ? 1u : 0u);
    if (flipped == 0) ++pos;
  }
  return SignaturePair{pos, n - pos};
}

}  // namespace symorb
