#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "abelian.hpp"
#include "errors.hpp"
#include "subgroup.hpp"

namespace symorb {

namespace detail {

/// Extended Euclid, returning gcd(a, b) and writing x with a*x = gcd (mod b).
inline std::int64_t egcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  std::int64_t x1, y1;
  const std::int64_t g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline std::optional<std::uint32_t> mod_inverse(std::uint32_t u, std::uint32_t m) {
  if (m == 1) return 0u;
  std::int64_t x, y;
  if (egcd(u, m, x, y) != 1) return std::nullopt;
  x %= m;
  if (x < 0) x += m;
  return static_cast<std::uint32_t>(x);
}

struct Fnv1a {
  std::uint64_t h = 1469598103934665603ull;
  void byte(std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ull;
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void str(const std::string& s) {
    u64(s.size());
    for (char c : s) byte(static_cast<std::uint8_t>(c));
  }
};

}  // namespace detail

/// One group symmetry together with a translation twist: the affine map
///   s  |->  L(s) + twist,     L(s)_{perm(i)} = units_i * s_i.
/// L is monomial (a permutation of coordinates with unit multipliers), so
/// composing and inverting stay in closed form.  The twist is the cocycle
/// value attached to the symmetry; generators with twist 0 give the plain
/// untwisted action.
class TwistedGenerator {
 public:
  /// perm is 0-based: coordinate i is sent to position perm[i].
  TwistedGenerator(std::string label, std::vector<std::uint32_t> perm,
                   const std::vector<std::int64_t>& units, GroupElement twist)
      : label_(std::move(label)), perm_(std::move(perm)), twist_(std::move(twist)) {
    const std::size_t r = twist_.group()->rank();
    if (perm_.size() != r || units.size() != r)
      throw InvalidArgument("TwistedGenerator '" + label_ +
                            "': perm and units must match the ambient rank");
    std::vector<bool> hit(r, false);
    for (auto p : perm_) {
      if (p >= r || hit[p])
        throw InvalidArgument("TwistedGenerator '" + label_ + "': perm is not a permutation");
      hit[p] = true;
    }
    units_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t m = twist_.group()->modulus(perm_[i]);
      std::int64_t u = units[i] % m;
      if (u < 0) u += m;
      units_[i] = static_cast<std::uint32_t>(u);
    }
  }

  static TwistedGenerator identity(const GroupPtr& ambient, std::string label = "id") {
    std::vector<std::uint32_t> perm(ambient->rank());
    std::iota(perm.begin(), perm.end(), 0u);
    return TwistedGenerator(std::move(label), std::move(perm),
                            std::vector<std::int64_t>(ambient->rank(), 1),
                            GroupElement::zero(ambient));
  }

  const std::string& label() const { return label_; }
  const std::vector<std::uint32_t>& perm() const { return perm_; }
  const std::vector<std::uint32_t>& units() const { return units_; }
  const GroupElement& twist() const { return twist_; }
  const GroupPtr& ambient() const { return twist_.group(); }

  /// The linear part alone, without the twist.
  GroupElement apply_linear(const GroupElement& s) const {
    if (!s.group()->same_moduli(*ambient()))
      throw AmbientMismatch("apply: state and generator ambient groups differ");
    std::vector<std::uint32_t> out(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      const std::uint32_t m = ambient()->modulus(perm_[i]);
      out[perm_[i]] = static_cast<std::uint32_t>(std::uint64_t{units_[i]} * s.coords()[i] % m);
    }
    return GroupElement(ambient(), std::move(out));
  }

  /// Equality of the underlying map; labels are presentation only.
  friend bool operator==(const TwistedGenerator& a, const TwistedGenerator& b) {
    return a.perm_ == b.perm_ && a.units_ == b.units_ && a.twist_ == b.twist_;
  }
  friend bool operator!=(const TwistedGenerator& a, const TwistedGenerator& b) {
    return !(a == b);
  }

 private:
  std::string label_;
  std::vector<std::uint32_t> perm_;
  std::vector<std::uint32_t> units_;  // units_[i] is reduced mod modulus(perm_[i])
  GroupElement twist_;
};

inline GroupElement apply(const TwistedGenerator& g, const GroupElement& s) {
  return add(g.apply_linear(s), g.twist());
}

/// Compose two twisted maps: (m . n)(s) = m(n(s)).  The twists combine by
/// the cocycle rule twist = twist_m + L_m(twist_n).
inline TwistedGenerator compose(const TwistedGenerator& m, const TwistedGenerator& n) {
  if (!m.ambient()->same_moduli(*n.ambient()))
    throw AmbientMismatch("compose: generators live in different ambient groups");
  const std::size_t r = m.perm().size();
  std::vector<std::uint32_t> perm(r);
  std::vector<std::int64_t> units(r);
  for (std::size_t i = 0; i < r; ++i) {
    perm[i] = m.perm()[n.perm()[i]];
    units[i] = static_cast<std::int64_t>(std::uint64_t{n.units()[i]} * m.units()[n.perm()[i]] %
                                         m.ambient()->modulus(perm[i]));
  }
  GroupElement twist = add(m.twist(), m.apply_linear(n.twist()));
  return TwistedGenerator(m.label() + "*" + n.label(), std::move(perm), units, std::move(twist));
}

/// Why a generator cannot be inverted, or nullopt if it can.
inline std::optional<std::string> invertibility_issue(const TwistedGenerator& g) {
  const TorsionGroup& amb = *g.ambient();
  for (std::size_t i = 0; i < g.perm().size(); ++i) {
    if (amb.modulus(g.perm()[i]) != amb.modulus(i)) {
      std::ostringstream os;
      os << "coordinate " << i << " is sent between different moduli";
      return os.str();
    }
    if (!detail::mod_inverse(g.units()[i], amb.modulus(i))) {
      std::ostringstream os;
      os << "non-invertible linear part: unit " << g.units()[i] << " shares a factor with modulus "
         << amb.modulus(i);
      return os.str();
    }
  }
  return std::nullopt;
}

inline TwistedGenerator inverse(const TwistedGenerator& g) {
  if (auto issue = invertibility_issue(g))
    throw ValidationFailed("inverse of '" + g.label() + "': " + *issue);
  const std::size_t r = g.perm().size();
  std::vector<std::uint32_t> perm(r);
  std::vector<std::int64_t> units(r);
  for (std::size_t i = 0; i < r; ++i) {
    perm[g.perm()[i]] = static_cast<std::uint32_t>(i);
    units[g.perm()[i]] =
        *detail::mod_inverse(g.units()[i], g.ambient()->modulus(i));
  }
  TwistedGenerator linv(g.label() + "^-1", std::move(perm), units, GroupElement::zero(g.ambient()));
  GroupElement twist = neg(linv.apply_linear(g.twist()));
  return TwistedGenerator(g.label() + "^-1", linv.perm(), units, std::move(twist));
}

/// A finite state set (subgroup of the ambient torsion group) acted on by a
/// list of twisted generators.  Construction checks structure (matching
/// ambients, unique labels); the semantic per-generator checks live in
/// validate().
class TwistedAction {
 public:
  TwistedAction(GroupPtr ambient, SubgroupSpec states,
                std::vector<TwistedGenerator> generators, std::string description = "")
      : ambient_(std::move(ambient)),
        states_(std::move(states)),
        generators_(std::move(generators)),
        description_(std::move(description)) {
    if (!ambient_) throw InvalidArgument("TwistedAction: null ambient group");
    if (!states_.ambient()->same_moduli(*ambient_))
      throw AmbientMismatch("TwistedAction: state subgroup has a different ambient group");
    for (const auto& g : generators_) {
      if (!g.ambient()->same_moduli(*ambient_))
        throw AmbientMismatch("TwistedAction: generator '" + g.label() +
                              "' has a different ambient group");
      for (const auto& h : generators_) {
        if (&g != &h && g.label() == h.label())
          throw InvalidArgument("TwistedAction: duplicate generator label '" + g.label() + "'");
      }
    }
    fingerprint_ = compute_fingerprint();
  }

  const GroupPtr& ambient() const { return ambient_; }
  const SubgroupSpec& states() const { return states_; }
  const std::vector<TwistedGenerator>& generators() const { return generators_; }
  const std::string& description() const { return description_; }

  /// Structural hash of moduli, state subgroup content and generator data;
  /// stable across runs, independent of the description text.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::uint64_t compute_fingerprint() const {
    detail::Fnv1a h;
    h.u64(ambient_->rank());
    for (auto m : ambient_->moduli()) h.u64(m);
    h.u64(states_.order());
    if (states_.f2_mode()) {
      for (auto b : states_.f2_basis()) h.u64(b);
    } else {
      for (std::uint64_t i = 0; i < states_.order(); ++i) h.u64(states_.rank_at(i));
    }
    h.u64(generators_.size());
    for (const auto& g : generators_) {
      h.str(g.label());
      for (auto p : g.perm()) h.u64(p);
      for (auto u : g.units()) h.u64(u);
      for (auto c : g.twist().coords()) h.u64(c);
    }
    return h.h;
  }

  GroupPtr ambient_;
  SubgroupSpec states_;
  std::vector<TwistedGenerator> generators_;
  std::string description_;
  std::uint64_t fingerprint_ = 0;
};

struct GeneratorCheck {
  std::string label;
  bool invertible = false;
  bool twist_in_states = false;
  bool preserves_states = false;
  std::string detail;

  bool ok() const { return invertible && twist_in_states && preserves_states; }
};

struct ValidationReport {
  std::vector<GeneratorCheck> generators;
  bool ok = true;

  std::string summary() const {
    std::ostringstream os;
    for (const auto& c : generators) {
      if (c.ok()) continue;
      if (os.tellp() > 0) os << "; ";
      os << "'" << c.label << "': " << (c.detail.empty() ? "failed" : c.detail);
    }
    return os.str();
  }
};

/// Check that every generator is an affine bijection of the state set:
/// invertible linear part, twist inside the states, and the linear part
/// mapping the state subgroup into itself.
inline ValidationReport validate(const TwistedAction& a) {
  ValidationReport rep;
  for (const auto& g : a.generators()) {
    GeneratorCheck c;
    c.label = g.label();
    if (auto issue = invertibility_issue(g)) {
      c.detail = *issue;
    } else {
      c.invertible = true;
    }
    c.twist_in_states = a.states().contains(g.twist());
    if (!c.twist_in_states && c.detail.empty())
      c.detail = "twist " + g.twist().to_string() + " lies outside the state subgroup";
    c.preserves_states = true;
    for (const auto& sg : a.states().generators()) {
      if (!a.states().contains(g.apply_linear(sg))) {
        c.preserves_states = false;
        if (c.detail.empty())
          c.detail = "linear part maps state " + sg.to_string() + " outside the state subgroup";
        break;
      }
    }
    rep.ok = rep.ok && c.ok();
    rep.generators.push_back(std::move(c));
  }
  return rep;
}

/// Same action with every twist replaced by zero, i.e. the plain untwisted
/// symmetry action on the same states.
inline TwistedAction with_zeroed_twists(const TwistedAction& a) {
  std::vector<TwistedGenerator> gens;
  gens.reserve(a.generators().size());
  for (const auto& g : a.generators()) {
    gens.emplace_back(g.label(), g.perm(),
                      std::vector<std::int64_t>(g.units().begin(), g.units().end()),
                      GroupElement::zero(a.ambient()));
  }
  return TwistedAction(a.ambient(), a.states(), std::move(gens), a.description());
}

}  // namespace symorb
