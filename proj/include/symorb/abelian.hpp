#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace symorb {

/// Hard cap on how many elements any enumeration is allowed to touch.
/// Groups whose order exceeds the (per-group, configurable) limit are
/// rejected at construction time, so every downstream walk is bounded.
inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1} << 24;

/// Finite abelian group in product form Z/m_1 x ... x Z/m_r, written
/// additively.  Immutable; elements refer to their group through a
/// shared_ptr, and two groups are interchangeable iff their moduli vectors
/// are equal.
///
/// Elements are indexed by a mixed-radix "rank" in [0, order): coordinate 0
/// is the most significant digit, so rank order coincides with
/// lexicographic order on coordinate vectors.
class TorsionGroup {
 public:
  explicit TorsionGroup(std::vector<std::uint32_t> moduli,
                        std::uint64_t enumeration_limit = kDefaultEnumerationLimit)
      : moduli_(std::move(moduli)), limit_(enumeration_limit) {
    if (moduli_.empty()) throw InvalidArgument("TorsionGroup: moduli list must be non-empty");
    if (limit_ == 0) throw InvalidArgument("TorsionGroup: enumeration limit must be positive");
    order_ = 1;
    for (auto m : moduli_) {
      if (m == 0) throw InvalidArgument("TorsionGroup: every modulus must be >= 1");
      if (order_ > limit_ / m) {
        std::ostringstream os;
        os << "TorsionGroup: order exceeds enumeration limit " << limit_;
        throw LimitExceeded(os.str());
      }
      order_ *= m;
    }
    strides_.assign(moduli_.size(), 1);
    for (std::size_t i = moduli_.size() - 1; i-- > 0;)
      strides_[i] = strides_[i + 1] * moduli_[i + 1];
  }

  const std::vector<std::uint32_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::uint32_t modulus(std::size_t i) const { return moduli_[i]; }
  std::uint64_t order() const { return order_; }
  std::uint64_t enumeration_limit() const { return limit_; }

  bool same_moduli(const TorsionGroup& other) const { return moduli_ == other.moduli_; }

  /// True when every factor is Z/2; enables the packed-bitmask fast paths.
  bool all_mod2() const {
    for (auto m : moduli_)
      if (m != 2) return false;
    return true;
  }

  std::uint64_t rank_of(const std::vector<std::uint32_t>& coords) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) r += std::uint64_t{coords[i]} * strides_[i];
    return r;
  }

  std::vector<std::uint32_t> coords_of(std::uint64_t rank) const {
    std::vector<std::uint32_t> c(moduli_.size());
    decode(rank, c.data());
    return c;
  }

  void decode(std::uint64_t rank, std::uint32_t* out) const {
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      out[i] = static_cast<std::uint32_t>((rank / strides_[i]) % moduli_[i]);
  }

  std::uint64_t stride(std::size_t i) const { return strides_[i]; }

 private:
  std::vector<std::uint32_t> moduli_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
  std::uint64_t limit_;
};

using GroupPtr = std::shared_ptr<const TorsionGroup>;

inline GroupPtr make_group(std::vector<std::uint32_t> moduli,
                           std::uint64_t enumeration_limit = kDefaultEnumerationLimit) {
  return std::make_shared<const TorsionGroup>(std::move(moduli), enumeration_limit);
}

/// One element of a TorsionGroup.  Coordinates are kept reduced into
/// [0, m_i); arbitrary integers passed to the constructor are reduced.
class GroupElement {
 public:
  GroupElement(GroupPtr group, const std::vector<std::int64_t>& coords)
      : group_(std::move(group)) {
    if (!group_) throw InvalidArgument("GroupElement: null group");
    if (coords.size() != group_->rank())
      throw AmbientMismatch("GroupElement: coordinate count does not match group rank");
    coords_.resize(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const std::int64_t m = group_->modulus(i);
      std::int64_t c = coords[i] % m;
      if (c < 0) c += m;
      coords_[i] = static_cast<std::uint32_t>(c);
    }
  }

  GroupElement(GroupPtr group, std::vector<std::uint32_t> coords)
      : group_(std::move(group)), coords_(std::move(coords)) {
    if (!group_) throw InvalidArgument("GroupElement: null group");
    if (coords_.size() != group_->rank())
      throw AmbientMismatch("GroupElement: coordinate count does not match group rank");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] %= group_->modulus(i);
  }

  static GroupElement zero(const GroupPtr& group) {
    return GroupElement(group, std::vector<std::uint32_t>(group->rank(), 0));
  }

  static GroupElement from_rank(const GroupPtr& group, std::uint64_t rank) {
    return GroupElement(group, group->coords_of(rank));
  }

  const std::vector<std::uint32_t>& coords() const { return coords_; }
  const GroupPtr& group() const { return group_; }
  std::uint64_t rank() const { return group_->rank_of(coords_); }

  bool is_zero() const {
    for (auto c : coords_)
      if (c != 0) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) os << ',';
      os << coords_[i];
    }
    os << ')';
    return os.str();
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_->same_moduli(*b.group_) && a.coords_ == b.coords_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

  /// Total order: moduli vector first, then coordinates lexicographically.
  /// Within one group this agrees with rank order.
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    if (!a.group_->same_moduli(*b.group_)) return a.group_->moduli() < b.group_->moduli();
    return a.coords_ < b.coords_;
  }

 private:
  GroupPtr group_;
  std::vector<std::uint32_t> coords_;
};

inline void require_same_ambient(const GroupElement& a, const GroupElement& b,
                                 const char* op) {
  if (!a.group()->same_moduli(*b.group()))
    throw AmbientMismatch(std::string(op) + ": operands live in different ambient groups");
}

inline GroupElement add(const GroupElement& a, const GroupElement& b) {
  require_same_ambient(a, b, "add");
  std::vector<std::uint32_t> out(a.coords().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t s = std::uint64_t{a.coords()[i]} + b.coords()[i];
    out[i] = static_cast<std::uint32_t>(s % a.group()->modulus(i));
  }
  return GroupElement(a.group(), std::move(out));
}

inline GroupElement neg(const GroupElement& a) {
  std::vector<std::uint32_t> out(a.coords().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t m = a.group()->modulus(i);
    out[i] = a.coords()[i] == 0 ? 0 : m - a.coords()[i];
  }
  return GroupElement(a.group(), std::move(out));
}

inline GroupElement operator+(const GroupElement& a, const GroupElement& b) { return add(a, b); }
inline GroupElement operator-(const GroupElement& a) { return neg(a); }
inline GroupElement operator-(const GroupElement& a, const GroupElement& b) {
  return add(a, neg(b));
}

/// Rank-space addition, avoiding element materialization in hot loops.
inline std::uint64_t add_ranks(const TorsionGroup& g, std::uint64_t a, std::uint64_t b) {
  if (g.all_mod2()) return a ^ b;
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const std::uint64_t m = g.modulus(i);
    const std::uint64_t ca = (a / g.stride(i)) % m;
    const std::uint64_t cb = (b / g.stride(i)) % m;
    out += ((ca + cb) % m) * g.stride(i);
  }
  return out;
}

}  // namespace symorb
