#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "abelian.hpp"
#include "errors.hpp"

namespace symorb {

namespace detail {

inline unsigned top_bit(std::uint64_t w) {
  return 63u - static_cast<unsigned>(std::countl_zero(w));
}

/// Reduced row echelon form of a set of F2 vectors packed into 64-bit
/// words.  Rows come back sorted by pivot, highest first; with that
/// ordering, enumerating coefficient words MSB-first yields subgroup
/// elements in increasing numeric (= lexicographic) order.
inline std::vector<std::uint64_t> f2_rref(const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> basis;
  for (std::uint64_t w : rows) {
    for (std::uint64_t b : basis)
      if ((w >> top_bit(b)) & 1u) w ^= b;
    if (!w) continue;
    auto pos = std::find_if(basis.begin(), basis.end(),
                            [&](std::uint64_t b) { return top_bit(b) < top_bit(w); });
    basis.insert(pos, w);
  }
  for (std::size_t i = 1; i < basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((basis[j] >> top_bit(basis[i])) & 1u) basis[j] ^= basis[i];
  return basis;
}

}  // namespace detail

/// Subgroup of a TorsionGroup, always produced by closing a generator set.
/// Three storage strategies behind one interface:
///   - mod-2 ambient: an F2 row-echelon basis (O(rank) membership and
///     indexing, nothing materialized),
///   - whole group: identity indexing,
///   - general case: the sorted element rank list.
/// In every case elements are exposed sorted lexicographically and
/// duplicate-free, indexed by position in that order.
class SubgroupSpec {
  enum class Mode { f2_basis, whole, explicit_list };

  struct Data {
    GroupPtr ambient;
    std::vector<GroupElement> generators;
    Mode mode;
    std::vector<std::uint64_t> f2_basis;  // Mode::f2_basis
    std::vector<std::uint64_t> ranks;     // Mode::explicit_list, sorted
    std::uint64_t order = 0;
  };

  explicit SubgroupSpec(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

 public:
  static SubgroupSpec generated_by(const GroupPtr& ambient,
                                   std::vector<GroupElement> generators) {
    if (!ambient) throw InvalidArgument("SubgroupSpec: null ambient group");
    for (const auto& g : generators)
      if (!g.group()->same_moduli(*ambient))
        throw AmbientMismatch("SubgroupSpec: generator outside the ambient group");

    auto d = std::make_shared<Data>();
    d->ambient = ambient;
    d->generators = std::move(generators);

    if (ambient->all_mod2()) {
      std::vector<std::uint64_t> rows;
      rows.reserve(d->generators.size());
      for (const auto& g : d->generators) rows.push_back(g.rank());
      d->mode = Mode::f2_basis;
      d->f2_basis = detail::f2_rref(rows);
      d->order = std::uint64_t{1} << d->f2_basis.size();
    } else {
      d->mode = Mode::explicit_list;
      d->ranks = closure_ranks(*ambient, d->generators);
      d->order = d->ranks.size();
      if (d->order == ambient->order()) {
        d->mode = Mode::whole;
        d->ranks.clear();
        d->ranks.shrink_to_fit();
      }
    }
    return SubgroupSpec(std::move(d));
  }

  static SubgroupSpec whole_group(const GroupPtr& ambient) {
    if (!ambient) throw InvalidArgument("SubgroupSpec: null ambient group");
    auto d = std::make_shared<Data>();
    d->ambient = ambient;
    for (std::size_t i = 0; i < ambient->rank(); ++i) {
      std::vector<std::uint32_t> c(ambient->rank(), 0);
      if (ambient->modulus(i) > 1) c[i] = 1;
      d->generators.emplace_back(ambient, std::move(c));
    }
    if (ambient->all_mod2()) {
      d->mode = Mode::f2_basis;
      std::vector<std::uint64_t> rows;
      for (const auto& g : d->generators) rows.push_back(g.rank());
      d->f2_basis = detail::f2_rref(rows);
    } else {
      d->mode = Mode::whole;
    }
    d->order = ambient->order();
    return SubgroupSpec(std::move(d));
  }

  static SubgroupSpec trivial(const GroupPtr& ambient) {
    return generated_by(ambient, {});
  }

  const GroupPtr& ambient() const { return d_->ambient; }
  const std::vector<GroupElement>& generators() const { return d_->generators; }
  std::uint64_t order() const { return d_->order; }
  bool is_whole_group() const { return d_->order == d_->ambient->order(); }

  bool f2_mode() const { return d_->mode == Mode::f2_basis; }
  const std::vector<std::uint64_t>& f2_basis() const { return d_->f2_basis; }

  /// Position of the element with the given ambient rank in the sorted
  /// element list, or nullopt if it is not a member.
  std::optional<std::uint64_t> index_of_rank(std::uint64_t rank) const {
    switch (d_->mode) {
      case Mode::f2_basis: {
        std::uint64_t w = rank, idx = 0;
        const std::size_t k = d_->f2_basis.size();
        for (std::size_t i = 0; i < k; ++i) {
          const std::uint64_t b = d_->f2_basis[i];
          if ((w >> detail::top_bit(b)) & 1u) {
            idx |= std::uint64_t{1} << (k - 1 - i);
            w ^= b;
          }
        }
        if (w) return std::nullopt;
        return idx;
      }
      case Mode::whole:
        return rank < d_->order ? std::optional<std::uint64_t>(rank) : std::nullopt;
      case Mode::explicit_list: {
        auto it = std::lower_bound(d_->ranks.begin(), d_->ranks.end(), rank);
        if (it == d_->ranks.end() || *it != rank) return std::nullopt;
        return static_cast<std::uint64_t>(it - d_->ranks.begin());
      }
    }
    return std::nullopt;
  }

  std::uint64_t rank_at(std::uint64_t index) const {
    if (index >= d_->order) throw InvalidArgument("SubgroupSpec: element index out of range");
    switch (d_->mode) {
      case Mode::f2_basis: {
        std::uint64_t w = 0;
        const std::size_t k = d_->f2_basis.size();
        for (std::size_t i = 0; i < k; ++i)
          if ((index >> (k - 1 - i)) & 1u) w ^= d_->f2_basis[i];
        return w;
      }
      case Mode::whole:
        return index;
      case Mode::explicit_list:
        return d_->ranks[index];
    }
    return 0;
  }

  GroupElement element_at(std::uint64_t index) const {
    return GroupElement::from_rank(d_->ambient, rank_at(index));
  }

  bool contains(const GroupElement& x) const {
    if (!x.group()->same_moduli(*d_->ambient)) return false;
    return index_of_rank(x.rank()).has_value();
  }

  /// Throwing variant of index_of_rank for callers that require membership.
  std::uint64_t index_of(const GroupElement& x) const {
    if (!x.group()->same_moduli(*d_->ambient))
      throw AmbientMismatch("SubgroupSpec: element from a different ambient group");
    auto idx = index_of_rank(x.rank());
    if (!idx) throw NotAState("SubgroupSpec: element " + x.to_string() + " is not a member");
    return *idx;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(d_->order);
    for (std::uint64_t i = 0; i < d_->order; ++i) out.push_back(element_at(i));
    return out;
  }

  /// Content equality: same ambient moduli and same element set.
  friend bool operator==(const SubgroupSpec& a, const SubgroupSpec& b) {
    if (!a.ambient()->same_moduli(*b.ambient())) return false;
    if (a.order() != b.order()) return false;
    for (std::uint64_t i = 0; i < a.order(); ++i)
      if (a.rank_at(i) != b.rank_at(i)) return false;
    return true;
  }
  friend bool operator!=(const SubgroupSpec& a, const SubgroupSpec& b) { return !(a == b); }

 private:
  static std::vector<std::uint64_t> closure_ranks(const TorsionGroup& g,
                                                  const std::vector<GroupElement>& gens) {
    std::vector<bool> seen(g.order(), false);
    std::vector<std::uint64_t> out{0}, stack{0};
    seen[0] = true;
    std::vector<std::uint64_t> gen_ranks;
    for (const auto& e : gens) gen_ranks.push_back(e.rank());
    while (!stack.empty()) {
      const std::uint64_t r = stack.back();
      stack.pop_back();
      for (auto gr : gen_ranks) {
        const std::uint64_t s = add_ranks(g, r, gr);
        if (!seen[s]) {
          seen[s] = true;
          out.push_back(s);
          stack.push_back(s);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::shared_ptr<const Data> d_;
};

/// Subgroup of elements x with 2x = 0, i.e. the product of the (m_i/2)*e_i
/// cyclic pieces over the even moduli.
inline SubgroupSpec two_torsion(const GroupPtr& group) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < group->rank(); ++i) {
    if (group->modulus(i) % 2 != 0) continue;
    std::vector<std::uint32_t> c(group->rank(), 0);
    c[i] = group->modulus(i) / 2;
    gens.emplace_back(group, std::move(c));
  }
  return SubgroupSpec::generated_by(group, std::move(gens));
}

/// Image of a subgroup under doubling: {2s : s in S}.
inline SubgroupSpec squares(const SubgroupSpec& s) {
  std::vector<GroupElement> gens;
  for (const auto& g : s.generators()) gens.push_back(add(g, g));
  return SubgroupSpec::generated_by(s.ambient(), std::move(gens));
}

inline std::vector<GroupElement> enumerate(const SubgroupSpec& s) { return s.elements(); }

/// Coset decomposition of S modulo a subgroup N <= S.  Representatives are
/// the lexicographically least member of each coset, listed in increasing
/// order; project() is idempotent and constant on cosets.
class Quotient {
 public:
  Quotient(SubgroupSpec subgroup, SubgroupSpec normal)
      : subgroup_(std::move(subgroup)), normal_(std::move(normal)) {
    if (!normal_.ambient()->same_moduli(*subgroup_.ambient()))
      throw AmbientMismatch("quotient: subgroups live in different ambient groups");
    for (const auto& g : normal_.generators())
      if (!subgroup_.contains(g))
        throw NotASubgroup("quotient: divisor is not contained in the subgroup");

    const TorsionGroup& amb = *subgroup_.ambient();
    std::vector<std::uint64_t> n_ranks;
    n_ranks.reserve(normal_.order());
    for (std::uint64_t i = 0; i < normal_.order(); ++i) n_ranks.push_back(normal_.rank_at(i));

    const std::uint64_t count = subgroup_.order();
    rep_ordinal_.assign(count, std::numeric_limits<std::uint32_t>::max());
    for (std::uint64_t i = 0; i < count; ++i) {
      if (rep_ordinal_[i] != std::numeric_limits<std::uint32_t>::max()) continue;
      const std::uint32_t ordinal = static_cast<std::uint32_t>(representatives_.size());
      const std::uint64_t rep_rank = subgroup_.rank_at(i);
      representatives_.push_back(GroupElement::from_rank(subgroup_.ambient(), rep_rank));
      for (auto nr : n_ranks) {
        const std::uint64_t member = add_ranks(amb, rep_rank, nr);
        auto idx = subgroup_.index_of_rank(member);
        if (!idx) throw InternalError("quotient: coset member escaped the subgroup");
        rep_ordinal_[*idx] = ordinal;
      }
    }
  }

  const SubgroupSpec& subgroup() const { return subgroup_; }
  const SubgroupSpec& divisor() const { return normal_; }
  const std::vector<GroupElement>& representatives() const { return representatives_; }

  GroupElement project(const GroupElement& x) const {
    return representatives_[rep_ordinal_[subgroup_.index_of(x)]];
  }

 private:
  SubgroupSpec subgroup_;
  SubgroupSpec normal_;
  std::vector<GroupElement> representatives_;
  std::vector<std::uint32_t> rep_ordinal_;
};

inline Quotient quotient(const SubgroupSpec& subgroup, const SubgroupSpec& divisor) {
  return Quotient(subgroup, divisor);
}

}  // namespace symorb
