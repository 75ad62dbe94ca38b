#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "action.hpp"

namespace symorb {

enum class OrbitEngine { bfs, union_find };

struct OrbitOptions {
  OrbitEngine engine = OrbitEngine::bfs;
  bool include_members = false;
};

/// One orbit: the lexicographically least member as representative, the
/// orbit size, and (on request) the full sorted member list.
struct Orbit {
  GroupElement representative;
  std::uint64_t size = 0;
  std::optional<std::vector<GroupElement>> members;
};

/// Partition of the state set into orbits, sorted by representative.
class OrbitSet {
 public:
  OrbitSet(std::vector<Orbit> orbits, std::uint64_t state_count, std::uint64_t fingerprint)
      : orbits_(std::move(orbits)), state_count_(state_count), fingerprint_(fingerprint) {}

  const std::vector<Orbit>& orbits() const { return orbits_; }
  std::size_t orbit_count() const { return orbits_.size(); }
  std::uint64_t state_count() const { return state_count_; }

  /// Fingerprint of the action the partition was computed from.
  std::uint64_t action_fingerprint() const { return fingerprint_; }

  /// Partition equality: same representatives, sizes and (where both sides
  /// carry them) member lists.  The fingerprint is deliberately excluded so
  /// that two presentations of the same action compare equal.
  bool same_partition(const OrbitSet& o) const {
    if (state_count_ != o.state_count_ || orbits_.size() != o.orbits_.size()) return false;
    for (std::size_t i = 0; i < orbits_.size(); ++i) {
      const Orbit& a = orbits_[i];
      const Orbit& b = o.orbits_[i];
      if (a.size != b.size || !(a.representative == b.representative)) return false;
      if (a.members && b.members && !(*a.members == *b.members)) return false;
    }
    return true;
  }

  friend bool operator==(const OrbitSet& a, const OrbitSet& b) { return a.same_partition(b); }
  friend bool operator!=(const OrbitSet& a, const OrbitSet& b) { return !(a == b); }

 private:
  std::vector<Orbit> orbits_;
  std::uint64_t state_count_;
  std::uint64_t fingerprint_;
};

namespace detail {

inline constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

/// Generator over a pure mod-2 ambient, compiled to bit operations on the
/// packed rank (coordinate i lives at bit rank-1-i).
struct F2Gen {
  std::uint64_t fixed_mask = 0;
  std::uint64_t twist_mask = 0;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> moves;  // (src bit, dst bit)

  std::uint64_t apply(std::uint64_t x) const {
    std::uint64_t y = x & fixed_mask;
    for (auto [s, d] : moves) y |= ((x >> s) & 1u) << d;
    return y ^ twist_mask;
  }
};

/// Generator over arbitrary moduli, applied through decode / encode.
struct GenericGen {
  const TorsionGroup* group = nullptr;
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> units;
  std::vector<std::uint32_t> twist;

  std::uint64_t apply(std::uint64_t rank, std::uint32_t* scratch) const {
    group->decode(rank, scratch);
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const std::uint32_t m = group->modulus(perm[i]);
      const std::uint32_t v =
          static_cast<std::uint32_t>((std::uint64_t{units[i]} * scratch[i] + twist[perm[i]]) % m);
      out += std::uint64_t{v} * group->stride(perm[i]);
    }
    return out;
  }
};

/// Action compiled for rank-space evaluation.  The generator list is the
/// given one extended by the missing inverses, so one-directional sweeps
/// already explore full orbits.
struct CompiledAction {
  const SubgroupSpec* states = nullptr;
  bool f2 = false;
  std::vector<F2Gen> f2gens;
  std::vector<GenericGen> ggens;
  mutable std::vector<std::uint32_t> scratch;

  std::size_t gen_count() const { return f2 ? f2gens.size() : ggens.size(); }

  std::uint64_t apply_rank(std::size_t g, std::uint64_t rank) const {
    return f2 ? f2gens[g].apply(rank) : ggens[g].apply(rank, scratch.data());
  }

  std::uint64_t state_index(std::uint64_t rank) const {
    auto idx = states->index_of_rank(rank);
    if (!idx) throw InternalError("orbit engine: a generator left the state set");
    return *idx;
  }
};

inline std::vector<TwistedGenerator> closure_generators(const TwistedAction& a) {
  std::vector<TwistedGenerator> gens = a.generators();
  const std::size_t given = gens.size();
  for (std::size_t i = 0; i < given; ++i) {
    TwistedGenerator inv = inverse(gens[i]);
    if (std::find(gens.begin(), gens.end(), inv) == gens.end()) gens.push_back(std::move(inv));
  }
  return gens;
}

inline CompiledAction compile_action(const TwistedAction& a) {
  CompiledAction c;
  c.states = &a.states();
  c.f2 = a.ambient()->all_mod2();
  const std::size_t r = a.ambient()->rank();
  for (const auto& g : closure_generators(a)) {
    if (c.f2) {
      F2Gen fg;
      fg.twist_mask = g.twist().rank();
      for (std::size_t i = 0; i < r; ++i) {
        if (g.perm()[i] == i)
          fg.fixed_mask |= std::uint64_t{1} << (r - 1 - i);
        else
          fg.moves.emplace_back(static_cast<std::uint8_t>(r - 1 - i),
                                static_cast<std::uint8_t>(r - 1 - g.perm()[i]));
      }
      c.f2gens.push_back(std::move(fg));
    } else {
      GenericGen gg;
      gg.group = a.ambient().get();
      gg.perm = g.perm();
      gg.units = g.units();
      gg.twist = g.twist().coords();
      c.ggens.push_back(std::move(gg));
    }
  }
  c.scratch.assign(r, 0);
  return c;
}

/// assignment[i] = index of the least state in the orbit of state i.
inline std::vector<std::uint32_t> bfs_assignment(const CompiledAction& c) {
  const std::uint64_t count = c.states->order();
  std::vector<std::uint32_t> assign(count, kUnassigned);
  std::vector<std::uint32_t> stack;
  for (std::uint64_t seed = 0; seed < count; ++seed) {
    if (assign[seed] != kUnassigned) continue;
    assign[seed] = static_cast<std::uint32_t>(seed);
    stack.push_back(static_cast<std::uint32_t>(seed));
    while (!stack.empty()) {
      const std::uint32_t idx = stack.back();
      stack.pop_back();
      const std::uint64_t rank = c.states->rank_at(idx);
      for (std::size_t g = 0; g < c.gen_count(); ++g) {
        const std::uint64_t next = c.state_index(c.apply_rank(g, rank));
        if (assign[next] == kUnassigned) {
          assign[next] = static_cast<std::uint32_t>(seed);
          stack.push_back(static_cast<std::uint32_t>(next));
        }
      }
    }
  }
  return assign;
}

inline std::vector<std::uint32_t> dsu_assignment(const CompiledAction& c) {
  const std::uint64_t count = c.states->order();
  std::vector<std::uint32_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&parent](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t rank = c.states->rank_at(i);
    for (std::size_t g = 0; g < c.gen_count(); ++g) {
      const std::uint64_t j = c.state_index(c.apply_rank(g, rank));
      const std::uint32_t ra = find(static_cast<std::uint32_t>(i));
      const std::uint32_t rb = find(static_cast<std::uint32_t>(j));
      // Rooting every union at the smaller index makes find() return the
      // least member directly, matching the BFS convention.
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  std::vector<std::uint32_t> assign(count);
  for (std::uint64_t i = 0; i < count; ++i) assign[i] = find(static_cast<std::uint32_t>(i));
  return assign;
}

inline std::vector<std::uint32_t> compute_assignment(const TwistedAction& a, OrbitEngine engine) {
  if (a.states().order() > std::uint64_t{kUnassigned} - 1)
    throw LimitExceeded("orbit engine: state count exceeds 32-bit indexing");
  const CompiledAction c = compile_action(a);
  return engine == OrbitEngine::bfs ? bfs_assignment(c) : dsu_assignment(c);
}

inline void require_valid(const TwistedAction& a, const char* op) {
  const ValidationReport rep = validate(a);
  if (!rep.ok)
    throw ValidationFailed(std::string(op) + ": action failed validation: " + rep.summary());
}

}  // namespace detail

/// Raw engine output: for every state index, the index of its orbit's
/// least member.  Both engines must agree on this exactly.
inline std::vector<std::uint32_t> orbit_assignment(const TwistedAction& a, OrbitEngine engine) {
  detail::require_valid(a, "orbit_assignment");
  return detail::compute_assignment(a, engine);
}

inline OrbitSet orbits(const TwistedAction& a, const OrbitOptions& opt = {}) {
  detail::require_valid(a, "orbits");
  const std::vector<std::uint32_t> assign = detail::compute_assignment(a, opt.engine);
  const SubgroupSpec& states = a.states();
  const std::uint64_t count = states.order();

  std::vector<std::uint32_t> ordinal(count, detail::kUnassigned);
  std::vector<Orbit> list;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (assign[i] != i) continue;
    ordinal[i] = static_cast<std::uint32_t>(list.size());
    Orbit o{states.element_at(i), 0, std::nullopt};
    if (opt.include_members) o.members.emplace();
    list.push_back(std::move(o));
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    Orbit& o = list[ordinal[assign[i]]];
    o.size += 1;
    if (opt.include_members) o.members->push_back(states.element_at(i));
  }
  return OrbitSet(std::move(list), count, a.fingerprint());
}

/// The single orbit through s, with members always included.
inline Orbit orbit_of(const TwistedAction& a, const GroupElement& s) {
  detail::require_valid(a, "orbit_of");
  if (!s.group()->same_moduli(*a.ambient()))
    throw AmbientMismatch("orbit_of: state lives in a different ambient group");
  const SubgroupSpec& states = a.states();
  auto start = states.index_of_rank(s.rank());
  if (!start) throw NotAState("orbit_of: " + s.to_string() + " is not a state");

  const detail::CompiledAction c = detail::compile_action(a);
  std::vector<bool> seen(states.order(), false);
  std::vector<std::uint64_t> members{*start}, stack{*start};
  seen[*start] = true;
  while (!stack.empty()) {
    const std::uint64_t idx = stack.back();
    stack.pop_back();
    const std::uint64_t rank = states.rank_at(idx);
    for (std::size_t g = 0; g < c.gen_count(); ++g) {
      const std::uint64_t next = c.state_index(c.apply_rank(g, rank));
      if (!seen[next]) {
        seen[next] = true;
        members.push_back(next);
        stack.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  Orbit o{states.element_at(members.front()), members.size(), std::vector<GroupElement>{}};
  o.members->reserve(members.size());
  for (auto idx : members) o.members->push_back(states.element_at(idx));
  return o;
}

}  // namespace symorb
