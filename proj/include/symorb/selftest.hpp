#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "families.hpp"
#include "orbits.hpp"
#include "report.hpp"
#include "slice.hpp"

namespace symorb {

struct SelftestOptions {
  int max_n = 12;          // largest p+q the family suites sweep
  std::string suite;       // empty = every suite
  bool inject_zero_twist = false;  // fault injection: drop the crossing twist
  std::uint64_t limit = kDefaultEnumerationLimit;
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failure_count = 0;
  std::vector<std::string> failures;  // first few messages only

  bool passed() const { return failure_count == 0; }
};

namespace detail {

class SuiteChecker {
 public:
  explicit SuiteChecker(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const char* what) {
    ++result_.checks;
    if (!ok) record(what);
  }

  template <class MessageFn>
  void check(bool ok, MessageFn&& message) {
    ++result_.checks;
    if (!ok) record(message());
  }

  SuiteResult take() { return std::move(result_); }

 private:
  void record(std::string what) {
    ++result_.failure_count;
    if (result_.failures.size() < 8) result_.failures.push_back(std::move(what));
  }

  SuiteResult result_;
};

inline TwistedAction twisted_family(int p, int q, const SelftestOptions& o) {
  TwistedAction a = build_sl_so(p, q, o.limit);
  return o.inject_zero_twist ? with_zeroed_twists(a) : a;
}

/// Small zoo of actions exercising both engine paths: mod-2 families,
/// non-trivial units over Z/4 and Z/3, a proper-subgroup state set and the
/// generator-free edge case.
inline std::vector<TwistedAction> engine_corpus(const SelftestOptions& o) {
  std::vector<TwistedAction> out;
  out.push_back(twisted_family(1, 1, o));
  out.push_back(twisted_family(2, 1, o));
  out.push_back(twisted_family(2, 2, o));
  if (o.max_n >= 5) out.push_back(twisted_family(3, 2, o));
  if (o.max_n >= 8) out.push_back(twisted_family(4, 4, o));
  out.push_back(build_plain_w00(2, 2, o.limit));

  {
    GroupPtr g = make_group({4, 4}, o.limit);
    std::vector<TwistedGenerator> gens;
    gens.emplace_back("swap", std::vector<std::uint32_t>{1, 0}, std::vector<std::int64_t>{1, 3},
                      GroupElement(g, std::vector<std::int64_t>{1, 2}));
    gens.emplace_back("scale", std::vector<std::uint32_t>{0, 1}, std::vector<std::int64_t>{3, 3},
                      GroupElement(g, std::vector<std::int64_t>{2, 0}));
    out.emplace_back(g, SubgroupSpec::whole_group(g), std::move(gens), "mu4 pair");
  }
  {
    GroupPtr g = make_group({4, 4}, o.limit);
    std::vector<TwistedGenerator> gens;
    gens.emplace_back("shift", std::vector<std::uint32_t>{0, 1}, std::vector<std::int64_t>{3, 1},
                      GroupElement(g, std::vector<std::int64_t>{2, 0}));
    out.emplace_back(g, two_torsion(g), std::move(gens), "two-torsion states");
  }
  {
    GroupPtr g = make_group({3, 3}, o.limit);
    std::vector<TwistedGenerator> gens;
    gens.emplace_back("rot", std::vector<std::uint32_t>{1, 0}, std::vector<std::int64_t>{2, 2},
                      GroupElement(g, std::vector<std::int64_t>{1, 2}));
    out.emplace_back(g, SubgroupSpec::whole_group(g), std::move(gens), "odd modulus");
  }
  {
    GroupPtr g = make_group({2, 2}, o.limit);
    out.emplace_back(g, detail::even_weight_states(g), std::vector<TwistedGenerator>{},
                     "no generators");
  }
  return out;
}

inline std::vector<TwistedGenerator> generators_with_inverses(const TwistedAction& a) {
  return closure_generators(a);
}

inline SuiteResult suite_abelian(const SelftestOptions& o) {
  SuiteChecker c("abelian");
  const std::vector<std::vector<std::uint32_t>> shapes = {
      {2, 2, 2}, {4, 4}, {3}, {2, 4, 3}};
  for (const auto& moduli : shapes) {
    GroupPtr g = make_group(moduli, o.limit);
    const std::uint64_t n = g->order();
    const GroupElement zero = GroupElement::zero(g);
    for (std::uint64_t i = 0; i < n; ++i) {
      const GroupElement a = GroupElement::from_rank(g, i);
      c.check(add(a, zero) == a, "zero is not neutral");
      c.check(add(a, neg(a)).is_zero(), "a + (-a) != 0");
      c.check(neg(neg(a)) == a, "negation is not an involution");
      for (std::uint64_t j = i; j < n; ++j) {
        const GroupElement b = GroupElement::from_rank(g, j);
        c.check(add(a, b) == add(b, a), "addition is not commutative");
      }
    }
    for (std::uint64_t i = 0; i < n; i += 3)
      for (std::uint64_t j = 1; j < n; j += 5)
        for (std::uint64_t k = 2; k < n; k += 7) {
          const GroupElement a = GroupElement::from_rank(g, i);
          const GroupElement b = GroupElement::from_rank(g, j);
          const GroupElement d = GroupElement::from_rank(g, k);
          c.check(add(add(a, b), d) == add(a, add(b, d)), "addition is not associative");
        }

    const SubgroupSpec t2 = two_torsion(g);
    for (std::uint64_t i = 0; i < n; ++i) {
      const GroupElement a = GroupElement::from_rank(g, i);
      c.check(t2.contains(a) == add(a, a).is_zero(),
              "two_torsion disagrees with the doubling kernel");
    }

    const SubgroupSpec whole = SubgroupSpec::whole_group(g);
    const SubgroupSpec sq = squares(whole);
    std::set<std::uint64_t> doubled;
    for (std::uint64_t i = 0; i < n; ++i)
      doubled.insert(add_ranks(*g, i, i));
    c.check(doubled.size() == sq.order(), "squares order mismatch");
    for (auto r : doubled)
      c.check(sq.contains(GroupElement::from_rank(g, r)), "doubled element missing in squares");

    const Quotient qu = quotient(whole, t2);
    c.check(whole.order() == t2.order() * qu.representatives().size(),
            "quotient size law fails");
    for (std::uint64_t i = 0; i < n; ++i) {
      const GroupElement a = GroupElement::from_rank(g, i);
      const GroupElement pa = qu.project(a);
      c.check(qu.project(pa) == pa, "projection is not idempotent");
      for (std::uint64_t j = 0; j < t2.order(); ++j)
        c.check(qu.project(add(a, t2.element_at(j))) == pa,
                "projection is not constant on cosets");
    }
  }

  {
    GroupPtr g = make_group({2, 2, 2}, o.limit);
    const SubgroupSpec even = detail::even_weight_states(g);
    const std::vector<GroupElement> want = {
        GroupElement(g, std::vector<std::int64_t>{0, 0, 0}),
        GroupElement(g, std::vector<std::int64_t>{0, 1, 1}),
        GroupElement(g, std::vector<std::int64_t>{1, 0, 1}),
        GroupElement(g, std::vector<std::int64_t>{1, 1, 0})};
    c.check(enumerate(even) == want, "even-weight subgroup of (Z/2)^3 is wrong");
  }
  {
    GroupPtr g = make_group({4}, o.limit);
    const Quotient qu = quotient(SubgroupSpec::whole_group(g), two_torsion(g));
    c.check(qu.representatives().size() == 2 && qu.representatives()[0].coords()[0] == 0 &&
                qu.representatives()[1].coords()[0] == 1,
            "Z/4 modulo {0,2} must have representatives (0),(1)");
  }
  return c.take();
}

inline SuiteResult suite_cocycle(const SelftestOptions& o) {
  SuiteChecker c("cocycle");
  for (const auto& a : engine_corpus(o)) {
    const auto gens = generators_with_inverses(a);
    const TwistedGenerator id = TwistedGenerator::identity(a.ambient());
    const std::uint64_t n = a.states().order();
    const std::uint64_t step = n <= 1024 ? 1 : n / 512;
    for (const auto& g : gens) {
      c.check(compose(g, id) == g, "compose with identity on the right changed the map");
      c.check(compose(id, g) == g, "compose with identity on the left changed the map");
      c.check(compose(g, inverse(g)) == id, "g * g^-1 is not the identity");
      c.check(compose(inverse(g), g) == id, "g^-1 * g is not the identity");
    }
    for (std::size_t x = 0; x < gens.size(); ++x) {
      for (std::size_t y = 0; y < gens.size(); ++y) {
        const TwistedGenerator comp = compose(gens[x], gens[y]);
        for (std::uint64_t i = 0; i < n; i += step) {
          const GroupElement s = a.states().element_at(i);
          c.check(apply(comp, s) == apply(gens[x], apply(gens[y], s)), [&] {
            return "composition law fails on " + a.description() + " at state " + s.to_string();
          });
        }
      }
    }
  }
  return c.take();
}

inline SuiteResult suite_bijectivity(const SelftestOptions& o) {
  SuiteChecker c("bijectivity");
  for (const auto& a : engine_corpus(o)) {
    const std::uint64_t n = a.states().order();
    for (const auto& g : generators_with_inverses(a)) {
      std::vector<bool> hit(n, false);
      std::uint64_t hits = 0;
      bool injective = true, closed = true;
      for (std::uint64_t i = 0; i < n; ++i) {
        const GroupElement img = apply(g, a.states().element_at(i));
        const auto idx = a.states().index_of_rank(img.rank());
        if (!idx) {
          closed = false;
          break;
        }
        if (hit[*idx]) injective = false;
        hit[*idx] = true;
        ++hits;
      }
      c.check(closed, [&] {
        return "generator '" + g.label() + "' leaves the states of " + a.description();
      });
      c.check(injective && hits == n, [&] {
        return "generator '" + g.label() + "' is not a bijection on " + a.description();
      });
    }
  }
  return c.take();
}

inline SuiteResult suite_partition(const SelftestOptions& o) {
  SuiteChecker c("partition");
  for (const auto& a : engine_corpus(o)) {
    const OrbitSet os = orbits(a, {OrbitEngine::bfs, true});
    const std::uint64_t n = a.states().order();
    c.check(os.state_count() == n, "state count mismatch");
    std::uint64_t total = 0;
    std::vector<bool> seen(n, false);
    const Orbit* prev = nullptr;
    for (const auto& orbit : os.orbits()) {
      total += orbit.size;
      c.check(orbit.members && orbit.members->size() == orbit.size,
              "member list size disagrees with orbit size");
      c.check(!orbit.members->empty() && orbit.members->front() == orbit.representative,
              "representative is not the least member");
      c.check(std::is_sorted(orbit.members->begin(), orbit.members->end()),
              "members are not sorted");
      for (const auto& m : *orbit.members) {
        const auto idx = a.states().index_of_rank(m.rank());
        c.check(idx && !seen[*idx], "orbits overlap or leave the states");
        if (idx) seen[*idx] = true;
      }
      if (prev)
        c.check(prev->representative < orbit.representative,
                "orbits are not sorted by representative");
      prev = &orbit;
    }
    c.check(total == n, "orbit sizes do not sum to the state count");

    for (std::size_t k = 0; k < os.orbit_count(); ++k) {
      const Orbit& orbit = os.orbits()[k];
      const GroupElement probe =
          orbit.members->at(orbit.members->size() / 2);
      const Orbit single = orbit_of(a, probe);
      c.check(single.representative == orbit.representative && single.size == orbit.size &&
                  *single.members == *orbit.members,
              "orbit_of disagrees with the full partition");
    }
  }
  return c.take();
}

inline SuiteResult suite_engines(const SelftestOptions& o) {
  SuiteChecker c("engines");
  for (const auto& a : engine_corpus(o)) {
    const auto bfs = orbit_assignment(a, OrbitEngine::bfs);
    const auto dsu = orbit_assignment(a, OrbitEngine::union_find);
    c.check(bfs == dsu, [&] { return "engines disagree on " + a.description(); });
    const OrbitSet o1 = orbits(a, {OrbitEngine::bfs, true});
    const OrbitSet o2 = orbits(a, {OrbitEngine::union_find, true});
    const OrbitSet o3 = orbits(a, {OrbitEngine::bfs, true});
    c.check(o1 == o2, [&] { return "engine orbit sets differ on " + a.description(); });
    c.check(o1 == o3, [&] { return "repeated runs differ on " + a.description(); });
    c.check(o1.action_fingerprint() == a.fingerprint(), "fingerprint not propagated");
  }
  return c.take();
}

inline SuiteResult suite_canonical(const SelftestOptions& o) {
  SuiteChecker c("canonical");
  for (int n = 2; n <= o.max_n; ++n) {
    for (int p = 1; p < n; ++p) {
      const int q = n - p;
      const TwistedAction a = twisted_family(p, q, o);
      const OrbitSet os = orbits(a, {OrbitEngine::bfs, true});
      const std::uint64_t expected =
          static_cast<std::uint64_t>(p / 2 + q / 2 + 1);
      c.check(os.orbit_count() == expected, [&] {
        std::ostringstream m;
        m << "(" << p << "," << q << "): orbit count " << os.orbit_count() << " != "
          << expected;
        return m.str();
      });
      const auto forms = sl_so_canonical_forms(p, q, o.limit);
      for (const auto& orbit : os.orbits()) {
        std::size_t matches = 0;
        for (const auto& f : forms)
          for (const auto& m : *orbit.members)
            if (m == f) ++matches;
        c.check(matches == 1, [&] {
          std::ostringstream m;
          m << "(" << p << "," << q << "): orbit of " << orbit.representative.to_string()
            << " meets the canonical list " << matches << " times";
          return m.str();
        });
      }
    }
  }
  return c.take();
}

inline SuiteResult suite_signature(const SelftestOptions& o) {
  SuiteChecker c("signature");
  for (int n = 2; n <= o.max_n; ++n) {
    for (int p = 1; p < n; ++p) {
      const int q = n - p;
      const TwistedAction a = twisted_family(p, q, o);
      const OrbitSet os = orbits(a, {OrbitEngine::bfs, true});
      std::set<SignaturePair> realized;
      for (const auto& orbit : os.orbits()) {
        const SignaturePair sig = signature(orbit.representative, p, q);
        for (const auto& m : *orbit.members) {
          c.check(signature(m, p, q) == sig, [&] {
            std::ostringstream msg;
            msg << "(" << p << "," << q << "): signature varies inside the orbit of "
                << orbit.representative.to_string();
            return msg.str();
          });
        }
        c.check(!realized.count(sig), [&] {
          std::ostringstream msg;
          msg << "(" << p << "," << q << "): signature " << sig.to_string()
              << " appears in two orbits";
          return msg.str();
        });
        realized.insert(sig);
        c.check(sig.pos + sig.neg == n && (sig.neg - q) % 2 == 0,
                "signature has the wrong total or parity");
      }
      std::set<SignaturePair> expected;
      for (int k = 0; p - 2 * k >= 0; ++k) expected.insert(SignaturePair{p - 2 * k, q + 2 * k});
      for (int k = 1; q - 2 * k >= 0; ++k) expected.insert(SignaturePair{p + 2 * k, q - 2 * k});
      c.check(realized == expected, [&] {
        std::ostringstream msg;
        msg << "(" << p << "," << q << "): realized signature set is wrong";
        return msg.str();
      });
    }
  }
  return c.take();
}

inline SuiteResult suite_slice(const SelftestOptions& o) {
  SuiteChecker c("slice");
  const int cap = std::min(o.max_n, 8);
  for (int n = 2; n <= cap; ++n) {
    for (int p = 1; p < n; ++p) {
      const int q = n - p;
      const TwistedAction a = twisted_family(p, q, o);
      const GroupPtr lifted = slice_group(p, q, o.limit);
      const std::uint64_t total = lifted->order();

      std::uint64_t lift_count = 0;
      std::set<std::uint64_t> reduced_classes;
      for (std::uint64_t r = 0; r < total; ++r) {
        const GroupElement t = GroupElement::from_rank(lifted, r);
        bool even = true;
        {
          std::uint32_t parity = 0;
          for (auto v : t.coords()) parity ^= (v & 1u);
          even = parity == 0;
        }
        if (!even) continue;
        ++lift_count;
        const SlicePoint x = make_slice_point(t, p, q);
        reduced_classes.insert(reduce_mod_two_torsion(x).t.rank());

        for (const auto& gen : a.generators()) {
          const SlicePoint moved = slice_action(gen, x);
          const GroupElement expect = apply(gen, square_map(x));
          c.check(square_map(moved) == expect, [&] {
            std::ostringstream msg;
            msg << "(" << p << "," << q << "): square of the moved lift of " << t.to_string()
                << " under '" << gen.label() << "' is wrong";
            return msg.str();
          });
          c.check(same_mod_two_torsion(moved, reduce_mod_two_torsion(moved)),
                  "reduction changed the two-torsion class");
        }
      }
      const std::uint64_t states = a.states().order();
      c.check(lift_count == states * (std::uint64_t{1} << n),
              "lift fiber count is not |states| * 2^n");
      c.check(reduced_classes.size() == states,
              "lifts mod two-torsion do not biject onto the states");

      for (std::uint64_t i = 0; i < states; ++i) {
        const GroupElement s = a.states().element_at(i);
        const SlicePoint root = sqrt_twist(s, p, q);
        c.check(square_map(root) == s, "sqrt_twist is not a section of square_map");
      }

      {
        std::vector<TwistedGenerator> gens = a.generators();
        const SubgroupSpec t2 = two_torsion(a.ambient());
        std::size_t extra = 0;
        for (std::uint64_t i = 0; i < t2.order() && extra < 3; ++i) {
          const GroupElement z = t2.element_at(i);
          if (!a.states().contains(z)) continue;
          // Twisted conjugation by a 2-torsion state translates by
          // z + z = 0, so adjoining it must not change any orbit.
          std::ostringstream label;
          label << "z" << extra++;
          gens.push_back(TwistedGenerator::identity(a.ambient(), label.str()));
          c.check(add(z, z).is_zero(), "2-torsion doubling is not zero");
        }
        const TwistedAction widened(a.ambient(), a.states(), std::move(gens), a.description());
        c.check(orbits(widened) == orbits(a),
                "adjoining trivial 2-torsion conjugations changed the orbits");
      }
    }
  }
  return c.take();
}

inline SuiteResult suite_contrast(const SelftestOptions& o) {
  SuiteChecker c("contrast");
  {
    const std::uint64_t twisted = orbits(twisted_family(1, 1, o)).orbit_count();
    const std::uint64_t w0 = orbits(build_plain_w0(1, 1, o.limit)).orbit_count();
    c.check(twisted == 1, "family (1,1) must have a single twisted orbit");
    c.check(w0 == 2, "family (1,1) must have two plain-w0 orbits");
  }
  for (int n = 2; n <= o.max_n; ++n) {
    for (int p = 1; p < n; ++p) {
      const int q = n - p;
      std::uint64_t block_classes = 0;
      for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= q; ++b)
          if ((a + b) % 2 == 0) ++block_classes;
      const std::uint64_t w00 = orbits(build_plain_w00(p, q, o.limit)).orbit_count();
      c.check(w00 == block_classes, [&] {
        std::ostringstream m;
        m << "(" << p << "," << q << "): plain-w00 orbit count " << w00
          << " != block weight classes " << block_classes;
        return m.str();
      });
      if (p >= 2 && q >= 2) {
        const std::uint64_t twisted = orbits(twisted_family(p, q, o)).orbit_count();
        c.check(w00 > twisted, [&] {
          std::ostringstream m;
          m << "(" << p << "," << q << "): plain-w00 count " << w00
            << " does not exceed the twisted count " << twisted;
          return m.str();
        });
      }

      const std::uint64_t w0 = orbits(build_plain_w0(p, q, o.limit)).orbit_count();
      c.check(w0 == static_cast<std::uint64_t>(n / 2 + 1),
              "plain-w0 orbit count is not the even weight class count");
      const TwistedAction degenerate = with_zeroed_twists(build_sl_so(p, q, o.limit));
      c.check(degenerate.generators() == build_plain_w0(p, q, o.limit).generators(),
              "zeroing the twists does not recover the plain-w0 generators");
      c.check(orbits(degenerate).orbit_count() == w0,
              "zero-twist degeneration has the wrong orbit count");
    }
  }
  return c.take();
}

}  // namespace detail

inline const std::vector<std::string>& selftest_suite_names() {
  static const std::vector<std::string> names = {
      "abelian", "cocycle",   "bijectivity", "partition", "engines",
      "canonical", "signature", "slice",     "contrast"};
  return names;
}

inline std::vector<SuiteResult> run_selftest(const SelftestOptions& o) {
  if (o.max_n < 2) throw InvalidArgument("selftest: --max-n must be at least 2");
  if (o.max_n > kMaxFamilyRank) {
    std::ostringstream os;
    os << "selftest: --max-n " << o.max_n << " exceeds the rank limit " << kMaxFamilyRank;
    throw RankLimit(os.str());
  }
  using Suite = SuiteResult (*)(const SelftestOptions&);
  static const std::map<std::string, Suite> table = {
      {"abelian", detail::suite_abelian},     {"cocycle", detail::suite_cocycle},
      {"bijectivity", detail::suite_bijectivity}, {"partition", detail::suite_partition},
      {"engines", detail::suite_engines},     {"canonical", detail::suite_canonical},
      {"signature", detail::suite_signature}, {"slice", detail::suite_slice},
      {"contrast", detail::suite_contrast}};
  std::vector<SuiteResult> results;
  if (!o.suite.empty()) {
    auto it = table.find(o.suite);
    if (it == table.end()) {
      std::ostringstream os;
      os << "selftest: unknown suite '" << o.suite << "'; available:";
      for (const auto& n : selftest_suite_names()) os << ' ' << n;
      throw InvalidArgument(os.str());
    }
    results.push_back(it->second(o));
    return results;
  }
  for (const auto& name : selftest_suite_names()) results.push_back(table.at(name)(o));
  return results;
}

inline bool all_passed(const std::vector<SuiteResult>& results) {
  for (const auto& r : results)
    if (!r.passed()) return false;
  return true;
}

inline std::string render_selftest(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    std::string name = r.name;
    name.resize(width, ' ');
    os << "suite " << name << "  " << (r.passed() ? "ok  " : "FAIL") << "  (" << r.checks
       << " checks";
    if (!r.passed()) os << ", " << r.failure_count << " failures";
    os << ")\n";
    for (const auto& f : r.failures) os << "    - " << f << '\n';
    if (r.failure_count > r.failures.size())
      os << "    - ... and " << r.failure_count - r.failures.size() << " more\n";
  }
  os << (all_passed(results) ? "selftest: ok" : "selftest: FAIL") << '\n';
  return os.str();
}

}  // namespace symorb
