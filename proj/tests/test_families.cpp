#include <catch2/catch_amalgamated.hpp>

#include <symorb/families.hpp>
#include <symorb/orbits.hpp>
#include <symorb/subgroup.hpp>

#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace symorb;

namespace {

GroupElement el(const GroupPtr& g, std::vector<std::int64_t> coords) {
  return GroupElement(g, coords);
}

}  // namespace

TEST_CASE("family construction and shape") {
  const TwistedAction a = build_sl_so(3, 2);
  CHECK(a.ambient()->moduli() == std::vector<std::uint32_t>{2, 2, 2, 2, 2});
  CHECK(a.states().order() == 16);
  CHECK(a.generators().size() == 4);
  CHECK(a.description() == "sl-so p=3 q=2 (twisted)");
  CHECK(validate(a).ok);

  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    const TwistedGenerator& g = a.generators()[i];
    CHECK(g.label() == "r" + std::to_string(i + 1));
    CHECK(g.twist().is_zero() == (i + 1 != 3));
  }
  CHECK(a.generators()[2].twist() == el(a.ambient(), {0, 0, 1, 1, 0}));
}

TEST_CASE("states are exactly the even-weight vectors") {
  for (int n : {2, 3, 4, 5}) {
    const TwistedAction a = build_sl_so(1, n - 1);
    std::set<oracle::Vec> got;
    for (const auto& s : enumerate(a.states())) got.insert(s.coords());
    CHECK(got == oracle::even_weight_vectors(n));
  }
}

TEST_CASE("mode names and dispatch") {
  CHECK(std::string(family_mode_name(FamilyMode::twisted)) == "twisted");
  CHECK(std::string(family_mode_name(FamilyMode::plain_w0)) == "plain-w0");
  CHECK(std::string(family_mode_name(FamilyMode::plain_w00)) == "plain-w00");

  CHECK(build_family(2, 2, FamilyMode::twisted).fingerprint() ==
        build_sl_so(2, 2).fingerprint());
  CHECK(build_family(2, 2, FamilyMode::plain_w0).fingerprint() ==
        build_plain_w0(2, 2).fingerprint());
  CHECK(build_family(2, 2, FamilyMode::plain_w00).fingerprint() ==
        build_plain_w00(2, 2).fingerprint());

  CHECK(build_plain_w0(2, 2).description() == "sl-so p=2 q=2 (plain-w0)");
  CHECK(build_plain_w00(2, 2).description() == "sl-so p=2 q=2 (plain-w00)");
}

TEST_CASE("degenerate and oversized signatures are refused") {
  CHECK_THROWS_AS(build_sl_so(0, 3), RankLimit);
  CHECK_THROWS_AS(build_sl_so(3, 0), RankLimit);
  CHECK_THROWS_AS(build_sl_so(-1, 4), RankLimit);
  CHECK_THROWS_AS(build_sl_so(20, 5), RankLimit);
  CHECK_THROWS_AS(build_plain_w00(0, 2), RankLimit);
  CHECK_THROWS_AS(sl_so_canonical_forms(13, 12), RankLimit);
  CHECK_THROWS_AS(build_sl_so(3, 2, kDefaultEnumerationLimit, 4), RankLimit);
  CHECK_NOTHROW(build_sl_so(3, 2, kDefaultEnumerationLimit, 5));
}

TEST_CASE("frozen canonical form lists") {
  {
    const auto forms = sl_so_canonical_forms(2, 1);
    GroupPtr g = forms[0].group();
    CHECK(forms == std::vector<GroupElement>{el(g, {0, 0, 0}),
                                             el(g, {1, 1, 0})});
  }
  {
    const auto forms = sl_so_canonical_forms(2, 2);
    GroupPtr g = forms[0].group();
    CHECK(forms == std::vector<GroupElement>{el(g, {0, 0, 0, 0}),
                                             el(g, {1, 1, 0, 0}),
                                             el(g, {0, 0, 1, 1})});
  }
  {
    const auto forms = sl_so_canonical_forms(3, 2);
    GroupPtr g = forms[0].group();
    CHECK(forms == std::vector<GroupElement>{el(g, {0, 0, 0, 0, 0}),
                                             el(g, {0, 1, 1, 0, 0}),
                                             el(g, {0, 0, 0, 1, 1})});
  }
  {
    const auto forms = sl_so_canonical_forms(1, 1);
    REQUIRE(forms.size() == 1);
    CHECK(forms[0].is_zero());
  }
}

TEST_CASE("orbit count follows the closed formula") {
  for (int p = 1; p <= 6; ++p) {
    for (int q = 1; p + q <= 8; ++q) {
      const TwistedAction a = build_sl_so(p, q);
      CHECK(orbits(a).orbit_count() == oracle::twisted_count(p, q));
      CHECK(sl_so_canonical_forms(p, q).size() == oracle::twisted_count(p, q));
    }
  }
}

TEST_CASE("every orbit holds exactly one canonical form") {
  for (int p = 1; p <= 4; ++p) {
    for (int q = 1; p + q <= 7; ++q) {
      const TwistedAction a = build_sl_so(p, q);
      const auto forms = sl_so_canonical_forms(p, q);

      OrbitOptions opt;
      opt.include_members = true;
      const OrbitSet os = orbits(a, opt);
      for (const Orbit& o : os.orbits()) {
        std::size_t hits = 0;
        for (const auto& f : forms)
          for (const auto& m : *o.members)
            if (f == m) ++hits;
        CHECK(hits == 1);
      }

      for (const auto& f : forms)
        CHECK(canonical_form_sl_so(a, f, p, q) == f);
      for (const auto& s : enumerate(a.states())) {
        const GroupElement c = canonical_form_sl_so(a, s, p, q);
        CHECK(orbit_of(a, s).representative == orbit_of(a, c).representative);
      }
    }
  }
}

TEST_CASE("frozen canonical assignments for signature (2,1)") {
  const TwistedAction a = build_sl_so(2, 1);
  GroupPtr g = a.ambient();
  CHECK(canonical_form_sl_so(a, el(g, {0, 0, 0}), 2, 1) == el(g, {0, 0, 0}));
  CHECK(canonical_form_sl_so(a, el(g, {0, 1, 1}), 2, 1) == el(g, {0, 0, 0}));
  CHECK(canonical_form_sl_so(a, el(g, {1, 0, 1}), 2, 1) == el(g, {0, 0, 0}));
  CHECK(canonical_form_sl_so(a, el(g, {1, 1, 0}), 2, 1) == el(g, {1, 1, 0}));
  CHECK(canonical_form_sl_so(el(g, {1, 1, 0}), 2, 1) == el(g, {1, 1, 0}));
}

TEST_CASE("zeroing the crossing twist collapses to the plain action") {
  for (int p = 1; p <= 3; ++p) {
    for (int q = 1; p + q <= 6; ++q) {
      const TwistedAction twisted = build_sl_so(p, q);
      const TwistedAction zeroed = with_zeroed_twists(twisted);
      const TwistedAction plain = build_plain_w0(p, q);

      REQUIRE(zeroed.generators().size() == plain.generators().size());
      for (std::size_t i = 0; i < zeroed.generators().size(); ++i)
        CHECK(zeroed.generators()[i] == plain.generators()[i]);

      const int n = p + q;
      CHECK(orbits(zeroed).orbit_count() ==
            static_cast<std::size_t>(n / 2 + 1));
      CHECK(orbits(zeroed) == orbits(plain));
    }
  }
}

TEST_CASE("block action orbit counts match direct pair counting") {
  for (int p = 1; p <= 4; ++p) {
    for (int q = 1; p + q <= 7; ++q) {
      const TwistedAction w00 = build_plain_w00(p, q);
      CHECK(orbits(w00).orbit_count() == oracle::w00_count(p, q));
      if (p >= 2 && q >= 2) {
        CHECK(oracle::w00_count(p, q) > oracle::twisted_count(p, q));
        CHECK(orbits(w00).orbit_count() >
              orbits(build_sl_so(p, q)).orbit_count());
      }
    }
  }
}
