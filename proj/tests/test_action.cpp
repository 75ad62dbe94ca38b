#include <catch2/catch_amalgamated.hpp>

#include <symorb/abelian.hpp>
#include <symorb/action.hpp>
#include <symorb/families.hpp>
#include <symorb/subgroup.hpp>

#include <vector>

#include "oracles.hpp"

using namespace symorb;

namespace {

GroupElement el(const GroupPtr& g, std::vector<std::int64_t> coords) {
  return GroupElement(g, coords);
}

TwistedGenerator swap_gen(const GroupPtr& g, std::size_t i, bool crossing,
                          const std::string& label) {
  std::vector<std::uint32_t> perm(g->rank());
  for (std::size_t k = 0; k < perm.size(); ++k)
    perm[k] = static_cast<std::uint32_t>(k);
  std::swap(perm[i], perm[i + 1]);
  std::vector<std::int64_t> units(g->rank(), 1);
  std::vector<std::int64_t> twist(g->rank(), 0);
  if (crossing) {
    twist[i] = 1;
    twist[i + 1] = 1;
  }
  return TwistedGenerator(label, perm, units, GroupElement(g, twist));
}

}  // namespace

TEST_CASE("generator construction validates its data") {
  GroupPtr g = make_group({2, 2, 2});
  const GroupElement zero = GroupElement::zero(g);

  CHECK_THROWS_AS(TwistedGenerator("bad", {0, 0, 2}, {1, 1, 1}, zero),
                  InvalidArgument);
  CHECK_THROWS_AS(TwistedGenerator("bad", {0, 1, 3}, {1, 1, 1}, zero),
                  InvalidArgument);
  CHECK_THROWS_AS(TwistedGenerator("bad", {0, 1}, {1, 1, 1}, zero),
                  InvalidArgument);
  CHECK_THROWS_AS(TwistedGenerator("bad", {0, 1, 2}, {1, 1}, zero),
                  InvalidArgument);

  const TwistedGenerator id = TwistedGenerator::identity(g);
  CHECK(id.label() == "id");
  for (std::uint64_t r = 0; r < g->order(); ++r) {
    const GroupElement s = GroupElement::from_rank(g, r);
    CHECK(apply(id, s) == s);
  }
}

TEST_CASE("units are reduced per coordinate modulus") {
  GroupPtr g = make_group({4, 4});
  const TwistedGenerator neg =
      TwistedGenerator("neg", {0, 1}, {-1, 3}, GroupElement::zero(g));
  CHECK(neg.units() == std::vector<std::uint32_t>{3, 3});
  CHECK(apply(neg, el(g, {1, 2})) == el(g, {3, 2}));
}

TEST_CASE("frozen application examples") {
  GroupPtr g = make_group({2, 2, 2});
  const TwistedGenerator cross = swap_gen(g, 0, true, "r1");

  CHECK(apply(cross, el(g, {0, 0, 0})) == el(g, {1, 1, 0}));
  CHECK(apply(cross, el(g, {1, 1, 0})) == el(g, {0, 0, 0}));
  CHECK(apply(cross, el(g, {1, 0, 1})) == el(g, {1, 0, 1}));
  CHECK(apply(cross, el(g, {0, 1, 1})) == el(g, {0, 1, 1}));

  const TwistedGenerator plain = swap_gen(g, 1, false, "r2");
  CHECK(apply(plain, el(g, {1, 1, 0})) == el(g, {1, 0, 1}));
}

TEST_CASE("application agrees with the naive oracle") {
  GroupPtr g = make_group({2, 4, 3});
  const oracle::Vec moduli{2, 4, 3};
  const TwistedGenerator t("t", {2, 0, 1}, {1, 3, 2}, el(g, {1, 2, 1}));
  const oracle::GenData od{{2, 0, 1}, {1, 3, 2}, {1, 2, 1}};
  for (std::uint64_t r = 0; r < g->order(); ++r) {
    const GroupElement s = GroupElement::from_rank(g, r);
    CHECK(apply(t, s).coords() == oracle::apply_gen(od, s.coords(), moduli));
  }
}

TEST_CASE("composition, frozen and pointwise") {
  GroupPtr g = make_group({2, 2, 2});
  const TwistedGenerator m = swap_gen(g, 0, false, "r1");
  const TwistedGenerator n = swap_gen(g, 1, true, "r2");

  const TwistedGenerator mn = compose(m, n);
  CHECK(mn.label() == "r1*r2");
  CHECK(mn.perm() == std::vector<std::uint32_t>{1, 2, 0});
  CHECK(mn.twist() == el(g, {1, 0, 1}));

  for (std::uint64_t r = 0; r < g->order(); ++r) {
    const GroupElement s = GroupElement::from_rank(g, r);
    CHECK(apply(mn, s) == apply(m, apply(n, s)));
  }

  SECTION("composition over a non-prime modulus") {
    GroupPtr h = make_group({4, 4});
    const TwistedGenerator a("a", {1, 0}, {1, 3}, el(h, {1, 2}));
    const TwistedGenerator b("b", {0, 1}, {3, 3}, el(h, {2, 0}));
    const TwistedGenerator ab = compose(a, b);
    const TwistedGenerator ba = compose(b, a);
    for (std::uint64_t r = 0; r < h->order(); ++r) {
      const GroupElement s = GroupElement::from_rank(h, r);
      CHECK(apply(ab, s) == apply(a, apply(b, s)));
      CHECK(apply(ba, s) == apply(b, apply(a, s)));
    }
  }
}

TEST_CASE("a crossing swap is an involution") {
  GroupPtr g = make_group({2, 2, 2, 2});
  const TwistedGenerator cross = swap_gen(g, 1, true, "r2");
  const TwistedGenerator sq = compose(cross, cross);
  CHECK(sq == TwistedGenerator::identity(g));
  for (std::uint64_t r = 0; r < g->order(); ++r) {
    const GroupElement s = GroupElement::from_rank(g, r);
    CHECK(apply(cross, apply(cross, s)) == s);
  }
}

TEST_CASE("inverse undoes a generator") {
  GroupPtr g = make_group({3, 3, 3});
  const TwistedGenerator t("t", {2, 0, 1}, {1, 2, 2}, el(g, {1, 2, 1}));
  REQUIRE(!invertibility_issue(t).has_value());
  const TwistedGenerator ti = inverse(t);
  CHECK(ti.label() == "t^-1");
  for (std::uint64_t r = 0; r < g->order(); ++r) {
    const GroupElement s = GroupElement::from_rank(g, r);
    CHECK(apply(ti, apply(t, s)) == s);
    CHECK(apply(t, apply(ti, s)) == s);
  }
}

TEST_CASE("non-invertible units are reported and refuse inversion") {
  GroupPtr g = make_group({4, 4});
  const TwistedGenerator bad("bad", {0, 1}, {2, 1}, GroupElement::zero(g));
  CHECK(invertibility_issue(bad).has_value());
  CHECK_THROWS_AS(inverse(bad), ValidationFailed);

  const TwistedGenerator ok("ok", {0, 1}, {3, 1}, GroupElement::zero(g));
  CHECK(!invertibility_issue(ok).has_value());

  GroupPtr mixed = make_group({2, 3});
  const TwistedGenerator crossmod("x", {1, 0}, {1, 1},
                                  GroupElement::zero(mixed));
  CHECK(invertibility_issue(crossmod).has_value());
}

TEST_CASE("action construction and validation") {
  GroupPtr g = make_group({2, 2, 2});
  const SubgroupSpec even = SubgroupSpec::generated_by(
      g, {el(g, {1, 1, 0}), el(g, {0, 1, 1})});

  SECTION("a well-formed action validates cleanly") {
    const TwistedAction a(g, even, {swap_gen(g, 0, true, "r1"),
                                    swap_gen(g, 1, true, "r2")},
                          "demo");
    const ValidationReport rep = validate(a);
    CHECK(rep.ok);
    for (const auto& c : rep.generators) {
      CHECK(c.invertible);
      CHECK(c.twist_in_states);
      CHECK(c.preserves_states);
    }
  }

  SECTION("twist outside the state set is flagged") {
    std::vector<std::int64_t> twist{1, 0, 0};
    const TwistedGenerator odd("odd", {0, 1, 2}, {1, 1, 1},
                               GroupElement(g, twist));
    const TwistedAction a(g, even, {odd});
    const ValidationReport rep = validate(a);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.generators.size() == 1);
    CHECK_FALSE(rep.generators[0].twist_in_states);
    CHECK(rep.generators[0].preserves_states);
    CHECK(rep.summary().find("odd") != std::string::npos);
  }

  SECTION("duplicate labels are rejected") {
    CHECK_THROWS_AS(
        TwistedAction(g, even,
                      {swap_gen(g, 0, true, "r"), swap_gen(g, 1, true, "r")}),
        InvalidArgument);
  }

  SECTION("generators over the wrong ambient are rejected") {
    GroupPtr other = make_group({2, 2});
    const TwistedGenerator foreign =
        TwistedGenerator::identity(other, "foreign");
    CHECK_THROWS_AS(TwistedAction(g, even, {foreign}), AmbientMismatch);
    CHECK_THROWS_AS(
        TwistedAction(g, SubgroupSpec::whole_group(other), {}),
        AmbientMismatch);
  }
}

TEST_CASE("fingerprints track content, not labels or description") {
  const TwistedAction a = build_sl_so(2, 2);
  const TwistedAction b = build_sl_so(2, 2);
  CHECK(a.fingerprint() == b.fingerprint());

  const TwistedAction c = build_sl_so(3, 2);
  CHECK(a.fingerprint() != c.fingerprint());

  const TwistedAction plain = build_plain_w0(2, 2);
  CHECK(a.fingerprint() != plain.fingerprint());

  GroupPtr g = a.ambient();
  const TwistedAction relabeled(
      g, a.states(),
      {TwistedGenerator("other1", a.generators()[0].perm(),
                        std::vector<std::int64_t>(g->rank(), 1),
                        a.generators()[0].twist()),
       TwistedGenerator("other2", a.generators()[1].perm(),
                        std::vector<std::int64_t>(g->rank(), 1),
                        a.generators()[1].twist()),
       TwistedGenerator("other3", a.generators()[2].perm(),
                        std::vector<std::int64_t>(g->rank(), 1),
                        a.generators()[2].twist())},
      a.description());
  CHECK(relabeled.fingerprint() != a.fingerprint());

  const TwistedAction redescribed(g, a.states(), a.generators(), "different");
  CHECK(redescribed.fingerprint() == a.fingerprint());
}

TEST_CASE("zeroing twists keeps everything else") {
  const TwistedAction a = build_sl_so(2, 2);
  const TwistedAction z = with_zeroed_twists(a);
  REQUIRE(z.generators().size() == a.generators().size());
  for (std::size_t i = 0; i < z.generators().size(); ++i) {
    CHECK(z.generators()[i].twist().is_zero());
    CHECK(z.generators()[i].perm() == a.generators()[i].perm());
    CHECK(z.generators()[i].units() == a.generators()[i].units());
  }
  CHECK(z.fingerprint() != a.fingerprint());
}
