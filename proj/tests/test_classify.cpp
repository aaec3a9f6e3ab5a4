#include <catch2/catch_amalgamated.hpp>

#include "lslink/catalog.hpp"
#include "lslink/classify.hpp"
#include "lslink/h_solver.hpp"

using namespace lslink;

namespace {

LatticePoint pt(std::vector<std::int64_t> doubled) { return LatticePoint::from_doubled(doubled); }

SolveResult solve_catalog(const std::string& name, std::optional<Box> box = std::nullopt) {
    return solve_link(*get(name).link, box);
}

} // namespace

TEST_CASE("whitehead link is type (A)", "[classify]") {
    auto res = solve_catalog("whitehead", Box(pt({-4, -4}), pt({4, 4})));
    Classification cls = classify_type(res.table);
    CHECK(cls.kind == LinkKind::TypeA);
    CHECK_FALSE(cls.corner.has_value());
    CHECK_FALSE(is_special(res.table, cls).special); // no corner, nothing to test

    InvariantReport rep = invariants_from_classification(res.table, cls);
    CHECK(rep.fibered == TriState::Unknown);
    CHECK(rep.sqp == TriState::Unknown);
    CHECK(rep.fibered_and_sqp == TriState::No);
    CHECK_FALSE(rep.tau.has_value());
}

TEST_CASE("unlink is type (B) but not special", "[classify]") {
    auto res = solve_catalog("unlink2", Box(pt({-8, -8}), pt({8, 8})));
    Classification cls = classify_type(res.table);
    REQUIRE(cls.kind == LinkKind::TypeB);
    CHECK(*cls.corner == pt({0, 0}));

    cls = is_special(res.table, cls);
    CHECK_FALSE(cls.special);
    CHECK(cls.eq1_checked);
    CHECK(cls.eq_failures == std::vector<int>{2}); // H(-1,-1) = 2, not 1
    CHECK(res.table.at(pt({-2, -2})) == 2);

    InvariantReport rep = invariants_from_classification(res.table, cls);
    CHECK(rep.fibered_and_sqp == TriState::No);
}

TEST_CASE("l7n1 is special with corner (1,2)", "[classify]") {
    auto entry = get("l7n1");
    auto res = solve_link(*entry.link);
    Classification cls = classify_type(res.table);
    REQUIRE(cls.kind == LinkKind::TypeB);
    CHECK(*cls.corner == pt({2, 4}));

    cls = is_special(res.table, cls, entry.link->component_genera);
    CHECK(cls.special);
    CHECK(cls.eq1_checked);
    CHECK(cls.eq_failures.empty());

    InvariantReport rep = invariants_from_classification(res.table, cls);
    CHECK(rep.fibered == TriState::Yes);
    CHECK(rep.sqp == TriState::Yes);
    CHECK(rep.tau == 3);
    CHECK(rep.nu_plus == 3);
    CHECK(rep.s_top == 3);
    CHECK(rep.g3_link == 2);
}

TEST_CASE("hopf link is special with corner (1/2,1/2)", "[classify]") {
    auto res = solve_catalog("hopf_pos", Box(pt({-5, -5}), pt({5, 5})));
    Classification cls = classify_type(res.table);
    REQUIRE(cls.kind == LinkKind::TypeB);
    CHECK(*cls.corner == pt({1, 1}));

    cls = is_special(res.table, cls);
    CHECK(cls.special);
    CHECK(res.table.at(pt({-1, -1})) == 1); // the corner equation H(s-1) = 1

    InvariantReport rep = invariants_from_classification(res.table, cls);
    CHECK(rep.tau == 1);
    CHECK(rep.g3_link == 0);
    CHECK(rep.s_top == 1);
}

TEST_CASE("knots classify as special staircases", "[classify]") {
    auto res = solve_catalog("trefoil");
    Classification cls = classify_type(res.table);
    REQUIRE(cls.kind == LinkKind::TypeB);
    CHECK(*cls.corner == pt({2}));
    cls = is_special(res.table, cls);
    CHECK(cls.special);
    InvariantReport rep = invariants_from_classification(res.table, cls);
    CHECK(rep.tau == 1);
    CHECK(rep.g3_link == 1); // n = 1: g3 = sum itself
}

TEST_CASE("special corners satisfy the cube consequence", "[classify][property]") {
    // special => H(s) = 0 and H(s - e_B) = 1 for every nonempty B
    for (const char* name : {"hopf_pos", "l7n1"}) {
        auto entry = get(name);
        auto res = solve_link(*entry.link);
        Classification cls = classify_type(res.table);
        cls = is_special(res.table, cls, entry.link->component_genera);
        REQUIRE(cls.special);
        const LatticePoint& s = *cls.corner;
        CHECK(res.table.at(s) == 0);
        for (std::uint32_t mask = 1; mask <= 3; ++mask)
            CHECK(res.table.at(minus_eB(s, mask)) == 1);
    }
}

TEST_CASE("genus and tau arithmetic on doubled sums", "[classify]") {
    // tau = nu+ = s_top = sum s_i and g3 + n - 1 = sum s_i, exactly
    auto entry = get("l7n1");
    auto res = solve_link(*entry.link);
    Classification cls = is_special(res.table, classify_type(res.table),
                                    entry.link->component_genera);
    InvariantReport rep = invariants_from_classification(res.table, cls);
    std::int64_t sum = cls.corner->total2() / 2;
    CHECK(rep.tau == sum);
    CHECK(rep.nu_plus == sum);
    CHECK(rep.s_top == sum);
    CHECK(*rep.g3_link + res.table.dim() - 1 == sum);
}

TEST_CASE("empty zero set is a box error", "[classify]") {
    HTable t(Box(pt({0, 0}), pt({4, 4})), LinkingMatrix(2));
    for_each_point_desc(t.box(), [&](const LatticePoint& p) { t.set(p, 1); });
    CHECK_THROWS_AS(classify_type(t), BoxError);
}

TEST_CASE("special test requires a stabilized table", "[classify]") {
    // a type (B)-shaped grid whose stabilization was never certified
    HTable t(Box(pt({-4, -4}), pt({4, 4})), LinkingMatrix(2));
    for_each_point_desc(t.box(), [&](const LatticePoint& p) {
        t.set(p, std::max<std::int64_t>(0, -p[0].twice / 2) + std::max<std::int64_t>(0, -p[1].twice / 2));
    });
    Classification cls = classify_type(t);
    REQUIRE(cls.kind == LinkKind::TypeB);
    CHECK_THROWS_AS(is_special(t, cls), BoxError);
}

TEST_CASE("quasi-positivity obstruction", "[classify]") {
    SECTION("k = 1: self-linking bound") {
        QPVerdict v = qp_obstruction(two_bridge_tau(1));
        CHECK(v.obstructed);
        CHECK(v.reason == "self-linking bound");
    }
    SECTION("k = 3: both bounds fire") {
        QPVerdict v = qp_obstruction(two_bridge_tau(3));
        CHECK(v.obstructed);
        CHECK(v.reasons.size() == 2);
        CHECK(v.reasons[0] == "mirror four-genus bound");
        CHECK(v.reasons[1] == "self-linking bound");
    }
    SECTION("inapplicable hypotheses pass") {
        QPInput q;
        q.tau = 1;
        q.mirror_tau = 1;
        q.components_unknotted = false;
        q.total_linking_zero = false;
        QPVerdict v = qp_obstruction(q);
        CHECK_FALSE(v.obstructed);
        CHECK(v.reason == "no applicable obstruction");
    }
    SECTION("only two components supported") {
        QPInput q;
        q.n = 3;
        CHECK_THROWS_AS(qp_obstruction(q), SchemaError);
    }
}

TEST_CASE("self-linking obstruction is monotone in tau", "[classify][property]") {
    for (std::int64_t t = 1; t <= 12; ++t) {
        QPInput q = two_bridge_tau(1);
        q.tau = t;
        QPVerdict v = qp_obstruction(q);
        CHECK(v.obstructed); // once obstructed at tau = 1, stays obstructed above
    }
}
