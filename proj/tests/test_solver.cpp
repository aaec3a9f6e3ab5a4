#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "lslink/catalog.hpp"
#include "lslink/h_solver.hpp"
#include "lslink/json_io.hpp"

using namespace lslink;

namespace {

LatticePoint pt(std::vector<std::int64_t> doubled) { return LatticePoint::from_doubled(doubled); }

/// Independent staircase oracle: from H(top) = 0 and the first-difference
/// identity, H(s) is the double suffix sum of the raw polynomial coefficients,
/// computed here directly from the coefficient list.
std::int64_t knot_h_oracle(const std::map<std::int64_t, std::int64_t>& delta, std::int64_t s) {
    std::int64_t top = delta.rbegin()->first;
    std::int64_t h = 0;
    for (std::int64_t u = s + 1; u <= top; ++u)
        for (const auto& [v, c] : delta)
            if (v >= u) h += c;
    return h;
}

LaurentSeries from_map(const std::map<std::int64_t, std::int64_t>& delta) {
    LaurentSeries s(1);
    for (const auto& [e, c] : delta) s.add_term({2 * e}, c);
    return s;
}

} // namespace

TEST_CASE("knot staircases match the suffix-sum oracle", "[solver]") {
    SECTION("unknot") {
        auto res = solve_link(get("unknot").link.value(),
                              Box(pt({-8}), pt({4})));
        for (std::int64_t s = -4; s <= 2; ++s)
            CHECK(res.table.at(pt({2 * s})) == std::max<std::int64_t>(0, -s));
    }
    SECTION("trefoil") {
        std::map<std::int64_t, std::int64_t> delta{{1, 1}, {0, -1}, {-1, 1}};
        auto series = normalize_alexander_knot(from_map(delta), -12);
        HTable t = solve_knot(series, -8);
        CHECK(t.at(pt({2})) == 0);
        CHECK(t.at(pt({0})) == 1);
        CHECK(t.at(pt({-2})) == 1);
        CHECK(t.at(pt({-4})) == 2);
        for (std::int64_t s = -4; s <= 2; ++s)
            CHECK(t.at(pt({2 * s})) == knot_h_oracle(delta, s));
        CHECK(genus2_from_knot_table(t) == 2); // g3 = 1
    }
    SECTION("T(2,5)") {
        std::map<std::int64_t, std::int64_t> delta{{2, 1}, {1, -1}, {0, 1}, {-1, -1}, {-2, 1}};
        auto series = normalize_alexander_knot(from_map(delta), -12);
        HTable t = solve_knot(series, -8);
        CHECK(t.at(pt({4})) == 0);
        CHECK(t.at(pt({2})) == 1);
        CHECK(t.at(pt({0})) == 1);
        CHECK(t.at(pt({-2})) == 2);
        for (std::int64_t s = -4; s <= 3; ++s)
            CHECK(t.at(pt({2 * s})) == knot_h_oracle(delta, s));
        CHECK(genus2_from_knot_table(t) == 4); // g3 = 2
    }
}

TEST_CASE("knot zero set starts exactly at the genus", "[solver][property]") {
    for (auto [p, q] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}, {4, 5}}) {
        auto entry = get("torus_knot(" + std::to_string(p) + "," + std::to_string(q) + ")");
        auto res = solve_link(*entry.link, Box(pt({-2 * (p - 1) * (q - 1)}), pt({(p - 1) * (q - 1) + 4})));
        std::int64_t g2 = (p - 1) * (q - 1); // doubled genus
        CHECK(genus2_from_knot_table(res.table) == g2);
        for (std::int64_t s2 = res.table.box().lo[0].twice; s2 <= res.table.box().hi[0].twice; s2 += 2)
            CHECK((res.table.at(pt({s2})) == 0) == (s2 >= g2));
    }
}

TEST_CASE("wrong-sign knot input is rejected", "[solver]") {
    auto delta = from_map({{1, -1}, {0, 1}, {-1, -1}}); // negated trefoil
    auto series = normalize_alexander_knot(delta, -10);
    CHECK_THROWS_AS(solve_knot(series, -8), ValidationError);
}

TEST_CASE("mismatched component polynomials are rejected", "[solver]") {
    // whitehead polynomial with trefoil boundary data: the recursion is forced
    // into a step of two right below the corner
    LinkInput in = *get("whitehead").link;
    LaurentSeries tre(1);
    tre.add_term({2}, 1);
    tre.add_term({0}, -1);
    tre.add_term({-2}, 1);
    in.components = {tre, tre};
    CHECK_THROWS_AS(solve_link(in, Box(pt({-4, -4}), pt({4, 4}))), ValidationError);
}

TEST_CASE("oversized boxes are refused", "[solver]") {
    auto in = *get("whitehead").link;
    CHECK_THROWS_AS(solve_link(in, Box(pt({-4, -4}), pt({1 << 20, 1 << 20}))), BoxError);
}

TEST_CASE("figure-eight knot is rejected under both signs", "[solver]") {
    LinkInput in;
    in.name = "figure8";
    in.n = 1;
    in.linking = LinkingMatrix(1);
    in.alexander = from_map({{1, -1}, {0, 3}, {-1, -1}});
    CHECK_THROWS_AS(solve_link(in), ValidationError);
}

TEST_CASE("raw table restricted to a smaller window", "[solver]") {
    auto entry = get("l7n1");
    auto res = solve_link(*entry.link, Box(pt({-4, -4}), pt({8, 8})));
    CHECK(res.table.box().lo == pt({-4, -4}));
    CHECK(res.table.stabilized(0));
    CHECK(res.table.stabilized(1));
    Classification cls = classify_type(res.table);
    REQUIRE(cls.kind == LinkKind::TypeB);
    CHECK(*cls.corner == pt({2, 4}));
    cls = is_special(res.table, cls, entry.link->component_genera);
    CHECK(cls.special);
}

TEST_CASE("whitehead link reproduces the golden grid", "[solver]") {
    auto entry = get("whitehead");
    auto res = solve_link(*entry.link, Box(pt({-4, -4}), pt({4, 4})));
    for (const auto& [p2, v] : entry.expected.h_values)
        CHECK(res.table.at(LatticePoint::from_doubled(p2)) == v);
    CHECK(res.sign == Sign::Plus);
    CHECK(res.table.stabilized(0));
    CHECK(res.table.stabilized(1));
    CHECK(residual_check(res.table, res.chi).ok);

    SECTION("restriction to a component gives the unknot") {
        HTable sub = restrict_to_sublink(res.table, 1);
        for (std::int64_t s2 = sub.box().lo[0].twice; s2 <= sub.box().hi[0].twice; s2 += 2)
            CHECK(sub.at(pt({s2})) == std::max<std::int64_t>(0, -s2 / 2));
    }
}

TEST_CASE("hopf link solves by one recursion step", "[solver]") {
    auto res = solve_link(*get("hopf_pos").link, Box(pt({-5, -5}), pt({5, 5})));
    // hand-derived one-step values
    CHECK(res.table.at(pt({1, 1})) == 0);
    CHECK(res.table.at(pt({-1, 1})) == 1);
    CHECK(res.table.at(pt({1, -1})) == 1);
    CHECK(res.table.at(pt({-1, -1})) == 1);
    CHECK(res.table.at(pt({-3, -1})) == 2);
    CHECK(res.table.at(pt({-3, -3})) == 3);
    CHECK(res.table.at(pt({-5, -5})) == 5);
    CHECK(residual_check(res.table, res.chi).ok);

    SECTION("restriction un-shifts by half the linking number") {
        HTable sub = restrict_to_sublink(res.table, 1);
        CHECK(sub.box().lo[0].twice == -6); // [-5/2,5/2] shifted by 1/2
        CHECK(sub.box().hi[0].twice == 4);
        for (std::int64_t s2 = -6; s2 <= 4; s2 += 2)
            CHECK(sub.at(pt({s2})) == std::max<std::int64_t>(0, -s2 / 2));
    }
}

TEST_CASE("two-component unlink propagates boundary values", "[solver]") {
    auto entry = get("unlink2");
    auto res = solve_link(*entry.link, Box(pt({-8, -8}), pt({8, 8})));
    for (const auto& [p2, v] : entry.expected.h_values)
        CHECK(res.table.at(LatticePoint::from_doubled(p2)) == v);
    CHECK(residual_check(res.table, res.chi).ok);
}

TEST_CASE("raw table input runs the same validations", "[solver]") {
    auto entry = get("l7n1");
    auto res = solve_link(*entry.link);
    CHECK_FALSE(res.sign.has_value());
    res.table.validate_growth();
    CHECK(res.table.stabilized(0));
    CHECK(res.table.stabilized(1));
    CHECK(residual_check(res.table, res.chi).ok);

    SECTION("derived components match independently solved tables") {
        REQUIRE(res.table.components().size() == 2);
        const HTable& c0 = res.table.components()[0];
        const HTable& c1 = res.table.components()[1];
        // component 1 is an unknot, component 2 a trefoil; solve them directly
        auto unknot = normalize_alexander_knot(LaurentSeries::constant(1, 1), -20);
        auto trefoil = normalize_alexander_knot(entry.link->component_poly(1), -20);
        HTable u = solve_knot(unknot, c0.box().lo[0].twice, c0.box().hi[0].twice);
        HTable tr = solve_knot(trefoil, c1.box().lo[0].twice, c1.box().hi[0].twice);
        for (std::int64_t s2 = c0.box().lo[0].twice; s2 <= c0.box().hi[0].twice; s2 += 2)
            CHECK(c0.at(pt({s2})) == u.at(pt({s2})));
        for (std::int64_t s2 = c1.box().lo[0].twice; s2 <= c1.box().hi[0].twice; s2 += 2)
            CHECK(c1.at(pt({s2})) == tr.at(pt({s2})));
    }

    SECTION("a raw table that never stabilizes is refused") {
        LinkInput in = *entry.link;
        RawTable bad = *in.h_table;
        // strictly increasing along both axes: no stabilized margin
        for (std::int64_t k = 0; k < bad.box.cell_count(); ++k) {
            LatticePoint p = bad.box.point_at(k);
            bad.values[static_cast<std::size_t>(k)] = -(p[0].twice + p[1].twice) / 2 + 16;
        }
        in.h_table = bad;
        in.components.clear();
        in.component_genera.reset();
        CHECK_THROWS_AS(solve_link(in), BoxError);
    }
}

TEST_CASE("residual check localizes a perturbation", "[solver]") {
    auto res = solve_link(*get("whitehead").link, Box(pt({-4, -4}), pt({4, 4})));
    HTable bad = res.table;
    bad.set(pt({0, 0}), 2);
    auto rep = residual_check(bad, res.chi);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.first_mismatch.has_value());
    // descending scan hits the broken identity at (1,1) first
    CHECK(*rep.first_mismatch == pt({2, 2}));
}

TEST_CASE("sign auto-resolution picks exactly one sign", "[solver]") {
    for (const char* name : {"whitehead", "hopf_pos", "trefoil"}) {
        auto entry = get(name);
        SolveOptions plus, minus;
        plus.sign = SignPolicy::Plus;
        minus.sign = SignPolicy::Minus;
        int passing = 0;
        for (const auto& o : {plus, minus}) {
            try {
                solve_link(*entry.link, std::nullopt, o);
                ++passing;
            } catch (const ValidationError&) {
            }
        }
        CHECK(passing == 1);
        auto res = solve_link(*entry.link);
        CHECK(res.sign == Sign::Plus); // catalog polynomials carry the printed sign
    }
}

TEST_CASE("inconsistent polynomial is rejected under both signs", "[solver]") {
    LinkInput in = *get("whitehead").link;
    LaurentSeries bad(2); // doubled coefficient breaks the step constraint
    bad.add_term({1, 1}, -2);
    bad.add_term({1, -1}, 2);
    bad.add_term({-1, 1}, 2);
    bad.add_term({-1, -1}, -2);
    in.alexander = bad;
    CHECK_THROWS_AS(solve_link(in), ValidationError);
}

TEST_CASE("box and input mismatches are schema errors", "[solver]") {
    auto in = *get("whitehead").link;
    CHECK_THROWS_AS(solve_link(in, Box(pt({-1, -2}), pt({3, 2}))), SchemaError); // parity
    auto raw = *get("l7n1").link;
    CHECK_THROWS_AS(solve_link(raw, Box(pt({-10, -8}), pt({8, 8}))), BoxError); // beyond table
}

TEST_CASE("default box covers the support with margin, at least five wide", "[solver]") {
    Box b = default_box(*get("whitehead").link);
    CHECK(b.lo == pt({-4, -4}));
    CHECK(b.hi == pt({6, 6}));
    Box h = default_box(*get("hopf_pos").link);
    CHECK(h.extent(0) >= 5);
    CHECK(h.extent(1) >= 5);
    Box u = default_box(*get("unlink2").link);
    CHECK(u.extent(0) >= 5);
}

TEST_CASE("three-component split link exercises the recursive boundary", "[solver]") {
    LinkInput in;
    in.name = "unlink3";
    in.n = 3;
    in.linking = LinkingMatrix(3);
    in.alexander = LaurentSeries(3);
    for (auto& set : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}})
        in.sublinks.emplace(set, LaurentSeries(2));
    auto res = solve_link(in, Box(pt({-4, -4, -4}), pt({4, 4, 4})));
    for_each_point_desc(res.table.box(), [&](const LatticePoint& p) {
        std::int64_t expect = 0;
        for (int i = 0; i < 3; ++i) expect += std::max<std::int64_t>(0, -p[i].twice / 2);
        CHECK(res.table.at(p) == expect);
    });
    CHECK(residual_check(res.table, res.chi).ok);

    Classification cls = classify_type(res.table);
    REQUIRE(cls.kind == LinkKind::TypeB);
    CHECK(*cls.corner == pt({0, 0, 0}));
    cls = is_special(res.table, cls);
    CHECK_FALSE(cls.special);
    CHECK(cls.eq_failures == std::vector<int>{2}); // H(-1,-1,-1) = 3
    InvariantReport rep = invariants_from_classification(res.table, cls);
    CHECK(rep.fibered_and_sqp == TriState::Unknown); // one-directional above two components

    SECTION("missing sublink polynomials are schema errors") {
        in.sublinks.clear();
        CHECK_THROWS_AS(solve_link(in, Box(pt({-4, -4, -4}), pt({4, 4, 4}))), SchemaError);
    }
}

TEST_CASE("wrong user genera fail the corner equation", "[solver]") {
    auto entry = get("l7n1");
    auto res = solve_link(*entry.link);
    Classification cls = classify_type(res.table);
    cls = is_special(res.table, cls, std::vector<std::int64_t>{1, 1});
    CHECK_FALSE(cls.special);
    CHECK(cls.eq_failures == std::vector<int>{1});
}

TEST_CASE("restriction needs a stabilized margin", "[solver]") {
    // whitehead restricted to a window whose top rows are not yet settled
    auto res = solve_link(*get("whitehead").link, Box(pt({-4, -4}), pt({0, 0})));
    CHECK_FALSE(res.table.stabilized(1));
    CHECK_THROWS_AS(restrict_to_sublink(res.table, 1), BoxError);
}
