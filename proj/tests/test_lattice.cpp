#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "lslink/half_int.hpp"

using namespace lslink;

namespace {

LatticePoint pt(std::vector<std::int64_t> doubled) { return LatticePoint::from_doubled(doubled); }

} // namespace

TEST_CASE("half-integers are exact doubled integers", "[lattice]") {
    HalfInt a = HalfInt::from_int(3);
    HalfInt b = HalfInt::from_doubled(-3); // -3/2
    CHECK(a.twice == 6);
    CHECK(a.is_integer());
    CHECK_FALSE(b.is_integer());
    CHECK((a + b).twice == 3);
    CHECK((a - b).twice == 9);
    CHECK(b.str() == "-3/2");
    CHECK(a.str() == "3");
    CHECK(b.stepped(1).twice == -1);
    CHECK(b.parity() == 1);
}

TEST_CASE("componentwise order", "[lattice]") {
    CHECK(leq(pt({0, 0}), pt({2, 4})));       // (0,0) <= (1,2)
    CHECK(leq(pt({0, 0}), pt({0, 0})));       // reflexive
    CHECK_FALSE(leq(pt({2, 0}), pt({0, 2}))); // incomparable
    CHECK_FALSE(leq(pt({0, 2}), pt({2, 0})));

    CHECK_THROWS_AS(leq(pt({0}), pt({0, 0})), SchemaError);
    CHECK_THROWS_AS(leq(pt({0, 0}), pt({1, 0})), SchemaError); // parity mismatch
}

TEST_CASE("order is a partial order on random triples", "[lattice][property]") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<std::int64_t> coord(-5, 5);
    for (int rep = 0; rep < 200; ++rep) {
        int n = 1 + static_cast<int>(rng() % 3);
        std::vector<std::int64_t> par(static_cast<std::size_t>(n));
        for (auto& p : par) p = static_cast<std::int64_t>(rng() % 2);
        auto rand_pt = [&] {
            std::vector<std::int64_t> d(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                d[static_cast<std::size_t>(i)] = 2 * coord(rng) + par[static_cast<std::size_t>(i)];
            return pt(d);
        };
        LatticePoint a = rand_pt(), b = rand_pt(), c = rand_pt();
        CHECK(leq(a, a));
        if (leq(a, b) && leq(b, a)) CHECK(a == b);
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
    }
}

TEST_CASE("unit-vector subtraction", "[lattice]") {
    CHECK(minus_eB(pt({2, 4}), 0b01) == pt({0, 4}));  // (1,2)-e_{1} = (0,2)
    CHECK(minus_eB(pt({2, 4}), 0b11) == pt({0, 2}));  // (1,2)-e_{1,2} = (0,1)
    CHECK(minus_eB(pt({1, 1}), 0b10) == pt({1, -1})); // half-integer axis
    CHECK(minus_one(pt({2, 4})) == pt({0, 2}));
}

TEST_CASE("disjoint masks compose", "[lattice][property]") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 1 + static_cast<int>(rng() % 4);
        std::vector<std::int64_t> d(static_cast<std::size_t>(n));
        for (auto& v : d) v = static_cast<std::int64_t>(rng() % 21) - 10;
        LatticePoint p = pt(d);
        std::uint32_t all = (1u << n) - 1u;
        std::uint32_t b1 = rng() & all;
        std::uint32_t b2 = rng() & all & ~b1;
        CHECK(minus_eB(minus_eB(p, b1), b2) == minus_eB(p, b1 | b2));
    }
}

TEST_CASE("box iteration order", "[lattice]") {
    SECTION("2x2 box") {
        Box b(pt({0, 0}), pt({2, 2}));
        auto seq = iterate_box(b);
        REQUIRE(seq.size() == 4);
        CHECK(seq[0] == pt({2, 2}));
        CHECK(seq[1] == pt({0, 2}));
        CHECK(seq[2] == pt({2, 0}));
        CHECK(seq[3] == pt({0, 0}));
    }
    SECTION("single point") {
        Box b(pt({3, -1}), pt({3, -1}));
        auto seq = iterate_box(b);
        REQUIRE(seq.size() == 1);
        CHECK(seq[0] == pt({3, -1}));
    }
    SECTION("3x1 box") {
        Box b(pt({0, 0}), pt({4, 0}));
        auto seq = iterate_box(b);
        REQUIRE(seq.size() == 3);
        CHECK(seq[0] == pt({4, 0}));
        CHECK(seq[1] == pt({2, 0}));
        CHECK(seq[2] == pt({0, 0}));
    }
}

TEST_CASE("box iteration is a linear extension of reverse dominance", "[lattice][property]") {
    std::mt19937 rng(99);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 1 + static_cast<int>(rng() % 3);
        std::vector<std::int64_t> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            lo[static_cast<std::size_t>(i)] = 2 * (static_cast<std::int64_t>(rng() % 5) - 2);
            hi[static_cast<std::size_t>(i)] =
                lo[static_cast<std::size_t>(i)] + 2 * static_cast<std::int64_t>(rng() % 4);
        }
        Box b(pt(lo), pt(hi));
        auto seq = iterate_box(b);
        CHECK(static_cast<std::int64_t>(seq.size()) == b.cell_count());
        auto sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        // whenever p strictly precedes q in dominance, q must be emitted first
        for (std::size_t i = 0; i < seq.size(); ++i)
            for (std::size_t j = i + 1; j < seq.size(); ++j)
                CHECK_FALSE((leq(seq[i], seq[j]) && !(seq[i] == seq[j])));
    }
}

TEST_CASE("box indexing round trip", "[lattice]") {
    Box b(pt({-2, -1}), pt({2, 3}));
    for (std::int64_t k = 0; k < b.cell_count(); ++k)
        CHECK(b.flat_index(b.point_at(k)) == k);
    CHECK(b.contains(pt({0, 1})));
    CHECK_FALSE(b.contains(pt({0, 0}))); // parity off on axis 2
    CHECK_FALSE(b.contains(pt({4, 1})));
    CHECK_THROWS_AS(Box(pt({2, 1}), pt({-2, 1})), SchemaError);
}
