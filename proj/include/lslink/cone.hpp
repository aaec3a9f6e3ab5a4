#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lslink/errors.hpp"
#include "lslink/hfl.hpp"

namespace lslink {

/// The four-tower cone complex computing HFL^- at one lattice square, over the
/// truncated polynomial ring F_2[U]/U^N. Tower generators sit in homological
/// degree -2H; U lowers it by 2; the Maslov grading adds the cube grading
/// (a: 0, b and d: 1, c: 2). Edge maps carry the U-power equal to the
/// H-difference along the edge.
struct ConeComplex {
    std::array<std::int64_t, 4> h{};  // order: a, b, c, d
    int truncation = 0;               // N: powers U^0 .. U^{N-1}

    static constexpr std::array<int, 4> cube{0, 1, 2, 1};

    std::int64_t maslov(int tower, int pow) const {
        return -2 * h[static_cast<std::size_t>(tower)] - 2 * pow + cube[static_cast<std::size_t>(tower)];
    }

    std::int64_t h_max() const { return std::max(std::max(h[0], h[1]), std::max(h[2], h[3])); }

    /// Maslov grading of the highest generator.
    std::int64_t top_degree() const {
        std::int64_t t = maslov(0, 0);
        for (int tower = 1; tower < 4; ++tower) t = std::max(t, maslov(tower, 0));
        return t;
    }

    /// Below this grading, truncation can create or kill classes.
    std::int64_t trust_floor() const { return -2 * truncation + 2 * h_max() + 2; }

    /// Images of the generator U^pow of the tower, as (tower, power) pairs;
    /// targets past the truncation are dropped. Over F_2, b - d is b + d.
    std::vector<std::pair<int, int>> boundary(int tower, int pow) const {
        std::vector<std::pair<int, int>> out;
        auto push = [&](int target, std::int64_t delta) {
            int p = pow + static_cast<int>(delta);
            if (p < truncation) out.emplace_back(target, p);
        };
        switch (tower) {
            case 1: push(0, h[1] - h[0]); break;            // b -> a
            case 3: push(0, h[3] - h[0]); break;            // d -> a
            case 2:                                          // c -> b + d
                push(1, h[2] - h[1]);
                push(3, h[2] - h[3]);
                break;
            default: break;                                  // a is a cycle
        }
        return out;
    }
};

inline ConeComplex build_cone(const LocalSquare& sq, int truncation) {
    if (!sq.valid()) throw ValidationError("square violates the growth constraints");
    ConeComplex c;
    c.h = {sq.a, sq.b, sq.c, sq.d};
    c.truncation = truncation;
    if (truncation <= c.h_max() + 2)
        throw SchemaError("truncation too small for this square");
    return c;
}

namespace detail {

/// Rank of a dense F_2 matrix given as rows.
inline int gf2_rank(std::vector<std::vector<std::uint8_t>> m) {
    int rank = 0;
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows; ++r)
            if (m[r][col]) { pivot = r; break; }
        if (pivot == rows) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != static_cast<std::size_t>(rank) && m[r][col])
                for (std::size_t c = col; c < cols; ++c)
                    m[r][c] ^= m[static_cast<std::size_t>(rank)][c];
        ++rank;
        if (rank == static_cast<int>(rows)) break;
    }
    return rank;
}

} // namespace detail

/// Graded homology dimensions over F_2 by rank computation per Maslov grading,
/// restricted to the window. The window must stay inside the trust region.
inline GradedDim homology(const ConeComplex& c, std::int64_t window_lo, std::int64_t window_hi) {
    if (window_hi > c.top_degree())
        throw SchemaError("window upper bound above the top generator degree");
    if (window_lo < c.trust_floor())
        throw SchemaError("window exceeds the truncation trust region");

    // generators grouped by Maslov grading
    std::map<std::int64_t, std::vector<std::pair<int, int>>> by_grading;
    for (int tower = 0; tower < 4; ++tower)
        for (int pow = 0; pow < c.truncation; ++pow)
            by_grading[c.maslov(tower, pow)].emplace_back(tower, pow);

    auto rank_of_boundary = [&](std::int64_t m) -> int {
        auto src = by_grading.find(m);
        auto dst = by_grading.find(m - 1);
        if (src == by_grading.end() || dst == by_grading.end()) return 0;
        std::map<std::pair<int, int>, std::size_t> col;
        for (std::size_t j = 0; j < dst->second.size(); ++j) col[dst->second[j]] = j;
        std::vector<std::vector<std::uint8_t>> mat(
            src->second.size(), std::vector<std::uint8_t>(dst->second.size(), 0));
        for (std::size_t i = 0; i < src->second.size(); ++i)
            for (const auto& tgt : c.boundary(src->second[i].first, src->second[i].second))
                mat[i][col.at(tgt)] ^= 1;
        return detail::gf2_rank(std::move(mat));
    };

    GradedDim out;
    for (std::int64_t m = window_lo; m <= window_hi; ++m) {
        auto it = by_grading.find(m);
        std::int64_t dim_m = it == by_grading.end() ? 0 : static_cast<std::int64_t>(it->second.size());
        std::int64_t hdim = dim_m - rank_of_boundary(m) - rank_of_boundary(m + 1);
        if (hdim < 0) throw ValidationError("negative homology dimension; broken complex");
        if (hdim > 0) out.dims[m] = hdim;
    }
    return out;
}

/// Homology on the full trust window.
inline GradedDim homology_trusted(const ConeComplex& c) {
    return homology(c, c.trust_floor(), c.top_degree());
}

struct OracleMismatch {
    LatticePoint point;
    GradedDim expected; // six-case answer
    GradedDim got;      // cone homology
};

struct OracleReport {
    std::vector<OracleMismatch> mismatches;
    std::int64_t points_checked = 0;
    bool ok() const { return mismatches.empty(); }
};

/// Truncation level for which the trust window provably contains every
/// grading the six cases can produce.
inline int oracle_truncation(const LocalSquare& sq) {
    return static_cast<int>(sq.c + sq.a + 4);
}

/// Compares the six-case answer against brute-force cone homology at every
/// square of the table.
inline OracleReport oracle_check(const HTable& h) {
    if (h.dim() != 2) throw SchemaError("cone oracle needs a two-component table");
    OracleReport rep;
    LatticePoint lo = h.box().lo;
    for (int i = 0; i < 2; ++i) lo[i] = lo[i].stepped(1);
    if (!leq(lo, h.box().hi)) return rep;
    Box inner(lo, h.box().hi);
    for_each_point_desc(inner, [&](const LatticePoint& s) {
        LocalSquare sq = LocalSquare::from_table(h, s);
        GradedDim expected = hfl_minus_for_square(sq);
        ConeComplex cone = build_cone(sq, oracle_truncation(sq));
        GradedDim got = homology_trusted(cone);
        ++rep.points_checked;
        if (!(expected == got)) rep.mismatches.push_back({s, expected, got});
    });
    return rep;
}

} // namespace lslink
