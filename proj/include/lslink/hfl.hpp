#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lslink/classify.hpp"
#include "lslink/errors.hpp"
#include "lslink/h_table.hpp"

namespace lslink {

/// The four H values around one lattice square:
///   a = H(s1, s2)      b = H(s1-1, s2)
///   d = H(s1, s2-1)    c = H(s1-1, s2-1)
struct LocalSquare {
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    bool valid() const {
        auto step = [](std::int64_t x) { return x == 0 || x == 1; };
        return a >= 0 && step(b - a) && step(d - a) && step(c - b) && step(c - d);
    }

    static LocalSquare from_table(const HTable& h, const LatticePoint& s) {
        if (h.dim() != 2) throw SchemaError("local squares need a two-component table");
        LatticePoint p1 = s.stepped(0, -1);
        LatticePoint p2 = s.stepped(1, -1);
        LatticePoint p12 = p1.stepped(1, -1);
        if (!h.box().contains(s) || !h.box().contains(p12))
            throw BoxError("square at " + s.str() + " outside box");
        return LocalSquare{h.at(s), h.at(p1), h.at(p12), h.at(p2)};
    }
};

/// Matches the square against the six possible local patterns, identified by
/// the normalized triple (b-a, d-a, c-a).
inline int local_case(const LocalSquare& sq) {
    if (!sq.valid())
        throw ValidationError("square violates the growth constraints");
    const std::int64_t nb = sq.b - sq.a, nd = sq.d - sq.a, nc = sq.c - sq.a;
    if (nb == 0 && nd == 0 && nc == 0) return 1;
    if (nb == 0 && nd == 1 && nc == 1) return 2;
    if (nb == 1 && nd == 0 && nc == 1) return 3;
    if (nb == 0 && nd == 0 && nc == 1) return 4;
    if (nb == 1 && nd == 1 && nc == 1) return 5;
    if (nb == 1 && nd == 1 && nc == 2) return 6;
    throw ValidationError("impossible local square"); // unreachable for valid squares
}

/// Finite multiset of Maslov gradings with F_2-dimensions.
struct GradedDim {
    std::map<std::int64_t, std::int64_t> dims;

    bool empty() const { return dims.empty(); }
    std::int64_t total() const {
        std::int64_t t = 0;
        for (const auto& [g, d] : dims) t += d;
        return t;
    }
    /// Signed count: a generator in Maslov grading m counts as (-1)^m.
    std::int64_t euler() const {
        std::int64_t e = 0;
        for (const auto& [g, d] : dims) e += (((g % 2) + 2) % 2 == 0) ? d : -d;
        return e;
    }
    friend bool operator==(const GradedDim&, const GradedDim&) = default;
};

/// Graded dimension of HFL^- prescribed by the local case, with h = a.
inline GradedDim hfl_minus_for_square(const LocalSquare& sq) {
    GradedDim g;
    switch (local_case(sq)) {
        case 4: g.dims[-2 * sq.a + 1] = 1; break;
        case 5: g.dims[-2 * sq.a] = 1; break;
        case 6:
            g.dims[-2 * sq.a] = 1;
            g.dims[-2 * sq.a - 1] = 1;
            break;
        default: break; // cases 1-3 vanish
    }
    return g;
}

inline GradedDim hfl_minus_point(const HTable& h, const LatticePoint& s) {
    return hfl_minus_for_square(LocalSquare::from_table(h, s));
}

/// All nonzero HFL^- groups whose square fits in the box.
inline std::map<LatticePoint, GradedDim> hfl_minus_table(const HTable& h) {
    if (h.dim() != 2) throw SchemaError("HFL^- table needs a two-component table");
    std::map<LatticePoint, GradedDim> out;
    LatticePoint lo = h.box().lo;
    for (int i = 0; i < 2; ++i) lo[i] = lo[i].stepped(1);
    if (!leq(lo, h.box().hi)) return out;
    Box inner(lo, h.box().hi);
    for_each_point_desc(inner, [&](const LatticePoint& s) {
        GradedDim g = hfl_minus_point(h, s);
        if (!g.empty()) out.emplace(s, std::move(g));
    });
    return out;
}

/// Top collapsed Alexander grading and the fiberedness verdict read from it.
struct TopReport {
    std::optional<std::int64_t> s_top;
    TriState fibered = TriState::Unknown;
    std::int64_t top_dim = 0;
    std::vector<LatticePoint> top_points;
};

/// At the maximal total grading every contributing point is degenerate: the
/// groups one step up all vanish, so the hat group equals HFL^- there and the
/// fiberedness criterion reads off its total dimension.
inline TopReport s_top_and_fibered(const HTable& h,
                                   const std::map<LatticePoint, GradedDim>& hflm) {
    TopReport rep;
    if (hflm.empty()) return rep;
    std::int64_t max2 = hflm.begin()->first.total2();
    for (const auto& [p, g] : hflm) max2 = std::max(max2, p.total2());

    bool all_degenerate = true;
    for (const auto& [p, g] : hflm) {
        if (p.total2() != max2) continue;
        rep.top_points.push_back(p);
        rep.top_dim += g.total();
        for (std::uint32_t mask = 1; mask <= 3; ++mask) {
            LatticePoint q = p;
            for (int i = 0; i < 2; ++i)
                if (mask & (1u << i)) q[i] = q[i].stepped(1);
            if (!h.box().contains(q) || !h.box().contains(minus_one(q))) {
                // cannot inspect the neighbor; refuse to certify
                all_degenerate = false;
                continue;
            }
            if (!hfl_minus_point(h, q).empty()) all_degenerate = false;
        }
    }
    if (max2 % 2 != 0)
        throw ValidationError("total Alexander grading is not an integer");
    rep.s_top = max2 / 2;
    rep.fibered = all_degenerate ? (rep.top_dim == 1 ? TriState::Yes : TriState::No)
                                 : TriState::Unknown;
    return rep;
}

} // namespace lslink
