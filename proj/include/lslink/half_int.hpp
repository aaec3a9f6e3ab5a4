#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "lslink/errors.hpp"

namespace lslink {

/// Exact half-integer, stored as its doubled value. The Alexander lattice of a
/// link only ever has denominator 2, so this representation is closed under
/// every operation we need and keeps table equality tests exact.
struct HalfInt {
    std::int64_t twice = 0;

    constexpr HalfInt() = default;
    static constexpr HalfInt from_doubled(std::int64_t d) { return HalfInt{d}; }
    static constexpr HalfInt from_int(std::int64_t v) { return HalfInt{2 * v}; }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr std::int64_t floor() const {
        return (twice >= 0 ? twice : twice - 1) / 2;
    }
    constexpr int parity() const { return static_cast<int>(((twice % 2) + 2) % 2); }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }
    constexpr HalfInt& operator+=(HalfInt o) { twice += o.twice; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice -= o.twice; return *this; }

    /// Shift by a whole number of lattice steps.
    constexpr HalfInt stepped(std::int64_t units) const { return HalfInt{twice + 2 * units}; }

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }

private:
    constexpr explicit HalfInt(std::int64_t d, int) : twice(d) {}
    constexpr HalfInt(std::int64_t d) : twice(d) {}
    friend struct LatticePoint;
};

/// A point of the affine lattice indexing Alexander gradings.
struct LatticePoint {
    std::vector<HalfInt> coords;

    LatticePoint() = default;
    explicit LatticePoint(std::vector<HalfInt> c) : coords(std::move(c)) {}
    static LatticePoint from_doubled(const std::vector<std::int64_t>& d) {
        LatticePoint p;
        p.coords.reserve(d.size());
        for (auto v : d) p.coords.push_back(HalfInt::from_doubled(v));
        return p;
    }

    int dim() const { return static_cast<int>(coords.size()); }
    HalfInt operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
    HalfInt& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

    std::vector<std::int64_t> doubled() const {
        std::vector<std::int64_t> d;
        d.reserve(coords.size());
        for (auto c : coords) d.push_back(c.twice);
        return d;
    }

    /// Doubled total coordinate sum.
    std::int64_t total2() const {
        std::int64_t t = 0;
        for (auto c : coords) t += c.twice;
        return t;
    }

    LatticePoint stepped(int axis, std::int64_t units) const {
        LatticePoint p = *this;
        p.coords[static_cast<std::size_t>(axis)] = p.coords[static_cast<std::size_t>(axis)].stepped(units);
        return p;
    }

    LatticePoint with_axis(int axis, HalfInt v) const {
        LatticePoint p = *this;
        p.coords[static_cast<std::size_t>(axis)] = v;
        return p;
    }

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
        return a.doubled() < b.doubled();
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < dim(); ++i) {
            if (i) s += ",";
            s += coords[static_cast<std::size_t>(i)].str();
        }
        return s + ")";
    }
};

namespace detail {
inline void require_compatible(const LatticePoint& a, const LatticePoint& b) {
    if (a.dim() != b.dim())
        throw SchemaError("lattice points have different dimensions");
    for (int i = 0; i < a.dim(); ++i)
        if (a[i].parity() != b[i].parity())
            throw SchemaError("lattice points lie on different affine lattices (parity mismatch on axis " +
                              std::to_string(i + 1) + ")");
}
} // namespace detail

/// Componentwise partial order on the lattice.
inline bool leq(const LatticePoint& a, const LatticePoint& b) {
    detail::require_compatible(a, b);
    for (int i = 0; i < a.dim(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

/// Subtract one lattice unit from every coordinate indexed by the bitmask.
inline LatticePoint minus_eB(const LatticePoint& s, std::uint32_t mask) {
    LatticePoint p = s;
    for (int i = 0; i < s.dim(); ++i)
        if (mask & (1u << i)) p[i] = p[i].stepped(-1);
    return p;
}

inline LatticePoint minus_one(const LatticePoint& s) {
    return minus_eB(s, (1u << s.dim()) - 1u);
}

/// Axis-aligned inclusive box of lattice points.
struct Box {
    LatticePoint lo, hi;

    Box() = default;
    Box(LatticePoint l, LatticePoint h) : lo(std::move(l)), hi(std::move(h)) {
        detail::require_compatible(lo, hi);
        if (!leq(lo, hi)) throw SchemaError("box lower corner exceeds upper corner");
    }

    int dim() const { return lo.dim(); }

    std::int64_t extent(int axis) const {
        return (hi[axis].twice - lo[axis].twice) / 2 + 1;
    }

    std::int64_t cell_count() const {
        std::int64_t n = 1;
        for (int i = 0; i < dim(); ++i)
            if (__builtin_mul_overflow(n, extent(i), &n))
                throw BoxError("box too large");
        return n;
    }

    bool contains(const LatticePoint& p) const {
        if (p.dim() != dim()) return false;
        for (int i = 0; i < dim(); ++i) {
            if (p[i].parity() != lo[i].parity()) return false;
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        }
        return true;
    }

    /// Flat index, axis 0 slowest / last axis fastest.
    std::int64_t flat_index(const LatticePoint& p) const {
        std::int64_t idx = 0;
        for (int i = 0; i < dim(); ++i)
            idx = idx * extent(i) + (p[i].twice - lo[i].twice) / 2;
        return idx;
    }

    LatticePoint point_at(std::int64_t flat) const {
        LatticePoint p = lo;
        for (int i = dim() - 1; i >= 0; --i) {
            std::int64_t e = extent(i);
            p[i] = lo[i].stepped(flat % e);
            flat /= e;
        }
        return p;
    }
};

/// Visits every point of the box exactly once in descending anti-lexicographic
/// order (last coordinate compared first). Whenever p strictly dominates q,
/// p is visited before q, which is the dependency order the table solver needs.
template <class F>
void for_each_point_desc(const Box& box, F&& fn) {
    const int n = box.dim();
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = box.extent(i) - 1;
    for (;;) {
        LatticePoint p = box.lo;
        for (int i = 0; i < n; ++i) p[i] = box.lo[i].stepped(idx[static_cast<std::size_t>(i)]);
        fn(p);
        int axis = 0;
        while (axis < n && idx[static_cast<std::size_t>(axis)] == 0) ++axis;
        if (axis == n) return;
        --idx[static_cast<std::size_t>(axis)];
        for (int i = 0; i < axis; ++i) idx[static_cast<std::size_t>(i)] = box.extent(i) - 1;
    }
}

inline std::vector<LatticePoint> iterate_box(const Box& box) {
    std::vector<LatticePoint> out;
    out.reserve(static_cast<std::size_t>(box.cell_count()));
    for_each_point_desc(box, [&](const LatticePoint& p) { out.push_back(p); });
    return out;
}

} // namespace lslink
