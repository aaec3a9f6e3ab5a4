#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lslink/errors.hpp"
#include "lslink/half_int.hpp"

namespace lslink {

/// Symmetric linking matrix with zero diagonal, stored as plain linking
/// numbers. Row totals fix the per-axis parity of the Alexander lattice.
struct LinkingMatrix {
    std::vector<std::vector<std::int64_t>> lk;

    LinkingMatrix() = default;
    explicit LinkingMatrix(int n)
        : lk(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)) {}
    explicit LinkingMatrix(std::vector<std::vector<std::int64_t>> m) : lk(std::move(m)) {
        validate();
    }

    void validate() const {
        const std::size_t n = lk.size();
        if (n == 0) throw SchemaError("empty linking matrix");
        for (std::size_t i = 0; i < n; ++i) {
            if (lk[i].size() != n) throw SchemaError("linking matrix is not square");
            if (lk[i][i] != 0) throw SchemaError("linking matrix diagonal must be zero");
            for (std::size_t j = 0; j < n; ++j)
                if (lk[i][j] != lk[j][i]) throw SchemaError("linking matrix must be symmetric");
        }
    }

    int size() const { return static_cast<int>(lk.size()); }

    std::int64_t at(int i, int j) const {
        return lk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    /// lk(L_i, rest of the link).
    std::int64_t total(int i) const {
        std::int64_t t = 0;
        for (int j = 0; j < size(); ++j) t += at(i, j);
        return t;
    }

    /// Parity of doubled coordinates on axis i.
    int parity(int i) const { return static_cast<int>(((total(i) % 2) + 2) % 2); }

    LinkingMatrix minor_without(int drop) const {
        LinkingMatrix m(size() - 1);
        int r = 0;
        for (int i = 0; i < size(); ++i) {
            if (i == drop) continue;
            int c = 0;
            for (int j = 0; j < size(); ++j) {
                if (j == drop) continue;
                m.lk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = at(i, j);
                ++c;
            }
            ++r;
        }
        return m;
    }
};

/// The H-function restricted to a finite box: nonnegative values on a dense
/// grid, the linking data that fixes the lattice, per-axis stabilization
/// flags, and (for links) the independently solved one-variable tables of the
/// component knots.
class HTable {
public:
    HTable() = default;
    HTable(Box box, LinkingMatrix linking)
        : box_(std::move(box)), linking_(std::move(linking)),
          values_(static_cast<std::size_t>(box_.cell_count()), 0),
          stabilized_(static_cast<std::size_t>(box_.dim()), false) {
        if (linking_.size() != box_.dim())
            throw SchemaError("linking matrix size does not match box dimension");
        for (int i = 0; i < box_.dim(); ++i)
            if (box_.lo[i].parity() != linking_.parity(i))
                throw SchemaError("box parity disagrees with linking matrix on axis " + std::to_string(i + 1));
    }

    int dim() const { return box_.dim(); }
    const Box& box() const { return box_; }
    const LinkingMatrix& linking() const { return linking_; }
    const std::vector<std::int64_t>& values() const { return values_; }

    std::int64_t at(const LatticePoint& p) const {
        if (!box_.contains(p)) throw BoxError("point " + p.str() + " outside table box");
        return values_[static_cast<std::size_t>(box_.flat_index(p))];
    }

    void set(const LatticePoint& p, std::int64_t v) {
        if (!box_.contains(p)) throw BoxError("point " + p.str() + " outside table box");
        values_[static_cast<std::size_t>(box_.flat_index(p))] = v;
    }

    bool stabilized(int axis) const { return stabilized_[static_cast<std::size_t>(axis)]; }
    void set_stabilized(int axis, bool v) { stabilized_[static_cast<std::size_t>(axis)] = v; }
    bool all_stabilized() const {
        for (int i = 0; i < dim(); ++i)
            if (!stabilized(i)) return false;
        return true;
    }

    int margin() const { return margin_; }
    void set_margin(int m) { margin_ = m; }

    const std::vector<HTable>& components() const { return component_h_; }
    void set_components(std::vector<HTable> c) { component_h_ = std::move(c); }

    /// H >= 0 and every unit step downward changes H by 0 or 1.
    void validate_growth() const {
        lslink::Box b = box_;
        for_each_point_desc(b, [&](const LatticePoint& p) {
            std::int64_t h = at(p);
            if (h < 0)
                throw ValidationError("negative H value at " + p.str());
            for (int i = 0; i < dim(); ++i) {
                if (p[i] == b.lo[i]) continue;
                std::int64_t step = at(p.stepped(i, -1)) - h;
                if (step != 0 && step != 1)
                    throw ValidationError("H step outside {0,1} at " + p.str() + " axis " +
                                          std::to_string(i + 1));
            }
        });
    }

    /// True when the two topmost slices of the axis carry identical values,
    /// the finite signature of stabilization toward infinity.
    bool top_two_slices_equal(int axis) const {
        if (box_.extent(axis) < 2) return false;
        Box slice(box_.lo.with_axis(axis, box_.hi[axis]), box_.hi);
        bool equal = true;
        for_each_point_desc(slice, [&](const LatticePoint& p) {
            if (at(p) != at(p.stepped(axis, -1))) equal = false;
        });
        return equal;
    }

private:
    Box box_;
    LinkingMatrix linking_;
    std::vector<std::int64_t> values_;
    std::vector<bool> stabilized_;
    std::vector<HTable> component_h_;
    int margin_ = 2;
};

} // namespace lslink
