#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lslink/errors.hpp"
#include "lslink/h_solver.hpp"
#include "lslink/h_table.hpp"

namespace lslink {

enum class TriState { Yes, No, Unknown };

inline const char* tri_name(TriState t) {
    switch (t) {
        case TriState::Yes: return "yes";
        case TriState::No: return "no";
        default: return "unknown";
    }
}

enum class LinkKind { TypeA, TypeB };

inline const char* kind_name(LinkKind k) { return k == LinkKind::TypeA ? "TypeA" : "TypeB"; }

/// Zero-set shape of the H-function plus the outcome of the three corner
/// equations. The special verdict is certified on the inspected box only.
struct Classification {
    LinkKind kind = LinkKind::TypeA;
    std::optional<LatticePoint> corner; // present iff TypeB
    bool special = false;
    std::vector<int> eq_failures; // subset of {1,2,3}
    bool eq1_checked = false;     // genus/linking data was available
};

/// Type (B) detection: the zero set must be exactly the upper orthant at its
/// componentwise minimum.
inline Classification classify_type(const HTable& h) {
    std::vector<LatticePoint> zeros;
    for_each_point_desc(h.box(), [&](const LatticePoint& p) {
        if (h.at(p) == 0) zeros.push_back(p);
    });
    if (zeros.empty())
        throw BoxError("H has no zeros in the box; enlarge box");

    LatticePoint corner = zeros.front();
    for (const auto& z : zeros)
        for (int i = 0; i < h.dim(); ++i)
            if (z[i] < corner[i]) corner[i] = z[i];

    bool type_b = true;
    for_each_point_desc(h.box(), [&](const LatticePoint& p) {
        bool zero = h.at(p) == 0;
        bool above = leq(corner, p);
        if (zero != above) type_b = false;
    });

    Classification cls;
    if (type_b) {
        cls.kind = LinkKind::TypeB;
        cls.corner = corner;
    } else {
        cls.kind = LinkKind::TypeA;
    }
    return cls;
}

/// Doubled component genera, from the user override when present, otherwise
/// from the zero sets of the component tables.
inline std::optional<std::vector<std::int64_t>> component_genera2(
    const HTable& h, const std::optional<std::vector<std::int64_t>>& override_genera) {
    const int n = h.dim();
    if (override_genera) {
        std::vector<std::int64_t> g2;
        for (auto g : *override_genera) g2.push_back(2 * g);
        return g2;
    }
    if (n == 1) {
        try {
            return std::vector<std::int64_t>{genus2_from_knot_table(h)};
        } catch (const BoxError&) {
            return std::nullopt;
        }
    }
    if (static_cast<int>(h.components().size()) != n) return std::nullopt;
    std::vector<std::int64_t> g2;
    for (const auto& comp : h.components()) {
        try {
            g2.push_back(genus2_from_knot_table(comp));
        } catch (const BoxError&) {
            return std::nullopt;
        }
    }
    return g2;
}

/// The three corner equations. The first needs component genera; when they are
/// not available it is skipped and flagged as unchecked. The third replaces
/// coordinates at or above the corner by the stabilized top slice, the finite
/// stand-in for the sublink value at infinity.
inline Classification is_special(const HTable& h, const Classification& cls,
                                 const std::optional<std::vector<std::int64_t>>& override_genera =
                                     std::nullopt) {
    Classification out = cls;
    out.special = false;
    out.eq_failures.clear();
    out.eq1_checked = false;
    if (cls.kind != LinkKind::TypeB) return out;
    const int n = h.dim();
    for (int i = 0; i < n; ++i)
        if (!h.stabilized(i))
            throw BoxError("table not stabilized on axis " + std::to_string(i + 1) +
                           "; enlarge box");
    const LatticePoint& s = *cls.corner;

    auto genera2 = component_genera2(h, override_genera);
    if (genera2) {
        out.eq1_checked = true;
        for (int i = 0; i < n; ++i) {
            // s_i = g_3(L_i) + lk(L_i, rest)/2, on doubled values
            if (s[i].twice != (*genera2)[static_cast<std::size_t>(i)] + h.linking().total(i)) {
                out.eq_failures.push_back(1);
                break;
            }
        }
    }

    LatticePoint s_minus_one = minus_one(s);
    if (!h.box().contains(s_minus_one))
        throw BoxError("corner minus one falls outside the box; enlarge box");
    if (h.at(s_minus_one) != 1) out.eq_failures.push_back(2);

    const std::int64_t threshold2 = s.total2() - 2 * n;
    bool eq3_ok = true;
    for_each_point_desc(h.box(), [&](const LatticePoint& x) {
        if (!eq3_ok || x.total2() < threshold2) return;
        LatticePoint bar = x;
        for (int i = 0; i < n; ++i)
            if (x[i] >= s[i]) bar[i] = h.box().hi[i];
        if (h.at(x) != h.at(bar)) eq3_ok = false;
    });
    if (!eq3_ok) out.eq_failures.push_back(3);

    out.special = out.eq_failures.empty();
    return out;
}

/// Fibered / strongly-quasi-positive / genus verdicts implied by the
/// classification alone. One-directional for three or more components.
struct InvariantReport {
    TriState fibered = TriState::Unknown;
    TriState sqp = TriState::Unknown;
    TriState fibered_and_sqp = TriState::Unknown;
    std::optional<std::int64_t> tau, nu_plus, s_top, g3_link;
    std::optional<std::vector<std::int64_t>> component_genera; // plain integers
};

inline InvariantReport invariants_from_classification(const HTable& h, const Classification& cls) {
    const int n = h.dim();
    InvariantReport rep;
    auto genera2 = component_genera2(h, std::nullopt);
    if (genera2) {
        std::vector<std::int64_t> g;
        for (auto v : *genera2) g.push_back(v / 2);
        rep.component_genera = g;
    }
    if (cls.special) {
        const std::int64_t sum2 = cls.corner->total2();
        if (sum2 % 2 != 0)
            throw ValidationError("corner coordinate sum is not an integer");
        const std::int64_t sum = sum2 / 2;
        rep.fibered = rep.sqp = rep.fibered_and_sqp = TriState::Yes;
        rep.tau = rep.nu_plus = rep.s_top = sum;
        rep.g3_link = sum - (n - 1);
    } else if (n == 2) {
        rep.fibered_and_sqp = TriState::No;
    }
    return rep;
}

/// Input for the quasi-positivity obstruction of a two-component link.
struct QPInput {
    int n = 2;
    std::int64_t tau = 0;
    std::int64_t mirror_tau = 0;
    bool components_unknotted = false;
    bool total_linking_zero = false;
};

struct QPVerdict {
    bool obstructed = false;
    std::vector<std::string> reasons;
    std::string reason; // joined, or the non-obstruction note
};

/// Two arithmetic obstructions to quasi-positivity:
///  (a) the mirror would need a four-ball Euler characteristic above 2;
///  (b) the maximal self-linking number would exceed twice the unknot's.
inline QPVerdict qp_obstruction(const QPInput& q) {
    if (q.n != 2) throw SchemaError("quasi-positivity obstruction requires exactly two components");
    QPVerdict v;
    if (2 * q.mirror_tau - 2 < -2)
        v.reasons.push_back("mirror four-genus bound");
    if (q.components_unknotted && q.total_linking_zero && 2 * q.tau - 2 > -2)
        v.reasons.push_back("self-linking bound");
    v.obstructed = !v.reasons.empty();
    if (v.obstructed) {
        for (const auto& r : v.reasons) v.reason += (v.reason.empty() ? "" : "; ") + r;
    } else {
        v.reason = "no applicable obstruction";
    }
    return v;
}

} // namespace lslink
