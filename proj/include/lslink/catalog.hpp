#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lslink/classify.hpp"
#include "lslink/errors.hpp"
#include "lslink/link_input.hpp"

namespace lslink {

/// Where an entry's expected data comes from: a published figure or statement
/// for this link family, or values derived here (the note names the oracle).
enum class Provenance { Figure, Statement, Derived };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Figure: return "figure";
        case Provenance::Statement: return "statement";
        default: return "derived";
    }
}

struct ExpectedData {
    std::map<std::vector<std::int64_t>, std::int64_t> h_values; // doubled point -> H
    std::optional<LinkKind> kind;
    std::optional<std::vector<std::int64_t>> corner2;
    std::optional<bool> special;
    std::optional<std::int64_t> tau;
    std::optional<std::int64_t> g3;
};

struct CatalogEntry {
    std::string name;
    std::optional<LinkInput> link;
    std::optional<QPInput> qp;
    Provenance provenance = Provenance::Derived;
    std::string note;
    ExpectedData expected;
};

namespace detail {

inline std::vector<Coeff> poly_mul(const std::vector<Coeff>& a, const std::vector<Coeff>& b) {
    std::vector<Coeff> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline std::vector<Coeff> poly_div_exact(std::vector<Coeff> num, const std::vector<Coeff>& den) {
    if (den.empty() || den.back() == 0) throw SchemaError("bad divisor");
    if (num.size() < den.size()) throw SchemaError("division underflow");
    std::vector<Coeff> quot(num.size() - den.size() + 1, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
        Coeff c = num[k + den.size() - 1] / den.back();
        quot[k] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw SchemaError("inexact polynomial division");
    return quot;
}

inline std::vector<Coeff> cyclic(std::int64_t n) { // t^n - 1
    std::vector<Coeff> p(static_cast<std::size_t>(n) + 1, 0);
    p.front() = -1;
    p.back() = 1;
    return p;
}

} // namespace detail

/// Symmetric Alexander polynomial of the positive (p,q) torus knot, from the
/// classical rational expression evaluated by exact division and centered at
/// the origin.
inline LaurentSeries torus_knot_alexander(std::int64_t p, std::int64_t q) {
    if (p < 2 || q < 2) throw SchemaError("torus knot parameters must be at least 2");
    auto gcd = [](std::int64_t a, std::int64_t b) {
        while (b) { std::int64_t t = a % b; a = b; b = t; }
        return a;
    };
    if (gcd(p, q) != 1) throw SchemaError("torus knot parameters must be coprime");
    auto num = detail::poly_mul(detail::cyclic(p * q), detail::cyclic(1));
    auto quot = detail::poly_div_exact(detail::poly_div_exact(num, detail::cyclic(p)),
                                       detail::cyclic(q));
    const std::int64_t genus2 = (p - 1) * (q - 1); // doubled genus
    LaurentSeries delta(1);
    for (std::size_t k = 0; k < quot.size(); ++k)
        delta.add_term({2 * static_cast<std::int64_t>(k) - genus2}, quot[k]);
    return delta;
}

/// The two-bridge family used by the quasi-positivity obstruction: unknotted
/// components, zero linking, tau = k, mirror tau = 1 - k.
inline QPInput two_bridge_tau(std::int64_t k) {
    if (k < 1) throw SchemaError("two-bridge family index must be positive");
    QPInput q;
    q.n = 2;
    q.tau = k;
    q.mirror_tau = 1 - k;
    q.components_unknotted = true;
    q.total_linking_zero = true;
    return q;
}

namespace detail {

inline LaurentSeries whitehead_delta() {
    LaurentSeries d(2);
    d.add_term({1, 1}, -1);
    d.add_term({1, -1}, 1);
    d.add_term({-1, 1}, 1);
    d.add_term({-1, -1}, -1);
    return d;
}

/// 5x5 golden grid on [-2,2]^2, axis 1 slowest, axis 2 ascending fastest.
inline const std::vector<std::int64_t>& whitehead_grid() {
    static const std::vector<std::int64_t> grid = {
        4, 3, 2, 2, 2, // s1 = -2
        3, 2, 1, 1, 1, // s1 = -1
        2, 1, 1, 0, 0, // s1 =  0
        2, 1, 0, 0, 0, // s1 =  1
        2, 1, 0, 0, 0, // s1 =  2
    };
    return grid;
}

/// 9x9 golden grid on [-4,4]^2 for L7n1, same layout.
inline const std::vector<std::int64_t>& l7n1_grid() {
    static const std::vector<std::int64_t> grid = {
        8, 7, 6, 6, 5, 5, 5, 5, 5, // s1 = -4
        7, 6, 5, 5, 4, 4, 4, 4, 4, // s1 = -3
        6, 5, 4, 4, 3, 3, 3, 3, 3, // s1 = -2
        5, 4, 3, 3, 2, 2, 2, 2, 2, // s1 = -1
        5, 4, 3, 2, 1, 1, 1, 1, 1, // s1 =  0
        5, 4, 3, 2, 1, 1, 0, 0, 0, // s1 =  1
        5, 4, 3, 2, 1, 1, 0, 0, 0, // s1 =  2
        5, 4, 3, 2, 1, 1, 0, 0, 0, // s1 =  3
        5, 4, 3, 2, 1, 1, 0, 0, 0, // s1 =  4
    };
    return grid;
}

inline std::map<std::vector<std::int64_t>, std::int64_t> grid_to_map(
    const std::vector<std::int64_t>& grid, std::int64_t lo, std::int64_t n) {
    std::map<std::vector<std::int64_t>, std::int64_t> m;
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j)
            m[{2 * (lo + i), 2 * (lo + j)}] = grid[static_cast<std::size_t>(i * n + j)];
    return m;
}

/// Separable unlink values: H(s1, s2) = max(0, -s1) + max(0, -s2).
inline std::map<std::vector<std::int64_t>, std::int64_t> unlink_map(std::int64_t lo, std::int64_t hi) {
    std::map<std::vector<std::int64_t>, std::int64_t> m;
    for (std::int64_t i = lo; i <= hi; ++i)
        for (std::int64_t j = lo; j <= hi; ++j)
            m[{2 * i, 2 * j}] = std::max<std::int64_t>(0, -i) + std::max<std::int64_t>(0, -j);
    return m;
}

inline LaurentSeries trefoil_delta() {
    LaurentSeries d(1);
    d.add_term({2}, 1);
    d.add_term({0}, -1);
    d.add_term({-2}, 1);
    return d;
}

} // namespace detail

inline std::vector<std::string> catalog_names() {
    return {"unknot", "trefoil",  "torus_knot(p,q)", "unlink2",
            "hopf_pos", "whitehead", "l7n1",          "two_bridge_tau(k)"};
}

/// Fully populated catalog entry; parametric names accept both
/// "torus_knot(2,5)" and "torus_knot:2:5" spellings.
inline CatalogEntry get(const std::string& name);

namespace detail {

inline bool parse_params(const std::string& name, const std::string& stem,
                         std::vector<std::int64_t>& params) {
    // accepted: stem(p,q,...) or stem:p:q...
    if (name.rfind(stem, 0) != 0) return false;
    std::string rest = name.substr(stem.size());
    if (rest.empty()) return false;
    if (rest.front() == '(') {
        if (rest.back() != ')') return false;
        rest = rest.substr(1, rest.size() - 2);
    } else if (rest.front() == ':') {
        rest = rest.substr(1);
    } else {
        return false;
    }
    std::string cur;
    for (char ch : rest + ",") {
        if (ch == ',' || ch == ':') {
            if (cur.empty()) return false;
            try {
                params.push_back(std::stoll(cur));
            } catch (...) {
                return false;
            }
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return !params.empty();
}

} // namespace detail

inline CatalogEntry get(const std::string& name) {
    CatalogEntry e;
    e.name = name;

    if (name == "unknot") {
        LinkInput in;
        in.name = name;
        in.n = 1;
        in.linking = LinkingMatrix(1);
        in.alexander = LaurentSeries::constant(1, 1);
        e.link = in;
        e.provenance = Provenance::Statement;
        e.note = "H(s) = max(0, -s)";
        e.expected.kind = LinkKind::TypeB;
        e.expected.corner2 = {0};
        e.expected.special = true;
        e.expected.tau = 0;
        e.expected.g3 = 0;
        for (std::int64_t s = -4; s <= 4; ++s)
            e.expected.h_values[{2 * s}] = std::max<std::int64_t>(0, -s);
        return e;
    }
    if (name == "trefoil") {
        LinkInput in;
        in.name = name;
        in.n = 1;
        in.linking = LinkingMatrix(1);
        in.alexander = detail::trefoil_delta();
        e.link = in;
        e.provenance = Provenance::Derived;
        e.note = "staircase from the suffix-sum oracle; genus (p-1)(q-1)/2 = 1";
        e.expected.kind = LinkKind::TypeB;
        e.expected.corner2 = {2};
        e.expected.special = true;
        e.expected.tau = 1;
        e.expected.g3 = 1;
        e.expected.h_values = {{{2}, 0}, {{0}, 1}, {{-2}, 1}, {{-4}, 2}};
        return e;
    }
    {
        std::vector<std::int64_t> params;
        if (detail::parse_params(name, "torus_knot", params)) {
            if (params.size() != 2) throw SchemaError("torus_knot takes two parameters");
            LinkInput in;
            in.name = "torus_knot(" + std::to_string(params[0]) + "," + std::to_string(params[1]) + ")";
            in.n = 1;
            in.linking = LinkingMatrix(1);
            in.alexander = torus_knot_alexander(params[0], params[1]);
            e.name = in.name;
            e.link = in;
            e.provenance = Provenance::Derived;
            e.note = "Alexander polynomial from the classical rational expression; "
                     "zero set checked against genus (p-1)(q-1)/2";
            e.expected.kind = LinkKind::TypeB;
            const std::int64_t g = (params[0] - 1) * (params[1] - 1) / 2;
            e.expected.corner2 = {2 * g};
            e.expected.special = true;
            e.expected.tau = g;
            e.expected.g3 = g;
            return e;
        }
    }
    if (name == "unlink2") {
        LinkInput in;
        in.name = name;
        in.n = 2;
        in.linking = LinkingMatrix(2);
        in.alexander = LaurentSeries(2); // identically zero
        e.link = in;
        e.provenance = Provenance::Figure;
        e.note = "split link; boundary values propagate inward";
        e.expected.kind = LinkKind::TypeB;
        e.expected.corner2 = {0, 0};
        e.expected.special = false;
        e.expected.h_values = detail::unlink_map(-4, 4);
        return e;
    }
    if (name == "hopf_pos") {
        LinkInput in;
        in.name = name;
        in.n = 2;
        LinkingMatrix m(2);
        m.lk[0][1] = m.lk[1][0] = 1;
        in.linking = m;
        in.alexander = LaurentSeries::constant(2, 1); // normalizes to the half-unit monomial
        e.link = in;
        e.provenance = Provenance::Derived;
        e.note = "validated by the special pipeline; corner (1/2,1/2)";
        e.expected.kind = LinkKind::TypeB;
        e.expected.corner2 = {1, 1};
        e.expected.special = true;
        e.expected.tau = 1;
        e.expected.g3 = 0;
        e.expected.h_values = {
            {{1, 1}, 0}, {{-1, 1}, 1}, {{1, -1}, 1}, {{-1, -1}, 1}, {{-3, -1}, 2}, {{-3, -3}, 3}};
        return e;
    }
    if (name == "whitehead") {
        LinkInput in;
        in.name = name;
        in.n = 2;
        in.linking = LinkingMatrix(2);
        in.alexander = detail::whitehead_delta();
        e.link = in;
        e.provenance = Provenance::Figure;
        e.note = "5x5 golden grid on [-2,2]^2";
        e.expected.kind = LinkKind::TypeA;
        e.expected.h_values = detail::grid_to_map(detail::whitehead_grid(), -2, 5);
        return e;
    }
    if (name == "l7n1") {
        LinkInput in;
        in.name = name;
        in.n = 2;
        LinkingMatrix m(2);
        m.lk[0][1] = m.lk[1][0] = 2;
        in.linking = m;
        RawTable raw;
        raw.box = Box(LatticePoint::from_doubled({-8, -8}), LatticePoint::from_doubled({8, 8}));
        raw.values = detail::l7n1_grid();
        in.h_table = raw;
        // the grid pins both boundary staircases: an unknot and a trefoil,
        // with linking number 2 forced by the corner equations
        in.components = {std::nullopt, detail::trefoil_delta()};
        in.component_genera = std::vector<std::int64_t>{0, 1};
        e.link = in;
        e.provenance = Provenance::Figure;
        e.note = "9x9 golden grid on [-4,4]^2; linking and genera read off the grid";
        e.expected.kind = LinkKind::TypeB;
        e.expected.corner2 = {2, 4};
        e.expected.special = true;
        e.expected.tau = 3;
        e.expected.g3 = 2;
        e.expected.h_values = detail::grid_to_map(detail::l7n1_grid(), -4, 9);
        return e;
    }
    {
        std::vector<std::int64_t> params;
        if (detail::parse_params(name, "two_bridge_tau", params) ||
            detail::parse_params(name, "two_bridge", params)) {
            if (params.size() != 1) throw SchemaError("two_bridge_tau takes one parameter");
            e.name = "two_bridge_tau(" + std::to_string(params[0]) + ")";
            e.qp = two_bridge_tau(params[0]);
            e.provenance = Provenance::Statement;
            e.note = "tau = k and mirror tau = 1-k for the two-bridge family";
            return e;
        }
    }
    throw SchemaError("unknown catalog entry: " + name);
}

} // namespace lslink
