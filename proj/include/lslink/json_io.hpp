#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lslink/catalog.hpp"
#include "lslink/classify.hpp"
#include "lslink/cone.hpp"
#include "lslink/errors.hpp"
#include "lslink/h_solver.hpp"
#include "lslink/hfl.hpp"
#include "lslink/link_input.hpp"

namespace lslink {

using json = nlohmann::ordered_json;

namespace detail {

inline Coeff coeff_from_json(const json& j) {
    if (j.is_number_integer()) return Coeff(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Coeff(j.get<std::string>());
        } catch (...) {
            throw SchemaError("coefficient string is not an integer");
        }
    }
    throw SchemaError("coefficient must be an integer or a decimal string");
}

inline json coeff_to_json(const Coeff& c) {
    if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(c);
    return c.str();
}

inline LaurentSeries series_from_json(const json& j, int vars) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw SchemaError("polynomial must be an object with a \"terms\" array");
    LaurentSeries s(vars);
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("exp2") || !t.contains("coeff"))
            throw SchemaError("each term needs \"exp2\" and \"coeff\"");
        if (!t["exp2"].is_array() || static_cast<int>(t["exp2"].size()) != vars)
            throw SchemaError("term exponent length does not match the variable count");
        Exp e;
        for (const auto& v : t["exp2"]) {
            if (!v.is_number_integer()) throw SchemaError("exponents must be integers (doubled)");
            e.push_back(v.get<std::int64_t>());
        }
        s.add_term(e, coeff_from_json(t["coeff"]));
    }
    return s;
}

inline json series_to_json(const LaurentSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) {
        json t;
        t["exp2"] = e;
        t["coeff"] = coeff_to_json(c);
        terms.push_back(std::move(t));
    }
    json out;
    out["terms"] = std::move(terms);
    return out;
}

} // namespace detail

/// Parses the link-input schema. Linking matrix entries are doubled linking
/// numbers, exponents are doubled, and parities must be mutually consistent.
inline LinkInput parse_link_input(const json& j) {
    if (!j.is_object()) throw SchemaError("input must be a JSON object");
    LinkInput in;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw SchemaError("name must be a string");
        in.name = j["name"].get<std::string>();
    }
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw SchemaError("missing integer field \"n\"");
    in.n = j["n"].get<int>();
    if (in.n < 1 || in.n > 16) throw SchemaError("n out of range");

    if (!j.contains("linking") || !j["linking"].is_array() ||
        static_cast<int>(j["linking"].size()) != in.n)
        throw SchemaError("linking must be an n x n matrix");
    LinkingMatrix m(in.n);
    for (int r = 0; r < in.n; ++r) {
        const auto& row = j["linking"][static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != in.n)
            throw SchemaError("linking must be an n x n matrix");
        for (int c = 0; c < in.n; ++c) {
            const auto& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number_integer()) throw SchemaError("linking entries must be integers (doubled)");
            std::int64_t d = v.get<std::int64_t>();
            if (d % 2 != 0)
                throw SchemaError("doubled linking numbers must be even (linking numbers are integers)");
            m.lk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = d / 2;
        }
    }
    in.linking = m;

    if (j.contains("alexander")) in.alexander = detail::series_from_json(j["alexander"], in.n);
    // a table exported by the tool itself carries the payload at top level
    bool table_export = !j.contains("alexander") && !j.contains("h_table") &&
                        j.contains("origin2") && j.contains("dims") && j.contains("values");
    if (j.contains("h_table") || table_export) {
        const auto& ht = table_export ? j : j["h_table"];
        if (!ht.is_object() || !ht.contains("origin2") || !ht.contains("dims") || !ht.contains("values"))
            throw SchemaError("h_table needs origin2, dims and values");
        if (static_cast<int>(ht["origin2"].size()) != in.n || static_cast<int>(ht["dims"].size()) != in.n)
            throw SchemaError("h_table origin2/dims length does not match n");
        std::vector<std::int64_t> lo2, hi2, dims;
        for (int i = 0; i < in.n; ++i) {
            if (!ht["origin2"][static_cast<std::size_t>(i)].is_number_integer() ||
                !ht["dims"][static_cast<std::size_t>(i)].is_number_integer())
                throw SchemaError("h_table origin2/dims must be integers");
            std::int64_t o = ht["origin2"][static_cast<std::size_t>(i)].get<std::int64_t>();
            std::int64_t d = ht["dims"][static_cast<std::size_t>(i)].get<std::int64_t>();
            if (d <= 0) throw SchemaError("h_table dims must be positive");
            lo2.push_back(o);
            hi2.push_back(o + 2 * (d - 1));
            dims.push_back(d);
        }
        RawTable raw;
        raw.box = Box(LatticePoint::from_doubled(lo2), LatticePoint::from_doubled(hi2));
        if (!ht["values"].is_array() ||
            static_cast<std::int64_t>(ht["values"].size()) != raw.box.cell_count())
            throw SchemaError("h_table values length does not match dims");
        for (const auto& v : ht["values"]) {
            if (!v.is_number_integer()) throw SchemaError("h_table values must be integers");
            raw.values.push_back(v.get<std::int64_t>());
        }
        in.h_table = std::move(raw);
    }
    if (j.contains("components")) {
        if (!j["components"].is_array() || static_cast<int>(j["components"].size()) != in.n)
            throw SchemaError("components must list one entry per component");
        for (const auto& c : j["components"]) {
            if (c.is_null())
                in.components.push_back(std::nullopt);
            else
                in.components.push_back(detail::series_from_json(c, 1));
        }
    }
    if (j.contains("component_genera")) {
        if (!j["component_genera"].is_array())
            throw SchemaError("component_genera must be an array");
        std::vector<std::int64_t> g;
        for (const auto& v : j["component_genera"]) {
            if (!v.is_number_integer()) throw SchemaError("component_genera must be integers");
            g.push_back(v.get<std::int64_t>());
        }
        in.component_genera = std::move(g);
    }
    if (j.contains("sublinks")) {
        if (!j["sublinks"].is_array()) throw SchemaError("sublinks must be an array");
        for (const auto& s : j["sublinks"]) {
            if (!s.is_object() || !s.contains("components") || !s.contains("alexander"))
                throw SchemaError("each sublink needs components and alexander");
            std::vector<int> set;
            for (const auto& v : s["components"]) {
                if (!v.is_number_integer()) throw SchemaError("sublink components must be integers");
                set.push_back(v.get<int>() - 1); // 1-based in the schema
            }
            std::sort(set.begin(), set.end());
            in.sublinks.emplace(set, detail::series_from_json(s["alexander"], static_cast<int>(set.size())));
        }
    }
    in.validate();
    return in;
}

inline LinkInput parse_link_input(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return parse_link_input(j);
}

inline json link_input_to_json(const LinkInput& in) {
    json j;
    j["name"] = in.name;
    j["n"] = in.n;
    json linking = json::array();
    for (int r = 0; r < in.n; ++r) {
        json row = json::array();
        for (int c = 0; c < in.n; ++c) row.push_back(2 * in.linking.at(r, c));
        linking.push_back(std::move(row));
    }
    j["linking"] = std::move(linking);
    if (in.alexander) j["alexander"] = detail::series_to_json(*in.alexander);
    if (in.h_table) {
        json ht;
        ht["origin2"] = in.h_table->box.lo.doubled();
        json dims = json::array();
        for (int i = 0; i < in.n; ++i) dims.push_back(in.h_table->box.extent(i));
        ht["dims"] = std::move(dims);
        ht["values"] = in.h_table->values;
        j["h_table"] = std::move(ht);
    }
    if (!in.components.empty()) {
        json comps = json::array();
        for (const auto& c : in.components)
            comps.push_back(c ? detail::series_to_json(*c) : json(nullptr));
        j["components"] = std::move(comps);
    }
    if (in.component_genera) j["component_genera"] = *in.component_genera;
    if (!in.sublinks.empty()) {
        json subs = json::array();
        for (const auto& [set, poly] : in.sublinks) {
            json s;
            json comps = json::array();
            for (int idx : set) comps.push_back(idx + 1);
            s["components"] = std::move(comps);
            s["alexander"] = detail::series_to_json(poly);
            subs.push_back(std::move(s));
        }
        j["sublinks"] = std::move(subs);
    }
    return j;
}

// ---------------------------------------------------------------------------
// table emitters

namespace detail {

inline std::string pad_left(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

} // namespace detail

/// Grid with s1 rightward and s2 upward.
inline std::string grid_ascii(const HTable& h, const std::string& name) {
    std::ostringstream os;
    const Box& b = h.box();
    if (h.dim() == 1) {
        std::size_t w = 1;
        for (std::int64_t s2 = b.lo[0].twice; s2 <= b.hi[0].twice; s2 += 2) {
            w = std::max(w, HalfInt::from_doubled(s2).str().size());
            w = std::max(w, std::to_string(h.at(LatticePoint::from_doubled({s2}))).size());
        }
        os << "H[" << name << "] on s in [" << b.lo[0].str() << "," << b.hi[0].str() << "]\n";
        os << "  s |";
        for (std::int64_t s2 = b.lo[0].twice; s2 <= b.hi[0].twice; s2 += 2)
            os << " " << detail::pad_left(HalfInt::from_doubled(s2).str(), w);
        os << "\n  H |";
        for (std::int64_t s2 = b.lo[0].twice; s2 <= b.hi[0].twice; s2 += 2)
            os << " "
               << detail::pad_left(std::to_string(h.at(LatticePoint::from_doubled({s2}))), w);
        os << "\n";
        return os.str();
    }
    if (h.dim() != 2)
        throw SchemaError("ascii grids are available for one- and two-component tables only");
    std::size_t w = 1;
    for_each_point_desc(b, [&](const LatticePoint& p) {
        w = std::max(w, std::to_string(h.at(p)).size());
        for (int i = 0; i < 2; ++i) w = std::max(w, p[i].str().size());
    });
    const std::size_t label_w = std::max<std::size_t>(w + 2, 5);
    os << "H[" << name << "] on s1 in [" << b.lo[0].str() << "," << b.hi[0].str()
       << "], s2 in [" << b.lo[1].str() << "," << b.hi[1].str() << "]\n";
    os << detail::pad_left("s2\\s1", label_w) << " |";
    for (std::int64_t s1 = b.lo[0].twice; s1 <= b.hi[0].twice; s1 += 2)
        os << " " << detail::pad_left(HalfInt::from_doubled(s1).str(), w);
    os << "\n";
    for (std::int64_t s2 = b.hi[1].twice; s2 >= b.lo[1].twice; s2 -= 2) {
        os << detail::pad_left(HalfInt::from_doubled(s2).str(), label_w) << " |";
        for (std::int64_t s1 = b.lo[0].twice; s1 <= b.hi[0].twice; s1 += 2)
            os << " "
               << detail::pad_left(std::to_string(h.at(LatticePoint::from_doubled({s1, s2}))), w);
        os << "\n";
    }
    return os.str();
}

/// One row per lattice point, ascending lexicographic, doubled coordinates.
inline std::string table_csv(const HTable& h) {
    std::ostringstream os;
    for (int i = 0; i < h.dim(); ++i) os << "s" << (i + 1) << "_doubled,";
    os << "H\n";
    for (std::int64_t k = 0; k < h.box().cell_count(); ++k) {
        LatticePoint p = h.box().point_at(k);
        for (int i = 0; i < h.dim(); ++i) os << p[i].twice << ",";
        os << h.at(p) << "\n";
    }
    return os.str();
}

inline json table_json(const HTable& h, const std::string& name,
                       const std::optional<Sign>& sign) {
    json j;
    j["name"] = name;
    j["n"] = h.dim();
    j["origin2"] = h.box().lo.doubled();
    json dims = json::array();
    for (int i = 0; i < h.dim(); ++i) dims.push_back(h.box().extent(i));
    j["dims"] = std::move(dims);
    j["values"] = h.values();
    json linking = json::array();
    for (int r = 0; r < h.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < h.dim(); ++c) row.push_back(2 * h.linking().at(r, c));
        linking.push_back(std::move(row));
    }
    j["linking"] = std::move(linking);
    json stab = json::array();
    for (int i = 0; i < h.dim(); ++i) stab.push_back(h.stabilized(i));
    j["stabilized"] = std::move(stab);
    j["sign"] = sign ? sign_name(*sign) : "n/a";
    return j;
}

// ---------------------------------------------------------------------------
// report emitters

inline json classification_json(const std::string& name, const HTable& h,
                                const Classification& cls, const InvariantReport& rep,
                                const std::optional<Sign>& sign) {
    json j;
    j["name"] = name;
    j["n"] = h.dim();
    j["kind"] = kind_name(cls.kind);
    if (cls.corner) j["corner2"] = cls.corner->doubled();
    j["special"] = cls.special;
    j["eq1_checked"] = cls.eq1_checked;
    if (!cls.eq_failures.empty()) j["eq_failures"] = cls.eq_failures;
    j["special_scope"] = "inspected box";
    j["fibered"] = tri_name(rep.fibered);
    j["sqp"] = tri_name(rep.sqp);
    j["fibered_and_sqp"] = tri_name(rep.fibered_and_sqp);
    if (rep.tau) j["tau"] = *rep.tau;
    if (rep.nu_plus) j["nu_plus"] = *rep.nu_plus;
    if (rep.s_top) j["s_top"] = *rep.s_top;
    if (rep.g3_link) j["g3"] = *rep.g3_link;
    if (rep.component_genera) j["component_genera"] = *rep.component_genera;
    j["sign"] = sign ? sign_name(*sign) : "n/a";
    return j;
}

inline json graded_dim_json(const GradedDim& g) {
    json pairs = json::array();
    for (auto it = g.dims.rbegin(); it != g.dims.rend(); ++it)
        pairs.push_back(json::array({it->first, it->second}));
    return pairs;
}

inline json hfl_json(const std::string& name, const std::map<LatticePoint, GradedDim>& hflm,
                     const TopReport& top) {
    json j;
    j["name"] = name;
    json pts = json::array();
    for (const auto& [p, g] : hflm) {
        json e;
        e["s2"] = p.doubled();
        e["dims"] = graded_dim_json(g);
        pts.push_back(std::move(e));
    }
    j["points"] = std::move(pts);
    if (top.s_top) j["s_top"] = *top.s_top;
    j["fibered"] = tri_name(top.fibered);
    j["top_dim"] = top.top_dim;
    return j;
}

inline std::string hfl_csv(const std::map<LatticePoint, GradedDim>& hflm) {
    std::ostringstream os;
    os << "s1_doubled,s2_doubled,maslov,dim\n";
    for (const auto& [p, g] : hflm)
        for (auto it = g.dims.rbegin(); it != g.dims.rend(); ++it)
            os << p[0].twice << "," << p[1].twice << "," << it->first << "," << it->second << "\n";
    return os.str();
}

inline std::string hfl_ascii(const std::string& name,
                             const std::map<LatticePoint, GradedDim>& hflm, const TopReport& top) {
    std::ostringstream os;
    os << "HFL-[" << name << "]: " << hflm.size() << " nonzero point"
       << (hflm.size() == 1 ? "" : "s") << "\n";
    for (const auto& [p, g] : hflm) {
        os << "  " << p.str() << ":";
        for (auto it = g.dims.rbegin(); it != g.dims.rend(); ++it)
            os << " F[" << it->first << "]" << (it->second > 1 ? "^" + std::to_string(it->second) : "");
        os << "\n";
    }
    if (top.s_top)
        os << "s_top = " << *top.s_top << ", fibered = " << tri_name(top.fibered)
           << ", top dim = " << top.top_dim << "\n";
    else
        os << "no nonzero groups in the box\n";
    return os.str();
}

inline json oracle_json(const std::string& name, const OracleReport& rep) {
    json j;
    j["name"] = name;
    j["points_checked"] = rep.points_checked;
    j["ok"] = rep.ok();
    json mism = json::array();
    for (const auto& m : rep.mismatches) {
        json e;
        e["s2"] = m.point.doubled();
        e["expected"] = graded_dim_json(m.expected);
        e["got"] = graded_dim_json(m.got);
        mism.push_back(std::move(e));
    }
    j["mismatches"] = std::move(mism);
    return j;
}

inline json qp_json(const std::string& name, const QPInput& in, const QPVerdict& v) {
    json j;
    j["name"] = name;
    j["n"] = in.n;
    j["tau"] = in.tau;
    j["mirror_tau"] = in.mirror_tau;
    j["components_unknotted"] = in.components_unknotted;
    j["total_linking_zero"] = in.total_linking_zero;
    j["obstructed"] = v.obstructed;
    j["reason"] = v.reason;
    j["reasons"] = v.reasons;
    return j;
}

inline QPInput parse_qp_input(const json& j) {
    if (!j.is_object()) throw SchemaError("qp input must be a JSON object");
    QPInput q;
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw SchemaError("n must be an integer");
        q.n = j["n"].get<int>();
    }
    if (!j.contains("tau") || !j["tau"].is_number_integer())
        throw SchemaError("qp input needs an integer tau");
    q.tau = j["tau"].get<std::int64_t>();
    if (!j.contains("mirror_tau") || !j["mirror_tau"].is_number_integer())
        throw SchemaError("qp input needs an integer mirror_tau");
    q.mirror_tau = j["mirror_tau"].get<std::int64_t>();
    if (j.contains("components_unknotted")) q.components_unknotted = j["components_unknotted"].get<bool>();
    if (j.contains("total_linking_zero")) q.total_linking_zero = j["total_linking_zero"].get<bool>();
    return q;
}

} // namespace lslink
