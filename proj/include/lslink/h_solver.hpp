#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lslink/errors.hpp"
#include "lslink/h_table.hpp"
#include "lslink/half_int.hpp"
#include "lslink/laurent.hpp"
#include "lslink/link_input.hpp"

namespace lslink {

enum class Sign { Plus, Minus };
enum class SignPolicy { Auto, Plus, Minus };

inline const char* sign_name(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

struct SolveOptions {
    int margin = 2; // stabilization margin in lattice units
    SignPolicy sign = SignPolicy::Auto;
};

struct SolveResult {
    HTable table;
    LaurentSeries chi;        // normalized Euler series actually used
    std::optional<Sign> sign; // resolved sign; empty for raw-table inputs
};

struct ResidualReport {
    bool ok = true;
    std::optional<LatticePoint> first_mismatch;
};

/// Plugs the table back into the inclusion-exclusion identity and compares
/// against the Euler coefficients at every point strictly inside the box.
inline ResidualReport residual_check(const HTable& h, const LaurentSeries& chi) {
    const int n = h.dim();
    const std::uint32_t full = (1u << n) - 1u;
    ResidualReport rep;
    LatticePoint lo = h.box().lo;
    for (int i = 0; i < n; ++i) lo[i] = lo[i].stepped(1);
    if (!leq(lo, h.box().hi)) return rep; // no interior points
    Box inner(lo, h.box().hi);
    for_each_point_desc(inner, [&](const LatticePoint& s) {
        if (!rep.ok) return;
        Coeff acc = 0;
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            int sign = (std::popcount(mask) % 2 == 1) ? 1 : -1;
            acc += sign * h.at(minus_eB(s, mask));
        }
        if (acc != chi.coefficient(s.doubled())) {
            rep.ok = false;
            rep.first_mismatch = s;
        }
    });
    return rep;
}

/// Reads the Euler coefficients off a table via the inclusion-exclusion
/// identity (only points whose full lower cube lies in the box).
inline LaurentSeries chi_from_table(const HTable& h) {
    const int n = h.dim();
    const std::uint32_t full = (1u << n) - 1u;
    LaurentSeries chi(n);
    LatticePoint lo = h.box().lo;
    for (int i = 0; i < n; ++i) lo[i] = lo[i].stepped(1);
    if (!leq(lo, h.box().hi)) return chi;
    Box inner(lo, h.box().hi);
    for_each_point_desc(inner, [&](const LatticePoint& s) {
        std::int64_t acc = 0;
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            int sign = (std::popcount(mask) % 2 == 1) ? 1 : -1;
            acc += sign * h.at(minus_eB(s, mask));
        }
        chi.add_term(s.doubled(), acc);
    });
    return chi;
}

/// Reads the stabilized top slice of one axis and un-shifts the remaining
/// coordinates by the pairwise linking numbers, producing the sublink table.
inline HTable restrict_to_sublink(const HTable& h, int drop) {
    const int n = h.dim();
    if (n < 2) throw SchemaError("cannot drop a component of a knot table");
    if (drop < 0 || drop >= n) throw SchemaError("component index out of range");
    if (!h.stabilized(drop) && !h.top_two_slices_equal(drop))
        throw BoxError("top margin of axis " + std::to_string(drop + 1) +
                       " is not stabilized; enlarge box");

    std::vector<std::int64_t> lo2, hi2;
    for (int j = 0; j < n; ++j) {
        if (j == drop) continue;
        lo2.push_back(h.box().lo[j].twice - h.linking().at(j, drop));
        hi2.push_back(h.box().hi[j].twice - h.linking().at(j, drop));
    }
    Box sub_box(LatticePoint::from_doubled(lo2), LatticePoint::from_doubled(hi2));
    HTable out(sub_box, h.linking().minor_without(drop));
    out.set_margin(h.margin());
    for_each_point_desc(sub_box, [&](const LatticePoint& u) {
        std::vector<std::int64_t> s2;
        s2.reserve(static_cast<std::size_t>(n));
        int k = 0;
        for (int j = 0; j < n; ++j) {
            if (j == drop) {
                s2.push_back(h.box().hi[j].twice);
            } else {
                s2.push_back(u[k].twice + h.linking().at(j, drop));
                ++k;
            }
        }
        out.set(u, h.at(LatticePoint::from_doubled(s2)));
    });
    for (int j = 0; j < out.dim(); ++j)
        out.set_stabilized(j, out.top_two_slices_equal(j));
    if (!h.components().empty()) {
        std::vector<HTable> comps;
        for (int j = 0; j < n; ++j)
            if (j != drop) comps.push_back(h.components()[static_cast<std::size_t>(j)]);
        if (out.dim() > 1) out.set_components(std::move(comps));
    }
    return out;
}

/// Smallest doubled s with H(s) = 0 in a one-variable table. The table must
/// show the first zero strictly above its floor, otherwise the genus is not
/// certified by the box.
inline std::int64_t genus2_from_knot_table(const HTable& t) {
    if (t.dim() != 1) throw SchemaError("genus extraction needs a one-variable table");
    const Box& b = t.box();
    for (std::int64_t s2 = b.lo[0].twice; s2 <= b.hi[0].twice; s2 += 2) {
        LatticePoint p = LatticePoint::from_doubled({s2});
        if (t.at(p) == 0) {
            if (s2 == b.lo[0].twice)
                throw BoxError("component table is zero at its floor; genus not certified");
            return s2;
        }
    }
    throw BoxError("component table has no zero value; enlarge box");
}

/// Fills a one-variable table from a normalized (downward) knot series:
/// H vanishes at and above the top support exponent and grows downward by the
/// series coefficients, each of which must be 0 or 1.
inline HTable solve_knot(const LaurentSeries& series, std::int64_t floor2,
                         std::optional<std::int64_t> hi2_req = std::nullopt) {
    if (series.vars() != 1) throw SchemaError("solve_knot needs a one-variable series");
    if (series.is_zero()) throw ValidationError("zero normalized series for a knot");
    if (floor2 % 2 != 0) throw SchemaError("knot table floor must be an integer (even doubled)");
    if (series.floor2() && (*series.floor2())[0] > floor2)
        throw SchemaError("series truncation floor above requested table floor");
    const std::int64_t top2 = series.max_exp2(0);
    if (top2 % 2 != 0) throw SchemaError("knot series exponents must be integers");
    const std::int64_t hi2_out = hi2_req.value_or(top2 + 2);
    if (hi2_out % 2 != 0) throw SchemaError("knot table top must be an integer (even doubled)");
    if (hi2_out < floor2) throw SchemaError("knot table top below its floor");
    const std::int64_t hi2_int = std::max(hi2_out, top2 + 2);

    Box full(LatticePoint::from_doubled({floor2}), LatticePoint::from_doubled({hi2_int}));
    HTable t(full, LinkingMatrix(1));
    std::int64_t hval = 0;
    for (std::int64_t s2 = top2; s2 > floor2; s2 -= 2) {
        Coeff step = series.coefficient({s2});
        if (step != 0 && step != 1)
            throw ValidationError("knot recursion step outside {0,1} at s = " +
                                  HalfInt::from_doubled(s2).str() +
                                  "; not an L-space knot or wrong sign");
        hval += static_cast<std::int64_t>(step);
        t.set(LatticePoint::from_doubled({s2 - 2}), hval);
    }
    if (hi2_out == hi2_int) {
        t.set_stabilized(0, hi2_out >= top2);
        t.set_margin(static_cast<int>((hi2_int - top2) / 2));
        return t;
    }
    Box window(LatticePoint::from_doubled({floor2}), LatticePoint::from_doubled({hi2_out}));
    HTable out(window, LinkingMatrix(1));
    for_each_point_desc(window, [&](const LatticePoint& p) { out.set(p, t.at(p)); });
    out.set_stabilized(0, hi2_out >= top2);
    return out;
}

/// Default computation box: polynomial support expanded by the margin on each
/// axis, at least five lattice points wide.
inline Box default_box(const LinkInput& input, int margin = 2) {
    input.validate();
    const int n = input.n;
    std::vector<std::int64_t> lo2(static_cast<std::size_t>(n)), hi2(static_cast<std::size_t>(n));
    if (input.h_table) return input.h_table->box;
    for (int i = 0; i < n; ++i) {
        int par = input.linking.parity(i);
        std::int64_t slo = -par, shi = -par; // a lattice point near the origin
        if (!input.alexander->is_zero()) {
            // support of the normalized polynomial on this axis
            std::int64_t shift = n > 1 ? 1 : 0;
            slo = input.alexander->min_exp2(i) + shift;
            shi = input.alexander->max_exp2(i) + shift;
            if (n == 1) slo = -shi; // knot series extends downward symmetrically
        }
        std::int64_t l = slo - 2 * margin;
        std::int64_t h = shi + 2 * margin;
        while ((h - l) / 2 + 1 < 5) {
            l -= 2;
            if ((h - l) / 2 + 1 < 5) h += 2;
        }
        lo2[static_cast<std::size_t>(i)] = l;
        hi2[static_cast<std::size_t>(i)] = h;
    }
    return Box(LatticePoint::from_doubled(lo2), LatticePoint::from_doubled(hi2));
}

namespace detail {

inline LinkInput sublink_input(const LinkInput& input, const std::vector<int>& keep) {
    LinkInput sub;
    sub.name = input.name;
    for (int idx : keep) sub.name += (idx == keep.front() ? ":" : ",") + std::to_string(idx + 1);
    sub.n = static_cast<int>(keep.size());
    LinkingMatrix m(sub.n);
    for (int r = 0; r < sub.n; ++r)
        for (int c = 0; c < sub.n; ++c)
            m.lk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                input.linking.at(keep[static_cast<std::size_t>(r)], keep[static_cast<std::size_t>(c)]);
    sub.linking = m;
    if (sub.n == 1) {
        sub.alexander = input.component_poly(keep.front());
    } else {
        auto it = input.sublinks.find(keep);
        if (it == input.sublinks.end())
            throw SchemaError("sublink polynomial required for components {" +
                              [&] {
                                  std::string s;
                                  for (int idx : keep) s += (s.empty() ? "" : ",") + std::to_string(idx + 1);
                                  return s;
                              }() +
                              "} but not supplied");
        sub.alexander = it->second;
    }
    for (int idx : keep) {
        if (static_cast<int>(input.components.size()) == input.n)
            sub.components.push_back(input.components[static_cast<std::size_t>(idx)]);
        else
            sub.components.emplace_back();
    }
    for (const auto& [set, poly] : input.sublinks) {
        if (static_cast<int>(set.size()) >= sub.n) continue;
        std::vector<int> remapped;
        bool inside = true;
        for (int idx : set) {
            auto pos = std::find(keep.begin(), keep.end(), idx);
            if (pos == keep.end()) { inside = false; break; }
            remapped.push_back(static_cast<int>(pos - keep.begin()));
        }
        if (inside) sub.sublinks.emplace(std::move(remapped), poly);
    }
    return sub;
}

} // namespace detail

inline SolveResult solve_link(const LinkInput& input, std::optional<Box> box = std::nullopt,
                              const SolveOptions& opts = SolveOptions{});

namespace detail {

/// One attempt at the boundary-value solve for a fixed choice of sign.
/// Throws ValidationError when the resulting table cannot belong to an
/// L-space link.
inline SolveResult solve_link_signed(const LinkInput& input, const LaurentSeries& delta,
                                     const Box& req, const SolveOptions& opts, Sign sign) {
    const int n = input.n;
    const std::int64_t m2 = 2 * opts.margin; // doubled margin

    if (n == 1) {
        LaurentSeries series = normalize_alexander_knot(delta, req.lo[0].twice - 4);
        HTable t = solve_knot(series, req.lo[0].twice, req.hi[0].twice);
        return SolveResult{std::move(t), std::move(series), sign};
    }

    LaurentSeries chi = normalize_alexander_multi(delta);

    // internal box: requested box, top extended past the support by the margin
    std::vector<std::int64_t> lo2 = req.lo.doubled();
    std::vector<std::int64_t> hi2 = req.hi.doubled();
    for (int i = 0; i < n; ++i)
        if (!chi.is_zero())
            hi2[static_cast<std::size_t>(i)] =
                std::max(hi2[static_cast<std::size_t>(i)], chi.max_exp2(i) + m2);
    Box box_int(req.lo, LatticePoint::from_doubled(hi2));

    // boundary tables: one per dropped component, on the shifted projection
    std::vector<HTable> subs;
    subs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> keep;
        for (int j = 0; j < n; ++j)
            if (j != i) keep.push_back(j);
        std::vector<std::int64_t> slo, shi;
        for (int j : keep) {
            slo.push_back(lo2[static_cast<std::size_t>(j)] - input.linking.at(j, i));
            shi.push_back(hi2[static_cast<std::size_t>(j)] - input.linking.at(j, i));
        }
        Box sub_box(LatticePoint::from_doubled(slo), LatticePoint::from_doubled(shi));
        SolveOptions sub_opts = opts;
        sub_opts.sign = SignPolicy::Auto; // sublink signs resolve independently
        subs.push_back(solve_link(sublink_input(input, keep), sub_box, sub_opts).table);
    }

    auto prediction = [&](const LatticePoint& s, int i) -> std::int64_t {
        std::vector<std::int64_t> u2;
        for (int j = 0; j < n; ++j)
            if (j != i) u2.push_back(s[j].twice - input.linking.at(j, i));
        return subs[static_cast<std::size_t>(i)].at(LatticePoint::from_doubled(u2));
    };
    auto in_margin = [&](const LatticePoint& s, int i) {
        return s[i].twice > hi2[static_cast<std::size_t>(i)] - m2;
    };

    HTable t(box_int, input.linking);
    t.set_margin(opts.margin);

    // seed the top margin of every axis from the sublink boundary values,
    // then cross-check overlapping margins against every applicable axis
    for_each_point_desc(box_int, [&](const LatticePoint& s) {
        for (int i = 0; i < n; ++i) {
            if (in_margin(s, i)) {
                t.set(s, prediction(s, i));
                break;
            }
        }
    });
    for_each_point_desc(box_int, [&](const LatticePoint& s) {
        for (int i = 0; i < n; ++i)
            if (in_margin(s, i) && t.at(s) != prediction(s, i))
                throw ValidationError("sublink boundary values disagree at " + s.str());
    });

    // fill the rest in descending order; each point isolates the full-cube
    // term of the inclusion-exclusion identity
    bool fill_nonempty = true;
    for (int i = 0; i < n; ++i)
        if (hi2[static_cast<std::size_t>(i)] - m2 < lo2[static_cast<std::size_t>(i)]) fill_nonempty = false;
    const std::uint32_t full = (1u << n) - 1u;
    if (fill_nonempty) {
        std::vector<std::int64_t> fhi2 = hi2;
        for (auto& v : fhi2) v -= m2;
        Box fill_box(req.lo, LatticePoint::from_doubled(fhi2));
        for_each_point_desc(fill_box, [&](const LatticePoint& u) {
            LatticePoint s = u;
            for (int i = 0; i < n; ++i) s[i] = s[i].stepped(1);
            Coeff acc = chi.coefficient(s.doubled());
            for (std::uint32_t mask = 0; mask < full; ++mask) {
                int sgn = (std::popcount(mask) % 2 == 1) ? 1 : -1;
                acc -= sgn * t.at(minus_eB(s, mask));
            }
            if (n % 2 == 0) acc = -acc; // (-1)^{n-1}
            if (acc < 0)
                throw ValidationError("negative H value at " + u.str() +
                                      "; not an L-space link on this box");
            if (acc > (Coeff(1) << 40))
                throw ValidationError("H value overflow at " + u.str() +
                                      "; not an L-space link on this box");
            t.set(u, static_cast<std::int64_t>(acc));
        });
    }

    t.validate_growth();

    // the first computed slice below each seeded margin must already agree
    // with the sublink prediction, otherwise stabilization was not reached
    for (int i = 0; i < n; ++i) {
        std::int64_t edge = hi2[static_cast<std::size_t>(i)] - m2;
        if (edge < lo2[static_cast<std::size_t>(i)]) continue;
        Box slice(req.lo.with_axis(i, HalfInt::from_doubled(edge)),
                  box_int.hi.with_axis(i, HalfInt::from_doubled(edge)));
        for_each_point_desc(slice, [&](const LatticePoint& s) {
            if (t.at(s) != prediction(s, i))
                throw ValidationError("H-function does not stabilize on axis " +
                                      std::to_string(i + 1) + " at " + s.str());
        });
    }

    ResidualReport rr = residual_check(t, chi);
    if (!rr.ok)
        throw ValidationError("inclusion-exclusion residual fails at " +
                              rr.first_mismatch->str());

    // restrict to the requested window
    HTable out(req, input.linking);
    out.set_margin(opts.margin);
    for_each_point_desc(req, [&](const LatticePoint& p) { out.set(p, t.at(p)); });
    for (int i = 0; i < n; ++i)
        out.set_stabilized(i, req.hi[i].twice >= hi2[static_cast<std::size_t>(i)] - m2);

    // component knot tables: the singleton boundary solves, unshifted
    std::vector<HTable> comps(static_cast<std::size_t>(n));
    if (n == 2) {
        comps[0] = subs[1]; // dropping component 2 leaves component 1
        comps[1] = subs[0];
    } else {
        for (int i = 0; i < n; ++i) {
            LaurentSeries poly = input.component_poly(i);
            std::int64_t floor2 = 0;
            for (int j = 0; j < n; ++j)
                floor2 = std::min(floor2, lo2[static_cast<std::size_t>(j)] - std::abs(input.linking.at(i, j)));
            floor2 -= 4;
            if (floor2 % 2 != 0) --floor2;
            LaurentSeries series = normalize_alexander_knot(poly, floor2 - 4);
            comps[static_cast<std::size_t>(i)] = solve_knot(series, floor2);
        }
    }
    out.set_components(std::move(comps));
    return SolveResult{std::move(out), std::move(chi), sign};
}

inline SolveResult solve_raw(const LinkInput& input, const Box& req, const SolveOptions& opts) {
    const RawTable& raw = *input.h_table;
    HTable t(raw.box, input.linking);
    t.set_margin(opts.margin);
    for (std::int64_t k = 0; k < raw.box.cell_count(); ++k)
        t.set(raw.box.point_at(k), raw.values[static_cast<std::size_t>(k)]);
    t.validate_growth();
    for (int i = 0; i < t.dim(); ++i) {
        if (!t.top_two_slices_equal(i))
            throw BoxError("raw table top margin of axis " + std::to_string(i + 1) +
                           " is not stabilized; enlarge box");
        t.set_stabilized(i, true);
    }

    // component tables by successively dropping the other axes; dropping in
    // descending original order keeps the next index to drop unchanged
    if (t.dim() >= 2) {
        std::vector<HTable> comps;
        comps.reserve(static_cast<std::size_t>(t.dim()));
        for (int i = 0; i < t.dim(); ++i) {
            HTable cur = t;
            for (int j = t.dim() - 1; j >= 0; --j) {
                if (j == i) continue;
                cur = restrict_to_sublink(cur, j);
            }
            comps.push_back(std::move(cur));
        }
        t.set_components(std::move(comps));
    }

    HTable out = t;
    if (!(req.lo == t.box().lo) || !(req.hi == t.box().hi)) {
        if (!leq(t.box().lo, req.lo) || !leq(req.hi, t.box().hi))
            throw BoxError("requested box exceeds the raw table");
        HTable window(req, input.linking);
        window.set_margin(opts.margin);
        for_each_point_desc(req, [&](const LatticePoint& p) { window.set(p, t.at(p)); });
        for (int i = 0; i < window.dim(); ++i)
            window.set_stabilized(i, req.hi[i] == t.box().hi[i] ||
                                         window.top_two_slices_equal(i));
        window.set_components(t.components());
        out = std::move(window);
    }
    LaurentSeries chi = chi_from_table(out);
    return SolveResult{std::move(out), std::move(chi), std::nullopt};
}

} // namespace detail

/// Solves the H-function of a link on a box, resolving the sign of the
/// Alexander polynomial by requiring the table to validate; raw-table inputs
/// bypass the recursion but run the same validations.
inline SolveResult solve_link(const LinkInput& input, std::optional<Box> box,
                              const SolveOptions& opts) {
    input.validate();
    Box req = box ? *box : default_box(input, opts.margin);
    if (req.dim() != input.n) throw SchemaError("box dimension does not match n");
    for (int i = 0; i < input.n; ++i)
        if (req.lo[i].parity() != input.linking.parity(i))
            throw SchemaError("box parity disagrees with linking matrix on axis " +
                              std::to_string(i + 1));
    if (req.cell_count() > (1 << 24)) throw BoxError("box too large");

    if (input.h_table) return detail::solve_raw(input, req, opts);

    std::vector<Sign> candidates;
    switch (opts.sign) {
        case SignPolicy::Plus: candidates = {Sign::Plus}; break;
        case SignPolicy::Minus: candidates = {Sign::Minus}; break;
        case SignPolicy::Auto:
            candidates = input.alexander->is_zero() ? std::vector<Sign>{Sign::Plus}
                                                    : std::vector<Sign>{Sign::Plus, Sign::Minus};
            break;
    }
    std::string failures;
    for (Sign s : candidates) {
        LaurentSeries delta = s == Sign::Plus ? *input.alexander : -*input.alexander;
        try {
            return detail::solve_link_signed(input, delta, req, opts, s);
        } catch (const ValidationError& e) {
            failures += std::string(failures.empty() ? "" : "; ") + sign_name(s) + ": " + e.what();
        }
    }
    throw ValidationError("input is not consistent with an L-space link on this box (" +
                          failures + ")");
}

} // namespace lslink
