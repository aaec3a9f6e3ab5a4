#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lslink/errors.hpp"

namespace lslink {

using Coeff = boost::multiprecision::cpp_int;
/// Exponent vector, doubled (half-integer exponents are stored times two).
using Exp = std::vector<std::int64_t>;

/// Exact Laurent polynomial / downward power series in n variables.
///
/// Exponents are doubled integers and every stored term shares the same
/// per-axis parity. A series with infinitely many lower-order terms is
/// represented lazily: `floor2` marks the doubled exponent below which
/// coefficients are unknown, and only the finitely many terms at or above the
/// floor are stored. Coefficient queries below the floor are rejected.
class LaurentSeries {
public:
    LaurentSeries() : vars_(1) {}
    explicit LaurentSeries(int vars) : vars_(vars) {
        if (vars < 1) throw SchemaError("series needs at least one variable");
    }

    static LaurentSeries constant(int vars, const Coeff& c) {
        LaurentSeries s(vars);
        s.add_term(Exp(static_cast<std::size_t>(vars), 0), c);
        return s;
    }

    static LaurentSeries monomial(const Exp& e, const Coeff& c) {
        LaurentSeries s(static_cast<int>(e.size()));
        s.add_term(e, c);
        return s;
    }

    int vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const { return !floor2_.has_value(); }
    const std::optional<Exp>& floor2() const { return floor2_; }
    const std::map<Exp, Coeff>& terms() const { return terms_; }

    void set_floor2(Exp f) {
        if (static_cast<int>(f.size()) != vars_)
            throw SchemaError("floor dimension mismatch");
        floor2_ = std::move(f);
        drop_below_floor();
    }

    /// Accumulates a term; erases the entry if the coefficient cancels.
    void add_term(const Exp& e, const Coeff& c) {
        if (static_cast<int>(e.size()) != vars_)
            throw SchemaError("exponent dimension mismatch");
        if (c == 0) return;
        if (!terms_.empty()) {
            const Exp& ref = terms_.begin()->first;
            for (int i = 0; i < vars_; ++i)
                if (((e[static_cast<std::size_t>(i)] - ref[static_cast<std::size_t>(i)]) % 2 + 2) % 2 != 0)
                    throw SchemaError("exponent parity mismatch on axis " + std::to_string(i + 1));
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Coeff coefficient(const Exp& e) const {
        if (static_cast<int>(e.size()) != vars_)
            throw SchemaError("exponent dimension mismatch");
        if (floor2_) {
            for (int i = 0; i < vars_; ++i)
                if (e[static_cast<std::size_t>(i)] < (*floor2_)[static_cast<std::size_t>(i)])
                    throw std::out_of_range("coefficient query below truncation floor");
        }
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    /// Doubled parity of exponents on the given axis; -1 when the series is zero.
    int parity(int axis) const {
        if (terms_.empty()) return -1;
        std::int64_t e = terms_.begin()->first[static_cast<std::size_t>(axis)];
        return static_cast<int>(((e % 2) + 2) % 2);
    }

    std::int64_t max_exp2(int axis) const {
        require_support("max_exp2");
        std::int64_t m = terms_.begin()->first[static_cast<std::size_t>(axis)];
        for (const auto& [e, c] : terms_) m = std::max(m, e[static_cast<std::size_t>(axis)]);
        return m;
    }

    std::int64_t min_exp2(int axis) const {
        require_support("min_exp2");
        if (!is_finite()) throw SchemaError("min_exp2 of a downward-infinite series");
        std::int64_t m = terms_.begin()->first[static_cast<std::size_t>(axis)];
        for (const auto& [e, c] : terms_) m = std::min(m, e[static_cast<std::size_t>(axis)]);
        return m;
    }

    LaurentSeries shifted(const Exp& delta2) const {
        if (static_cast<int>(delta2.size()) != vars_)
            throw SchemaError("shift dimension mismatch");
        LaurentSeries out(vars_);
        for (const auto& [e, c] : terms_) {
            Exp f = e;
            for (int i = 0; i < vars_; ++i) f[static_cast<std::size_t>(i)] += delta2[static_cast<std::size_t>(i)];
            out.terms_.emplace(std::move(f), c);
        }
        if (floor2_) {
            Exp f = *floor2_;
            for (int i = 0; i < vars_; ++i) f[static_cast<std::size_t>(i)] += delta2[static_cast<std::size_t>(i)];
            out.floor2_ = std::move(f);
        }
        return out;
    }

    LaurentSeries operator-() const {
        LaurentSeries out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    /// Sign sigma with f(1/t) = sigma * f(t), if the support is symmetric about
    /// the origin; nullopt otherwise. The zero series reports +1.
    std::optional<int> symmetry_sign() const {
        if (!is_finite()) return std::nullopt;
        if (terms_.empty()) return 1;
        std::optional<int> sign;
        for (const auto& [e, c] : terms_) {
            Exp m = e;
            for (auto& v : m) v = -v;
            auto it = terms_.find(m);
            if (it == terms_.end()) return std::nullopt;
            int s;
            if (it->second == c) s = 1;
            else if (it->second == -c) s = -1;
            else return std::nullopt;
            if (sign && *sign != s) return std::nullopt;
            sign = s;
        }
        return sign;
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_ && a.floor2_ == b.floor2_;
    }

    /// Exact convolution product. At most one operand may be downward-infinite;
    /// the result is valid above the propagated floor.
    friend LaurentSeries multiply(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.vars_ != b.vars_) throw SchemaError("series dimension mismatch");
        if (!a.is_finite() && !b.is_finite())
            throw SchemaError("product of two downward-infinite series is ill-defined");
        if (!a.is_finite()) return multiply(b, a);
        // now a is finite
        LaurentSeries out(a.vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exp e = ea;
                for (int i = 0; i < a.vars_; ++i) e[static_cast<std::size_t>(i)] += eb[static_cast<std::size_t>(i)];
                out.add_term(e, ca * cb);
            }
        }
        if (!b.is_finite() && !a.is_zero()) {
            Exp f = *b.floor2_;
            for (int i = 0; i < a.vars_; ++i) f[static_cast<std::size_t>(i)] += a.max_exp2(i);
            out.set_floor2(std::move(f));
        }
        return out;
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        return multiply(a, b);
    }

private:
    void require_support(const char* what) const {
        if (terms_.empty()) throw SchemaError(std::string(what) + " of the zero series");
    }

    void drop_below_floor() {
        if (!floor2_) return;
        for (auto it = terms_.begin(); it != terms_.end();) {
            bool below = false;
            for (int i = 0; i < vars_; ++i)
                if (it->first[static_cast<std::size_t>(i)] < (*floor2_)[static_cast<std::size_t>(i)]) below = true;
            it = below ? terms_.erase(it) : std::next(it);
        }
    }

    int vars_;
    std::map<Exp, Coeff> terms_;
    std::optional<Exp> floor2_;
};

/// Multivariable normalization: multiplies by the half-unit monomial in every
/// variable, moving the symmetric polynomial onto the Alexander lattice.
/// Rejects polynomials that are not symmetric about the origin up to sign.
inline LaurentSeries normalize_alexander_multi(const LaurentSeries& delta) {
    if (delta.vars() < 2)
        throw SchemaError("multivariable normalization needs at least two variables");
    if (!delta.symmetry_sign())
        throw ValidationError("Alexander polynomial is not symmetric about the origin");
    return delta.shifted(Exp(static_cast<std::size_t>(delta.vars()), 1));
}

/// Knot normalization: divides by (1 - t^{-1}), i.e. expands into the downward
/// power series of suffix sums, truncated at the requested doubled floor.
inline LaurentSeries normalize_alexander_knot(const LaurentSeries& delta, std::int64_t floor2) {
    if (delta.vars() != 1) throw SchemaError("knot normalization needs one variable");
    if (delta.is_zero()) throw ValidationError("zero Alexander polynomial for a knot");
    if (!delta.is_finite()) throw SchemaError("knot normalization input must be finite");
    if (!delta.symmetry_sign())
        throw ValidationError("Alexander polynomial is not symmetric about the origin");
    const std::int64_t top = delta.max_exp2(0);
    LaurentSeries out(1);
    Coeff run = 0;
    for (std::int64_t e = top; e >= floor2; e -= 2) {
        run += delta.coefficient({e});
        out.add_term({e}, run);
    }
    out.set_floor2({floor2});
    return out;
}

/// Dispatch matching the two cases of the normalization convention.
inline LaurentSeries normalize_alexander(const LaurentSeries& delta,
                                         std::optional<std::int64_t> knot_floor2 = std::nullopt) {
    if (delta.vars() == 1) {
        if (!knot_floor2) throw SchemaError("knot normalization needs a truncation floor");
        return normalize_alexander_knot(delta, *knot_floor2);
    }
    return normalize_alexander_multi(delta);
}

} // namespace lslink
