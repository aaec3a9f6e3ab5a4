#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lslink/errors.hpp"
#include "lslink/h_table.hpp"
#include "lslink/laurent.hpp"

namespace lslink {

/// Raw H-table payload: values supplied directly instead of an Alexander
/// polynomial. Values are row-major with axis 0 slowest.
struct RawTable {
    Box box;
    std::vector<std::int64_t> values;
};

/// A link description: component count, linking matrix and either an Alexander
/// polynomial or a raw H-table. Component knot polynomials default to the
/// unknot; sublink polynomials are only needed for three or more components.
struct LinkInput {
    std::string name;
    int n = 1;
    LinkingMatrix linking;
    std::optional<LaurentSeries> alexander; // unnormalized multivariable polynomial
    std::optional<RawTable> h_table;
    std::vector<std::optional<LaurentSeries>> components; // one-variable, nullopt = unknot
    std::optional<std::vector<std::int64_t>> component_genera;
    std::map<std::vector<int>, LaurentSeries> sublinks; // key: sorted 0-based component set

    void validate() const {
        if (n < 1) throw SchemaError("component count must be positive");
        linking.validate();
        if (linking.size() != n) throw SchemaError("linking matrix size does not match n");
        if (alexander.has_value() == h_table.has_value())
            throw SchemaError("exactly one of alexander / h_table must be given");
        if (alexander) {
            if (alexander->vars() != n) throw SchemaError("alexander variable count does not match n");
            if (!alexander->is_finite()) throw SchemaError("alexander polynomial must be finite");
            for (int i = 0; i < n; ++i) {
                int par = alexander->parity(i);
                if (par < 0) continue;
                // for n>1 the polynomial sits a half unit off the lattice; knots sit on it
                int want = n > 1 ? (linking.parity(i) + 1) % 2 : 0;
                if (par != want)
                    throw SchemaError("alexander exponent parity inconsistent with linking matrix on axis " +
                                      std::to_string(i + 1));
            }
        }
        if (h_table) {
            if (h_table->box.dim() != n) throw SchemaError("h_table dimension does not match n");
            for (int i = 0; i < n; ++i)
                if (h_table->box.lo[i].parity() != linking.parity(i))
                    throw SchemaError("h_table origin parity inconsistent with linking matrix on axis " +
                                      std::to_string(i + 1));
            if (static_cast<std::int64_t>(h_table->values.size()) != h_table->box.cell_count())
                throw SchemaError("h_table value count does not match its dims");
            for (auto v : h_table->values)
                if (v < 0) throw SchemaError("h_table values must be nonnegative");
        }
        if (!components.empty() && static_cast<int>(components.size()) != n)
            throw SchemaError("components list length does not match n");
        for (const auto& c : components)
            if (c && c->vars() != 1)
                throw SchemaError("component polynomials must have one variable");
        if (component_genera && static_cast<int>(component_genera->size()) != n)
            throw SchemaError("component_genera length does not match n");
        for (const auto& [set, poly] : sublinks) {
            if (set.size() < 2 || static_cast<int>(set.size()) >= n)
                throw SchemaError("sublink sets must be proper with at least two components");
            for (int idx : set)
                if (idx < 0 || idx >= n) throw SchemaError("sublink component index out of range");
            if (poly.vars() != static_cast<int>(set.size()))
                throw SchemaError("sublink polynomial variable count mismatch");
        }
    }

    /// Component polynomial, defaulting to the unknot.
    LaurentSeries component_poly(int i) const {
        if (static_cast<int>(components.size()) == n && components[static_cast<std::size_t>(i)])
            return *components[static_cast<std::size_t>(i)];
        return LaurentSeries::constant(1, 1);
    }
};

} // namespace lslink
