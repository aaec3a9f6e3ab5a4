#pragma once

#include <stdexcept>
#include <string>

namespace lslink {

/// Malformed input: bad JSON, schema violation, parity mismatch.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally valid input that is inconsistent with an L-space link
/// (negative H value, step outside {0,1}, boundary mismatch, residual failure).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The lattice box cannot support the requested computation
/// (too small, not stabilized, point outside the table).
class BoxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lslink
