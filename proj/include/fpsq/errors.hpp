#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpsq {

// Base class for everything this library throws on a violated contract.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : error {
    using error::error;
};

// Multiplicative inverse of a series with zero constant term.
struct not_invertible : error {
    using error::error;
};

// Compositional inverse of a series that is not almost unit (f0 = 0, f1 != 0).
struct not_almost_unit : error {
    using error::error;
};

// Series division whose preconditions (leading-zero alignment) fail.
struct not_divisible : error {
    using error::error;
};

// Composition with an inner series whose constant term is nonzero.
struct composition_requires_nonunit : error {
    using error::error;
};

// Coefficient access or operation beyond the stored truncation window.
struct truncation_exceeded : error {
    using error::error;
};

struct precondition_violated : error {
    using error::error;
};

// Half-open byte range [begin, end) into the source text of an expression.
struct source_span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct syntax_error : error {
    syntax_error(const std::string& msg, std::size_t offset, std::string expected)
        : error(msg), offset(offset), expected(std::move(expected)) {}
    std::size_t offset;
    std::string expected;
};

struct unknown_function : error {
    unknown_function(const std::string& msg, std::size_t offset, std::string name)
        : error(msg), offset(offset), name(std::move(name)) {}
    std::size_t offset;
    std::string name;
};

// Mixin carried by evaluation-time errors so diagnostics can point at the
// offending sub-expression.
struct span_carrier {
    source_span where;

protected:
    explicit span_carrier(source_span s) : where(s) {}
    ~span_carrier() = default;
};

template <class E>
struct spanned_error : E, span_carrier {
    spanned_error(const std::string& msg, source_span s) : E(msg), span_carrier(s) {}
};

} // namespace fpsq
