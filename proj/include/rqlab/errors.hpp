#pragma once

#include <stdexcept>
#include <string>

namespace rqlab {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exponent configuration violates p > 1, 1 <= q < r < p*.
struct InvalidExponents : Error {
    using Error::Error;
};

// Alpha value outside the range an operation supports (e.g. t-scaling at alpha = 1).
struct InvalidAlpha : Error {
    using Error::Error;
};

// Geometry problem: degenerate domain, support outside the domain, mismatched grids.
struct DomainError : Error {
    using Error::Error;
};

// An operation that divides by a norm received the zero function.
struct ZeroFunction : Error {
    using Error::Error;
};

// A normalization constraint (I_alpha = 1, |1-alpha| J / ||u||_r^r = 1, ...) does not hold.
struct ConstraintViolated : Error {
    using Error::Error;
};

// A function handed to a critical-point-only identity does not solve its equation.
struct ResidualTooLarge : Error {
    using Error::Error;
};

// Iteration produced NaN/Inf; distinct from the non-converged-but-finite outcome,
// which is reported through result flags instead of thrown.
struct NotConverged : Error {
    using Error::Error;
};

// A sweep grid does not reach the endpoints a shape classification needs.
struct InsufficientRange : Error {
    using Error::Error;
};

// A check that compares against a reference level was not given one.
struct MissingReference : Error {
    using Error::Error;
};

// Config file syntax error.
struct ParseError : Error {
    using Error::Error;
};

// Config semantic error: unknown key, missing required key, bad value.
struct ValidationError : Error {
    using Error::Error;
};

} // namespace rqlab
