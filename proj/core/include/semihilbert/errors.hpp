#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace semihilbert {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch or structurally invalid input.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A weight operator that is zero or has a significantly negative eigenvalue.
class NotPositiveError : public Error {
public:
    using Error::Error;
};

/// Operator does not leave the kernel of the weight invariant.
class NotABoundedError : public Error {
public:
    using Error::Error;
};

/// Operator admits no adjoint with respect to the weighted form.
class NotAAdjointableError : public Error {
public:
    using Error::Error;
};

class NotAInvertibleError : public Error {
public:
    using Error::Error;
};

/// Iterative eigensolver ran out of iterations. Carries whatever
/// eigenvalues were deflated before the failure plus the diagonal of
/// the unconverged block.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<std::complex<double>> partial)
        : Error(what), partial_state(std::move(partial)) {}

    std::vector<std::complex<double>> partial_state;
};

/// Text could not be parsed. `position` is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos) : Error(what), position(pos) {}

    std::size_t position = 0;
};

/// Invalid or inconsistent diagonal model description.
class ModelError : public Error {
public:
    using Error::Error;
};

} // namespace semihilbert
