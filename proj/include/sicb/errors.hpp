// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_ERRORS_HPP
#define SICB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sicb {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A Cholesky pivot was not positive; the caller failed to shift the matrix.
struct NotPositiveDefinite : Error {
    using Error::Error;
};

/// An iterative numeric routine exceeded its iteration cap.
struct NonConvergence : Error {
    using Error::Error;
};

struct InvalidBits : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// Communication gain threshold exceeds what any unit-modulus codeword can reach.
struct InfeasibleThreshold : Error {
    using Error::Error;
};

/// No codeword in the discrete set satisfies the communication constraint,
/// or a provided initial codeword violates it.
struct InfeasibleConstraint : Error {
    using Error::Error;
};

/// Enumeration would exceed the configured candidate cap.
struct TooLarge : Error {
    using Error::Error;
};

struct NonPositiveDistance : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace sicb

#endif
