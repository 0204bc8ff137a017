#pragma once

#include <stdexcept>
#include <string>

namespace usnc {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: malformed values, missing files, out-of-range parameters.
// The CLI maps these to exit code 2.
struct UsageError : Error {
    using Error::Error;
};

// Operands built over different field specs.
struct SpecMismatchError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

// Mathematical precondition violated (zero inverse, rho out of range, ...).
struct DomainError : Error {
    using Error::Error;
};

// An exhaustive operation would exceed its desk-scale guard.
struct GuardExceededError : Error {
    using Error::Error;
};

// Rejection sampling hit its iteration cap; the random source is suspect.
struct RngFailureError : Error {
    using Error::Error;
};

}  // namespace usnc
