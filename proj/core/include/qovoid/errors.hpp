#pragma once

#include <stdexcept>
#include <string>

namespace qovoid {

// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
    explicit NotPrimeError(const std::string& msg) : Error(msg) {}
};

struct EvenCharacteristicError : Error {
    EvenCharacteristicError() : Error("characteristic 2 is not supported (q must be odd)") {}
};

struct FieldTooLargeError : Error {
    explicit FieldTooLargeError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero field element") {}
};

struct ZeroVectorError : Error {
    ZeroVectorError() : Error("the zero vector has no projective representative") {}
};

struct NotCollinearError : Error {
    explicit NotCollinearError(const std::string& msg) : Error(msg) {}
};

struct UnexpectedOrbitLengthError : Error {
    explicit UnexpectedOrbitLengthError(const std::string& msg) : Error(msg) {}
};

struct CensusMismatchError : Error {
    explicit CensusMismatchError(const std::string& msg) : Error(msg) {}
};

struct PredicateInapplicableError : Error {
    explicit PredicateInapplicableError(const std::string& msg) : Error(msg) {}
};

// Raised when the requested q violates the hypotheses of the construction
// (q must be an odd prime power with q = 1 mod 4, and q > 5 for the ovoid).
struct UnsupportedQError : Error {
    explicit UnsupportedQError(const std::string& msg) : Error(msg) {}
};

struct NoSolutionError : Error {
    explicit NoSolutionError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Internal consistency check failed; always indicates a bug in this library.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace qovoid
