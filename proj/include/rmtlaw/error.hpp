#pragma once

#include <stdexcept>
#include <string>

namespace rmtlaw {

// Base of every error raised by the library. The CLI maps NumericError and
// RangeError to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument exceeds an exhaustive-enumeration or configuration bound.
class BoundError : public Error {
public:
    using Error::Error;
};

// An argument violates an operation's precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

// An exact integer result does not fit in 128 bits.
class RangeError : public Error {
public:
    using Error::Error;
};

// Eigensolver or factorization failure.
class NumericError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Simulation exceeds the compute budget guard.
class BudgetError : public Error {
public:
    using Error::Error;
};

}  // namespace rmtlaw
