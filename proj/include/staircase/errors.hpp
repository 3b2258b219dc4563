#pragma once

#include <stdexcept>

namespace staircase {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible or negative matrix dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed files or serialized payloads.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Values outside an operation's domain: non-finite entries, bad block
/// parameters, non-positive tolerances.
class InvalidValueError : public Error {
public:
    using Error::Error;
};

/// A computed index sequence violated a structural guarantee, or a declared
/// zero region failed its bound: the rank tolerance cannot separate the
/// input's singular structure. Never silently ignored.
class ToleranceBreakdown : public Error {
public:
    using Error::Error;
};

} // namespace staircase
