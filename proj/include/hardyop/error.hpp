#pragma once

#include <stdexcept>
#include <string>

namespace hardyop {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A weight evaluated to a non-positive or non-finite value.
class InvalidWeight : public Error {
public:
    using Error::Error;
};

/// A series could not be certified below the requested tolerance before the hard cap.
class NonConvergence : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Internal cross-check failed (e.g. a norm with a large imaginary residue).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace hardyop
