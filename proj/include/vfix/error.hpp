#pragma once

#include <stdexcept>
#include <string>

namespace vfix {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A self-check failed; indicates a bug, never a property of the input.
class InternalError : public Error {
public:
    using Error::Error;
};

// The requested computation needs a field larger than the supported degree cap.
class FieldCapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace vfix
