#pragma once

#include <stdexcept>
#include <string>

namespace klab {

// Base class for every library failure. The CLI maps subclasses onto exit
// codes: validation-type errors -> 2, cap/limit errors -> 3, I/O -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInvertible : Error {
    using Error::Error;
};

struct NotAResidue : Error {
    using Error::Error;
};

struct NotUnit : Error {
    using Error::Error;
};

struct FactorialNotInvertible : Error {
    using Error::Error;
};

struct BadArgument : Error {
    using Error::Error;
};

struct ModulusTooLarge : Error {
    using Error::Error;
};

struct WorkCapExceeded : Error {
    using Error::Error;
};

struct LimitTooLarge : Error {
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

}  // namespace klab
