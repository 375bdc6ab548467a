#pragma once

#include <stdexcept>
#include <string>

namespace ccm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct DegenerateSimplex : Error {
    using Error::Error;
};

struct DegenerateCone : Error {
    using Error::Error;
};

struct OrientationError : Error {
    using Error::Error;
};

struct UnsupportedDimension : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

} // namespace ccm
