// error.hpp
// Exception types thrown across the library. Every failure mode callers are
// expected to distinguish gets its own type; all derive from pqclone::Error.

#pragma once

#include <stdexcept>
#include <string>

namespace pqclone {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// matrix kernel
struct NotSquareError : Error { using Error::Error; };
struct NotHermitianError : Error { using Error::Error; };
struct NotPsdError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };

// state sets
struct ZeroVectorError : Error { using Error::Error; };
struct EmptySetError : Error { using Error::Error; };

// feasibility
struct SizeMismatchError : Error { using Error::Error; };
struct ZeroPatternViolationError : Error { using Error::Error; };
struct EmptyClonableSubsetError : Error { using Error::Error; };
struct ShapeNotCoveredError : Error { using Error::Error; };

// synthesis / discrimination
struct InfeasibleGammaError : Error { using Error::Error; };
struct NotIsometryError : Error { using Error::Error; };
struct OutOfSpanError : Error { using Error::Error; };

// front end
struct FileNotFoundError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace pqclone
