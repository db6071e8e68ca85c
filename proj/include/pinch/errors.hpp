#pragma once

#include <stdexcept>
#include <string>

namespace pinch {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested computation would touch vertices whose neighborhoods are not
/// fully materialized (truncation margin rule violated).
struct MarginError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ResourceLimitError : Error {
    using Error::Error;
};

struct InvalidParameterError : Error {
    using Error::Error;
};

struct DegenerateFitError : Error {
    using Error::Error;
};

struct OutOfRangeError : Error {
    using Error::Error;
};

struct NotATreeError : Error {
    using Error::Error;
};

struct DisconnectedError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    using Error::Error;
};

struct UnverifiedPinchError : Error {
    using Error::Error;
};

}  // namespace pinch
