#pragma once

#include <stdexcept>
#include <string>

namespace densfact {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct NotPositiveSemidefinite : Error {
    using Error::Error;
};
struct RankDeficient : Error {
    using Error::Error;
};
struct InvalidEnsemble : Error {
    using Error::Error;
};
struct NotUnitTrace : Error {
    using Error::Error;
};
struct NotCoIsometry : Error {
    using Error::Error;
};
struct NotAFactorOf : Error {
    using Error::Error;
};
struct NotMinimalOrthonormal : Error {
    using Error::Error;
};
struct InvalidDimensions : Error {
    using Error::Error;
};

// Document layer. ParseError/SchemaError mean the input text could not be
// understood; InvariantError means a well-formed document violates a domain
// invariant.
struct ParseError : Error {
    using Error::Error;
};
struct SchemaError : Error {
    using Error::Error;
};
struct InvariantError : Error {
    using Error::Error;
};

} // namespace densfact
