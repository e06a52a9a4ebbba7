#pragma once

#include <stdexcept>
#include <string>

namespace weightkit {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation not defined for the coefficient ring (e.g. SNF over dual numbers).
struct UnsupportedRing : Error {
    using Error::Error;
};

// Matrix / complex shapes do not line up.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Operands live over different coefficient rings.
struct RingMismatch : Error {
    using Error::Error;
};

// A chain map's endpoints do not match what the operation expects.
struct SourceTargetMismatch : Error {
    using Error::Error;
};

// Degree or weight range is malformed (m > n, bad infinite bound, ...).
struct InvalidRange : Error {
    using Error::Error;
};

// A user-supplied weight decomposition / tower choice failed validation.
struct InvalidChoice : Error {
    using Error::Error;
};

// run_battery was asked for a battery that is not registered.
struct UnknownBattery : Error {
    using Error::Error;
};

// The random generator could not repair an instance within its retry budget.
struct GenerationFailure : Error {
    using Error::Error;
};

// int64 arithmetic left the representable range; desk-scale inputs never
// get here, so treat it as a hard error rather than degrading silently.
struct OverflowError : Error {
    using Error::Error;
};

// A constructor's structural invariant failed (d∘d != 0, parity, ...).
struct InvariantViolation : Error {
    using Error::Error;
};

// Input file rejected; carries a position for diagnostics.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

}  // namespace weightkit
