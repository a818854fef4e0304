#pragma once

#include <stdexcept>
#include <string>

namespace birkhoff {

/// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid field/ring configuration (bad prime, reducible modulus, size limits).
struct ConfigError : Error {
    using Error::Error;
};

/// Instance text could not be parsed; carries 1-based position.
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_),
          col(col_) {}
};

/// Operands belong to different finite fields.
struct FieldMismatch : Error {
    using Error::Error;
};

/// Matrix/vector dimensions do not agree.
struct SizeMismatch : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

/// A truncated series did not carry enough known coefficients to decide
/// the requested question. Recoverable: callers retry at higher precision.
struct PrecisionExhausted : Error {
    using Error::Error;
};

struct SingularInput : Error {
    using Error::Error;
};

/// An exact inverse inside R = F_q[pi^-1] was requested but det is not a
/// unit constant.
struct NonUnitDeterminant : Error {
    using Error::Error;
};

/// Internal bug signals: the reduction engine violated one of its own
/// monotonicity contracts. Never expected on valid inputs.
struct PotentialStall : Error {
    using Error::Error;
};

struct WitnessCheckFailed : Error {
    using Error::Error;
};

struct OracleMismatch : Error {
    using Error::Error;
};

}  // namespace birkhoff
