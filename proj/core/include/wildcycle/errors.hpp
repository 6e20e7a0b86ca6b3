#pragma once

#include <stdexcept>
#include <string>

namespace wildcycle {

enum class ErrorKind {
    ParseError,
    UnsupportedExponent,
    NotStarShaped,
    InsufficientTruncation,
    UnsupportedAlgebraicExtension,
    SpectrumNotSplit,
    SingularGauge,
    DenominatorVanishes,
    NotNilpotent,
    NonTerminating,
    LambdaDependentSpectrum,
    InvalidArgument,
    Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

    // filled in by truncation failures so the CLI can report a bound
    int required_truncation = -1;

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void check_internal(bool ok, const char* what)
{
    if (!ok) fail(ErrorKind::Internal, what);
}

}  // namespace wildcycle
