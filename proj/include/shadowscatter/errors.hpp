#pragma once

#include <stdexcept>
#include <string>

namespace shadowscatter {

// One exit code per error class so scripts can dispatch on the CLI status.
enum class errc : int {
    ok = 0,
    generic = 1,
    usage = 2,
    domain = 3,
    eval = 4,
    series_inapplicable = 5,
    moment = 6,
    fit = 7,
    io = 8,
    length = 9,
};

class Error : public std::runtime_error {
public:
    Error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    errc code() const { return code_; }

private:
    errc code_;
};

// Parameter outside its admissible range (shape <= 0, alpha <= 1, scale <= 0).
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(errc::domain, m) {}
};

// A quadrature or series evaluation failed to reach the requested tolerance
// within its budget.
struct EvalError : Error {
    explicit EvalError(const std::string& m) : Error(errc::eval, m) {}
};

// The finite series route was requested outside its validity region.
struct SeriesInapplicable : Error {
    explicit SeriesInapplicable(const std::string& m) : Error(errc::series_inapplicable, m) {}
};

// Requested moment order does not exist (heavy tail: alpha_j <= k).
struct MomentDivergence : Error {
    explicit MomentDivergence(const std::string& m) : Error(errc::moment, m) {}
};

// A gamma-function argument in a closed form hit a pole; quadrature fallback required.
struct ClosedFormPole : Error {
    explicit ClosedFormPole(const std::string& m) : Error(errc::moment, m) {}
};

struct FitDiverged : Error {
    explicit FitDiverged(const std::string& m) : Error(errc::fit, m) {}
};

// Empirical moments are inconsistent with the model constraints (alpha > 1).
struct MomentOutOfRange : Error {
    explicit MomentOutOfRange(const std::string& m) : Error(errc::fit, m) {}
};

struct BinningError : Error {
    explicit BinningError(const std::string& m) : Error(errc::fit, m) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(errc::io, m) {}
};

struct UnitError : Error {
    explicit UnitError(const std::string& m) : Error(errc::io, m) {}
};

struct IoError : Error {
    explicit IoError(const std::string& m) : Error(errc::io, m) {}
};

struct InsufficientLength : Error {
    explicit InsufficientLength(const std::string& m) : Error(errc::length, m) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& m) : Error(errc::length, m) {}
};

} // namespace shadowscatter
