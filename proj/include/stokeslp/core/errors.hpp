#ifndef STOKESLP_CORE_ERRORS_HPP
#define STOKESLP_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stokeslp {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature did not reach the requested tolerance; carries the achieved
// error estimate.
struct QuadratureError : std::runtime_error {
    double achieved;
    QuadratureError(const std::string& what, double err)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(err) + ")"),
          achieved(err) {}
};

struct SingularPointError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a coefficient is numerically tiny but not exactly zero, so the
// kernel classification would be ambiguous.
struct ClassificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistentSymbolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JumpUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionError : std::runtime_error {
    long suggested_cutoff;
    PrecisionError(const std::string& what, long suggested)
        : std::runtime_error(what), suggested_cutoff(suggested) {}
};

} // namespace stokeslp

#endif
