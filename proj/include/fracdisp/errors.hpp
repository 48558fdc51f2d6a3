#ifndef FRACDISP_ERRORS_HPP
#define FRACDISP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracdisp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the validity region of a representation or estimate.
struct DomainError : Error {
    using Error::Error;
};

// A truncated expansion did not reach its tolerance within the term budget.
struct NonConvergent : Error {
    using Error::Error;
};

// A quadrature rule could not certify its tail or panel error.
struct QuadratureError : Error {
    using Error::Error;
};

// The heat-integral denominator came out near zero; indicates a broken
// branch convention rather than a legitimate input.
struct SingularDenominator : Error {
    using Error::Error;
};

// Refinement (cutoff doubling, node doubling) kept moving the result.
struct NotConverged : Error {
    using Error::Error;
};

// Successive fixed-point iterates moved apart for several iterations.
struct NotContracting : Error {
    using Error::Error;
};

// Derived exponents are undefined for this parameter tuple.
struct DegenerateParams : Error {
    using Error::Error;
};

struct DegenerateFit : Error {
    using Error::Error;
};

// Time window too short for a saturating time integral.
struct WindowTooShort : Error {
    using Error::Error;
};

// Periodic box too small for the requested run; enlarging did not help.
struct BoxTooSmall : Error {
    using Error::Error;
};

struct SymbolNonFinite : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace fracdisp

#endif
