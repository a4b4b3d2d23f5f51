#ifndef BERGMAN_ERRORS_HPP
#define BERGMAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bergman {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad parameters, exterior points, violated preconditions.  CLI exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

// Numerical failures: series that do not converge within budget, fits that
// are inconsistent with the model, ill-conditioned regressions.  Exit code 3.
struct ConvergenceError : Error {
    using Error::Error;
};

// Series truncation carries the partial sum and the certified tail bound so
// callers can decide whether the partial answer is still useful.
struct SeriesTruncationError : ConvergenceError {
    SeriesTruncationError(const std::string& msg, double partial, double bound)
        : ConvergenceError(msg), partial_sum(partial), tail_bound(bound) {}
    double partial_sum;
    double tail_bound;
};

// Log-log slope >= -2: no admissible finite type explains the data.
struct FitInconsistencyError : ConvergenceError {
    using ConvergenceError::ConvergenceError;
};

// Rank-deficient regressor matrix; carries the condition number.
struct ConditioningError : ConvergenceError {
    ConditioningError(const std::string& msg, double cond)
        : ConvergenceError(msg), condition(cond) {}
    double condition;
};

// Per-direction type estimates that refuse to agree.
struct AmbiguityError : ConvergenceError {
    using ConvergenceError::ConvergenceError;
};

// A check of one of the verified theorems failed.  This signals an
// implementation bug, never a property of the mathematics.  Exit code 4.
struct TheoremViolation : Error {
    using Error::Error;
};

}  // namespace bergman

#endif
