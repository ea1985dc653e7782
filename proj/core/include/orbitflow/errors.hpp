#pragma once

#include <stdexcept>
#include <string>

namespace orbitflow {

// Error taxonomy maps onto CLI exit codes:
//   0 success, 1 validation/parse failure, 2 numerical non-convergence,
//   3 incomplete orbit source, 4 acceptance check failed (run-all only).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad model data, malformed files, violated preconditions.
struct ValidationError : Error {
    using Error::Error;
};

// Iteration budgets exhausted, residuals above tolerance, overflow.
struct ConvergenceError : Error {
    using Error::Error;
};

// Orbit stream does not reach the word length a computation needs.
struct IncompleteSourceError : Error {
    IncompleteSourceError(const std::string& what, int required)
        : Error(what), required_n_max(required) {}
    int required_n_max;
};

// A selection window contains no orbits.
struct EmptySelectionError : ValidationError {
    using ValidationError::ValidationError;
};

enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 1,
    exit_convergence = 2,
    exit_incomplete_source = 3,
    exit_checks_failed = 4,
};

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const IncompleteSourceError*>(&e)) return exit_incomplete_source;
    if (dynamic_cast<const ValidationError*>(&e)) return exit_validation;
    if (dynamic_cast<const ConvergenceError*>(&e)) return exit_convergence;
    return exit_validation;
}

}  // namespace orbitflow
