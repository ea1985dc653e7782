#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orbitflow/errors.hpp"

namespace orbitflow {

// Outcome of the approximate-gcd test on a set of orbit lengths. A present
// generator means every input length is within tolerance of an integer
// multiple of it, i.e. the length spectrum looks arithmetic and the flow is
// not weak mixing.
struct LatticeVerdict {
    std::optional<double> generator;
    int iterations = 0;
    double tolerance = 0.0;
};

// Continued-fraction diagnostic for the ratio (l1-l2)/(l2-l3). Finite
// precision can never certify the Diophantine property; the report carries
// an explicit error bound so no quotient can be a pure rounding artifact.
struct DiophantineReport {
    double beta = 0.0;
    std::vector<long long> quotients;  // a0 may be <= 0; later terms positive
    long long max_quotient = 0;        // over terms after a0
    bool terminated = false;           // expansion ended: rational within precision
    bool liouville_suspect = false;    // some quotient exceeded the bound
    bool arithmetic_like = false;      // alias of terminated, kept for reports
    double error_bound = 0.0;          // abs error bound on reconstructing beta
};

// Approximate real gcd by Euclid iteration; remainders below tol stop a
// step, and a generator is reported only if the surviving value exceeds
// sqrt(tol). Needs at least 2 lengths.
LatticeVerdict lattice_test(std::span<const double> lengths, double tol);

// Gauss-map expansion of beta = (l1-l2)/(l2-l3) with error tracking.
// Relative precision floor 1e-13 on the subtractions; expansion stops when
// the propagated error bound would make the next quotient untrustworthy.
DiophantineReport diophantine_diagnostic(double l1, double l2, double l3,
                                         int max_terms,
                                         double quotient_bound = 1e6);

// Reconstruct a real from continued-fraction quotients (test/round-trip aid).
double continued_fraction_value(std::span<const long long> quotients);

}  // namespace orbitflow
