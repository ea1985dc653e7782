#include "orbitflow/number_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbitflow {

namespace {

// Euclid on reals: fold b into a until the remainder drops below tol.
double approx_gcd_pair(double a, double b, double tol, int& iterations) {
    a = std::fabs(a);
    b = std::fabs(b);
    if (a < b) std::swap(a, b);
    while (b > tol) {
        double r = std::fmod(a, b);
        a = b;
        b = r;
        ++iterations;
    }
    return a;
}

}  // namespace

LatticeVerdict lattice_test(std::span<const double> lengths, double tol) {
    if (lengths.size() < 2) throw ValidationError("lattice_test needs at least 2 lengths");
    if (!(tol > 0.0)) throw ValidationError("lattice_test: tol must be positive");

    LatticeVerdict verdict;
    verdict.tolerance = tol;
    const double floor = std::sqrt(tol);

    double g = std::fabs(lengths[0]);
    for (std::size_t i = 1; i < lengths.size(); ++i) {
        g = approx_gcd_pair(g, lengths[i], tol, verdict.iterations);
        if (g <= floor) return verdict;  // gcd can only shrink from here
    }
    if (g > floor) verdict.generator = g;
    return verdict;
}

DiophantineReport diophantine_diagnostic(double l1, double l2, double l3,
                                         int max_terms, double quotient_bound) {
    constexpr double rel_floor = 1e-13;  // precision floor on subtractions

    const double num = l1 - l2;
    const double den = l2 - l3;
    const double scale = std::max({std::fabs(l1), std::fabs(l2), std::fabs(l3), 1.0});
    if (std::fabs(den) <= rel_floor * scale)
        throw ValidationError("diophantine_diagnostic: l2 - l3 below precision floor");

    DiophantineReport report;
    report.beta = num / den;

    // Cancellation in the two subtractions seeds the error bound on the
    // current remainder x; each Gauss step x -> 1/(x - a) multiplies an
    // absolute error e by roughly x_next^2.
    const double seed_err =
        std::max(rel_floor * scale / std::fabs(den) * (1.0 + std::fabs(report.beta)),
                 std::fabs(report.beta) * std::numeric_limits<double>::epsilon());

    double x = report.beta;
    double err = seed_err;
    double q_prev = 0.0, q_cur = 1.0;  // convergent denominators
    for (int term = 0; term < max_terms; ++term) {
        if (err >= 0.5) {
            // Cannot trust even the integer part. If the whole uncertainty
            // interval still clears the bound, the quotient here is huge no
            // matter what the true value is.
            if (x - err > quotient_bound) report.liouville_suspect = true;
            break;
        }
        const double fl = std::floor(x);
        const long long a = static_cast<long long>(fl);
        report.quotients.push_back(a);
        if (term > 0) {
            report.max_quotient = std::max(report.max_quotient, a);
            if (static_cast<double>(a) > quotient_bound) report.liouville_suspect = true;
            const double q_next = fl * q_cur + q_prev;
            q_prev = q_cur;
            q_cur = q_next;
        }

        const double frac = x - fl;
        if (frac <= std::max(err, rel_floor * std::max(1.0, std::fabs(x)))) {
            report.terminated = true;  // rational within tracked precision
            break;
        }
        const double next = 1.0 / frac;
        err = err * next * next + next * std::numeric_limits<double>::epsilon();
        x = next;
    }
    report.arithmetic_like = report.terminated;
    // Truncation error of the reported convergent plus the accumulated and
    // input data errors.
    report.error_bound = (q_cur > 0.0 ? 1.0 / (q_cur * q_cur) : 1.0) +
                         std::min(err, 1.0) + seed_err;
    return report;
}

double continued_fraction_value(std::span<const long long> quotients) {
    if (quotients.empty()) throw ValidationError("continued_fraction_value: no quotients");
    double v = static_cast<double>(quotients.back());
    for (std::size_t i = quotients.size() - 1; i-- > 0;)
        v = static_cast<double>(quotients[i]) + 1.0 / v;
    return v;
}

}  // namespace orbitflow
