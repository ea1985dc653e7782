#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "orbitflow/orbit_enum.hpp"
#include "orbitflow/thermo.hpp"

namespace orbitflow {

using Complex = std::complex<double>;

// M(s,t)_ij = A_ij * exp(-s*r_ij + i*t*F_ij). For edge-constant data the
// orbit Euler product collapses to 1/det(I - M), which is entire in s and
// the only desk-checkable continuation of the product.
Eigen::MatrixXcd weight_matrix(const ShiftModel& model, Complex s, double t);

struct LDet {
    Complex value;   // 1/det(I - M); huge and meaningless when pole is set
    Complex det;     // det(I - M)
    bool pole = false;
};

// Closed determinant form. Flags a pole when |det| < pole_tol. Throws when
// Re(s) is negative enough that exp overflows the matrix entries.
LDet l_det(const ShiftModel& model, Complex s, double t,
           double pole_tol = 1e-12);

// Truncated Euler product over prime orbits of word length <= n_max.
// Meaningful for Re(s) > entropy (caller-checked); n_max = 0 gives 1.
// A factor within 1e-14 of zero aborts: s is too close to the singular set.
Complex l_euler(const OrbitSource& source, Complex s, double t, int n_max);

// One streaming pass returning the partial products at several n_max
// checkpoints (ascending). Used for geometric-decay measurements.
std::vector<Complex> l_euler_profile(const OrbitSource& source, Complex s,
                                     double t, std::span<const int> checkpoints);

// d/ds log L = -trace((I-M)^{-1} (r o M)) where (r o M) is the entrywise
// roof/matrix product. Throws ConvergenceError("pole signal") on singular
// I - M.
Complex log_derivative_analytic(const ShiftModel& model, Complex s, double t);

// Cycle-sum form: -sum over powers of primes with total word length
// <= n_max of root_length(gamma) * exp(-s*l' + i*t*w').
Complex log_derivative_series(const OrbitSource& source, Complex s, double t,
                              int n_max);

// The same truncated cycle sum rearranged by word length,
// -sum_{N<=n_max} trace((r o M) M^{N-1}); each summand collects exactly the
// orbit powers of total word length N, so this equals the stream form at
// every n_max while staying cheap for n_max far beyond enumeration reach.
Complex log_derivative_series_powers(const ShiftModel& model, Complex s,
                                     double t, int n_max);

struct PoleEstimate {
    double t = 0.0;
    Complex s;
    double residual = 0.0;  // |det(I - M(s,t))|
    int iterations = 0;
};

// Newton iteration on D(s) = det(I-M) using Jacobi's formula
// D' = D * trace((I-M)^{-1} (r o M)), seeded at s = entropy and continued
// in t from 0 in steps of at most 0.05 to stay on the branch through h.
// Residual at return is <= 1e-11 (scaled by tol_scale) or it throws.
PoleEstimate find_pole(const ShiftModel& model, double t,
                       double tol_scale = 1.0);
// Same walk for every entry of a t grid (each target is reached by
// stepping t from 0 in increments of at most 0.05).
std::vector<PoleEstimate> pole_grid(const ShiftModel& model,
                                    std::span<const double> ts,
                                    double tol_scale = 1.0);

// (1/2pi i) closed contour integral of L'/L over the circle |s-center| = radius,
// trapezoid nodes doubling from 256 until two passes agree to 1e-6.
// Counts zeros minus poles of L inside: -1 around the pole, 0 elsewhere.
Complex contour_winding(const ShiftModel& model, double t, Complex center,
                        double radius);

// Winding around find_pole(t); must land within int_tol of an integer.
Complex residue_check(const ShiftModel& model, double t, double radius,
                      double int_tol = 1e-3, double tol_scale = 1.0);

struct StripPoint {
    double re_s = 0.0;
    double im_s = 0.0;
    double abs_det = 0.0;
};

struct StripColumn {
    double re_s = 0.0;
    double min_abs_det = 0.0;
    double im_at_min = 0.0;
};

struct StripScan {
    std::vector<StripColumn> columns;
    std::vector<StripPoint> near_zeros;  // |det| below 1e-6
    std::vector<StripPoint> grid;        // full grid, row-major by column
};

// |det(I-M)| over [sigma_lo, sigma_hi] x [-tau_max, tau_max]. Requires at
// least 4 grid points per unit of Im(s).
StripScan strip_scan(const ShiftModel& model, double t, double sigma_lo,
                     double sigma_hi, int sigma_steps, double tau_max,
                     int tau_steps);

struct SmoothedSum {
    Complex value;      // S_k
    Complex main_term;  // k! x^{s+k} / (s (s+1) ... (s+k))
    Complex ratio;      // value / main_term
    std::uint64_t terms = 0;
};

// S_k = sum over prime orbits with e^l <= x of l * e^{i t (w - mean*l)} *
// (x - e^l)^k, compared against the pole main term. The source must cover
// every orbit with l <= log(x) or an IncompleteSourceError names the
// required n_max. The pole estimate should come from the centered model.
SmoothedSum smoothed_orbit_sum(const OrbitSource& source,
                               const CltParameters& clt,
                               const PoleEstimate& pole, double t, int k,
                               double x);

}  // namespace orbitflow
