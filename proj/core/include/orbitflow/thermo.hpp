#pragma once

#include <Eigen/Dense>

#include "orbitflow/model.hpp"

namespace orbitflow {

// A real function on the allowed edges, stored dense with zeros elsewhere.
using EdgeFunction = Eigen::MatrixXd;

// Pressure of an edge function g: log of the Perron eigenvalue of the
// matrix B_ij = A_ij * exp(g_ij), with left/right eigenvectors u, v
// normalized so u.v = 1 and the stationary edge measure
// m_ij = u_i B_ij v_j / lambda. Row sums of m per state equal its column
// sums (shift stationarity) and sum to 1 overall.
struct PressureReport {
    EdgeFunction g;
    double P = 0.0;
    Eigen::VectorXd left;   // u, entrywise positive
    Eigen::VectorXd right;  // v, entrywise positive, |v|_1 = 1
    Eigen::MatrixXd edge_measure;
    double residual = 0.0;  // relative eigen-equation residual
    int iterations = 0;
    bool dense_fallback = false;
};

// Entropy, flow mean and variance of the suspension flow. centered_weight
// is F - flow_mean * r; its flow pressure has vanishing first derivative at
// theta = 0, which is asserted to 1e-12 at construction.
struct CltParameters {
    double h = 0.0;
    double flow_mean = 0.0;
    double sigma2 = 0.0;
    EdgeFunction centered_weight;
    bool degenerate = false;  // sigma2 at rounding level: weight cohomologous
                              // to a constant multiple of the roof
};

// Integral of an edge function against an edge measure.
double edge_integral(const Eigen::MatrixXd& measure, const EdgeFunction& g);

// Power iteration with a two-sided Rayleigh quotient (residuals to 1e-13
// relative, eigenvalue then accurate to rounding level), dense solver
// fallback for k <= 64 when the gap is too small. Model must be primitive.
PressureReport base_pressure(const ShiftModel& model, const EdgeFunction& g,
                             double tol_scale = 1.0);

// Suspension-flow pressure: the unique root p of P_base(theta*F - p*r) = 0.
// The map is strictly decreasing in p (derivative -integral of r), so a
// bracketing bisection plus Newton polish converges to machine precision.
double flow_pressure(const ShiftModel& model, double theta,
                     double tol_scale = 1.0);

// h = flow_pressure(0); flow mean from the Gibbs edge measure cross-checked
// against a 5-point stencil (agreement 1e-6); sigma2 from a 5-point second
// difference of the centered flow pressure at step 1e-3 with a Richardson
// consistency check at half step (1e-5 relative).
CltParameters clt_parameters(const ShiftModel& model, double tol_scale = 1.0);

ShiftModel centered_model(const ShiftModel& model, const CltParameters& clt);

inline double centered_orbit_weight(const CltParameters& clt, double l, double w) {
    return w - clt.flow_mean * l;
}

}  // namespace orbitflow
