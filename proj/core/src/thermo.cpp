#include "orbitflow/thermo.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

namespace orbitflow {

double edge_integral(const Eigen::MatrixXd& measure, const EdgeFunction& g) {
    return measure.cwiseProduct(g).sum();
}

namespace {

Eigen::MatrixXd weighted_matrix(const ShiftModel& model, const EdgeFunction& g) {
    const int k = model.state_count;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (model.edge(i, j)) B(i, j) = std::exp(g(i, j));
    return B;
}

double relative_residual(const Eigen::MatrixXd& B, const Eigen::VectorXd& v,
                         double lambda, bool transpose) {
    Eigen::VectorXd r = transpose ? Eigen::VectorXd(B.transpose() * v - lambda * v)
                                  : Eigen::VectorXd(B * v - lambda * v);
    return r.cwiseAbs().maxCoeff() / (lambda * v.cwiseAbs().maxCoeff());
}

// Dominant eigenpair by dense decomposition, used when power iteration
// stalls on a small spectral gap.
void dense_perron(const Eigen::MatrixXd& B, Eigen::VectorXd& u, Eigen::VectorXd& v) {
    Eigen::EigenSolver<Eigen::MatrixXd> right(B);
    Eigen::EigenSolver<Eigen::MatrixXd> left(B.transpose());
    Eigen::Index iv = 0, iu = 0;
    right.eigenvalues().cwiseAbs().maxCoeff(&iv);
    left.eigenvalues().cwiseAbs().maxCoeff(&iu);
    v = right.eigenvectors().col(iv).real();
    u = left.eigenvectors().col(iu).real();
    if (v.sum() < 0) v = -v;
    if (u.sum() < 0) u = -u;
    v = v.cwiseMax(std::numeric_limits<double>::min());
    u = u.cwiseMax(std::numeric_limits<double>::min());
}

}  // namespace

PressureReport base_pressure(const ShiftModel& model, const EdgeFunction& g,
                             double tol_scale) {
    const int k = model.state_count;
    if (k < 1) throw ValidationError("base_pressure: empty model");
    const Eigen::MatrixXd B = weighted_matrix(model, g);

    const double iter_tol = 1e-13 * tol_scale;
    const int max_iter = 200000;

    Eigen::VectorXd v = Eigen::VectorXd::Ones(k);
    Eigen::VectorXd u = Eigen::VectorXd::Ones(k);
    v /= v.lpNorm<1>();
    u /= u.lpNorm<1>();

    double lambda = 0.0;
    int it = 0;
    bool dense = false;
    for (; it < max_iter; ++it) {
        Eigen::VectorXd Bv = B * v;
        Eigen::VectorXd Btu = B.transpose() * u;
        const double nv = Bv.lpNorm<1>();
        const double nu = Btu.lpNorm<1>();
        if (!(nv > 0.0) || !(nu > 0.0))
            throw ConvergenceError("base_pressure: weighted matrix lost positivity (model not primitive?)");
        v = Bv / nv;
        u = Btu / nu;
        lambda = u.dot(B * v) / u.dot(v);
        if (relative_residual(B, v, lambda, false) <= iter_tol &&
            relative_residual(B, u, lambda, true) <= iter_tol)
            break;
        if (it == 2000 && k <= 64) {
            // Slow gap: take the dense answer and let the loop polish it.
            dense_perron(B, u, v);
            v /= v.lpNorm<1>();
            u /= u.lpNorm<1>();
            dense = true;
        }
    }

    // Two-sided Rayleigh quotient: first-order errors of u and v cancel, so
    // lambda is accurate to rounding even though the vectors carry ~1e-13.
    lambda = u.dot(B * v) / u.dot(v);
    const double res = std::max(relative_residual(B, v, lambda, false),
                                relative_residual(B, u, lambda, true));
    if (it >= max_iter && res > 1e-12 * tol_scale) {
        std::ostringstream msg;
        msg << "base_pressure: eigen-solve stalled at relative residual " << res;
        throw ConvergenceError(msg.str());
    }
    if (v.minCoeff() <= 0.0 || u.minCoeff() <= 0.0)
        throw ConvergenceError("base_pressure: Perron vectors not positive (model not primitive?)");

    PressureReport report;
    report.g = g;
    report.P = std::log(lambda);
    report.right = v;                  // |v|_1 = 1
    report.left = u / u.dot(v);        // u.v = 1
    report.residual = res;
    report.iterations = it;
    report.dense_fallback = dense;
    report.edge_measure = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (model.edge(i, j))
                report.edge_measure(i, j) = report.left(i) * B(i, j) * report.right(j) / lambda;
    return report;
}

namespace {

EdgeFunction direction(const ShiftModel& model, double theta, double p) {
    const int k = model.state_count;
    EdgeFunction g = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (model.edge(i, j)) g(i, j) = theta * model.weight(i, j) - p * model.roof(i, j);
    return g;
}

}  // namespace

double flow_pressure(const ShiftModel& model, double theta, double tol_scale) {
    if (!(model.r_min() > 0.0)) throw ValidationError("flow_pressure: roof must be positive");

    auto psi = [&](double p) { return base_pressure(model, direction(model, theta, p), tol_scale); };

    // psi is strictly decreasing in p with slope -integral(r) <= -r_min < 0.
    const double bracket_limit = 1e3;
    double lo = 0.0, hi = 0.0;
    double f_lo = psi(0.0).P;
    if (f_lo > 0.0) {
        hi = 1.0;
        while (psi(hi).P > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > bracket_limit)
                throw ConvergenceError("flow_pressure: no bracket below p = 1e3");
        }
    } else {
        lo = -1.0;
        hi = 0.0;
        while (psi(lo).P < 0.0) {
            hi = lo;
            lo *= 2.0;
            if (lo < -bracket_limit)
                throw ConvergenceError("flow_pressure: no bracket above p = -1e3");
        }
    }

    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (psi(mid).P > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    // Newton polish with the exact derivative -integral(r dm) at the current
    // Gibbs state; drives the root to machine precision, which the stencil
    // differentiation downstream depends on.
    double p = 0.5 * (lo + hi);
    for (int i = 0; i < 60; ++i) {
        const PressureReport rep = psi(p);
        const double slope = -edge_integral(rep.edge_measure, model.roof);
        const double step = rep.P / slope;
        p -= step;
        if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(p))) break;
    }
    const double final_P = psi(p).P;
    if (std::fabs(final_P) > 1e-12 * tol_scale)
        throw ConvergenceError("flow_pressure: residual " + std::to_string(final_P) +
                               " above tolerance");
    return p;
}

CltParameters clt_parameters(const ShiftModel& model, double tol_scale) {
    CltParameters clt;
    clt.h = flow_pressure(model, 0.0, tol_scale);

    // Gibbs edge measure of -h*r gives the eigen-perturbation derivative
    // p'(0) = integral(F dm) / integral(r dm).
    const PressureReport at_zero = base_pressure(model, direction(model, 0.0, clt.h), tol_scale);
    const double int_r = edge_integral(at_zero.edge_measure, model.roof);
    const double int_F = edge_integral(at_zero.edge_measure, model.weight);
    const double mean_eigen = int_F / int_r;

    const double dtheta = 1e-3;
    auto p_of = [&](const ShiftModel& m, double th) { return flow_pressure(m, th, tol_scale); };
    auto stencil5_first = [&](const ShiftModel& m, double d) {
        return (-p_of(m, 2 * d) + 8 * p_of(m, d) - 8 * p_of(m, -d) + p_of(m, -2 * d)) / (12 * d);
    };
    const double mean_fd = stencil5_first(model, dtheta);
    if (std::fabs(mean_fd - mean_eigen) > 1e-6 * tol_scale)
        throw ConvergenceError("clt_parameters: flow-mean routes disagree (eigen " +
                               std::to_string(mean_eigen) + " vs stencil " +
                               std::to_string(mean_fd) + "); eigen-solver or stencil fault");
    clt.flow_mean = mean_eigen;

    ShiftModel centered = orbitflow::centered_model(model, clt.flow_mean);
    clt.centered_weight = centered.weight;

    // First derivative of the centered flow pressure must vanish at 0.
    const double int_Fbar = edge_integral(at_zero.edge_measure, centered.weight);
    if (std::fabs(int_Fbar / int_r) > 1e-12 * tol_scale)
        throw ConvergenceError("clt_parameters: centered weight kept a nonzero mean");

    auto stencil5_second = [&](const ShiftModel& m, double d) {
        const double p0 = p_of(m, 0.0);
        return (-p_of(m, 2 * d) + 16 * p_of(m, d) - 30 * p0 + 16 * p_of(m, -d) -
                p_of(m, -2 * d)) /
               (12 * d * d);
    };
    const double s_full = stencil5_second(centered, dtheta);
    const double s_half = stencil5_second(centered, dtheta / 2);
    // Both stencils at rounding level means a flat pressure curve, not a
    // stencil fault; the relative check only applies off the floor.
    const bool at_floor = std::fabs(s_full) < 1e-8 && std::fabs(s_half) < 1e-8;
    if (!at_floor &&
        std::fabs(s_full - s_half) / std::fabs(s_half) > 1e-5 * tol_scale)
        throw ConvergenceError("clt_parameters: sigma2 Richardson check failed (" +
                               std::to_string(s_full) + " vs " + std::to_string(s_half) + ")");

    clt.sigma2 = at_floor ? 0.0 : std::max(0.0, s_full);
    clt.degenerate = at_floor;
    return clt;
}

ShiftModel centered_model(const ShiftModel& model, const CltParameters& clt) {
    return centered_model(model, clt.flow_mean);
}

}  // namespace orbitflow
