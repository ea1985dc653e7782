#include "orbitflow/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace orbitflow {

namespace {

constexpr double exp_overflow_guard = 700.0;  // exp argument ceiling

std::string cplx_str(Complex z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

}  // namespace

Eigen::MatrixXcd weight_matrix(const ShiftModel& model, Complex s, double t) {
    const int k = model.state_count;
    if (-s.real() * model.r_max() > exp_overflow_guard)
        throw ConvergenceError("weight_matrix: Re(s) = " + std::to_string(s.real()) +
                               " overflows the edge exponentials");
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (model.edge(i, j))
                M(i, j) = std::exp(Complex(-s.real() * model.roof(i, j),
                                           -s.imag() * model.roof(i, j) + t * model.weight(i, j)));
    return M;
}

LDet l_det(const ShiftModel& model, Complex s, double t, double pole_tol) {
    const Eigen::MatrixXcd M = weight_matrix(model, s, t);
    const int k = model.state_count;
    const Eigen::MatrixXcd ImM = Eigen::MatrixXcd::Identity(k, k) - M;
    LDet out;
    out.det = ImM.determinant();
    out.pole = std::abs(out.det) < pole_tol;
    out.value = out.pole ? Complex(0, 0) : Complex(1, 0) / out.det;
    return out;
}

Complex l_euler(const OrbitSource& source, Complex s, double t, int n_max) {
    if (n_max <= 0) return Complex(1, 0);
    Complex prod(1, 0);
    source.scan([&](const OrbitRecord& rec) {
        if (rec.n > n_max) return;
        const Complex factor =
            Complex(1, 0) - std::exp(Complex(-s.real() * rec.l, -s.imag() * rec.l + t * rec.w));
        if (std::abs(factor) < 1e-14)
            throw ConvergenceError("l_euler: factor vanishing at s = " + cplx_str(s) +
                                   ", orbit too close to the singular set");
        prod /= factor;
    });
    return prod;
}

std::vector<Complex> l_euler_profile(const OrbitSource& source, Complex s, double t,
                                     std::span<const int> checkpoints) {
    std::vector<Complex> out;
    if (checkpoints.empty()) return out;
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw ValidationError("l_euler_profile: checkpoints must be ascending");
    out.reserve(checkpoints.size());
    Complex prod(1, 0);
    std::size_t next = 0;
    source.scan([&](const OrbitRecord& rec) {
        while (next < checkpoints.size() && rec.n > checkpoints[next]) {
            out.push_back(prod);
            ++next;
        }
        if (next >= checkpoints.size()) return;
        const Complex factor =
            Complex(1, 0) - std::exp(Complex(-s.real() * rec.l, -s.imag() * rec.l + t * rec.w));
        if (std::abs(factor) < 1e-14)
            throw ConvergenceError("l_euler_profile: vanishing factor at s = " + cplx_str(s));
        prod /= factor;
    });
    while (out.size() < checkpoints.size()) out.push_back(prod);
    return out;
}

namespace {

// trace((I-M)^{-1} (r o M)): simultaneously D'/D by Jacobi's formula and
// -L'/L. The LU of (I-M) is shared with the determinant when needed.
struct DetTrace {
    Complex det;
    Complex trace;
};

DetTrace det_and_trace(const ShiftModel& model, Complex s, double t) {
    const int k = model.state_count;
    const Eigen::MatrixXcd M = weight_matrix(model, s, t);
    Eigen::MatrixXcd roofM = M;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) roofM(i, j) *= model.roof(i, j);
    const Eigen::MatrixXcd ImM = Eigen::MatrixXcd::Identity(k, k) - M;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(ImM);
    DetTrace out;
    out.det = lu.determinant();
    out.trace = lu.solve(roofM).trace();
    return out;
}

}  // namespace

Complex log_derivative_analytic(const ShiftModel& model, Complex s, double t) {
    const DetTrace dt = det_and_trace(model, s, t);
    if (std::abs(dt.det) < 1e-13)
        throw ConvergenceError("log_derivative: I - M singular at s = " + cplx_str(s) +
                               " (pole signal)");
    return -dt.trace;
}

Complex log_derivative_series(const OrbitSource& source, Complex s, double t, int n_max) {
    Complex sum(0, 0);
    source.scan([&](const OrbitRecord& rec) {
        if (rec.n > n_max) return;
        // Powers gamma^m contribute with Lambda = root length l.
        const Complex base = std::exp(Complex(-s.real() * rec.l, -s.imag() * rec.l + t * rec.w));
        Complex term = base;
        for (int m = 1; m * rec.n <= n_max; ++m) {
            sum += rec.l * term;
            term *= base;
        }
    });
    return -sum;
}

Complex log_derivative_series_powers(const ShiftModel& model, Complex s, double t,
                                     int n_max) {
    const int k = model.state_count;
    const Eigen::MatrixXcd M = weight_matrix(model, s, t);
    Eigen::MatrixXcd roofM = M;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) roofM(i, j) *= model.roof(i, j);
    Complex sum(0, 0);
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(k, k);  // M^{N-1}
    for (int N = 1; N <= n_max; ++N) {
        sum += (roofM * power).trace();
        power *= M;
    }
    return -sum;
}

std::vector<PoleEstimate> pole_grid(const ShiftModel& model, std::span<const double> ts,
                                    double tol_scale) {
    const double h = flow_pressure(model, 0.0, tol_scale);
    const double residual_tol = 1e-11 * tol_scale;
    const int newton_budget = 100;

    auto polish = [&](Complex s, double t, int& iterations) {
        for (int i = 0; i < newton_budget; ++i) {
            const DetTrace dt = det_and_trace(model, s, t);
            ++iterations;
            // D' = D * trace by Jacobi's formula; Newton step D/D' = 1/trace.
            if (std::abs(dt.trace) == 0.0)
                throw ConvergenceError("find_pole: vanishing derivative at s = " + cplx_str(s));
            const Complex step = Complex(1, 0) / dt.trace;
            s -= step;
            if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(s))) break;
        }
        return s;
    };

    std::vector<PoleEstimate> out;
    out.reserve(ts.size());
    for (double t_target : ts) {
        // Continuation from t = 0 in steps of at most 0.05 keeps the Newton
        // iterate on the zero branch through s(0) = h.
        Complex s(h, 0.0);
        int iterations = 0;
        const double step_t = 0.05;
        const int n_steps = std::max(1, static_cast<int>(std::ceil(std::fabs(t_target) / step_t)));
        for (int j = 1; j <= n_steps; ++j) {
            const double t_j = t_target * static_cast<double>(j) / n_steps;
            s = polish(s, t_j, iterations);
        }
        PoleEstimate est;
        est.t = t_target;
        est.s = s;
        est.iterations = iterations;
        est.residual = std::abs(det_and_trace(model, s, t_target).det);
        if (est.residual > residual_tol)
            throw ConvergenceError("find_pole: residual " + std::to_string(est.residual) +
                                   " above tolerance at t = " + std::to_string(t_target) +
                                   ", last iterate s = " + cplx_str(s));
        out.push_back(est);
    }
    return out;
}

PoleEstimate find_pole(const ShiftModel& model, double t, double tol_scale) {
    const double ts[1] = {t};
    return pole_grid(model, ts, tol_scale).front();
}

Complex contour_winding(const ShiftModel& model, double t, Complex center, double radius) {
    if (!(radius > 0.0)) throw ValidationError("contour_winding: radius must be positive");

    auto pass = [&](int nodes) {
        Complex acc(0, 0);
        for (int j = 0; j < nodes; ++j) {
            const double theta = 2.0 * M_PI * j / nodes;
            const Complex dir(std::cos(theta), std::sin(theta));
            const Complex s = center + radius * dir;
            const DetTrace dt = det_and_trace(model, s, t);
            if (std::abs(dt.det) < 1e-8)
                throw ConvergenceError("contour_winding: contour passes within 1e-8 of a zero");
            acc += dir * (-dt.trace);  // L'/L
        }
        // (1/2pi i) * integral = (R/N) * sum e^{i theta_j} f(s_j)
        return acc * (radius / static_cast<double>(nodes));
    };

    // Trapezoid on a periodic analytic integrand converges spectrally;
    // double the node count until two passes agree.
    Complex prev = pass(256);
    for (int nodes = 512; nodes <= 65536; nodes *= 2) {
        const Complex cur = pass(nodes);
        if (std::abs(cur - prev) < 1e-6) return cur;
        prev = cur;
    }
    throw ConvergenceError("contour_winding: quadrature did not settle below 1e-6");
}

Complex residue_check(const ShiftModel& model, double t, double radius, double int_tol,
                      double tol_scale) {
    const PoleEstimate pole = find_pole(model, t, tol_scale);
    const Complex winding = contour_winding(model, t, pole.s, radius);
    const double nearest = std::round(winding.real());
    if (std::abs(winding - Complex(nearest, 0.0)) > int_tol)
        throw ConvergenceError("residue_check: winding " + cplx_str(winding) +
                               " not within " + std::to_string(int_tol) +
                               " of an integer (contour crosses a zero?)");
    return winding;
}

StripScan strip_scan(const ShiftModel& model, double t, double sigma_lo, double sigma_hi,
                     int sigma_steps, double tau_max, int tau_steps) {
    if (sigma_steps < 1 || tau_steps < 2)
        throw ValidationError("strip_scan: need at least 1 sigma step and 2 tau steps");
    if (!(sigma_hi >= sigma_lo) || !(tau_max > 0.0))
        throw ValidationError("strip_scan: bad ranges");
    const double per_unit = static_cast<double>(tau_steps - 1) / (2.0 * tau_max);
    if (per_unit < 4.0)
        throw ValidationError("strip_scan: grid resolution below 4 points per unit of Im(s)");

    StripScan scan;
    scan.grid.reserve(static_cast<std::size_t>(sigma_steps) * tau_steps);
    for (int a = 0; a < sigma_steps; ++a) {
        const double re =
            sigma_steps == 1
                ? sigma_lo
                : sigma_lo + (sigma_hi - sigma_lo) * a / static_cast<double>(sigma_steps - 1);
        StripColumn col;
        col.re_s = re;
        col.min_abs_det = std::numeric_limits<double>::infinity();
        col.im_at_min = 0.0;
        for (int b = 0; b < tau_steps; ++b) {
            const double im = -tau_max + 2.0 * tau_max * b / static_cast<double>(tau_steps - 1);
            const double ad = std::abs(l_det(model, Complex(re, im), t).det);
            scan.grid.push_back({re, im, ad});
            if (ad < col.min_abs_det) {
                col.min_abs_det = ad;
                col.im_at_min = im;
            }
            if (ad < 1e-6) scan.near_zeros.push_back({re, im, ad});
        }
        scan.columns.push_back(col);
    }
    return scan;
}

SmoothedSum smoothed_orbit_sum(const OrbitSource& source, const CltParameters& clt,
                               const PoleEstimate& pole, double t, int k, double x) {
    if (!(x > 1.0)) throw ValidationError("smoothed_orbit_sum: x must exceed 1");
    if (k < 0) throw ValidationError("smoothed_orbit_sum: k must be >= 0");
    const double log_x = std::log(x);
    source.require_complete(log_x, "smoothed_orbit_sum");

    SmoothedSum out;
    Complex sum(0, 0);
    std::uint64_t terms = 0;
    source.scan([&](const OrbitRecord& rec) {
        if (rec.l > log_x) return;
        const double wbar = centered_orbit_weight(clt, rec.l, rec.w);
        const double smooth = k == 0 ? 1.0 : std::pow(x - std::exp(rec.l), k);
        sum += rec.l * smooth * Complex(std::cos(t * wbar), std::sin(t * wbar));
        ++terms;
    });

    Complex denom = pole.s;
    double factorial = 1.0;
    for (int j = 1; j <= k; ++j) {
        denom *= pole.s + static_cast<double>(j);
        factorial *= static_cast<double>(j);
    }
    const Complex main = factorial * std::exp((pole.s + static_cast<double>(k)) * log_x) / denom;

    out.value = sum;
    out.main_term = main;
    out.ratio = sum / main;
    out.terms = terms;
    return out;
}

}  // namespace orbitflow
