#include "orbitflow/clt_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbitflow {

double selection_max_length(const Selection& sel) {
    if (const auto* w = std::get_if<WindowSelect>(&sel)) return w->T + w->Delta;
    return std::get<BallSelect>(sel).T;
}

bool selection_contains(const Selection& sel, double l) {
    if (const auto* w = std::get_if<WindowSelect>(&sel)) return l > w->T && l <= w->T + w->Delta;
    return l <= std::get<BallSelect>(sel).T;
}

namespace {

double selection_T(const Selection& sel) {
    if (const auto* w = std::get_if<WindowSelect>(&sel)) return w->T;
    return std::get<BallSelect>(sel).T;
}

void require_positive_variance(const CltParameters& clt, const char* op) {
    if (clt.degenerate || !(clt.sigma2 > 0.0))
        throw ValidationError(std::string(op) +
                              ": variance is zero (weight cohomologous to a constant multiple "
                              "of the roof); the positive-variance hypothesis of the limit "
                              "theorem fails on this model");
}

}  // namespace

void WindowStats::add(double l, double w_centered, std::uint64_t cap) {
    ++count;
    sum_l += l;
    moment1 += w_centered;
    moment2 += w_centered * w_centered;
    if (!sample_capped) {
        if (static_cast<std::uint64_t>(sample.size()) < cap)
            sample.push_back(w_centered);
        else
            sample_capped = true;
    }
}

void WindowStats::merge(const WindowStats& other, std::uint64_t cap) {
    count += other.count;
    sum_l += other.sum_l;
    moment1 += other.moment1;
    moment2 += other.moment2;
    sample_capped = sample_capped || other.sample_capped;
    for (double v : other.sample) {
        if (static_cast<std::uint64_t>(sample.size()) >= cap) {
            sample_capped = true;
            break;
        }
        sample.push_back(v);
    }
}

std::vector<CountRow> orbit_counting(const OrbitSource& source, const CltParameters& clt,
                                     std::span<const double> T_grid) {
    CountAccumulator acc(clt, T_grid);
    const double maxT = *std::max_element(T_grid.begin(), T_grid.end());
    source.require_complete(maxT, "orbit_counting");
    source.scan([&](const OrbitRecord& rec) { acc.feed(rec); });
    return acc.finalize();
}

double equidistribution_average(const OrbitSource& source, WindowSelect window) {
    source.require_complete(window.T + window.Delta, "equidistribution_average");
    double sum = 0.0;
    std::uint64_t count = 0;
    source.scan([&](const OrbitRecord& rec) {
        if (rec.l > window.T && rec.l <= window.T + window.Delta) {
            sum += rec.w / rec.l;
            ++count;
        }
    });
    if (count == 0)
        throw EmptySelectionError("equidistribution_average: empty window (" +
                                  std::to_string(window.T) + ", " +
                                  std::to_string(window.T + window.Delta) + "]");
    return sum / static_cast<double>(count);
}

EcfReport empirical_cf(const OrbitSource& source, const CltParameters& clt,
                       const Selection& selection, Scaling scaling,
                       std::span<const double> t_grid) {
    require_positive_variance(clt, "empirical_cf");
    source.require_complete(selection_max_length(selection), "empirical_cf");
    EcfAccumulator acc(clt, selection, scaling, t_grid);
    source.scan([&](const OrbitRecord& rec) { acc.feed(rec); });
    return acc.finalize();
}

KsReport empirical_cdf_ks(const OrbitSource& source, const CltParameters& clt,
                          const Selection& selection, Scaling scaling,
                          const KsOptions& options) {
    require_positive_variance(clt, "empirical_cdf_ks");
    source.require_complete(selection_max_length(selection), "empirical_cdf_ks");
    KsAccumulator acc(clt, selection, scaling, options);
    source.scan([&](const OrbitRecord& rec) { acc.feed(rec); });
    return acc.finalize();
}

double ks_distance(std::span<const double> sorted_sample, double sigma2) {
    if (sorted_sample.empty()) throw EmptySelectionError("ks_distance: empty sample");
    const double n = static_cast<double>(sorted_sample.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
        const double F = normal_cdf(sorted_sample[i], sigma2);
        const double lo = F - static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n - F;
        ks = std::max({ks, lo, hi});
    }
    return ks;
}

// --- normal distribution function -----------------------------------------

namespace {

// erf by its Maclaurin series; alternating, adequate to ~1e-13 absolute for
// |x| < 3 despite the mild cancellation near the split point.
double erf_series(double x) {
    constexpr double two_over_sqrt_pi = 1.1283791670955126;
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x2 / static_cast<double>(n);
        const double contrib = term / static_cast<double>(2 * n + 1);
        sum += contrib;
        if (std::fabs(contrib) < 1e-18) break;
    }
    return two_over_sqrt_pi * sum;
}

// Laplace continued fraction for the upper tail,
// sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated by modified Lentz. Used for x >= 3 where it converges fast.
double erfc_cf(double x) {
    constexpr double tiny = 1e-300;
    double f = x > 0 ? x : tiny;
    double C = f;
    double D = 0.0;
    for (int n = 1; n <= 300; ++n) {
        const double a = 0.5 * n;  // partial numerators 1/2, 1, 3/2, ...
        const double b = x;        // partial denominators all x
        D = b + a * D;
        if (D == 0.0) D = tiny;
        C = b + a / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    constexpr double inv_sqrt_pi = 0.5641895835477563;
    return inv_sqrt_pi * std::exp(-x * x) / f;
}

double erfc_positive(double x) {
    return x < 3.0 ? 1.0 - erf_series(x) : erfc_cf(x);
}

}  // namespace

double normal_cdf(double y, double sigma2) {
    if (!(sigma2 > 0.0)) throw ValidationError("normal_cdf: sigma2 must be positive");
    const double z = y / std::sqrt(sigma2) / std::sqrt(2.0);
    // Evaluate through the tail on the side that avoids cancellation.
    if (z <= 0.0) return 0.5 * erfc_positive(-z);
    return 1.0 - 0.5 * erfc_positive(z);
}

LatticeVerdict weak_mixing_probe(const ShiftModel& model, int probe_n_max, double tol) {
    std::vector<double> lengths;
    enumerate_prime_orbits(model, probe_n_max,
                           [&](const OrbitRecord& rec, std::span<const int>) {
                               lengths.push_back(rec.l);
                           });
    return lattice_test(lengths, tol);
}

void require_weak_mixing(const ShiftModel& model, int probe_n_max, double tol) {
    const LatticeVerdict verdict = weak_mixing_probe(model, probe_n_max, tol);
    if (verdict.generator)
        throw ValidationError(
            "model '" + model.name + "': orbit lengths lie in a lattice (generator ~ " +
            std::to_string(*verdict.generator) +
            "), so the flow is not weak mixing; the limit theorem's hypotheses fail and "
            "CLT runs are refused");
}

// --- accumulators ----------------------------------------------------------

EcfAccumulator::EcfAccumulator(const CltParameters& clt, Selection selection,
                               Scaling scaling, std::span<const double> t_grid)
    : clt_(clt),
      selection_(selection),
      scaling_(scaling),
      t_grid_(t_grid.begin(), t_grid.end()),
      sums_(t_grid.size(), std::complex<double>(0, 0)) {}

void EcfAccumulator::feed(const OrbitRecord& rec) {
    if (!selection_contains(selection_, rec.l)) return;
    const double wbar = centered_orbit_weight(clt_, rec.l, rec.w);
    const double scale = scaling_ == Scaling::per_window
                             ? std::sqrt(selection_T(selection_))
                             : std::sqrt(rec.l);
    const double arg = wbar / scale;
    ++count_;
    for (std::size_t i = 0; i < t_grid_.size(); ++i) {
        const double th = t_grid_[i] * arg;
        sums_[i] += std::complex<double>(std::cos(th), std::sin(th));
    }
}

EcfReport EcfAccumulator::finalize() const {
    if (count_ == 0) throw EmptySelectionError("empirical_cf: empty selection");
    EcfReport report;
    report.scaling = scaling_;
    report.selection = selection_;
    report.count = count_;
    report.points.reserve(t_grid_.size());
    for (std::size_t i = 0; i < t_grid_.size(); ++i) {
        EcfPoint p;
        p.t = t_grid_[i];
        p.phi = sums_[i] / static_cast<double>(count_);
        p.gauss = std::exp(-clt_.sigma2 * p.t * p.t / 2.0);
        p.abs_dev = std::abs(p.phi - std::complex<double>(p.gauss, 0.0));
        report.max_abs_dev = std::max(report.max_abs_dev, p.abs_dev);
        report.points.push_back(p);
    }
    return report;
}

KsAccumulator::KsAccumulator(const CltParameters& clt, Selection selection,
                             Scaling scaling, KsOptions options)
    : clt_(clt), selection_(selection), scaling_(scaling), options_(options) {
    if (options_.streaming_fallback) {
        // Fixed grid over +-8 sigma; outliers clamp into the end bins. KS at
        // bin edges is exact to one bin's occupancy.
        const double sigma = std::sqrt(clt_.sigma2);
        hist_lo_ = -8.0 * sigma;
        hist_hi_ = 8.0 * sigma;
        histogram_.assign(static_cast<std::size_t>(options_.fallback_bins), 0);
    }
}

void KsAccumulator::feed(const OrbitRecord& rec) {
    if (!selection_contains(selection_, rec.l)) return;
    const double wbar = centered_orbit_weight(clt_, rec.l, rec.w);
    const double scale = scaling_ == Scaling::per_window
                             ? std::sqrt(selection_T(selection_))
                             : std::sqrt(rec.l);
    const double value = wbar / scale;
    ++n_;
    if (static_cast<std::uint64_t>(sample_.size()) < options_.sample_cap) {
        sample_.push_back(value);
    } else if (options_.streaming_fallback) {
        overflowed_ = true;
    } else {
        throw ConvergenceError(
            "empirical_cdf_ks: sample cap " + std::to_string(options_.sample_cap) +
            " exceeded; enable the streaming histogram fallback or raise the cap");
    }
    if (options_.streaming_fallback) {
        const double clamped = std::clamp(value, hist_lo_, hist_hi_);
        const double pos = (clamped - hist_lo_) / (hist_hi_ - hist_lo_);
        auto bin = static_cast<std::size_t>(pos * (options_.fallback_bins - 1));
        ++histogram_[std::min(bin, histogram_.size() - 1)];
    }
}

void KsAccumulator::merge(KsAccumulator&& other) {
    n_ += other.n_;
    overflowed_ = overflowed_ || other.overflowed_;
    for (double v : other.sample_) {
        if (static_cast<std::uint64_t>(sample_.size()) < options_.sample_cap) {
            sample_.push_back(v);
        } else if (!options_.streaming_fallback) {
            throw ConvergenceError("empirical_cdf_ks: sample cap exceeded during merge");
        } else {
            overflowed_ = true;
        }
    }
    if (options_.streaming_fallback && !other.histogram_.empty()) {
        if (histogram_.size() != other.histogram_.size())
            throw ValidationError("KsAccumulator: histogram shapes differ in merge");
        for (std::size_t i = 0; i < histogram_.size(); ++i) histogram_[i] += other.histogram_[i];
    }
}

KsReport KsAccumulator::finalize() {
    if (n_ == 0) throw EmptySelectionError("empirical_cdf_ks: empty selection");
    KsReport report;
    report.T = selection_T(selection_);
    report.n = n_;
    if (!overflowed_) {
        std::sort(sample_.begin(), sample_.end());
        report.ks = ks_distance(sample_, clt_.sigma2);
        return report;
    }
    // Histogram path: one-sided deviations at bin edges.
    double ks = 0.0;
    std::uint64_t cum = 0;
    const double total = static_cast<double>(n_);
    for (std::size_t b = 0; b < histogram_.size(); ++b) {
        const double edge_lo = hist_lo_ + (hist_hi_ - hist_lo_) *
                                              static_cast<double>(b) /
                                              static_cast<double>(histogram_.size() - 1);
        const double F = normal_cdf(edge_lo, clt_.sigma2);
        ks = std::max(ks, std::fabs(F - static_cast<double>(cum) / total));
        cum += histogram_[b];
    }
    ks = std::max(ks, std::fabs(1.0 - static_cast<double>(cum) / total));
    report.ks = ks;
    return report;
}

CountAccumulator::CountAccumulator(const CltParameters& clt, std::span<const double> T_grid)
    : clt_(clt), grid_(T_grid.begin(), T_grid.end()) {
    if (grid_.empty()) throw ValidationError("orbit_counting: empty T grid");
    for (std::size_t i = 1; i < grid_.size(); ++i)
        if (grid_[i] <= grid_[i - 1])
            throw ValidationError("orbit_counting: T grid must be strictly increasing");
    bucket_pi_.assign(grid_.size() + 1, 0);
    bucket_sum_.assign(grid_.size() + 1, 0.0);
}

void CountAccumulator::feed(const OrbitRecord& rec) {
    // First grid index whose T is >= l; contributions become prefix sums.
    const auto it = std::lower_bound(grid_.begin(), grid_.end(), rec.l);
    const std::size_t idx = static_cast<std::size_t>(it - grid_.begin());
    if (idx >= grid_.size()) return;  // beyond the largest T
    ++bucket_pi_[idx];
    bucket_sum_[idx] += rec.l;
}

std::vector<CountRow> CountAccumulator::finalize() const {
    std::vector<CountRow> rows;
    rows.reserve(grid_.size());
    std::uint64_t pi = 0;
    double sum_l = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        pi += bucket_pi_[i];
        sum_l += bucket_sum_[i];
        CountRow row;
        row.T = grid_[i];
        row.pi = pi;
        row.sum_l = sum_l;
        const double growth = std::exp(clt_.h * row.T);
        row.ratio_pi = static_cast<double>(pi) * clt_.h * row.T / growth;
        row.ratio_sum = clt_.h * sum_l / growth;
        row.sum_over_T_pi = pi > 0 ? sum_l / (row.T * static_cast<double>(pi)) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace orbitflow
