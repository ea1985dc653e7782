#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "orbitflow/number_checks.hpp"
#include "orbitflow/orbit_enum.hpp"
#include "orbitflow/thermo.hpp"

namespace orbitflow {

// Half-open window T < l <= T+Delta.
struct WindowSelect {
    double T = 0.0;
    double Delta = 0.0;
};

// Ball l <= T.
struct BallSelect {
    double T = 0.0;
};

using Selection = std::variant<WindowSelect, BallSelect>;

enum class Scaling {
    per_window,  // divide centered weights by sqrt(T)
    per_orbit,   // divide by sqrt(l), orbit by orbit
};

double selection_max_length(const Selection& sel);
bool selection_contains(const Selection& sel, double l);

// Per-window accumulation: count, length sum, and the centered weights as a
// sample up to a cap, with streaming moments carried regardless.
struct WindowStats {
    double T = 0.0;
    double Delta = 0.0;
    std::uint64_t count = 0;
    double sum_l = 0.0;
    std::vector<double> sample;  // centered, unscaled weights
    double moment1 = 0.0;
    double moment2 = 0.0;
    bool sample_capped = false;

    void add(double l, double w_centered, std::uint64_t cap);
    void merge(const WindowStats& other, std::uint64_t cap);
};

struct EcfPoint {
    double t = 0.0;
    std::complex<double> phi;
    double gauss = 0.0;    // e^{-sigma2 t^2 / 2}
    double abs_dev = 0.0;  // |phi - gauss|
};

struct EcfReport {
    Scaling scaling = Scaling::per_window;
    Selection selection;
    std::uint64_t count = 0;
    std::vector<EcfPoint> points;
    double max_abs_dev = 0.0;
};

struct KsReport {
    double T = 0.0;
    std::uint64_t n = 0;
    double ks = 0.0;
};

struct CountRow {
    double T = 0.0;
    std::uint64_t pi = 0;
    double sum_l = 0.0;
    double ratio_pi = 0.0;       // pi(T) * h * T / e^{hT}
    double ratio_sum = 0.0;      // h * sum_l / e^{hT}
    double sum_over_T_pi = 0.0;  // sum_l / (T * pi(T))
};

struct KsOptions {
    std::uint64_t sample_cap = 10'000'000;
    bool streaming_fallback = false;  // histogram sketch beyond the cap
    int fallback_bins = 1 << 16;
};

// pi(T) and sum of l over l <= T for each grid T in one streaming pass,
// with the growth ratios reported for trend inspection. Counts are exact.
std::vector<CountRow> orbit_counting(const OrbitSource& source,
                                     const CltParameters& clt,
                                     std::span<const double> T_grid);

// Average of w/l over a window, uncentered. Empty window is an error.
double equidistribution_average(const OrbitSource& source, WindowSelect window);

// Empirical characteristic function of scaled centered weights against the
// gaussian target. Rejects degenerate models (sigma2 at rounding level):
// the positive-variance hypothesis of the limit theorem fails there.
EcfReport empirical_cf(const OrbitSource& source, const CltParameters& clt,
                       const Selection& selection, Scaling scaling,
                       std::span<const double> t_grid);

// Kolmogorov-Smirnov distance between scaled centered weights and
// N(0, sigma2), from the sorted sample's one-sided deviations at jumps.
KsReport empirical_cdf_ks(const OrbitSource& source, const CltParameters& clt,
                          const Selection& selection, Scaling scaling,
                          const KsOptions& options = {});

// KS against an explicit sample (already scaled); shared by the streaming
// accumulators and tests.
double ks_distance(std::span<const double> sorted_sample, double sigma2);

// N(0, sigma2) distribution function to 1e-10 absolute: erf series for
// small arguments, Laplace continued fraction for the tails.
double normal_cdf(double y, double sigma2);

// Gate for CLT runs: enumerates orbit lengths up to probe_n_max and throws
// ValidationError naming the generator when they sit in a lattice (the flow
// is then not weak mixing and the limit theorem's hypotheses fail).
LatticeVerdict weak_mixing_probe(const ShiftModel& model, int probe_n_max = 12,
                                 double tol = 1e-9);
void require_weak_mixing(const ShiftModel& model, int probe_n_max = 12,
                         double tol = 1e-9);

// --- single-pass accumulators (used by the CLI to fuse several statistics
// --- into one enumeration; feeding order must be the canonical stream)

class EcfAccumulator {
  public:
    EcfAccumulator(const CltParameters& clt, Selection selection,
                   Scaling scaling, std::span<const double> t_grid);
    void feed(const OrbitRecord& rec);
    EcfReport finalize() const;

  private:
    CltParameters clt_;
    Selection selection_;
    Scaling scaling_;
    std::vector<double> t_grid_;
    std::vector<std::complex<double>> sums_;
    std::uint64_t count_ = 0;
};

class KsAccumulator {
  public:
    KsAccumulator(const CltParameters& clt, Selection selection,
                  Scaling scaling, KsOptions options = {});
    void feed(const OrbitRecord& rec);
    KsReport finalize();
    void merge(KsAccumulator&& other);

  private:
    CltParameters clt_;
    Selection selection_;
    Scaling scaling_;
    KsOptions options_;
    std::vector<double> sample_;
    std::vector<std::uint64_t> histogram_;
    double hist_lo_ = 0.0, hist_hi_ = 0.0;
    std::uint64_t n_ = 0;
    bool overflowed_ = false;
};

class CountAccumulator {
  public:
    CountAccumulator(const CltParameters& clt, std::span<const double> T_grid);
    void feed(const OrbitRecord& rec);
    std::vector<CountRow> finalize() const;

  private:
    CltParameters clt_;
    std::vector<double> grid_;
    std::vector<std::uint64_t> bucket_pi_;
    std::vector<double> bucket_sum_;
};

}  // namespace orbitflow
