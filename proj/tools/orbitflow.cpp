// Command-line front end: model validation, prime-orbit enumeration,
// pressure/CLT parameters, L-function diagnostics, orbit statistics, and
// the run-all verification battery. Every subcommand reads --model (a file
// path or a bundled name) and writes CSV artifacts into --out-dir.

#include <CLI11.hpp>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "orbitflow/acceptance.hpp"
#include "orbitflow/clt_stats.hpp"
#include "orbitflow/lfunc.hpp"
#include "orbitflow/model_io.hpp"
#include "orbitflow/number_checks.hpp"

using namespace orbitflow;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string model_path;
    std::string out_dir = ".";
    double tol = 1.0;
};

void add_common(CLI::App* cmd, Common& common, bool needs_model = true) {
    auto* opt = cmd->add_option("--model,-m", common.model_path,
                                "model file or bundled name (m-arith, coin-flip, m-gold, "
                                "golden-mean-shift)");
    if (needs_model) opt->required();
    cmd->add_option("--out-dir,-o", common.out_dir, "output directory (default .)");
    cmd->add_option("--tol", common.tol, "scale factor applied to all numeric tolerances");
}

std::ofstream open_csv(const Common& common, const std::string& name,
                       const std::string& header) {
    fs::create_directories(common.out_dir);
    const fs::path path = fs::path(common.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
    out << header << '\n';
    return out;
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> grid;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        grid.push_back(std::stod(tok));
    }
    if (grid.empty()) throw ValidationError("empty grid '" + csv + "'");
    return grid;
}

void require_positive(const char* name, double value) {
    if (!(value > 0.0))
        throw ValidationError(std::string(name) + " must be positive, got " +
                              std::to_string(value));
}

ShiftModel load_validated(const Common& common) {
    ShiftModel model = parse_model_file(common.model_path);
    const ValidationReport report = validate_model(model);
    if (!report.primitive)
        throw ValidationError("model '" + model.name +
                              "' is not primitive; pressure and orbit statistics need a "
                              "primitive transition matrix");
    return model;
}

int run_validate(const Common& common) {
    const ShiftModel model = parse_model_file(common.model_path);
    const ValidationReport report = validate_model(model);
    auto csv = open_csv(common, "validation.csv", "model,primitive,period,r_min,warnings");
    std::string joined;
    for (const auto& w : report.warnings) {
        if (!joined.empty()) joined += "; ";
        joined += w;
    }
    csv << model.name << ',' << (report.primitive ? 1 : 0) << ',' << report.period << ','
        << fmt_g17(report.r_min) << ",\"" << joined << "\"\n";
    std::printf("model %s: primitive=%d period=%d r_min=%s\n", model.name.c_str(),
                report.primitive ? 1 : 0, report.period, fmt_g17(report.r_min).c_str());
    for (const auto& w : report.warnings) std::printf("warning: %s\n", w.c_str());
    return 0;
}

int run_enumerate(const Common& common, int n_max, int shards, int threads) {
    if (shards < 1) throw ValidationError("--shards must be at least 1");
    const ShiftModel model = load_validated(common);
    fs::create_directories(common.out_dir);
    const fs::path path = fs::path(common.out_dir) / "orbits.csv";
    OrbitCacheWriter writer(path.string());
    auto sink = [&writer](const OrbitRecord& rec, std::span<const int>) { writer.add(rec); };
    const EnumSummary summary =
        enumerate_sharded(model, n_max, OrbitSinkRef::of(sink, false), shards, threads);
    writer.close();
    for (int n = 1; n <= n_max; ++n)
        std::printf("n=%d orbits=%llu\n", n,
                    static_cast<unsigned long long>(
                        summary.counts_per_n[static_cast<std::size_t>(n)]));
    std::printf("total=%llu -> %s\n", static_cast<unsigned long long>(summary.total),
                path.string().c_str());
    return 0;
}

int run_pressure(const Common& common, double theta_min, double theta_max, int steps) {
    if (steps < 1) throw ValidationError("--theta-steps must be at least 1");
    const ShiftModel model = load_validated(common);
    auto grid_csv = open_csv(common, "pressure.csv", "theta,p");
    for (int i = 0; i < steps; ++i) {
        const double theta =
            steps == 1 ? theta_min
                       : theta_min + (theta_max - theta_min) * i / static_cast<double>(steps - 1);
        grid_csv << fmt_g17(theta) << ',' << fmt_g17(flow_pressure(model, theta, common.tol))
                 << '\n';
    }
    const CltParameters clt = clt_parameters(model, common.tol);
    auto params_csv = open_csv(common, "clt_params.csv", "h,flow_mean,sigma2");
    params_csv << fmt_g17(clt.h) << ',' << fmt_g17(clt.flow_mean) << ',' << fmt_g17(clt.sigma2)
               << '\n';
    std::printf("h=%s flow_mean=%s sigma2=%s%s\n", fmt_g17(clt.h).c_str(),
                fmt_g17(clt.flow_mean).c_str(), fmt_g17(clt.sigma2).c_str(),
                clt.degenerate ? " (degenerate: weight cohomologous to a multiple of the roof)"
                               : "");
    return 0;
}

int run_pole(const Common& common, double t_max, double t_step, bool centered) {
    require_positive("--t-step", t_step);
    ShiftModel model = load_validated(common);
    if (centered) {
        const CltParameters clt = clt_parameters(model, common.tol);
        model = centered_model(model, clt);
    }
    std::vector<double> ts;
    for (double t = 0.0; t <= t_max + 1e-12; t += t_step) ts.push_back(t);
    const auto poles = pole_grid(model, ts, common.tol);
    auto csv = open_csv(common, "pole.csv", "t,re_s,im_s,residual");
    for (const auto& p : poles)
        csv << fmt_g17(p.t) << ',' << fmt_g17(p.s.real()) << ',' << fmt_g17(p.s.imag()) << ','
            << fmt_g17(p.residual) << '\n';
    std::printf("pole grid: %zu points, s(0) = %s\n", poles.size(),
                fmt_g17(poles.front().s.real()).c_str());
    return 0;
}

int run_strip(const Common& common, double t, double sigma_min, double sigma_max,
              int sigma_steps, double tau_max, int tau_steps) {
    const ShiftModel model = load_validated(common);
    const StripScan scan =
        strip_scan(model, t, sigma_min, sigma_max, sigma_steps, tau_max, tau_steps);
    auto csv = open_csv(common, "strip.csv", "re_s,im_s,abs_det");
    for (const auto& p : scan.grid)
        csv << fmt_g17(p.re_s) << ',' << fmt_g17(p.im_s) << ',' << fmt_g17(p.abs_det) << '\n';
    for (const auto& col : scan.columns)
        std::printf("Re(s)=%-10s min|det|=%-12s at Im(s)=%s\n", fmt_g17(col.re_s).c_str(),
                    fmt_g17(col.min_abs_det).c_str(), fmt_g17(col.im_at_min).c_str());
    std::printf("near-zeros (|det| < 1e-6): %zu\n", scan.near_zeros.size());
    return 0;
}

int run_lfunc_check(const Common& common, int n_max) {
    const ShiftModel model = load_validated(common);
    const double h = flow_pressure(model, 0.0, common.tol);
    struct Row {
        std::string name;
        double measured;
        double threshold;
    };
    std::vector<Row> rows;

    const PoleEstimate pole0 = find_pole(model, 0.0, common.tol);
    rows.push_back({"pole-vs-pressure", std::abs(pole0.s - Complex(h, 0.0)), 1e-9});

    const Complex s_test(h + 0.5, 0.0);
    const double t_test = 0.3;
    const OrbitSource src = model_source(model, n_max);
    const Complex det_value = l_det(model, s_test, t_test).value;
    const Complex euler = l_euler(src, s_test, t_test, n_max);
    rows.push_back({"det-euler-agreement", std::abs(euler / det_value - 1.0),
                    n_max >= 30 ? 1e-6 : 1e-3});

    const Complex analytic = log_derivative_analytic(model, s_test, t_test);
    const Complex series = log_derivative_series_powers(model, s_test, t_test, 240);
    rows.push_back({"log-derivative-modes", std::abs(analytic - series), 1e-8});

    const Complex winding = residue_check(model, 0.0, 0.05, 1e-3, common.tol);
    rows.push_back({"residue-at-entropy", std::abs(winding - Complex(-1.0, 0.0)), 1e-3});

    const Complex probe(h + 0.7, 1.3);
    const Complex conj_gap = log_derivative_analytic(model, std::conj(probe), -t_test) -
                             std::conj(log_derivative_analytic(model, probe, t_test));
    rows.push_back({"conjugation-symmetry", std::abs(conj_gap), 1e-12});

    auto csv = open_csv(common, "lfunc_check.csv", "check,measured,threshold,pass");
    bool all_ok = true;
    for (const auto& row : rows) {
        const bool ok = row.measured <= row.threshold * common.tol;
        all_ok = all_ok && ok;
        csv << row.name << ',' << fmt_g17(row.measured) << ','
            << fmt_g17(row.threshold * common.tol) << ',' << (ok ? "pass" : "FAIL") << '\n';
        std::printf("[%s] %-22s measured=%.3g threshold=%.3g\n", ok ? "PASS" : "FAIL",
                    row.name.c_str(), row.measured, row.threshold * common.tol);
    }
    return all_ok ? 0 : exit_checks_failed;
}

int run_counts(const Common& common, const std::string& grid_spec, int shards, int threads) {
    const ShiftModel model = load_validated(common);
    const CltParameters clt = clt_parameters(model, common.tol);
    const std::vector<double> grid = parse_grid(grid_spec);
    const double maxT = *std::max_element(grid.begin(), grid.end());
    const int n_max = static_cast<int>(std::floor(maxT / model.r_min() + 1e-12));
    const OrbitSource src = model_source_sharded(model, n_max, shards, threads);
    const auto rows = orbit_counting(src, clt, grid);
    auto csv = open_csv(common, "counts.csv", "T,pi,sum_l,ratio_pi,ratio_sum");
    for (const auto& row : rows) {
        csv << fmt_g17(row.T) << ',' << row.pi << ',' << fmt_g17(row.sum_l) << ','
            << fmt_g17(row.ratio_pi) << ',' << fmt_g17(row.ratio_sum) << '\n';
        std::printf("T=%-6s pi=%-10llu ratio_pi=%.4f ratio_sum=%.4f sum_l/(T pi)=%.4f\n",
                    fmt_g17(row.T).c_str(), static_cast<unsigned long long>(row.pi),
                    row.ratio_pi, row.ratio_sum, row.sum_over_T_pi);
    }
    return 0;
}

int run_clt(const Common& common, const std::string& grid_spec, double t_max, double t_step,
            double delta, bool window_form, int shards, int threads) {
    require_positive("--t-step", t_step);
    require_positive("--t-max", t_max);
    if (shards < 1) throw ValidationError("--shards must be at least 1");
    const ShiftModel model = load_validated(common);
    require_weak_mixing(model);
    const CltParameters clt = clt_parameters(model, common.tol);
    if (clt.degenerate || !(clt.sigma2 > 0.0))
        throw ValidationError("model '" + model.name +
                              "': variance is zero (weight cohomologous to a constant multiple "
                              "of the roof); the positive-variance hypothesis of the limit "
                              "theorem fails and CLT runs are refused");

    const std::vector<double> grid = parse_grid(grid_spec);
    if (delta <= 0.0) delta = 1.0 / clt.h;  // one entropy-normalized unit
    std::vector<double> t_grid;
    for (double t = -t_max; t <= t_max + 1e-12; t += t_step) t_grid.push_back(t);

    const double maxT = *std::max_element(grid.begin(), grid.end()) + (window_form ? delta : 0.0);
    const int n_max = static_cast<int>(std::floor(maxT / model.r_min() + 1e-12));
    const OrbitSource src = model_source_sharded(model, n_max, shards, threads);

    // One streaming pass feeding every selection's accumulators.
    std::vector<EcfAccumulator> ecf_accs;
    std::vector<KsAccumulator> ks_accs;
    for (double T : grid) {
        const Selection sel =
            window_form ? Selection(WindowSelect{T, delta}) : Selection(BallSelect{T});
        const Scaling scaling = window_form ? Scaling::per_window : Scaling::per_orbit;
        ecf_accs.emplace_back(clt, sel, scaling, t_grid);
        ks_accs.emplace_back(clt, sel, scaling);
    }
    src.scan([&](const OrbitRecord& rec) {
        for (auto& acc : ecf_accs) acc.feed(rec);
        for (auto& acc : ks_accs) acc.feed(rec);
    });

    auto ecf_csv = open_csv(common, "ecf.csv", "T,t,re,im,gauss,abs_dev");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const EcfReport report = ecf_accs[i].finalize();
        for (const auto& p : report.points)
            ecf_csv << fmt_g17(grid[i]) << ',' << fmt_g17(p.t) << ',' << fmt_g17(p.phi.real())
                    << ',' << fmt_g17(p.phi.imag()) << ',' << fmt_g17(p.gauss) << ','
                    << fmt_g17(p.abs_dev) << '\n';
        std::printf("T=%-6s count=%-10llu ecf_max_dev=%.5f\n", fmt_g17(grid[i]).c_str(),
                    static_cast<unsigned long long>(report.count), report.max_abs_dev);
    }
    auto ks_csv = open_csv(common, "ks.csv", "T,n,ks");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const KsReport report = ks_accs[i].finalize();
        ks_csv << fmt_g17(report.T) << ',' << report.n << ',' << fmt_g17(report.ks) << '\n';
        std::printf("T=%-6s n=%-10llu ks=%.5f\n", fmt_g17(report.T).c_str(),
                    static_cast<unsigned long long>(report.n), report.ks);
    }
    return 0;
}

int run_check_mixing(const Common& common, const std::string& cache,
                     const std::string& lengths_spec, int probe_n_max, double lattice_tol) {
    std::vector<double> lengths;
    if (!lengths_spec.empty()) {
        lengths = parse_grid(lengths_spec);
    } else if (!cache.empty()) {
        for (const auto& rec : read_orbit_cache(cache)) lengths.push_back(rec.l);
    } else {
        const ShiftModel model = load_validated(common);
        enumerate_prime_orbits(model, probe_n_max,
                               [&](const OrbitRecord& rec, std::span<const int>) {
                                   lengths.push_back(rec.l);
                               });
    }
    const LatticeVerdict verdict = lattice_test(lengths, lattice_tol);
    auto csv = open_csv(common, "mixing.csv", "lattice,generator,iterations,tolerance");
    csv << (verdict.generator ? 1 : 0) << ','
        << (verdict.generator ? fmt_g17(*verdict.generator) : "") << ',' << verdict.iterations
        << ',' << fmt_g17(verdict.tolerance) << '\n';
    if (verdict.generator)
        std::printf("lattice: generator ~ %s over %zu lengths -> weak mixing FAILS\n",
                    fmt_g17(*verdict.generator).c_str(), lengths.size());
    else
        std::printf("non-lattice over %zu lengths -> weak mixing plausible\n", lengths.size());
    return 0;
}

int run_diophantine(const Common& common, const std::string& lengths_spec,
                    const std::string& words_spec, int max_terms, double quotient_bound) {
    double l1 = 0, l2 = 0, l3 = 0;
    if (!lengths_spec.empty()) {
        const auto ls = parse_grid(lengths_spec);
        if (ls.size() != 3) throw ValidationError("--lengths expects exactly three values");
        l1 = ls[0];
        l2 = ls[1];
        l3 = ls[2];
    } else if (!words_spec.empty()) {
        const ShiftModel model = load_validated(common);
        std::vector<std::string> words;
        std::stringstream ss(words_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) words.push_back(tok);
        if (words.size() != 3) throw ValidationError("--words expects exactly three words");
        l1 = cyclic_birkhoff(model, Word::parse(words[0])).l;
        l2 = cyclic_birkhoff(model, Word::parse(words[1])).l;
        l3 = cyclic_birkhoff(model, Word::parse(words[2])).l;
    } else {
        throw ValidationError("diophantine needs --lengths or --words");
    }
    const DiophantineReport report =
        diophantine_diagnostic(l1, l2, l3, max_terms, quotient_bound);
    auto csv = open_csv(common, "diophantine.csv", "k,a_k");
    for (std::size_t k = 0; k < report.quotients.size(); ++k)
        csv << k << ',' << report.quotients[k] << '\n';
    std::printf("beta=%s terms=%zu max_quotient=%lld%s%s error_bound=%.3g\n",
                fmt_g17(report.beta).c_str(), report.quotients.size(),
                static_cast<long long>(report.max_quotient),
                report.arithmetic_like ? " [arithmetic-like]" : "",
                report.liouville_suspect ? " [Liouville-suspect]" : "", report.error_bound);
    return 0;
}

int run_all(const Common& common, int shards, int threads) {
    const auto rows = accept::run_acceptance({shards, threads});
    fs::create_directories(common.out_dir);
    const fs::path path = fs::path(common.out_dir) / "report.csv";
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path.string() + "'");
    accept::write_report_csv(out, rows);
    int failures = 0;
    for (const auto& row : rows) {
        std::printf("[%s] %-42s measured=%.6g threshold=%.6g\n", row.pass ? "PASS" : "FAIL",
                    row.name.c_str(), row.measured, row.threshold);
        if (!row.pass) ++failures;
    }
    std::printf("%zu checks, %d failing -> %s\n", rows.size(), failures, path.string().c_str());
    return failures == 0 ? 0 : exit_checks_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic-orbit statistics for suspension flows over subshifts of finite type"};
    app.require_subcommand(1);

    Common common;

    auto* c_validate = app.add_subcommand("validate", "structural and primitivity checks");
    add_common(c_validate, common);

    auto* c_enum = app.add_subcommand("enumerate", "stream prime orbits into an orbit cache");
    add_common(c_enum, common);
    int n_max = 12, shards = 1, threads = 0;
    c_enum->add_option("--n-max,-n", n_max, "largest word length")->required();
    c_enum->add_option("--shards", shards, "shard count (prefix partition)");
    c_enum->add_option("--threads", threads, "worker threads (default: one per shard)");

    auto* c_pressure = app.add_subcommand("pressure", "flow pressure grid and CLT parameters");
    add_common(c_pressure, common);
    double theta_min = -1.0, theta_max = 1.0;
    int theta_steps = 21;
    c_pressure->add_option("--theta-min", theta_min, "grid start");
    c_pressure->add_option("--theta-max", theta_max, "grid end");
    c_pressure->add_option("--theta-steps", theta_steps, "grid points");

    auto* c_pole = app.add_subcommand("pole", "L-function pole s(t) over a t grid");
    add_common(c_pole, common);
    double t_max = 0.5, t_step = 0.05;
    bool centered = false;
    c_pole->add_option("--t-max", t_max, "largest t");
    c_pole->add_option("--t-step", t_step, "grid step");
    c_pole->add_flag("--centered", centered, "use the mean-centered weight");

    auto* c_strip = app.add_subcommand("strip", "scan |det(I-M)| over a rectangle in s");
    add_common(c_strip, common);
    double strip_t = 0.0, sigma_min = 0.3, sigma_max = 0.8, tau_max = 25.0;
    int sigma_steps = 6, tau_steps = 201;
    c_strip->add_option("--t", strip_t, "weight frequency t");
    c_strip->add_option("--sigma-min", sigma_min, "smallest Re(s)");
    c_strip->add_option("--sigma-max", sigma_max, "largest Re(s)");
    c_strip->add_option("--sigma-steps", sigma_steps, "Re(s) columns");
    c_strip->add_option("--tau-max", tau_max, "scan |Im(s)| up to this");
    c_strip->add_option("--tau-steps", tau_steps, "Im(s) rows (>= 4 per unit)");

    auto* c_lcheck = app.add_subcommand("lfunc-check", "L-function consistency battery");
    add_common(c_lcheck, common);
    int lcheck_n_max = 30;
    c_lcheck->add_option("--n-max", lcheck_n_max, "Euler-product truncation");

    auto* c_counts = app.add_subcommand("counts", "orbit counting and growth ratios");
    add_common(c_counts, common);
    std::string T_grid = "14,18,22";
    int c_shards = 1, c_threads = 0;
    c_counts->add_option("--T-grid", T_grid, "comma-separated T values");
    c_counts->add_option("--shards", c_shards, "shard count");
    c_counts->add_option("--threads", c_threads, "worker threads");

    auto* c_clt = app.add_subcommand("clt", "empirical characteristic function and KS distance");
    add_common(c_clt, common);
    std::string clt_grid = "14,18,22";
    double clt_t_max = 3.0, clt_t_step = 0.25, clt_delta = 0.0;
    bool window_form = false;
    int clt_shards = 1, clt_threads = 0;
    c_clt->add_option("--T-grid", clt_grid, "comma-separated T values");
    c_clt->add_option("--t-max", clt_t_max, "characteristic-function grid limit");
    c_clt->add_option("--t-step", clt_t_step, "characteristic-function grid step");
    c_clt->add_option("--delta", clt_delta,
                      "window width for --window (default: 1/h, one entropy-normalized unit)");
    c_clt->add_flag("--window", window_form,
                    "window (T, T+delta] with sqrt(T) scaling instead of the ball l <= T "
                    "with sqrt(l) scaling");
    c_clt->add_option("--shards", clt_shards, "shard count");
    c_clt->add_option("--threads", clt_threads, "worker threads");

    auto* c_mixing = app.add_subcommand("check-mixing", "lattice test on orbit lengths");
    add_common(c_mixing, common, false);
    std::string cache, lengths_spec;
    int probe_n_max = 12;
    double lattice_tol = 1e-9;
    c_mixing->add_option("--cache", cache, "orbit cache CSV to read lengths from");
    c_mixing->add_option("--lengths", lengths_spec, "inline comma-separated lengths");
    c_mixing->add_option("--n-max", probe_n_max, "enumeration depth when probing --model");
    c_mixing->add_option("--tol-lattice", lattice_tol, "Euclid termination tolerance");

    auto* c_dio =
        app.add_subcommand("diophantine", "continued-fraction diagnostic of a length ratio");
    add_common(c_dio, common, false);
    std::string dio_lengths, dio_words;
    int max_terms = 64;
    double quotient_bound = 1e6;
    c_dio->add_option("--lengths", dio_lengths, "three lengths l1,l2,l3");
    c_dio->add_option("--words", dio_words, "three orbit words resolved through --model");
    c_dio->add_option("--max-terms", max_terms, "expansion length cap");
    c_dio->add_option("--quotient-bound", quotient_bound, "Liouville-suspect threshold");

    auto* c_all = app.add_subcommand("run-all", "full verification battery -> report.csv");
    add_common(c_all, common, false);
    int all_shards = 1, all_threads = 0;
    c_all->add_option("--shards", all_shards, "shard count for enumeration-backed checks");
    c_all->add_option("--threads", all_threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_validate->parsed()) return run_validate(common);
        if (c_enum->parsed()) return run_enumerate(common, n_max, shards, threads);
        if (c_pressure->parsed()) return run_pressure(common, theta_min, theta_max, theta_steps);
        if (c_pole->parsed()) return run_pole(common, t_max, t_step, centered);
        if (c_strip->parsed())
            return run_strip(common, strip_t, sigma_min, sigma_max, sigma_steps, tau_max,
                             tau_steps);
        if (c_lcheck->parsed()) return run_lfunc_check(common, lcheck_n_max);
        if (c_counts->parsed()) return run_counts(common, T_grid, c_shards, c_threads);
        if (c_clt->parsed())
            return run_clt(common, clt_grid, clt_t_max, clt_t_step, clt_delta, window_form,
                           clt_shards, clt_threads);
        if (c_mixing->parsed())
            return run_check_mixing(common, cache, lengths_spec, probe_n_max, lattice_tol);
        if (c_dio->parsed())
            return run_diophantine(common, dio_lengths, dio_words, max_terms, quotient_bound);
        if (c_all->parsed()) return run_all(common, all_shards, all_threads);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
    return 0;
}
