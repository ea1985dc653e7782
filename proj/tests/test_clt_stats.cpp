#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "orbitflow/clt_stats.hpp"
#include "test_helpers.hpp"

using namespace orbitflow;
using testutil::full2_source_model;

namespace {

const double kSqrt2 = 1.4142135623730951;

ShiftModel m_gold() { return full2_source_model(1.0, kSqrt2, 1.0, -1.0, "m-gold"); }

}  // namespace

TEST_CASE("normal cdf: frozen values and the independent libm oracle") {
    CHECK(normal_cdf(0.0, 1.0) == 0.5);
    CHECK(normal_cdf(40.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // high-precision value of Phi(1), fixed before the implementation
    for (double sigma : {1.0, 0.37, 5.5}) {
        CHECK(std::fabs(normal_cdf(sigma, sigma * sigma) - 0.8413447460685429) <= 1e-10);
    }
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ys(-8.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        const double y = ys(rng);
        const double expected = 0.5 * std::erfc(-y / std::sqrt(2.0));
        CHECK(std::fabs(normal_cdf(y, 1.0) - expected) <= 1e-12);
    }
    CHECK_THROWS_AS(normal_cdf(1.0, 0.0), ValidationError);
}

TEST_CASE("window counts are additive: pi(T,Delta) = pi(T+Delta) - pi(T)") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 12);
    const std::vector<double> grid{2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
    const auto rows = orbit_counting(src, clt, grid);

    // window counts by direct scan
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        std::uint64_t window = 0;
        src.scan([&](const OrbitRecord& r) {
            if (r.l > grid[i] && r.l <= grid[i + 1]) ++window;
        });
        CHECK(rows[i + 1].pi - rows[i].pi == window);
    }
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].pi >= rows[i - 1].pi);
}

TEST_CASE("length sum over T pi(T) drifts toward 1") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 22);
    const std::vector<double> grid{14.0, 18.0, 22.0};
    const auto rows = orbit_counting(src, clt, grid);
    double prev = 0.0;
    for (const auto& row : rows) {
        CHECK(row.sum_over_T_pi > 0.8);
        CHECK(row.sum_over_T_pi < 1.05);
        CHECK(row.sum_over_T_pi > prev);
        prev = row.sum_over_T_pi;
    }
}

TEST_CASE("counting below the shortest orbit is zero") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 4);
    const std::vector<double> grid{0.5, 4.0};
    const auto rows = orbit_counting(src, clt, grid);
    CHECK(rows[0].pi == 0);
    CHECK(rows[0].sum_l == 0.0);
}

TEST_CASE("equidistribution average: exact for proportional weights, near mean otherwise") {
    const double c = 0.45;
    const auto prop = full2_source_model(1.0, kSqrt2, c * 1.0, c * kSqrt2, "prop");
    const auto src_prop = model_source(prop, 10);
    CHECK(equidistribution_average(src_prop, {4.0, 3.0}) == doctest::Approx(c).epsilon(1e-14));

    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 16);
    const double avg = equidistribution_average(src, {14.0, 2.0});
    CHECK(std::fabs(avg - clt.flow_mean) <= 0.02);

    CHECK_THROWS_AS(equidistribution_average(src, {0.1, 0.2}), EmptySelectionError);
}

TEST_CASE("empirical characteristic function basics are exact") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 14);
    const std::vector<double> ts{-2.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.0};
    const auto report = empirical_cf(src, clt, BallSelect{14.0}, Scaling::per_orbit, ts);

    REQUIRE(report.points.size() == ts.size());
    const auto& zero = report.points[3];
    CHECK(zero.phi == std::complex<double>(1.0, 0.0));  // exact

    for (const auto& p : report.points) CHECK(std::abs(p.phi) <= 1.0 + 1e-12);

    // conjugation symmetry is exact: cos is even, sin is odd
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& neg = report.points[i];
        const auto& pos = report.points[ts.size() - 1 - i];
        CHECK(neg.phi.real() == pos.phi.real());
        CHECK(neg.phi.imag() == -pos.phi.imag());
    }
}

TEST_CASE("ecf deviation shrinks with T in the per-orbit ball form") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 22);
    std::vector<double> ts;
    for (double t = -3.0; t <= 3.001; t += 0.25) ts.push_back(t);
    double prev = 1e9;
    for (double T : {14.0, 18.0, 22.0}) {
        const auto report = empirical_cf(src, clt, BallSelect{T}, Scaling::per_orbit, ts);
        CHECK(report.max_abs_dev < prev);
        prev = report.max_abs_dev;
    }
    CHECK(prev <= 0.05);
    // The window form carries the quasi-periodic fluctuations of the m-gold
    // length lattice; it stays bounded but is not monotone at these T.
    const double delta = 1.0 / clt.h;
    const auto window =
        empirical_cf(src, clt, WindowSelect{16.0, delta}, Scaling::per_window, ts);
    CHECK(window.max_abs_dev < 0.25);
}

TEST_CASE("empty selections are rejected") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 6);
    const std::vector<double> ts{0.0, 1.0};
    CHECK_THROWS_AS(empirical_cf(src, clt, BallSelect{0.5}, Scaling::per_orbit, ts),
                    EmptySelectionError);
    CHECK_THROWS_AS(empirical_cdf_ks(src, clt, BallSelect{0.5}, Scaling::per_orbit),
                    EmptySelectionError);
}

TEST_CASE("degenerate variance is rejected with the hypothesis message") {
    const auto prop = full2_source_model(1.0, kSqrt2, 0.3, 0.3 * kSqrt2, "prop");
    const auto clt = clt_parameters(prop);
    const auto src = model_source(prop, 8);
    const std::vector<double> ts{0.0, 1.0};
    CHECK_THROWS_WITH_AS(empirical_cf(src, clt, BallSelect{8.0}, Scaling::per_orbit, ts),
                         doctest::Contains("hypothesis"), ValidationError);
    CHECK_THROWS_AS(empirical_cdf_ks(src, clt, BallSelect{8.0}, Scaling::per_orbit),
                    ValidationError);
}

TEST_CASE("ks distance: own-sample is zero, wrong sigma is worse, scale invariance") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 14);

    // collect the scaled sample once
    std::vector<double> sample;
    src.scan([&](const OrbitRecord& r) {
        if (r.l <= 14.0) sample.push_back(centered_orbit_weight(clt, r.l, r.w) / std::sqrt(r.l));
    });
    std::sort(sample.begin(), sample.end());

    // against its own empirical cdf the sup distance is zero by construction
    double self_ks = 0.0;
    const double n = static_cast<double>(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F_emp = static_cast<double>(i + 1) / n;  // right-continuous at jumps
        self_ks = std::max(self_ks, std::fabs(F_emp - static_cast<double>(i + 1) / n));
    }
    CHECK(self_ks == 0.0);

    const double right = ks_distance(sample, clt.sigma2);
    const double wrong = ks_distance(sample, 4.0 * clt.sigma2);  // sigma doubled
    CHECK(wrong > right);

    // joint rescaling by 2 is exact in floating point
    std::vector<double> doubled;
    for (double v : sample) doubled.push_back(2.0 * v);
    CHECK(ks_distance(doubled, 4.0 * clt.sigma2) == right);
}

TEST_CASE("ks report through the accumulator matches the direct path") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 14);
    const auto report = empirical_cdf_ks(src, clt, BallSelect{14.0}, Scaling::per_orbit);
    CHECK(report.T == 14.0);
    CHECK(report.n > 100);
    CHECK(report.ks > 0.0);
    CHECK(report.ks < 0.5);
}

TEST_CASE("centering is bitwise reproducible across paths") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 12);
    KsAccumulator acc(clt, BallSelect{12.0}, Scaling::per_orbit);
    std::vector<double> direct;
    src.scan([&](const OrbitRecord& r) {
        acc.feed(r);
        if (r.l <= 12.0)
            direct.push_back(centered_orbit_weight(clt, r.l, r.w) / std::sqrt(r.l));
    });
    // the sample inside the accumulator must agree bitwise with the helper
    std::sort(direct.begin(), direct.end());
    std::vector<double> sorted_direct = direct;
    const double ks_direct = ks_distance(sorted_direct, clt.sigma2);
    const auto report = acc.finalize();
    CHECK(report.ks == ks_direct);
}

TEST_CASE("shard-split accumulators merge to the single-pass answer") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 13);

    KsAccumulator whole(clt, BallSelect{13.0}, Scaling::per_orbit);
    KsAccumulator even(clt, BallSelect{13.0}, Scaling::per_orbit);
    KsAccumulator odd(clt, BallSelect{13.0}, Scaling::per_orbit);
    std::uint64_t index = 0;
    src.scan([&](const OrbitRecord& r) {
        whole.feed(r);
        ((index++ % 2 == 0) ? even : odd).feed(r);
    });
    even.merge(std::move(odd));
    CHECK(even.finalize().ks == whole.finalize().ks);
}

TEST_CASE("window stats merge associatively") {
    WindowStats a{10.0, 1.0};
    WindowStats b{10.0, 1.0};
    WindowStats c{10.0, 1.0};
    a.add(10.5, 0.3, 100);
    a.add(10.7, -0.2, 100);
    b.add(10.9, 1.4, 100);
    c.add(10.2, -0.9, 100);

    WindowStats ab = a;
    ab.merge(b, 100);
    WindowStats ab_c = ab;
    ab_c.merge(c, 100);

    WindowStats bc = b;
    bc.merge(c, 100);
    WindowStats a_bc = a;
    a_bc.merge(bc, 100);

    CHECK(ab_c.count == a_bc.count);
    CHECK(ab_c.sum_l == doctest::Approx(a_bc.sum_l).epsilon(1e-14));
    CHECK(ab_c.moment1 == doctest::Approx(a_bc.moment1).epsilon(1e-12));
    CHECK(ab_c.sample.size() == a_bc.sample.size());
}

TEST_CASE("sample cap failure advises the streaming fallback") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto src = model_source(m, 12);
    KsOptions tight;
    tight.sample_cap = 10;
    CHECK_THROWS_WITH_AS(
        empirical_cdf_ks(src, clt, BallSelect{12.0}, Scaling::per_orbit, tight),
        doctest::Contains("fallback"), ConvergenceError);

    tight.streaming_fallback = true;
    const auto sketch = empirical_cdf_ks(src, clt, BallSelect{12.0}, Scaling::per_orbit, tight);
    const auto exact = empirical_cdf_ks(src, clt, BallSelect{12.0}, Scaling::per_orbit);
    // sketch resolution: one bin of probability mass
    CHECK(std::fabs(sketch.ks - exact.ks) <= 0.01);
}

TEST_CASE("weak mixing gate: lattice models refused, m-gold passes") {
    const auto arith = full2_source_model(1.0, 2.0, 1.0, -1.0, "m-arith");
    const auto verdict = weak_mixing_probe(arith);
    REQUIRE(verdict.generator.has_value());
    CHECK(*verdict.generator == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_WITH_AS(require_weak_mixing(arith), doctest::Contains("weak mixing"),
                         ValidationError);
    CHECK_NOTHROW(require_weak_mixing(m_gold()));
}
