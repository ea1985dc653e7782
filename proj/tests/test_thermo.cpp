#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbitflow/thermo.hpp"
#include "test_helpers.hpp"

using namespace orbitflow;
using testutil::bisect;
using testutil::full2_source_model;
using testutil::make_model;

namespace {

const double kSqrt2 = 1.4142135623730951;
const double kLogPhi = 0.48121182505960347;  // log((1+sqrt 5)/2)

ShiftModel m_gold() { return full2_source_model(1.0, kSqrt2, 1.0, -1.0, "m-gold"); }
ShiftModel coin_flip() { return full2_source_model(1.0, 1.0, 1.0, -1.0, "coin-flip"); }
ShiftModel m_arith() { return full2_source_model(1.0, 2.0, 1.0, -1.0, "m-arith"); }

EdgeFunction zero_g(const ShiftModel& m) {
    return Eigen::MatrixXd::Zero(m.state_count, m.state_count);
}

}  // namespace

TEST_CASE("pressure of zero is log k on the full shift") {
    const auto m = coin_flip();
    const auto rep = base_pressure(m, zero_g(m));
    CHECK(rep.P == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(rep.residual <= 1e-12);
}

TEST_CASE("pressure of zero on the golden-mean shift is log phi") {
    const auto m = make_model(2, {1, 1, 1, 0}, {1, 1, 1, 0}, {0.5, -1, 0.25, 0});
    const auto rep = base_pressure(m, zero_g(m));
    // oracle: positive root of lambda^2 - lambda - 1
    const double phi = bisect([](double x) { return x * x - x - 1.0; }, 1.0, 2.0);
    CHECK(rep.P == doctest::Approx(std::log(phi)).epsilon(1e-13));
    CHECK(rep.P == doctest::Approx(kLogPhi).epsilon(1e-13));
}

TEST_CASE("edge measure is a shift-stationary probability") {
    const auto m = make_model(2, {1, 1, 1, 0}, {1, 1, 1, 0}, {0.5, -1, 0.25, 0});
    EdgeFunction g = zero_g(m);
    g(0, 1) = 0.3;
    g(1, 0) = -0.2;
    const auto rep = base_pressure(m, g);
    CHECK(rep.edge_measure.sum() == doctest::Approx(1.0).epsilon(1e-13));
    for (int i = 0; i < 2; ++i)
        CHECK(rep.edge_measure.row(i).sum() ==
              doctest::Approx(rep.edge_measure.col(i).sum()).epsilon(1e-12));
    CHECK(rep.left.minCoeff() > 0);
    CHECK(rep.right.minCoeff() > 0);
    CHECK(rep.left.dot(rep.right) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("base pressure shifts by additive constants") {
    const auto m = m_gold();
    const auto base = base_pressure(m, zero_g(m));
    for (double c : {-1.5, 0.25, 2.0}) {
        EdgeFunction g = zero_g(m);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (m.edge(i, j)) g(i, j) = c;
        const auto shifted = base_pressure(m, g);
        CHECK(shifted.P == doctest::Approx(base.P + c).epsilon(1e-13));
    }
}

TEST_CASE("m-arith entropy matches the bisection oracle") {
    // oracle: root of 1 - e^{-h} - e^{-2h} = 0, independent of the eigen path
    const double root =
        bisect([](double h) { return 1.0 - std::exp(-h) - std::exp(-2.0 * h); }, 0.1, 1.0);
    const double h = flow_pressure(m_arith(), 0.0);
    CHECK(h == doctest::Approx(root).epsilon(1e-12));
    CHECK(h == doctest::Approx(kLogPhi).epsilon(1e-12));
}

TEST_CASE("coin-flip flow pressure has the closed form log(2 cosh theta)") {
    const auto m = coin_flip();
    for (double theta : {0.0, 0.17, -0.6, 1.3}) {
        const double p = flow_pressure(m, theta);
        CHECK(p == doctest::Approx(std::log(2.0 * std::cosh(theta))).epsilon(1e-13));
    }
}

TEST_CASE("flow pressure shift identity: F + c*r adds c*theta") {
    const auto m = m_gold();
    const double c = 0.7;
    auto shifted = m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (m.edge(i, j)) shifted.weight(i, j) += c * m.roof(i, j);
    for (double theta : {0.0, 0.21, -0.4}) {
        CHECK(flow_pressure(shifted, theta) ==
              doctest::Approx(flow_pressure(m, theta) + c * theta).epsilon(1e-11));
    }
}

TEST_CASE("flow pressure is increasing in theta for positive weights") {
    const auto m = full2_source_model(1.0, kSqrt2, 0.5, 1.5, "positive-F");
    double prev = flow_pressure(m, -0.5);
    for (double theta = -0.25; theta <= 1.01; theta += 0.25) {
        const double p = flow_pressure(m, theta);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("entropy is positive for primitive models with at least two orbits") {
    CHECK(flow_pressure(m_gold(), 0.0) > 0.0);
    CHECK(flow_pressure(make_model(2, {1, 1, 1, 0}, {1, 1, 1, 0}, {0.5, -1, 0.25, 0}), 0.0) > 0.0);
}

TEST_CASE("coin-flip CLT parameters: h = log 2, mean 0, sigma2 = 1") {
    const auto clt = clt_parameters(coin_flip());
    CHECK(std::fabs(clt.h - std::log(2.0)) <= 1e-10);
    CHECK(std::fabs(clt.flow_mean) <= 1e-10);
    CHECK(std::fabs(clt.sigma2 - 1.0) <= 1e-8);
    CHECK_FALSE(clt.degenerate);
}

TEST_CASE("weight proportional to roof is degenerate with zero variance") {
    const double c = 0.8;
    const auto m = full2_source_model(1.0, kSqrt2, c * 1.0, c * kSqrt2, "cohomologous");
    const auto clt = clt_parameters(m);
    CHECK(clt.degenerate);
    CHECK(clt.sigma2 == 0.0);
    CHECK(clt.flow_mean == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("m-gold has positive variance; regression baseline") {
    const auto clt = clt_parameters(m_gold());
    CHECK(clt.sigma2 > 0.0);
    // Frozen from the first verified run; guards against numerical drift.
    CHECK(clt.h == doctest::Approx(0.58018827266922124).epsilon(1e-12));
    CHECK(clt.flow_mean == doctest::Approx(0.10114345591778495).epsilon(1e-10));
    CHECK(clt.sigma2 == doctest::Approx(0.86897832059692104).epsilon(1e-8));
}

TEST_CASE("adding c*r to the weight shifts the mean and keeps sigma2") {
    const auto m = m_gold();
    const auto base = clt_parameters(m);
    const double c = 1.3;
    auto shifted = m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (m.edge(i, j)) shifted.weight(i, j) += c * m.roof(i, j);
    const auto moved = clt_parameters(shifted);
    CHECK(moved.flow_mean == doctest::Approx(base.flow_mean + c).epsilon(1e-10));
    CHECK(std::fabs(moved.sigma2 - base.sigma2) <= 1e-8);
}

TEST_CASE("centered weight has vanishing flow mean") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const auto centered = centered_model(m, clt);
    const auto cen_clt = clt_parameters(centered);
    CHECK(std::fabs(cen_clt.flow_mean) <= 1e-12);
    CHECK(cen_clt.sigma2 == doctest::Approx(clt.sigma2).epsilon(1e-8));
}

TEST_CASE("flow mean equals the Gibbs-measure ratio of weight to roof") {
    const auto m = m_gold();
    const auto clt = clt_parameters(m);
    const double h = clt.h;
    EdgeFunction g = zero_g(m);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (m.edge(i, j)) g(i, j) = -h * m.roof(i, j);
    const auto rep = base_pressure(m, g);
    CHECK(std::fabs(rep.P) <= 1e-12);
    const double ratio = edge_integral(rep.edge_measure, m.weight) /
                         edge_integral(rep.edge_measure, m.roof);
    CHECK(clt.flow_mean == doctest::Approx(ratio).epsilon(1e-12));
}
