#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbitflow/model.hpp"
#include "test_helpers.hpp"

using namespace orbitflow;
using testutil::full2_source_model;
using testutil::make_model;

namespace {

const double kSqrt2 = 1.4142135623730951;

ShiftModel m_gold() { return full2_source_model(1.0, kSqrt2, 1.0, -1.0, "m-gold"); }

}  // namespace

TEST_CASE("full 2-shift is primitive with period 1") {
    const auto m = full2_source_model(1.0, 1.0, 1.0, -1.0);
    const auto report = validate_model(m);
    CHECK(report.primitive);
    CHECK(report.period == 1);
    CHECK(report.r_min == 1.0);
}

TEST_CASE("bipartite cycle is rejected for CLT runs with period 2") {
    const auto m = make_model(2, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 1, -1, 0});
    const auto report = validate_model(m);
    CHECK_FALSE(report.primitive);
    CHECK(report.period == 2);
    bool warned = false;
    for (const auto& w : report.warnings)
        if (w.find("rejected for CLT") != std::string::npos) warned = true;
    CHECK(warned);
}

TEST_CASE("golden-mean shift is primitive: oracle checks A^2 and A^3 entrywise") {
    const auto m = make_model(2, {1, 1, 1, 0}, {1, 1, 1, 0}, {0.5, -1, 0.25, 0});
    // Independent oracle: A^2 already has every entry positive.
    Eigen::MatrixXi a2 = m.adjacency * m.adjacency;
    Eigen::MatrixXi a3 = a2 * m.adjacency;
    CHECK(a2.minCoeff() > 0);
    CHECK(a3.minCoeff() > 0);
    CHECK(validate_model(m).primitive);
}

TEST_CASE("validation errors: empty edges, bad roof, forbidden-edge data") {
    auto empty = make_model(2, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0});
    CHECK_THROWS_AS(validate_model(empty), ValidationError);

    auto bad_roof = full2_source_model(1.0, 1.0, 1.0, -1.0);
    bad_roof.roof(0, 1) = -1.0;
    CHECK_THROWS_WITH_AS(validate_model(bad_roof),
                         doctest::Contains("roof must be positive"), ValidationError);

    auto stray = make_model(2, {1, 1, 1, 0}, {1, 1, 1, 0}, {0.5, -1, 0.25, 0});
    stray.weight(1, 1) = 2.0;  // weight on forbidden edge
    CHECK_THROWS_WITH_AS(validate_model(stray), doctest::Contains("forbidden edge"),
                         ValidationError);

    auto tiny = make_model(1, {1}, {1}, {0});
    CHECK_THROWS_AS(validate_model(tiny), ValidationError);
}

TEST_CASE("arithmetic length spectrum warning on integer roofs") {
    const auto arith = full2_source_model(1.0, 2.0, 1.0, -1.0, "m-arith");
    const auto report = validate_model(arith);
    bool warned = false;
    for (const auto& w : report.warnings)
        if (w.find("arithmetic length spectrum suspected") != std::string::npos) warned = true;
    CHECK(warned);

    const auto gold = m_gold();
    for (const auto& w : validate_model(gold).warnings)
        CHECK(w.find("arithmetic length spectrum") == std::string::npos);
}

TEST_CASE("primitivity is invariant under state permutation") {
    const auto m = make_model(3, {0, 1, 0, 0, 0, 1, 1, 1, 0}, {0, 1, 0, 0, 0, 1, 1, 1, 0},
                              {0, 1, 0, 0, 0, 1, 1, 1, 0});
    // permute states by the cycle 0->1->2->0
    const int perm[3] = {1, 2, 0};
    auto pm = m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            pm.adjacency(perm[i], perm[j]) = m.adjacency(i, j);
            pm.roof(perm[i], perm[j]) = m.roof(i, j);
            pm.weight(perm[i], perm[j]) = m.weight(i, j);
        }
    CHECK(validate_model(m).primitive == validate_model(pm).primitive);
}

TEST_CASE("cyclic Birkhoff sums on m-gold") {
    const auto m = m_gold();
    auto single = cyclic_birkhoff(m, Word::parse("0"));
    CHECK(single.l == 1.0);
    CHECK(single.w == 1.0);

    auto pair = cyclic_birkhoff(m, Word::parse("01"));
    CHECK(pair.l == doctest::Approx(1.0 + kSqrt2).epsilon(1e-15));
    CHECK(pair.w == 0.0);

    auto quad = cyclic_birkhoff(m, Word::parse("0011"));
    CHECK(quad.l == doctest::Approx(2.0 + 2.0 * kSqrt2).epsilon(1e-15));
    CHECK(quad.w == 0.0);
}

TEST_CASE("cyclic Birkhoff rejects inadmissible words naming the edge") {
    const auto m = make_model(2, {1, 1, 1, 0}, {1, 1, 1, 0}, {0.5, -1, 0.25, 0});
    CHECK_THROWS_WITH_AS(cyclic_birkhoff(m, Word::parse("011")),
                         doctest::Contains("edge 1->1"), ValidationError);
    CHECK_THROWS_AS(cyclic_birkhoff(m, Word()), ValidationError);
}

TEST_CASE("cyclic Birkhoff is rotation invariant and multiplies under repetition") {
    const auto m = m_gold();
    const Word base = Word::parse("00110101");
    const auto ref = cyclic_birkhoff(m, base);
    for (int r = 1; r < base.size(); ++r) {
        std::vector<int> rot;
        for (int i = 0; i < base.size(); ++i) rot.push_back(base[(r + i) % base.size()]);
        const auto got = cyclic_birkhoff(m, Word(rot));
        CHECK(got.l == doctest::Approx(ref.l).epsilon(1e-15));
        CHECK(got.w == doctest::Approx(ref.w).epsilon(1e-15));
    }
    std::vector<int> doubled = base.states;
    doubled.insert(doubled.end(), base.states.begin(), base.states.end());
    const auto twice = cyclic_birkhoff(m, Word(doubled));
    CHECK(twice.l == doctest::Approx(2 * ref.l).epsilon(1e-15));
    CHECK(twice.w == doctest::Approx(2 * ref.w).epsilon(1e-15));
}

TEST_CASE("canonical form splits powers and rotations") {
    auto sq = canonical_form(Word::parse("0101"));
    CHECK(sq.lyndon_representative.str() == "01");
    CHECK(sq.root_length == 2);
    CHECK(sq.multiplicity == 2);

    auto ap = canonical_form(Word::parse("011"));
    CHECK(ap.lyndon_representative.str() == "011");
    CHECK(ap.root_length == 3);
    CHECK(ap.multiplicity == 1);

    auto rot = canonical_form(Word::parse("110"));
    CHECK(rot.lyndon_representative.str() == "011");
    CHECK(rot.root_length == 3);
    CHECK(rot.multiplicity == 1);

    CHECK(canonical_form(Word::parse("0")).multiplicity == 1);
    CHECK(canonical_form(Word::parse("0000")).multiplicity == 4);
}

TEST_CASE("centered model shifts per-orbit weights by mean times length") {
    const auto m = m_gold();
    const double c = 0.375;
    const auto cm = centered_model(m, c);
    const Word word = Word::parse("0011");
    const auto raw = cyclic_birkhoff(m, word);
    const auto cen = cyclic_birkhoff(cm, word);
    CHECK(cen.l == raw.l);
    CHECK(cen.w == doctest::Approx(raw.w - c * raw.l).epsilon(1e-15));
}

TEST_CASE("word parsing round-trips") {
    CHECK(Word::parse("0110").str() == "0110");
    CHECK(Word::parse("3,12,5").str() == "3,12,5");
    CHECK_THROWS_AS(Word::parse("01a"), ValidationError);
}
