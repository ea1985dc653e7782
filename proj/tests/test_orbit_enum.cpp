#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "orbitflow/orbit_enum.hpp"
#include "test_helpers.hpp"

using namespace orbitflow;
using testutil::brute_force_lyndon;
using testutil::full2_source_model;
using testutil::make_model;

namespace {

ShiftModel golden_mean() {
    return make_model(2, {1, 1, 1, 0}, {1, 1, 1, 0}, {0.5, -1, 0.25, 0}, "golden-mean");
}

struct Captured {
    OrbitRecord rec;
    Word word;
};

std::vector<Captured> capture(const ShiftModel& m, int n_max, const ShardSpec* shard = nullptr) {
    std::vector<Captured> out;
    auto sink = [&](const OrbitRecord& r, std::span<const int> w) {
        out.push_back({r, Word(std::vector<int>(w.begin(), w.end()))});
    };
    enumerate_prime_orbits(m, n_max, sink, shard);
    return out;
}

}  // namespace

TEST_CASE("full 2-shift counts match the brute-force oracle: 2,1,2,3,6,9") {
    const auto m = full2_source_model(1.0, 1.0, 1.0, -1.0);
    const auto summary = enumerate_prime_orbits(m, 6, [](const OrbitRecord&, std::span<const int>) {});
    const std::vector<std::uint64_t> expected{0, 2, 1, 2, 3, 6, 9};
    CHECK(summary.counts_per_n == expected);
    CHECK(summary.total == 23);

    // Oracle agreement on the full word sets up to n = 8.
    const auto oracle = brute_force_lyndon(m, 8);
    const auto got = capture(m, 8);
    REQUIRE(got.size() == oracle.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].word.states == oracle[i]);
}

TEST_CASE("golden-mean shift has orbits 0, 01, 001 up to n = 3") {
    const auto got = capture(golden_mean(), 3);
    REQUIRE(got.size() == 3);
    CHECK(got[0].word.str() == "0");
    CHECK(got[1].word.str() == "01");
    CHECK(got[2].word.str() == "001");

    const auto oracle = brute_force_lyndon(golden_mean(), 9);
    const auto deep = capture(golden_mean(), 9);
    REQUIRE(deep.size() == oracle.size());
    for (std::size_t i = 0; i < deep.size(); ++i) CHECK(deep[i].word.states == oracle[i]);
}

TEST_CASE("every emitted word is Lyndon and admissible, lengths bounded below") {
    const auto m = golden_mean();
    const double r_min = m.r_min();
    for (const auto& c : capture(m, 10)) {
        CHECK(cyclically_admissible(m, c.word));
        const auto canon = canonical_form(c.word);
        CHECK(canon.multiplicity == 1);
        CHECK(canon.lyndon_representative.states == c.word.states);
        CHECK(c.rec.l >= c.rec.n * r_min - 1e-12);
        CHECK(c.rec.n == c.word.size());
    }
}

TEST_CASE("records arrive in nondecreasing n, lexicographic within each n") {
    const auto got = capture(full2_source_model(1.0, 2.0, 1.0, -1.0), 9);
    for (std::size_t i = 1; i < got.size(); ++i) {
        CHECK(got[i].rec.n >= got[i - 1].rec.n);
        if (got[i].rec.n == got[i - 1].rec.n) CHECK(got[i - 1].word < got[i].word);
    }
}

TEST_CASE("shard prefixes 0 and 1 partition the orbit set") {
    const auto m = full2_source_model(1.0, 1.4142135623730951, 1.0, -1.0);
    const auto whole = capture(m, 8);

    ShardSpec shard0{{Word::parse("0")}};
    ShardSpec shard1{{Word::parse("1")}};
    const auto part0 = capture(m, 8, &shard0);
    const auto part1 = capture(m, 8, &shard1);

    std::set<std::vector<int>> whole_set, union_set;
    for (const auto& c : whole) whole_set.insert(c.word.states);
    for (const auto& c : part0) union_set.insert(c.word.states);
    for (const auto& c : part1) union_set.insert(c.word.states);
    CHECK(part0.size() + part1.size() == whole.size());
    CHECK(union_set == whole_set);
}

TEST_CASE("sharded enumeration replays the exact unsharded stream") {
    const auto m = golden_mean();
    const auto plain = capture(m, 12);
    for (int shards : {2, 3, 8}) {
        std::vector<Captured> merged;
        auto sink = [&](const OrbitRecord& r, std::span<const int> w) {
            merged.push_back({r, Word(std::vector<int>(w.begin(), w.end()))});
        };
        const auto summary = enumerate_sharded(m, 12, OrbitSinkRef::of(sink), shards, 2);
        REQUIRE(merged.size() == plain.size());
        for (std::size_t i = 0; i < merged.size(); ++i) {
            CHECK(merged[i].word.states == plain[i].word.states);
            // bitwise equality: same additions in the same order
            CHECK(merged[i].rec.l == plain[i].rec.l);
            CHECK(merged[i].rec.w == plain[i].rec.w);
        }
        CHECK(summary.total == plain.size());
    }
}

TEST_CASE("enumeration is deterministic across repeated runs") {
    const auto m = full2_source_model(1.0, 1.4142135623730951, 1.0, -1.0);
    const auto a = capture(m, 10);
    const auto b = capture(m, 10);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].word.states == b[i].word.states);
        CHECK(a[i].rec.l == b[i].rec.l);
        CHECK(a[i].rec.w == b[i].rec.w);
    }
}

TEST_CASE("necklace identity holds exactly") {
    const auto full2 = full2_source_model(1.0, 1.0, 1.0, -1.0);
    const auto rows = prime_count_check(full2, 12);
    for (const auto& row : rows) CHECK(row.ok);
    // n = 4: 1*2 + 2*1 + 4*3 = 16 = tr(A^4)
    CHECK(rows[3].trace == 16);
    CHECK(rows[3].prime_count == 3);
    // n = 1: P_1 equals the number of self-loops
    CHECK(rows[0].prime_count == rows[0].trace);

    const auto gm_rows = prime_count_check(golden_mean(), 12);
    for (const auto& row : gm_rows) CHECK(row.ok);
    // n = 3: 1*1 + 3*1 = 4 = tr(A^3), A^3 from the oracle
    Eigen::MatrixXi a3 = golden_mean().adjacency * golden_mean().adjacency * golden_mean().adjacency;
    CHECK(gm_rows[2].trace == static_cast<std::uint64_t>(a3.trace()));
    CHECK(gm_rows[2].trace == 4);
}

TEST_CASE("oversized n_max fails before emission") {
    const auto m = full2_source_model(1.0, 1.0, 1.0, -1.0);
    CHECK_THROWS_AS(enumerate_prime_orbits(m, 80, [](const OrbitRecord&, std::span<const int>) {}),
                    ValidationError);
}

TEST_CASE("inadmissible shard prefix is rejected") {
    ShardSpec bad{{Word::parse("11")}};
    CHECK_THROWS_AS(capture(golden_mean(), 4, &bad), ValidationError);
}

TEST_CASE("summaries merge componentwise") {
    EnumSummary a;
    a.counts_per_n = {0, 2, 1};
    a.total = 3;
    EnumSummary b;
    b.counts_per_n = {0, 1, 1, 5};
    b.total = 7;
    a.merge(b);
    CHECK(a.counts_per_n == std::vector<std::uint64_t>{0, 3, 2, 5});
    CHECK(a.total == 10);
}

TEST_CASE("orbit source completeness accounting") {
    const auto m = full2_source_model(1.0, 1.4142135623730951, 1.0, -1.0);
    const auto src = model_source(m, 10);
    CHECK(src.required_n(9.9) == 9);
    CHECK(src.required_n(10.0) == 10);
    CHECK_NOTHROW(src.require_complete(10.6, "test"));  // length 10.6 still only needs n = 10
    CHECK_THROWS_AS(src.require_complete(11.2, "test"), IncompleteSourceError);
    try {
        src.require_complete(14.0, "test");
    } catch (const IncompleteSourceError& e) {
        CHECK(e.required_n_max == 14);
    }
}
