#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "orbitflow/model.hpp"

namespace orbitflow {

// One prime periodic orbit: word length, time length, observable weight.
struct OrbitRecord {
    int n = 0;
    double l = 0.0;
    double w = 0.0;
};

// Shard filter: a prime orbit with canonical word W belongs to prefix p iff
// the periodic extension WWW... starts with p. For |W| >= |p| this is plain
// "starts with"; shorter words wrap around. Any set of admissible words of
// one common depth therefore partitions the orbit set exactly.
struct ShardSpec {
    std::vector<Word> prefixes;
};

struct EnumSummary {
    std::vector<std::uint64_t> counts_per_n;  // index 0 unused, 1..n_max
    std::uint64_t total = 0;
    std::optional<std::vector<Word>> shard_spec;

    void merge(const EnumSummary& other);
};

// Non-owning record consumer. The word span is only valid for the duration
// of the call and always holds the canonical (Lyndon) representative.
// Sinks that ignore words can say so; shard workers then skip buffering them.
struct OrbitSinkRef {
    void* ctx = nullptr;
    void (*fn)(void*, const OrbitRecord&, std::span<const int>) = nullptr;
    bool wants_words = true;
    void operator()(const OrbitRecord& rec, std::span<const int> word) const {
        fn(ctx, rec, word);
    }

    template <typename F>
    static OrbitSinkRef of(F& f, bool wants_words = true) {
        return OrbitSinkRef{&f,
                            [](void* c, const OrbitRecord& r, std::span<const int> w) {
                                (*static_cast<F*>(c))(r, w);
                            },
                            wants_words};
    }
};

// Streams every admissible Lyndon word of length 1..n_max exactly once, in
// (n, word) lexicographic order, with its cyclic roof/weight sums. Memory
// stays O(n_max + k^2); the orbit set is never materialized. Generation is
// the necklace-prefix recursion with admissibility pruning: forbidden edges
// cut subtrees immediately and the wrap edge is checked last, at emission.
EnumSummary enumerate_prime_orbits(const ShiftModel& model, int n_max,
                                   OrbitSinkRef sink,
                                   const ShardSpec* shard = nullptr);

template <typename F>
EnumSummary enumerate_prime_orbits(const ShiftModel& model, int n_max, F&& f,
                                   const ShardSpec* shard = nullptr) {
    auto& ref = f;
    return enumerate_prime_orbits(model, n_max, OrbitSinkRef::of(ref), shard);
}

// All admissible words of the smallest depth d with at least min_count of
// them, lexicographically sorted. Used as a shard partition.
std::vector<Word> shard_prefixes(const ShiftModel& model, int min_count);

// Shard-parallel enumeration that replays records to the sink in exactly
// the order of the unsharded stream, so downstream accumulations are
// bit-identical for every shard count. Workers fill per-prefix buffers one
// word length at a time; the caller's sink sees them flushed in prefix
// order. shard_count <= 1 falls back to the plain streaming path.
EnumSummary enumerate_sharded(const ShiftModel& model, int n_max,
                              OrbitSinkRef sink, int shard_count,
                              int threads = 0);

template <typename F>
EnumSummary enumerate_sharded(const ShiftModel& model, int n_max, F&& f,
                              int shard_count, int threads = 0) {
    auto& ref = f;
    return enumerate_sharded(model, n_max, OrbitSinkRef::of(ref), shard_count, threads);
}

// Classical necklace identity sum_{d|n} d*P_d = tr(A^n), exact in 64-bit
// integers with overflow checks. P_d comes from the enumerator, the trace
// from integer matrix powers, so the two sides are independent.
struct PrimeCountRow {
    int n = 0;
    std::uint64_t prime_count = 0;
    std::uint64_t trace = 0;
    bool ok = false;
};

std::vector<PrimeCountRow> prime_count_check(const ShiftModel& model, int n_max);

// Replayable stream of orbit records in canonical order. scan() may be
// called repeatedly; r_min and n_max let consumers decide completeness
// (all orbits with l <= T are present iff n_max >= floor(T / r_min)).
struct OrbitSource {
    int n_max = 0;
    double r_min = 0.0;
    std::function<void(const std::function<void(const OrbitRecord&)>&)> scan;

    // Largest word length needed so that every orbit with l <= T is seen.
    int required_n(double T) const;
    void require_complete(double T, const char* op_name) const;
};

OrbitSource model_source(const ShiftModel& model, int n_max);
OrbitSource model_source_sharded(const ShiftModel& model, int n_max,
                                 int shard_count, int threads = 0);

}  // namespace orbitflow
