#include "orbitflow/orbit_enum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace orbitflow {

void EnumSummary::merge(const EnumSummary& other) {
    if (other.counts_per_n.size() > counts_per_n.size())
        counts_per_n.resize(other.counts_per_n.size(), 0);
    for (std::size_t i = 0; i < other.counts_per_n.size(); ++i)
        counts_per_n[i] += other.counts_per_n[i];
    total += other.total;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw ConvergenceError("integer overflow in orbit counting");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ConvergenceError("integer overflow in orbit counting");
    return r;
}

// Lyndon words of one fixed length via the necklace-prefix recursion
// (a[t] = a[t-p] continuation plus larger-symbol branches), restricted to
// admissible edges. Work is proportional to the admissible pre-necklace
// count. Roof/weight prefix sums ride along so emission is O(1).
class FixedLengthGenerator {
  public:
    FixedLengthGenerator(const ShiftModel& model, OrbitSinkRef sink)
        : model_(model), sink_(sink), k_(model.state_count) {}

    // prefix: DFS constraint for words of length >= prefix size. Words
    // shorter than the prefix are matched by periodic extension afterwards.
    std::uint64_t run(int n, const Word* prefix) {
        n_ = n;
        prefix_ = prefix;
        prefix_len_ = prefix ? prefix->size() : 0;
        count_ = 0;
        a_.assign(static_cast<std::size_t>(n) + 1, 0);
        sum_r_.assign(static_cast<std::size_t>(n) + 1, 0.0);
        sum_w_.assign(static_cast<std::size_t>(n) + 1, 0.0);
        descend(1, 1);
        return count_;
    }

  private:
    bool prefix_allows(int t, int symbol) const {
        if (prefix_len_ == 0 || n_ < prefix_len_) return true;  // filter at leaf
        if (t > prefix_len_) return true;
        return (*prefix_)[t - 1] == symbol;
    }

    bool wrapped_prefix_match() const {
        // n_ < prefix length: compare the periodic extension of a[1..n].
        for (int i = 0; i < prefix_len_; ++i)
            if ((*prefix_)[i] != a_[static_cast<std::size_t>(1 + i % n_)]) return false;
        return true;
    }

    void place(int t, int symbol, int p) {
        a_[static_cast<std::size_t>(t)] = symbol;
        if (t > 1) {
            const int prev = a_[static_cast<std::size_t>(t - 1)];
            sum_r_[static_cast<std::size_t>(t)] =
                sum_r_[static_cast<std::size_t>(t - 1)] + model_.roof(prev, symbol);
            sum_w_[static_cast<std::size_t>(t)] =
                sum_w_[static_cast<std::size_t>(t - 1)] + model_.weight(prev, symbol);
        } else {
            sum_r_[1] = 0.0;
            sum_w_[1] = 0.0;
        }
        descend(t + 1, p);
    }

    void descend(int t, int p) {
        if (t > n_) {
            if (p != n_) return;  // periodic word: not a prime orbit
            const int last = a_[static_cast<std::size_t>(n_)];
            const int first = a_[1];
            if (!model_.edge(last, first)) return;  // wrap edge checked last
            if (prefix_len_ != 0 && n_ < prefix_len_ && !wrapped_prefix_match()) return;
            OrbitRecord rec;
            rec.n = n_;
            rec.l = sum_r_[static_cast<std::size_t>(n_)] + model_.roof(last, first);
            rec.w = sum_w_[static_cast<std::size_t>(n_)] + model_.weight(last, first);
            ++count_;
            sink_(rec, std::span<const int>(a_.data() + 1, static_cast<std::size_t>(n_)));
            return;
        }
        const int forced = a_[static_cast<std::size_t>(t - p)];
        const int prev = t > 1 ? a_[static_cast<std::size_t>(t - 1)] : -1;
        if ((t == 1 || model_.edge(prev, forced)) && prefix_allows(t, forced))
            place(t, forced, p);
        for (int j = forced + 1; j < k_; ++j)
            if ((t == 1 || model_.edge(prev, j)) && prefix_allows(t, j))
                place(t, j, t);
    }

    const ShiftModel& model_;
    OrbitSinkRef sink_;
    int k_;
    int n_ = 0;
    const Word* prefix_ = nullptr;
    int prefix_len_ = 0;
    std::uint64_t count_ = 0;
    std::vector<int> a_;
    std::vector<double> sum_r_, sum_w_;
};

void check_enum_preconditions(const ShiftModel& model, int n_max) {
    if (n_max < 1) throw ValidationError("enumerate: n_max must be >= 1");
    if (model.state_count < 1) throw ValidationError("enumerate: empty model");
    // Counts are held in 64-bit integers; k^n_max bounds every count.
    const double bits = static_cast<double>(n_max) * std::log2(static_cast<double>(model.state_count));
    if (bits > 62.0)
        throw ValidationError("enumerate: n_max " + std::to_string(n_max) +
                              " overflows 64-bit orbit counts for " +
                              std::to_string(model.state_count) + " states");
}

}  // namespace

EnumSummary enumerate_prime_orbits(const ShiftModel& model, int n_max,
                                   OrbitSinkRef sink, const ShardSpec* shard) {
    check_enum_preconditions(model, n_max);
    if (shard) {
        for (const Word& p : shard->prefixes)
            if (p.empty() || !path_admissible(model, p.states))
                throw ValidationError("enumerate: shard prefix '" + p.str() +
                                      "' is not an admissible word");
    }

    EnumSummary summary;
    summary.counts_per_n.assign(static_cast<std::size_t>(n_max) + 1, 0);
    if (shard) summary.shard_spec = shard->prefixes;

    FixedLengthGenerator gen(model, sink);
    for (int n = 1; n <= n_max; ++n) {
        std::uint64_t c = 0;
        if (!shard) {
            c = gen.run(n, nullptr);
        } else {
            for (const Word& p : shard->prefixes) c += gen.run(n, &p);
        }
        summary.counts_per_n[static_cast<std::size_t>(n)] = c;
        summary.total = checked_add(summary.total, c);
    }
    return summary;
}

std::vector<Word> shard_prefixes(const ShiftModel& model, int min_count) {
    if (min_count < 1) min_count = 1;
    // Depth 0 = no filter.
    if (min_count == 1) return {};
    for (int depth = 1; depth <= 16; ++depth) {
        std::vector<Word> words;
        std::vector<int> cur(static_cast<std::size_t>(depth), 0);
        // Lexicographic DFS over admissible paths of this depth.
        std::function<void(int)> rec = [&](int t) {
            if (t == depth) {
                words.emplace_back(cur);
                return;
            }
            for (int j = 0; j < model.state_count; ++j) {
                if (t > 0 && !model.edge(cur[static_cast<std::size_t>(t - 1)], j)) continue;
                cur[static_cast<std::size_t>(t)] = j;
                rec(t + 1);
            }
        };
        rec(0);
        if (static_cast<int>(words.size()) >= min_count) return words;
    }
    throw ValidationError("shard_prefixes: cannot reach " + std::to_string(min_count) +
                          " admissible prefixes within depth 16");
}

EnumSummary enumerate_sharded(const ShiftModel& model, int n_max,
                              OrbitSinkRef sink, int shard_count, int threads) {
    if (shard_count <= 1) return enumerate_prime_orbits(model, n_max, sink, nullptr);
    check_enum_preconditions(model, n_max);

    const std::vector<Word> prefixes = shard_prefixes(model, shard_count);
    const int P = static_cast<int>(prefixes.size());
    if (threads <= 0) threads = shard_count;
    threads = std::max(1, std::min({threads, P, static_cast<int>(std::thread::hardware_concurrency())}));

    EnumSummary summary;
    summary.counts_per_n.assign(static_cast<std::size_t>(n_max) + 1, 0);
    summary.shard_spec = prefixes;

    // Buffer one word length per prefix, then flush in prefix order: the
    // sink sees exactly the unsharded stream.
    struct Buffer {
        std::vector<OrbitRecord> recs;
        std::vector<int> words;  // concatenated, recs[i].n symbols each
    };
    std::vector<Buffer> buffers(static_cast<std::size_t>(P));

    const bool keep_words = sink.wants_words;
    for (int n = 1; n <= n_max; ++n) {
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int idx = next.fetch_add(1);
                if (idx >= P) return;
                Buffer& buf = buffers[static_cast<std::size_t>(idx)];
                buf.recs.clear();
                buf.words.clear();
                auto capture = [&buf, keep_words](const OrbitRecord& r, std::span<const int> w) {
                    buf.recs.push_back(r);
                    if (keep_words) buf.words.insert(buf.words.end(), w.begin(), w.end());
                };
                FixedLengthGenerator gen(model, OrbitSinkRef::of(capture));
                gen.run(n, &prefixes[static_cast<std::size_t>(idx)]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();

        std::uint64_t c = 0;
        for (const Buffer& buf : buffers) {
            std::size_t off = 0;
            for (const OrbitRecord& r : buf.recs) {
                if (keep_words) {
                    sink(r, std::span<const int>(buf.words.data() + off,
                                                 static_cast<std::size_t>(r.n)));
                    off += static_cast<std::size_t>(r.n);
                } else {
                    sink(r, {});
                }
            }
            c += buf.recs.size();
        }
        summary.counts_per_n[static_cast<std::size_t>(n)] = c;
        summary.total = checked_add(summary.total, c);
    }
    return summary;
}

std::vector<PrimeCountRow> prime_count_check(const ShiftModel& model, int n_max) {
    check_enum_preconditions(model, n_max);

    std::vector<std::uint64_t> prime_counts(static_cast<std::size_t>(n_max) + 1, 0);
    auto count_only = [&prime_counts](const OrbitRecord& r, std::span<const int>) {
        ++prime_counts[static_cast<std::size_t>(r.n)];
    };
    enumerate_prime_orbits(model, n_max, OrbitSinkRef::of(count_only));

    const int k = model.state_count;
    std::vector<std::uint64_t> pow(static_cast<std::size_t>(k) * k, 0);
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            adj[static_cast<std::size_t>(i) * k + j] = static_cast<std::uint64_t>(model.adjacency(i, j));
            pow[static_cast<std::size_t>(i) * k + j] = adj[static_cast<std::size_t>(i) * k + j];
        }

    std::vector<PrimeCountRow> rows;
    std::vector<std::uint64_t> tmp(static_cast<std::size_t>(k) * k);
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    std::uint64_t acc = 0;
                    for (int m = 0; m < k; ++m)
                        acc = checked_add(acc, checked_mul(pow[static_cast<std::size_t>(i) * k + m],
                                                           adj[static_cast<std::size_t>(m) * k + j]));
                    tmp[static_cast<std::size_t>(i) * k + j] = acc;
                }
            pow.swap(tmp);
        }
        std::uint64_t trace = 0;
        for (int i = 0; i < k; ++i)
            trace = checked_add(trace, pow[static_cast<std::size_t>(i) * k + i]);

        std::uint64_t lhs = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0)
                lhs = checked_add(lhs, checked_mul(static_cast<std::uint64_t>(d),
                                                   prime_counts[static_cast<std::size_t>(d)]));

        rows.push_back({n, prime_counts[static_cast<std::size_t>(n)], trace, lhs == trace});
    }
    return rows;
}

int OrbitSource::required_n(double T) const {
    if (r_min <= 0.0) throw ValidationError("orbit source has nonpositive r_min");
    return static_cast<int>(std::floor(T / r_min + 1e-12));
}

void OrbitSource::require_complete(double T, const char* op_name) const {
    const int need = required_n(T);
    if (need > n_max)
        throw IncompleteSourceError(std::string(op_name) + ": orbit source reaches n_max " +
                                        std::to_string(n_max) + " but lengths up to " +
                                        std::to_string(T) + " need n_max >= " +
                                        std::to_string(need),
                                    need);
}

OrbitSource model_source(const ShiftModel& model, int n_max) {
    OrbitSource src;
    src.n_max = n_max;
    src.r_min = model.r_min();
    src.scan = [model, n_max](const std::function<void(const OrbitRecord&)>& fn) {
        auto sink = [&fn](const OrbitRecord& r, std::span<const int>) { fn(r); };
        enumerate_prime_orbits(model, n_max, OrbitSinkRef::of(sink, false));
    };
    return src;
}

OrbitSource model_source_sharded(const ShiftModel& model, int n_max,
                                 int shard_count, int threads) {
    OrbitSource src;
    src.n_max = n_max;
    src.r_min = model.r_min();
    src.scan = [model, n_max, shard_count, threads](const std::function<void(const OrbitRecord&)>& fn) {
        auto sink = [&fn](const OrbitRecord& r, std::span<const int>) { fn(r); };
        enumerate_sharded(model, n_max, OrbitSinkRef::of(sink, false), shard_count, threads);
    };
    return src;
}

}  // namespace orbitflow
