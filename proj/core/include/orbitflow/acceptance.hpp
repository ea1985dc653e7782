#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitflow::accept {

struct CheckRow {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct Options {
    int shards = 1;   // shard count for every enumeration-backed check
    int threads = 0;  // 0 = one thread per shard (capped by hardware)
};

// Runs the full verification battery on the bundled models. Every
// tolerance is pinned here; the rows are what run-all writes to report.csv.
// Output bytes are identical for every shard count.
std::vector<CheckRow> run_acceptance(const Options& options = {});

void write_report_csv(std::ostream& out, const std::vector<CheckRow>& rows);
bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace orbitflow::accept
