// Acceptance suite: runs the full verification battery on the bundled
// models, prints one pass/fail line per check, and confirms that the
// report is byte-identical when the enumerations are split over 8 shards.
// Exit status 0 only if every line passes.

#include <cstdio>
#include <sstream>
#include <string>

#include "orbitflow/acceptance.hpp"

int main() {
    using namespace orbitflow::accept;

    std::vector<CheckRow> rows;
    try {
        rows = run_acceptance(Options{1, 0});
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance battery aborted: %s\n", e.what());
        return 1;
    }

    int failures = 0;
    for (const CheckRow& row : rows) {
        std::printf("[%s] %-42s measured=%.6g threshold=%.6g\n", row.pass ? "PASS" : "FAIL",
                    row.name.c_str(), row.measured, row.threshold);
        if (!row.pass) ++failures;
    }

    // 12. determinism: the battery rerun with 8 shards must serialize to the
    // exact same bytes.
    std::string bytes1, bytes8;
    {
        std::ostringstream os;
        write_report_csv(os, rows);
        bytes1 = os.str();
    }
    try {
        std::ostringstream os;
        write_report_csv(os, run_acceptance(Options{8, 2}));
        bytes8 = os.str();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "8-shard battery aborted: %s\n", e.what());
        return 1;
    }
    const bool identical = bytes1 == bytes8;
    std::printf("[%s] %-42s measured=%d threshold=0\n", identical ? "PASS" : "FAIL",
                "12.report-shard-determinism", identical ? 0 : 1);
    if (!identical) ++failures;

    if (failures > 0) {
        std::printf("%d acceptance check(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance checks passed (%zu rows + determinism)\n", rows.size());
    return 0;
}
