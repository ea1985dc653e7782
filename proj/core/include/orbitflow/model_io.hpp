#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "orbitflow/model.hpp"
#include "orbitflow/orbit_enum.hpp"

namespace orbitflow {

// Strict line-oriented model format: sections [states], [adjacency], [roof],
// [weight]; adjacency as k rows of 0/1; roof and weight as "i j value"
// lines covering exactly the allowed edges. '#' comments and blank lines
// are skipped; anything else is an error naming line and section.
ShiftModel parse_model_text(const std::string& text, const std::string& name);

// Reads a model file; if the path does not exist but names a bundled model
// (m-arith, coin-flip, m-gold, golden-mean-shift) the bundled text is used.
ShiftModel parse_model_file(const std::string& path);

std::string model_to_text(const ShiftModel& model);

// Bundled example models keyed by name.
const std::map<std::string, std::string>& bundled_models();
ShiftModel bundled_model(const std::string& name);

// Orbit cache: CSV "n,l,w", rows in (n, canonical word) order, doubles at
// 17 significant digits so a read is bitwise identical to what was written.
class OrbitCacheWriter {
  public:
    explicit OrbitCacheWriter(const std::string& path);
    ~OrbitCacheWriter();
    void add(const OrbitRecord& rec);  // enforces nondecreasing n
    void close();

  private:
    struct Impl;
    Impl* impl_;
};

std::vector<OrbitRecord> read_orbit_cache(const std::string& path);

// Replayable source backed by a cache file (re-read on every scan).
// r_min is taken from the paired model so completeness checks still work.
OrbitSource cache_source(const std::string& path, double r_min);

// Doubles formatted with 17 significant digits, the round-trip width.
std::string fmt_g17(double x);

}  // namespace orbitflow
