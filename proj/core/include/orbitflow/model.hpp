#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "orbitflow/errors.hpp"

namespace orbitflow {

// Suspension data for a symbolic flow: a 0/1 transition matrix together with
// a positive roof function r and a real weight F, both constant on edges.
// The flow itself is never materialized; every quantity downstream depends
// only on the per-orbit pairs (length, weight) induced by (r, F).
struct ShiftModel {
    int state_count = 0;
    Eigen::MatrixXi adjacency;  // entries in {0,1}
    Eigen::MatrixXd roof;       // > 0 on allowed edges, 0 elsewhere
    Eigen::MatrixXd weight;     // defined on allowed edges, 0 elsewhere
    std::string name;

    int k() const { return state_count; }
    bool edge(int i, int j) const { return adjacency(i, j) != 0; }

    // Smallest roof value over allowed edges. Lower bound for l(orbit)/n.
    double r_min() const;
    double r_max() const;
    int edge_count() const;
};

// Symbolic coding of one periodic orbit: a finite cyclic state sequence.
struct Word {
    std::vector<int> states;

    Word() = default;
    explicit Word(std::vector<int> s) : states(std::move(s)) {}

    int size() const { return static_cast<int>(states.size()); }
    bool empty() const { return states.empty(); }
    int operator[](int i) const { return states[static_cast<std::size_t>(i)]; }

    // "0110" style for alphabets up to 10 states, "3,12,5" beyond.
    static Word parse(const std::string& text);
    std::string str() const;

    auto operator<=>(const Word&) const = default;
};

struct ValidationReport {
    bool primitive = false;
    int period = 0;  // 1 for primitive, 0 when not strongly connected
    double r_min = 0.0;
    std::vector<std::string> warnings;
};

struct CanonicalForm {
    Word lyndon_representative;  // least rotation of the primitive root
    int root_length = 0;
    int multiplicity = 0;  // input = root repeated this many times
};

struct OrbitWeights {
    double l = 0.0;  // time length, cyclic sum of roof
    double w = 0.0;  // observable weight, cyclic sum of weight
};

// Structural checks plus primitivity (Wielandt exponent bound (k-1)^2+1),
// matrix period, and a lattice warning when all roof values are integer
// multiples of a common generator.
ValidationReport validate_model(const ShiftModel& model);

// Linear admissibility of consecutive edges only.
bool path_admissible(const ShiftModel& model, std::span<const int> states);
// Admissibility including the wrap edge last->first.
bool cyclically_admissible(const ShiftModel& model, const Word& word);

// l and w of the coded orbit: cyclic Birkhoff sums of roof and weight.
// Throws ValidationError naming the first forbidden edge.
OrbitWeights cyclic_birkhoff(const ShiftModel& model, const Word& word);

// Splits a word into primitive root and multiplicity; the representative is
// the lexicographically least rotation of the root.
CanonicalForm canonical_form(const Word& word);

// Replaces F by F - flow_mean * r on every edge. Per-orbit weights then
// become w - flow_mean * l, the centered weights used by the limit checks.
ShiftModel centered_model(const ShiftModel& model, double flow_mean);

}  // namespace orbitflow
