#include "orbitflow/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "orbitflow/number_checks.hpp"

namespace orbitflow {

double ShiftModel::r_min() const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k(); ++i)
        for (int j = 0; j < k(); ++j)
            if (edge(i, j)) m = std::min(m, roof(i, j));
    return m;
}

double ShiftModel::r_max() const {
    double m = 0.0;
    for (int i = 0; i < k(); ++i)
        for (int j = 0; j < k(); ++j)
            if (edge(i, j)) m = std::max(m, roof(i, j));
    return m;
}

int ShiftModel::edge_count() const {
    int c = 0;
    for (int i = 0; i < k(); ++i)
        for (int j = 0; j < k(); ++j)
            if (edge(i, j)) ++c;
    return c;
}

Word Word::parse(const std::string& text) {
    std::vector<int> states;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw ValidationError("empty symbol in word '" + text + "'");
            states.push_back(std::stoi(tok));
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9')
                throw ValidationError(std::string("bad symbol '") + c + "' in word '" + text + "'");
            states.push_back(c - '0');
        }
    }
    return Word(std::move(states));
}

std::string Word::str() const {
    bool digits = std::all_of(states.begin(), states.end(),
                              [](int s) { return s >= 0 && s <= 9; });
    std::string out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (digits) {
            out += static_cast<char>('0' + states[i]);
        } else {
            if (i) out += ',';
            out += std::to_string(states[i]);
        }
    }
    return out;
}

bool path_admissible(const ShiftModel& model, std::span<const int> states) {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i] < 0 || states[i] >= model.k()) return false;
        if (i > 0 && !model.edge(states[i - 1], states[i])) return false;
    }
    return true;
}

bool cyclically_admissible(const ShiftModel& model, const Word& word) {
    if (word.empty()) return false;
    if (!path_admissible(model, word.states)) return false;
    return model.edge(word.states.back(), word.states.front());
}

namespace {

// Boolean primitivity test: some power up to the Wielandt bound (k-1)^2+1
// has all entries positive.
bool is_primitive(const Eigen::MatrixXi& adj) {
    const int k = static_cast<int>(adj.rows());
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> b(k, k), next(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) b(i, j) = adj(i, j) != 0;
    const int bound = (k - 1) * (k - 1) + 1;
    for (int e = 1; e <= bound; ++e) {
        if (b.all()) return true;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                bool v = false;
                for (int m = 0; m < k && !v; ++m) v = b(i, m) && adj(m, j) != 0;
                next(i, j) = v;
            }
        b.swap(next);
    }
    return b.all();
}

bool strongly_connected(const Eigen::MatrixXi& adj) {
    const int k = static_cast<int>(adj.rows());
    auto reach_all = [&](bool forward) {
        std::vector<char> seen(static_cast<std::size_t>(k), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < k; ++v) {
                bool e = forward ? adj(u, v) != 0 : adj(v, u) != 0;
                if (e && !seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    stack.push_back(v);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    return reach_all(true) && reach_all(false);
}

// gcd over BFS-labelled edges; the matrix period for strongly connected
// digraphs.
int matrix_period(const Eigen::MatrixXi& adj) {
    const int k = static_cast<int>(adj.rows());
    std::vector<int> dist(static_cast<std::size_t>(k), -1);
    std::vector<int> queue{0};
    dist[0] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int u = queue[q];
        for (int v = 0; v < k; ++v)
            if (adj(u, v) != 0 && dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
    }
    long long g = 0;
    for (int u = 0; u < k; ++u)
        for (int v = 0; v < k; ++v)
            if (adj(u, v) != 0)
                g = std::gcd(g, static_cast<long long>(dist[static_cast<std::size_t>(u)]) + 1 -
                                    dist[static_cast<std::size_t>(v)]);
    return static_cast<int>(g < 0 ? -g : g);
}

}  // namespace

ValidationReport validate_model(const ShiftModel& model) {
    const int k = model.k();
    if (k < 2) throw ValidationError("model needs at least 2 states, got " + std::to_string(k));
    if (model.adjacency.rows() != k || model.adjacency.cols() != k ||
        model.roof.rows() != k || model.roof.cols() != k ||
        model.weight.rows() != k || model.weight.cols() != k)
        throw ValidationError("matrix dimensions do not match state count");

    int edges = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const int a = model.adjacency(i, j);
            if (a != 0 && a != 1)
                throw ValidationError("adjacency entries must be 0 or 1, got " +
                                      std::to_string(a) + " at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
            if (a == 1) {
                ++edges;
                if (!(model.roof(i, j) > 0.0))
                    throw ValidationError("roof must be positive on edge (" + std::to_string(i) +
                                          "," + std::to_string(j) + ")");
            } else {
                if (model.roof(i, j) != 0.0 || model.weight(i, j) != 0.0)
                    throw ValidationError("roof/weight defined on forbidden edge (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    if (edges == 0) throw ValidationError("model has an empty edge set");

    ValidationReport report;
    report.r_min = model.r_min();
    report.primitive = is_primitive(model.adjacency);
    if (report.primitive) {
        report.period = 1;
    } else if (strongly_connected(model.adjacency)) {
        report.period = matrix_period(model.adjacency);
        report.warnings.push_back("not primitive (period " + std::to_string(report.period) +
                                  "): rejected for CLT runs");
    } else {
        report.period = 0;
        report.warnings.push_back("not strongly connected: rejected for CLT runs");
    }

    std::vector<double> roofs;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (model.edge(i, j)) roofs.push_back(model.roof(i, j));
    if (roofs.size() >= 2) {
        LatticeVerdict v = lattice_test(roofs, 1e-9);
        if (v.generator)
            report.warnings.push_back("arithmetic length spectrum suspected (roof generator ~ " +
                                      std::to_string(*v.generator) + ")");
    } else if (roofs.size() == 1) {
        report.warnings.push_back("arithmetic length spectrum suspected (single roof value)");
    }
    return report;
}

OrbitWeights cyclic_birkhoff(const ShiftModel& model, const Word& word) {
    if (word.empty()) throw ValidationError("cyclic_birkhoff: empty word");
    const int n = word.size();
    OrbitWeights out;
    for (int m = 0; m < n; ++m) {
        const int i = word[m];
        const int j = word[(m + 1) % n];
        if (i < 0 || i >= model.k() || j < 0 || j >= model.k() || !model.edge(i, j))
            throw ValidationError("word '" + word.str() + "' not admissible: edge " +
                                  std::to_string(i) + "->" + std::to_string(j) +
                                  " forbidden at position " + std::to_string(m));
        out.l += model.roof(i, j);
        out.w += model.weight(i, j);
    }
    return out;
}

CanonicalForm canonical_form(const Word& word) {
    if (word.empty()) throw ValidationError("canonical_form: empty word");
    const int n = word.size();

    int p = n;
    for (int cand = 1; cand < n; ++cand) {
        if (n % cand != 0) continue;
        bool periodic = true;
        for (int i = cand; i < n && periodic; ++i) periodic = word[i] == word[i - cand];
        if (periodic) {
            p = cand;
            break;
        }
    }

    // Least rotation of the primitive root, by direct comparison; roots are
    // short so the quadratic scan is fine.
    std::vector<int> root(word.states.begin(), word.states.begin() + p);
    int best = 0;
    for (int r = 1; r < p; ++r) {
        for (int i = 0; i < p; ++i) {
            const int a = root[static_cast<std::size_t>((r + i) % p)];
            const int b = root[static_cast<std::size_t>((best + i) % p)];
            if (a != b) {
                if (a < b) best = r;
                break;
            }
        }
    }
    std::vector<int> rep(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) rep[static_cast<std::size_t>(i)] = root[static_cast<std::size_t>((best + i) % p)];

    CanonicalForm out;
    out.lyndon_representative = Word(std::move(rep));
    out.root_length = p;
    out.multiplicity = n / p;
    return out;
}

ShiftModel centered_model(const ShiftModel& model, double flow_mean) {
    ShiftModel out = model;
    for (int i = 0; i < model.k(); ++i)
        for (int j = 0; j < model.k(); ++j)
            if (model.edge(i, j)) out.weight(i, j) = model.weight(i, j) - flow_mean * model.roof(i, j);
    out.name = model.name + "-centered";
    return out;
}

}  // namespace orbitflow
