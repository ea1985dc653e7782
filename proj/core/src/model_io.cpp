#include "orbitflow/model_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace orbitflow {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

struct Line {
    int number = 0;
    std::string text;
};

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw ValidationError("model '" + name + "' line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

double parse_double(const std::string& tok, const std::string& name, int line) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        fail(name, line, "bad number '" + tok + "'");
    }
    if (pos != tok.size()) fail(name, line, "bad number '" + tok + "'");
    return v;
}

int parse_int(const std::string& tok, const std::string& name, int line) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        fail(name, line, "bad integer '" + tok + "'");
    }
    if (pos != tok.size()) fail(name, line, "bad integer '" + tok + "'");
    return v;
}

}  // namespace

ShiftModel parse_model_text(const std::string& text, const std::string& name) {
    // Split into logical lines, dropping blanks and '#' comments.
    std::vector<Line> lines;
    {
        std::istringstream is(text);
        std::string raw;
        int number = 0;
        while (std::getline(is, raw)) {
            ++number;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            const auto first = raw.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            const auto last = raw.find_last_not_of(" \t\r");
            lines.push_back({number, raw.substr(first, last - first + 1)});
        }
    }

    ShiftModel model;
    model.name = name;
    enum class Section { none, states, adjacency, roof, weight };
    Section section = Section::none;
    bool seen_states = false, seen_adjacency = false, seen_roof = false, seen_weight = false;
    int adjacency_rows = 0;
    Eigen::MatrixXi roof_seen, weight_seen;

    for (const Line& line : lines) {
        if (line.text.front() == '[') {
            if (line.text == "[states]") {
                if (seen_states) fail(name, line.number, "duplicate section [states]");
                seen_states = true;
                section = Section::states;
            } else if (line.text == "[adjacency]") {
                if (!seen_states) fail(name, line.number, "[adjacency] before [states]");
                if (seen_adjacency) fail(name, line.number, "duplicate section [adjacency]");
                seen_adjacency = true;
                section = Section::adjacency;
            } else if (line.text == "[roof]") {
                if (!seen_adjacency) fail(name, line.number, "[roof] before [adjacency]");
                if (seen_roof) fail(name, line.number, "duplicate section [roof]");
                seen_roof = true;
                section = Section::roof;
            } else if (line.text == "[weight]") {
                if (!seen_adjacency) fail(name, line.number, "[weight] before [adjacency]");
                if (seen_weight) fail(name, line.number, "duplicate section [weight]");
                seen_weight = true;
                section = Section::weight;
            } else {
                fail(name, line.number, "unknown section " + line.text);
            }
            continue;
        }

        switch (section) {
            case Section::none:
                fail(name, line.number, "content before any section header");
            case Section::states: {
                if (model.state_count != 0) fail(name, line.number, "[states] takes a single line");
                const auto tk = tokens(line.text);
                if (tk.size() != 1) fail(name, line.number, "[states] expects one integer");
                model.state_count = parse_int(tk[0], name, line.number);
                if (model.state_count < 2)
                    fail(name, line.number, "state count must be at least 2");
                const int k = model.state_count;
                model.adjacency = Eigen::MatrixXi::Zero(k, k);
                model.roof = Eigen::MatrixXd::Zero(k, k);
                model.weight = Eigen::MatrixXd::Zero(k, k);
                roof_seen = Eigen::MatrixXi::Zero(k, k);
                weight_seen = Eigen::MatrixXi::Zero(k, k);
                break;
            }
            case Section::adjacency: {
                if (model.state_count == 0) fail(name, line.number, "[states] must precede rows");
                if (adjacency_rows >= model.state_count)
                    fail(name, line.number, "too many adjacency rows");
                const auto tk = tokens(line.text);
                if (static_cast<int>(tk.size()) != model.state_count)
                    fail(name, line.number,
                         "adjacency row " + std::to_string(adjacency_rows) + " has " +
                             std::to_string(tk.size()) + " entries, expected " +
                             std::to_string(model.state_count));
                for (int j = 0; j < model.state_count; ++j) {
                    const int v = parse_int(tk[static_cast<std::size_t>(j)], name, line.number);
                    if (v != 0 && v != 1)
                        fail(name, line.number, "adjacency entries must be 0 or 1");
                    model.adjacency(adjacency_rows, j) = v;
                }
                ++adjacency_rows;
                break;
            }
            case Section::roof:
            case Section::weight: {
                if (adjacency_rows != model.state_count)
                    fail(name, line.number, "edge data before adjacency is complete");
                const auto tk = tokens(line.text);
                if (tk.size() != 3)
                    fail(name, line.number, "expected 'i j value'");
                const int i = parse_int(tk[0], name, line.number);
                const int j = parse_int(tk[1], name, line.number);
                const double v = parse_double(tk[2], name, line.number);
                if (i < 0 || i >= model.state_count || j < 0 || j >= model.state_count)
                    fail(name, line.number, "edge (" + tk[0] + "," + tk[1] + ") out of range");
                if (!model.edge(i, j))
                    fail(name, line.number,
                         "entry on forbidden edge (" + tk[0] + "," + tk[1] + ")");
                Eigen::MatrixXi& seen = section == Section::roof ? roof_seen : weight_seen;
                if (seen(i, j))
                    fail(name, line.number,
                         "duplicate entry for edge (" + tk[0] + "," + tk[1] + ")");
                seen(i, j) = 1;
                if (section == Section::roof) {
                    if (!(v > 0.0)) fail(name, line.number, "roof must be positive");
                    model.roof(i, j) = v;
                } else {
                    model.weight(i, j) = v;
                }
                break;
            }
        }
    }

    if (!seen_states) throw ValidationError("model '" + name + "': missing section [states]");
    if (!seen_adjacency) throw ValidationError("model '" + name + "': missing section [adjacency]");
    if (!seen_roof) throw ValidationError("model '" + name + "': missing section [roof]");
    if (!seen_weight) throw ValidationError("model '" + name + "': missing section [weight]");
    if (adjacency_rows != model.state_count)
        throw ValidationError("model '" + name + "': adjacency has " +
                              std::to_string(adjacency_rows) + " rows, expected " +
                              std::to_string(model.state_count));
    for (int i = 0; i < model.state_count; ++i)
        for (int j = 0; j < model.state_count; ++j)
            if (model.edge(i, j)) {
                if (!roof_seen(i, j))
                    throw ValidationError("model '" + name + "': roof missing for edge (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
                if (!weight_seen(i, j))
                    throw ValidationError("model '" + name + "': weight missing for edge (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
            }
    return model;
}

namespace {

// sqrt(2) entered pre-rounded to 17 significant digits, per the model-file
// convention that irrational data arrives as decimal literals.
constexpr const char* kMArith = R"(# full 2-shift, integer roof: arithmetic length spectrum (negative control)
[states]
2
[adjacency]
1 1
1 1
[roof]
0 0 1.0
0 1 1.0
1 0 2.0
1 1 2.0
[weight]
0 0 1.0
0 1 1.0
1 0 -1.0
1 1 -1.0
)";

constexpr const char* kCoinFlip = R"(# full 2-shift, unit roof, source-symbol weight +-1: closed-form pressure
[states]
2
[adjacency]
1 1
1 1
[roof]
0 0 1.0
0 1 1.0
1 0 1.0
1 1 1.0
[weight]
0 0 1.0
0 1 1.0
1 0 -1.0
1 1 -1.0
)";

constexpr const char* kMGold = R"(# full 2-shift, roof 1 / sqrt(2) by source symbol: non-lattice CLT target
[states]
2
[adjacency]
1 1
1 1
[roof]
0 0 1.0
0 1 1.0
1 0 1.4142135623730951
1 1 1.4142135623730951
[weight]
0 0 1.0
0 1 1.0
1 0 -1.0
1 1 -1.0
)";

constexpr const char* kGoldenMeanShift = R"(# golden-mean shift: word 11 forbidden
[states]
2
[adjacency]
1 1
1 0
[roof]
0 0 1.0
0 1 1.0
1 0 1.0
[weight]
0 0 0.5
0 1 -1.0
1 0 0.25
)";

}  // namespace

const std::map<std::string, std::string>& bundled_models() {
    static const std::map<std::string, std::string> models = {
        {"m-arith", kMArith},
        {"coin-flip", kCoinFlip},
        {"m-gold", kMGold},
        {"golden-mean-shift", kGoldenMeanShift},
    };
    return models;
}

ShiftModel bundled_model(const std::string& name) {
    const auto& models = bundled_models();
    const auto it = models.find(name);
    if (it == models.end()) throw ValidationError("no bundled model named '" + name + "'");
    return parse_model_text(it->second, name);
}

ShiftModel parse_model_file(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::exists(path)) {
        if (bundled_models().count(path)) return bundled_model(path);
        throw ValidationError("model file '" + path + "' does not exist");
    }
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read model file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_model_text(buffer.str(), fs::path(path).stem().string());
}

std::string model_to_text(const ShiftModel& model) {
    std::ostringstream os;
    os << "[states]\n" << model.state_count << "\n[adjacency]\n";
    for (int i = 0; i < model.state_count; ++i) {
        for (int j = 0; j < model.state_count; ++j)
            os << (j ? " " : "") << model.adjacency(i, j);
        os << "\n";
    }
    os << "[roof]\n";
    for (int i = 0; i < model.state_count; ++i)
        for (int j = 0; j < model.state_count; ++j)
            if (model.edge(i, j)) os << i << " " << j << " " << fmt_g17(model.roof(i, j)) << "\n";
    os << "[weight]\n";
    for (int i = 0; i < model.state_count; ++i)
        for (int j = 0; j < model.state_count; ++j)
            if (model.edge(i, j)) os << i << " " << j << " " << fmt_g17(model.weight(i, j)) << "\n";
    return os.str();
}

// --- orbit cache ------------------------------------------------------------

struct OrbitCacheWriter::Impl {
    std::ofstream out;
    std::string path;
    int last_n = 0;
    bool open = false;
};

OrbitCacheWriter::OrbitCacheWriter(const std::string& path) : impl_(new Impl) {
    impl_->out.open(path);
    impl_->path = path;
    if (!impl_->out) {
        delete impl_;
        throw ValidationError("cannot open orbit cache '" + path + "' for writing");
    }
    impl_->open = true;
    impl_->out << "n,l,w\n";
}

OrbitCacheWriter::~OrbitCacheWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; an explicit close() reports failures
    }
    delete impl_;
}

void OrbitCacheWriter::add(const OrbitRecord& rec) {
    if (!impl_->open) throw ValidationError("orbit cache writer already closed");
    if (rec.n < impl_->last_n)
        throw ValidationError("orbit cache rows must have nondecreasing n");
    impl_->last_n = rec.n;
    impl_->out << rec.n << ',' << fmt_g17(rec.l) << ',' << fmt_g17(rec.w) << '\n';
}

void OrbitCacheWriter::close() {
    if (impl_->open) {
        impl_->out.close();
        impl_->open = false;
        if (!impl_->out)
            throw ValidationError("failed writing orbit cache '" + impl_->path + "'");
    }
}

namespace {

void scan_orbit_cache(const std::string& path,
                      const std::function<void(const OrbitRecord&)>& fn) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read orbit cache '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || (line != "n,l,w" && line != "n,l,w\r"))
        throw ValidationError("orbit cache '" + path + "': missing 'n,l,w' header");
    int number = 1;
    int last_n = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        OrbitRecord rec;
        char extra = 0;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf%c", &rec.n, &rec.l, &rec.w, &extra) != 3)
            throw ValidationError("orbit cache '" + path + "' line " + std::to_string(number) +
                                  ": malformed row '" + line + "'");
        if (rec.n < last_n)
            throw ValidationError("orbit cache '" + path + "' line " + std::to_string(number) +
                                  ": sort-order violation (n decreases)");
        last_n = rec.n;
        fn(rec);
    }
}

}  // namespace

std::vector<OrbitRecord> read_orbit_cache(const std::string& path) {
    std::vector<OrbitRecord> records;
    scan_orbit_cache(path, [&](const OrbitRecord& r) { records.push_back(r); });
    return records;
}

OrbitSource cache_source(const std::string& path, double r_min) {
    int n_max = 0;
    scan_orbit_cache(path, [&](const OrbitRecord& r) { n_max = std::max(n_max, r.n); });
    OrbitSource src;
    src.n_max = n_max;
    src.r_min = r_min;
    src.scan = [path](const std::function<void(const OrbitRecord&)>& fn) {
        scan_orbit_cache(path, fn);
    };
    return src;
}

}  // namespace orbitflow
