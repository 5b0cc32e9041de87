#include "fepr/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fepr/checker.hpp"
#include "fepr/families.hpp"
#include "fepr/fixed_embedding.hpp"
#include "fepr/oracle.hpp"
#include "fepr/outerplanar.hpp"
#include "fepr/reduction.hpp"
#include "fepr/spq_solver.hpp"
#include "fepr/two_lengths.hpp"

namespace fepr {

ParseError::ParseError(int l, const std::string& what)
    : std::runtime_error(l > 0 ? "line " + std::to_string(l) + ": " + what : what), line(l) {}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Non-empty lines with comments stripped, paired with their 1-based numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.emplace_back(no, line);
    }
    return out;
}

template <class T>
T take(std::istringstream& s, int line, const char* what) {
    T v;
    if (!(s >> v)) throw ParseError(line, std::string("expected ") + what);
    return v;
}

void expect_end(std::istringstream& s, int line) {
    std::string extra;
    if (s >> extra) throw ParseError(line, "unexpected token '" + extra + "'");
}

int vertex_id(std::istringstream& s, int line, int n) {
    long long v;
    if (!(s >> v)) throw ParseError(line, "expected a vertex id");
    if (v < 0 || v >= n) throw ParseError(line, "vertex " + std::to_string(v) + " out of range");
    return static_cast<int>(v);
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Formats

WeightedTwoTree parse_instance(const std::string& text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(0, "empty instance");
    std::size_t k = 0;
    {
        std::istringstream s(lines[k].second);
        auto tag = take<std::string>(s, lines[k].first, "header");
        auto ver = take<int>(s, lines[k].first, "format version");
        if (tag != "fepr" || ver != 1) throw ParseError(lines[k].first, "header must be 'fepr 1'");
        expect_end(s, lines[k].first);
        ++k;
    }
    if (k >= lines.size()) throw ParseError(0, "missing 'n' line");
    int n;
    {
        std::istringstream s(lines[k].second);
        if (take<std::string>(s, lines[k].first, "'n'") != "n") throw ParseError(lines[k].first, "expected 'n <count>'");
        n = take<int>(s, lines[k].first, "vertex count");
        if (n < 0) throw ParseError(lines[k].first, "negative vertex count");
        expect_end(s, lines[k].first);
        ++k;
    }
    std::vector<RawEdge> edges;
    for (; k < lines.size(); ++k) {
        auto [no, line] = lines[k];
        std::istringstream s(line);
        if (take<std::string>(s, no, "'e'") != "e") throw ParseError(no, "expected 'e <u> <v> <length>'");
        int u = vertex_id(s, no, n), v = vertex_id(s, no, n);
        double len = take<double>(s, no, "edge length");
        if (!(len > 0) || !std::isfinite(len)) throw ParseError(no, "edge length must be positive");
        expect_end(s, no);
        edges.emplace_back(u, v, len);
    }
    return validate_2tree(n, edges);
}

std::string write_instance(const WeightedTwoTree& g) {
    std::string out = "fepr 1\nn " + std::to_string(g.n) + "\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        out += "e " + std::to_string(g.edges[e].first) + " " + std::to_string(g.edges[e].second) + " " +
               fmt_double(g.length[e]) + "\n";
    return out;
}

Realization parse_realization(const std::string& text, int n) {
    Realization r(n, Point{std::nan(""), std::nan("")});
    std::vector<char> seen(n, 0);
    for (auto [no, line] : content_lines(text)) {
        std::istringstream s(line);
        if (take<std::string>(s, no, "'v'") != "v") throw ParseError(no, "expected 'v <id> <x> <y>'");
        int v = vertex_id(s, no, n);
        double x = take<double>(s, no, "x"), y = take<double>(s, no, "y");
        expect_end(s, no);
        if (seen[v]) throw ParseError(no, "vertex " + std::to_string(v) + " given twice");
        seen[v] = 1;
        r[v] = {x, y};
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw ParseError(0, "vertex " + std::to_string(v) + " has no coordinates");
    return r;
}

std::string write_realization(const Realization& r) {
    std::string out;
    for (std::size_t v = 0; v < r.size(); ++v)
        out += "v " + std::to_string(v) + " " + fmt_double(r[v].x + 0.0) + " " + fmt_double(r[v].y + 0.0) + "\n";  // no -0
    return out;
}

PlaneEmbedding parse_embedding(const std::string& text, int n) {
    PlaneEmbedding emb;
    emb.rotation.assign(n, {});
    std::vector<char> seen(n, 0);
    bool outer_seen = false;
    for (auto [no, line] : content_lines(text)) {
        std::istringstream s(line);
        auto tag = take<std::string>(s, no, "'r' or 'outer'");
        if (tag == "r") {
            int v = vertex_id(s, no, n);
            if (seen[v]) throw ParseError(no, "rotation of vertex " + std::to_string(v) + " given twice");
            seen[v] = 1;
            std::string tok;
            while (s >> tok) {
                std::istringstream t(tok);
                emb.rotation[v].push_back(vertex_id(t, no, n));
            }
        } else if (tag == "outer") {
            if (outer_seen) throw ParseError(no, "second outer line");
            outer_seen = true;
            std::string tok;
            while (s >> tok) {
                std::istringstream t(tok);
                emb.outer.push_back(vertex_id(t, no, n));
            }
        } else {
            throw ParseError(no, "unknown record '" + tag + "'");
        }
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw ParseError(0, "vertex " + std::to_string(v) + " has no rotation");
    return emb;
}

std::string write_embedding(const PlaneEmbedding& emb) {
    std::string out;
    for (std::size_t v = 0; v < emb.rotation.size(); ++v) {
        out += "r " + std::to_string(v);
        for (int w : emb.rotation[v]) out += " " + std::to_string(w);
        out += "\n";
    }
    if (!emb.outer.empty()) {
        out += "outer";
        for (int w : emb.outer) out += " " + std::to_string(w);
        out += "\n";
    }
    return out;
}

std::string render_svg(const WeightedTwoTree& g, const Realization& r) {
    constexpr double kScale = 40.0, kMargin = 10.0;
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool first = true;
    for (const Point& p : r) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        if (first) {
            x0 = x1 = p.x;
            y0 = y1 = p.y;
            first = false;
        }
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    auto X = [&](double x) { return kMargin + (x - x0) * kScale; };
    auto Y = [&](double y) { return kMargin + (y1 - y) * kScale; };
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (x1 - x0) * kScale + 2 * kMargin << "\" height=\""
       << (y1 - y0) * kScale + 2 * kMargin << "\">\n";
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    for (auto [u, v] : g.edges)
        os << "<line x1=\"" << X(r[u].x) << "\" y1=\"" << Y(r[u].y) << "\" x2=\"" << X(r[v].x) << "\" y2=\""
           << Y(r[v].y) << "\"/>\n";
    os << "</g>\n<g fill=\"black\">\n";
    for (std::size_t v = 0; v < r.size(); ++v)
        os << "<circle cx=\"" << X(r[v].x) << "\" cy=\"" << Y(r[v].y) << "\" r=\"2\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

bool apply_epsilon_env() {
    const char* s = std::getenv("FEPR_EPSILON");
    if (!s || !*s) return true;
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (*end != '\0' || !(v > 0)) return false;
    set_epsilon(v);
    return true;
}

// ---------------------------------------------------------------------------------------------
// Dispatch

RealizeMode parse_mode(const std::string& name) {
    static const std::map<std::string, RealizeMode> modes = {
        {"auto", RealizeMode::automatic},       {"uniform", RealizeMode::uniform}, {"two", RealizeMode::two},
        {"outerpath", RealizeMode::outerpath},  {"outerpillar", RealizeMode::outerpillar},
        {"spq", RealizeMode::spq},              {"brute", RealizeMode::brute}};
    auto it = modes.find(name);
    if (it == modes.end()) throw std::invalid_argument("unknown mode '" + name + "'");
    return it->second;
}

const char* to_string(RealizeMode m) {
    switch (m) {
        case RealizeMode::automatic: return "auto";
        case RealizeMode::uniform: return "uniform";
        case RealizeMode::two: return "two";
        case RealizeMode::outerpath: return "outerpath";
        case RealizeMode::outerpillar: return "outerpillar";
        case RealizeMode::spq: return "spq";
        case RealizeMode::brute: return "brute";
    }
    return "?";
}

namespace {

RealizeOutcome verdict(std::optional<Realization> r, std::string solver) {
    RealizeOutcome o;
    o.solver = std::move(solver);
    o.status = r ? RealizeOutcome::Status::realizable : RealizeOutcome::Status::infeasible;
    o.drawing = std::move(r);
    return o;
}

RealizeOutcome run_spq_then_brute(const WeightedTwoTree& g, std::uint64_t budget) {
    try {
        SpqOptions opt;
        opt.budget = budget;
        return verdict(realize_spq(g, nullptr, opt), "spq");
    } catch (const BudgetExceeded& e) {
        if (g.n <= kOracleMaxN) {
            auto res = is_realizable_bruteforce(g);
            auto o = verdict(res.witness, "brute");
            o.note = "spq budget exceeded; decided by enumeration";
            return o;
        }
        RealizeOutcome o;
        o.status = RealizeOutcome::Status::budget_exceeded;
        o.solver = "spq";
        o.note = e.what();
        return o;
    }
}

bool dual_is_path(const WeightedTwoTree& g) {
    try {
        outerpath_order(g);
        return true;
    } catch (const NotAnOuterpath&) {
        return false;
    }
}

bool dual_is_caterpillar(const WeightedTwoTree& g) {
    try {
        outerpillar_layout(g);
        return true;
    } catch (const NotAnOuterpillar&) {
        return false;
    }
}

}  // namespace

RealizeOutcome realize_dispatch(const WeightedTwoTree& g, RealizeMode mode, const std::optional<PlaneEmbedding>& embedding,
                                std::uint64_t budget) {
    if (embedding) return verdict(realize_fixed_embedding(g, *embedding), "fixed-embedding");
    switch (mode) {
        case RealizeMode::uniform: return verdict(realize_uniform(g), "uniform");
        case RealizeMode::two: return verdict(realize_two_lengths(g), "two");
        case RealizeMode::outerpath: return verdict(realize_outerpath(g), "outerpath");
        case RealizeMode::outerpillar: return verdict(realize_outerpillar(g), "outerpillar");
        case RealizeMode::spq: {
            try {
                SpqOptions opt;
                opt.budget = budget;
                return verdict(realize_spq(g, nullptr, opt), "spq");
            } catch (const BudgetExceeded& e) {
                RealizeOutcome o;
                o.status = RealizeOutcome::Status::budget_exceeded;
                o.solver = "spq";
                o.note = e.what();
                return o;
            }
        }
        case RealizeMode::brute: {
            if (g.n > kOracleMaxN) {
                RealizeOutcome o;
                o.status = RealizeOutcome::Status::budget_exceeded;
                o.solver = "brute";
                o.note = "enumeration is limited to n <= " + std::to_string(kOracleMaxN);
                return o;
            }
            return verdict(is_realizable_bruteforce(g).witness, "brute");
        }
        case RealizeMode::automatic: break;
    }
    auto lengths = distinct_lengths(g);
    if (lengths.size() == 1) return verdict(realize_uniform(g), "uniform");
    if (lengths.size() == 2) {
        try {
            return verdict(realize_two_lengths(g), "two");
        } catch (const DegreeBoundExceeded&) {
            // falls through to the general solvers
        }
    }
    if (dual_is_path(g)) return verdict(realize_outerpath(g), "outerpath");
    if (dual_is_caterpillar(g)) return verdict(realize_outerpillar(g), "outerpillar");
    return run_spq_then_brute(g, budget);
}

// ---------------------------------------------------------------------------------------------
// Subcommands

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
    WeightedTwoTree g;
    Realization r;
    std::optional<PlaneEmbedding> emb;
    try {
        if (a.epsilon) set_epsilon(*a.epsilon);
        g = parse_instance(read_file(a.instance));
        r = parse_realization(read_file(a.realization), g.n);
        if (!a.embedding.empty() && !a.rotation.empty()) throw ParseError(0, "give --embedding or --rotation, not both");
        if (!a.embedding.empty()) emb = parse_embedding(read_file(a.embedding), g.n);
        if (!a.rotation.empty()) {
            emb = parse_embedding(read_file(a.rotation), g.n);
            emb->outer.clear();
        }
    } catch (const std::exception& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    CheckResult res;
    if (emb && !emb->outer.empty()) res = check_realization_embedding(g, *emb, r);
    else if (emb) res = check_realization_rotation(g, emb->rotation, r);
    else res = check_planar(g, r);
    if (res.ok) {
        out << "ok: planar, lengths respected" << (emb ? ", embedding respected" : "") << "\n";
        return kExitOk;
    }
    out << "violation: " << res.reason << "\n";
    return kExitNo;
}

int cmd_realize(const RealizeArgs& a, std::ostream& out, std::ostream& err) {
    WeightedTwoTree g;
    std::optional<PlaneEmbedding> emb;
    RealizeMode mode;
    try {
        mode = parse_mode(a.mode);
        g = parse_instance(read_file(a.instance));
        if (!a.embedding.empty()) emb = parse_embedding(read_file(a.embedding), g.n);
    } catch (const std::exception& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    RealizeOutcome o;
    try {
        o = realize_dispatch(g, mode, emb, a.budget);
    } catch (const std::exception& e) {
        // Solver preconditions (wrong graph class for a forced mode) are input errors.
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    if (!o.note.empty()) err << "note: " << o.note << "\n";
    switch (o.status) {
        case RealizeOutcome::Status::budget_exceeded:
            out << "budget exceeded (" << o.solver << ")\n";
            return kExitBudget;
        case RealizeOutcome::Status::infeasible:
            out << "infeasible (" << o.solver << ")\n";
            return kExitNo;
        case RealizeOutcome::Status::realizable: break;
    }
    auto check = check_planar(g, *o.drawing);
    if (!check.ok) {
        err << "internal error: " << o.solver << " drawing fails the checker: " << check.reason << "\n";
        return kExitNo;
    }
    out << "realizable (" << o.solver << ")\n";
    try {
        if (!a.out.empty()) write_file(a.out, write_realization(*o.drawing));
        else out << write_realization(*o.drawing);
        if (!a.svg.empty()) write_file(a.svg, render_svg(g, *o.drawing));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}

int cmd_gen_hard(const GenHardArgs& a, std::ostream& out, std::ostream& err) {
    Formula f;
    MonotoneRectRep rep;
    try {
        f = parse_dimacs(read_file(a.formula));
        Formula padded = pad_monotone(f);
        if (a.auto_layout) {
            rep = transform_representation(auto_layout(padded), padded);
        } else {
            if (a.layout.empty()) throw std::runtime_error("a layout file is required (or --auto-layout)");
            rep = transform_representation(parse_layout(read_file(a.layout)), padded);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    HardInstance inst = reduce(f, rep);
    try {
        std::string text = write_instance(inst.gadget.g);
        if (a.out.empty()) {
            out << text;
        } else {
            write_file(a.out, text);
            write_file(a.out + ".prov", provenance_text(inst));
        }
        out << "# vertices " << inst.gadget.g.n << ", edges " << inst.gadget.g.edges.size() << "\n";
        if (!a.witness.empty()) {
            if (inst.formula.num_vars > 24) throw std::runtime_error("witness search limited to 24 variables");
            auto sol = brute_force_sat(inst.formula);
            if (!sol) {
                out << "# formula unsatisfiable; no witness written\n";
                return kExitNo;
            }
            write_file(a.witness, write_realization(witness_realization(inst, *sol)));
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------------------------
// Benchmarks

WeightedTwoTree bench_instance(const std::string& family, int size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int n = std::max(size, 4);
    if (family == "outerpath" || family == "uniform") return equilateral_strip(n, 1.0);
    if (family == "two-lengths") return leafy_big_strip(n, 1.0, 1.8);
    if (family == "outerpillar") {
        int spine = std::max(2, (2 * n) / 3 - 3);
        std::vector<bool> turns(spine), leaves(spine + 1);
        for (int i = 0; i < spine; ++i) turns[i] = i % 2 == 0;
        std::bernoulli_distribution coin(0.5);
        for (auto&& l : leaves) l = coin(rng);
        return with_uniform_length(outerpillar_shape(turns, leaves), 1.0);
    }
    if (family == "spq") {
        Shape s = random_shape(n, rng);
        std::uniform_int_distribution<int> pick(0, 3);
        const double lens[4] = {1.0, 1.2, 1.5, 1.9};
        for (int attempt = 0; attempt < 100; ++attempt) {
            std::vector<double> len(s.edges.size());
            for (auto& l : len) l = lens[pick(rng)];
            try {
                return with_lengths(s, len);
            } catch (const std::exception&) {
            }
        }
        return with_uniform_length(s, 1.0);
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

std::vector<BenchRow> run_bench(const std::string& family, const std::vector<int>& sizes, int repeats, std::uint64_t seed) {
    RealizeMode mode = family == "outerpath"     ? RealizeMode::outerpath
                       : family == "two-lengths" ? RealizeMode::two
                       : family == "outerpillar" ? RealizeMode::outerpillar
                       : family == "uniform"     ? RealizeMode::uniform
                                                 : RealizeMode::spq;
    std::vector<BenchRow> rows;
    for (int size : sizes) {
        auto g = bench_instance(family, size, seed);
        std::vector<double> times;
        bool ok = false;
        for (int r = 0; r < std::max(1, repeats); ++r) {
            auto t0 = std::chrono::steady_clock::now();
            auto o = realize_dispatch(g, mode, std::nullopt);
            auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            ok = o.status == RealizeOutcome::Status::realizable;
        }
        std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
        rows.push_back({size, g.n, times[times.size() / 2], ok});
    }
    return rows;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<BenchRow> rows;
    try {
        rows = run_bench(a.family, a.sizes, a.repeats, a.seed);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    out << std::left << std::setw(10) << "size" << std::setw(10) << "n" << std::setw(14) << "median_ms" << std::setw(10)
        << "ratio"
        << "realizable\n";
    double prev = 0;
    for (const auto& r : rows) {
        out << std::setw(10) << r.size << std::setw(10) << r.n << std::setw(14) << std::fixed << std::setprecision(3)
            << r.median_ms << std::setw(10);
        if (prev > 0) out << std::setprecision(2) << r.median_ms / prev;
        else out << "-";
        out << (r.realizable ? "yes" : "no") << "\n";
        prev = r.median_ms;
    }
    return kExitOk;
}

}  // namespace fepr
