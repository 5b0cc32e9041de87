#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "fepr/reduction.hpp"

namespace fepr {

namespace {

const double kRow = std::sqrt(3.0) / 2.0;  // lattice row height
constexpr double kTol = 1e-7;

// Rows between the upper variable line and the base of a first-level clause, and per extra level.
constexpr int kFirstLevelRows = 2;
constexpr int kLevelRows = 5;
// Empty columns between neighbouring variable boxes.
constexpr int kBoxGap = 3;

bool near(double a, double b) { return std::abs(a - b) <= kTol * (1.0 + std::abs(a) + std::abs(b)); }
bool near_int(double a) { return near(a, std::round(a)); }

[[noreturn]] void malformed(const std::string& what) { throw MalformedRepresentation(what); }

std::string trim_comment(const std::string& line) {
    auto p = line.find('#');
    return p == std::string::npos ? line : line.substr(0, p);
}

const RepClause* find_clause(const MonotoneRectRep& r, int index) {
    for (const auto& c : r.clauses)
        if (c.index == index) return &c;
    return nullptr;
}

const RepVariable* find_var(const MonotoneRectRep& r, int var) {
    for (const auto& v : r.variables)
        if (v.var == var) return &v;
    return nullptr;
}

double box_xl(const RepClause& c) { return std::min({c.corners[0].x, c.corners[1].x, c.corners[2].x, c.corners[3].x}); }
double box_xr(const RepClause& c) { return std::max({c.corners[0].x, c.corners[1].x, c.corners[2].x, c.corners[3].x}); }
double box_yb(const RepClause& c) { return std::min({c.corners[0].y, c.corners[1].y, c.corners[2].y, c.corners[3].y}); }
double box_yt(const RepClause& c) { return std::max({c.corners[0].y, c.corners[1].y, c.corners[2].y, c.corners[3].y}); }

RepClause axis_box(int index, bool positive, double xl, double xr, double yb, double yt) {
    RepClause c;
    c.index = index;
    c.positive = positive;
    c.corners = {Point{xl, yb}, Point{xr, yb}, Point{xr, yt}, Point{xl, yt}};
    return c;
}

// Adds copies of existing edges so every clause has one edge per padded literal.
MonotoneRectRep complete_edges(const MonotoneRectRep& raw, const Formula& padded) {
    MonotoneRectRep out = raw;
    out.edges.clear();
    std::map<int, std::vector<RepEdge>> by_clause;
    for (const auto& e : raw.edges) by_clause[e.clause].push_back(e);
    for (std::size_t ci = 0; ci < padded.clauses.size(); ++ci) {
        int idx = static_cast<int>(ci);
        const RepClause* rc = find_clause(raw, idx);
        if (!rc) malformed("P4: clause " + std::to_string(idx) + " has no box in the layout");
        std::map<int, int> need;
        for (int lit : padded.clauses[ci]) ++need[std::abs(lit)];
        bool positive = padded.clauses[ci].front() > 0;
        if (rc->positive != positive) malformed("P3: clause " + std::to_string(idx) + " is drawn on the wrong side");
        std::map<int, std::vector<RepEdge>> have;
        for (const auto& e : by_clause[idx]) have[e.var].push_back(e);
        for (auto& [var, list] : have)
            if (!need.count(var))
                malformed("P4: edge from variable " + std::to_string(var) + " to clause " + std::to_string(idx) +
                          " has no literal");
        for (auto& [var, cnt] : need) {
            auto it = have.find(var);
            if (it == have.end() || it->second.empty())
                malformed("P4: clause " + std::to_string(idx) + " misses its edge to variable " + std::to_string(var));
            auto& list = it->second;
            if (static_cast<int>(list.size()) > cnt)
                malformed("P4: clause " + std::to_string(idx) + " has too many edges to variable " +
                          std::to_string(var));
            while (static_cast<int>(list.size()) < cnt) list.push_back(list.back());
            for (auto& e : list) out.edges.push_back(e);
        }
    }
    if (out.clauses.size() != padded.clauses.size())
        malformed("P4: layout has " + std::to_string(out.clauses.size()) + " clause boxes for " +
                  std::to_string(padded.clauses.size()) + " clauses");
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Formulas

Formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Formula f;
    bool header = false;
    int declared = -1;
    std::vector<int> cur;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "%") break;
        if (tok == "p") {
            std::string kind;
            if (!(ls >> kind >> f.num_vars >> declared) || kind != "cnf" || f.num_vars < 0 || declared < 0)
                throw FormulaError("line " + std::to_string(lineno) + ": malformed problem line");
            header = true;
            continue;
        }
        if (!header) throw FormulaError("line " + std::to_string(lineno) + ": clause before the problem line");
        std::istringstream cs(line);
        long long lit;
        while (cs >> lit) {
            if (lit == 0) {
                f.clauses.push_back(cur);
                cur.clear();
                continue;
            }
            if (std::llabs(lit) > f.num_vars)
                throw FormulaError("line " + std::to_string(lineno) + ": literal " + std::to_string(lit) +
                                   " exceeds the variable count");
            cur.push_back(static_cast<int>(lit));
        }
        if (!cs.eof()) throw FormulaError("line " + std::to_string(lineno) + ": expected integers");
    }
    if (!header) throw FormulaError("missing problem line");
    if (!cur.empty()) throw FormulaError("last clause is not terminated by 0");
    if (static_cast<int>(f.clauses.size()) != declared)
        throw FormulaError("problem line declares " + std::to_string(declared) + " clauses, found " +
                           std::to_string(f.clauses.size()));
    return f;
}

Formula pad_monotone(const Formula& f) {
    Formula out = f;
    for (std::size_t i = 0; i < out.clauses.size(); ++i) {
        auto& c = out.clauses[i];
        if (c.empty()) throw FormulaError("clause " + std::to_string(i) + " is empty");
        if (c.size() > 3) throw FormulaError("clause " + std::to_string(i) + " has more than three literals");
        bool pos = c.front() > 0;
        for (int lit : c)
            if ((lit > 0) != pos) throw FormulaError("clause " + std::to_string(i) + " is not monotone");
        while (c.size() < 3) c.push_back(c.back());
    }
    return out;
}

bool satisfies(const Formula& f, const std::vector<bool>& a) {
    for (const auto& c : f.clauses) {
        bool ok = false;
        for (int lit : c) {
            int v = std::abs(lit);
            if (v < static_cast<int>(a.size()) && a[v] == (lit > 0)) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

std::optional<std::vector<bool>> brute_force_sat(const Formula& f) {
    if (f.num_vars > 24) throw BadParameter("brute force limited to 24 variables");
    std::vector<bool> a(f.num_vars + 1, false);
    for (unsigned long long mask = 0; mask < (1ULL << f.num_vars); ++mask) {
        for (int v = 1; v <= f.num_vars; ++v) a[v] = (mask >> (v - 1)) & 1ULL;
        if (satisfies(f, a)) return a;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Layout files

MonotoneRectRep parse_layout(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    MonotoneRectRep r;
    struct PendingEdge {
        int var, clause;
        double x;
        int line;
    };
    std::vector<PendingEdge> pending;
    std::vector<std::pair<int, std::pair<double, double>>> vars;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(trim_comment(line));
        std::string tok;
        if (!(ls >> tok)) continue;
        auto fail = [&](const std::string& why) {
            malformed("layout line " + std::to_string(lineno) + ": " + why);
        };
        if (tok == "layout") {
            int version = 0;
            if (!(ls >> version) || version != 1) fail("unsupported layout version");
            header = true;
        } else if (!header) {
            fail("missing 'layout 1' header");
        } else if (tok == "var") {
            int id;
            double xl, xr;
            if (!(ls >> id >> xl >> xr) || !(xl < xr)) fail("expected 'var <id> <xl> <xr>' with xl < xr");
            vars.push_back({id, {xl, xr}});
        } else if (tok == "clause") {
            int idx;
            std::string sign;
            double xl, xr, yb, yt;
            if (!(ls >> idx >> sign >> xl >> xr >> yb >> yt) || (sign != "+" && sign != "-") || !(xl < xr) ||
                !(yb < yt))
                fail("expected 'clause <idx> <+|-> <xl> <xr> <yb> <yt>'");
            r.clauses.push_back(axis_box(idx, sign == "+", xl, xr, yb, yt));
        } else if (tok == "edge") {
            int v, c;
            double x;
            if (!(ls >> v >> c >> x)) fail("expected 'edge <var> <clause> <x>'");
            pending.push_back({v, c, x, lineno});
        } else {
            fail("unknown record '" + tok + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
    }
    if (!header) malformed("missing 'layout 1' header");
    if (r.clauses.empty()) malformed("layout has no clauses");
    double h = box_yt(r.clauses.front()) - box_yb(r.clauses.front());
    for (auto& [id, x] : vars) r.variables.push_back({id, x.first, x.second, 0.0, h});
    for (const auto& p : pending) {
        const RepClause* c = find_clause(r, p.clause);
        if (!c) malformed("layout line " + std::to_string(p.line) + ": unknown clause " + std::to_string(p.clause));
        RepEdge e;
        e.var = p.var;
        e.clause = p.clause;
        e.from = {p.x, c->positive ? h : 0.0};
        e.to = {p.x, c->positive ? box_yb(*c) : box_yt(*c)};
        r.edges.push_back(e);
    }
    return r;
}

std::string write_layout(const MonotoneRectRep& raw) {
    std::ostringstream out;
    out.precision(17);
    out << "layout 1\n";
    for (const auto& v : raw.variables) out << "var " << v.var << ' ' << v.xl << ' ' << v.xr << '\n';
    for (const auto& c : raw.clauses)
        out << "clause " << c.index << ' ' << (c.positive ? '+' : '-') << ' ' << box_xl(c) << ' ' << box_xr(c) << ' '
            << box_yb(c) << ' ' << box_yt(c) << '\n';
    for (const auto& e : raw.edges) out << "edge " << e.var << ' ' << e.clause << ' ' << e.from.x << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------------------------
// Raw properties

void check_p_properties(const MonotoneRectRep& raw) {
    if (raw.clauses.empty()) malformed("P1: no clauses");
    double h = box_yt(raw.clauses.front()) - box_yb(raw.clauses.front());
    for (const auto& c : raw.clauses)
        if (!near(box_yt(c) - box_yb(c), h)) malformed("P1: clause " + std::to_string(c.index) + " has a different height");
    for (const auto& v : raw.variables)
        if (!near(v.yb, 0.0) || !near(v.yt, h)) malformed("P1: variable " + std::to_string(v.var) + " box is not [0, h]");
    auto vs = raw.variables;
    std::sort(vs.begin(), vs.end(), [](const RepVariable& a, const RepVariable& b) { return a.xl < b.xl; });
    for (std::size_t i = 1; i < vs.size(); ++i)
        if (vs[i].xl <= vs[i - 1].xr) malformed("P2: variable boxes " + std::to_string(vs[i - 1].var) + " and " + std::to_string(vs[i].var) + " overlap");
    std::set<int> seen;
    for (const auto& v : raw.variables)
        if (!seen.insert(v.var).second) malformed("P2: variable " + std::to_string(v.var) + " listed twice");
    seen.clear();
    for (const auto& c : raw.clauses) {
        if (!seen.insert(c.index).second) malformed("P3: clause " + std::to_string(c.index) + " listed twice");
        if (c.positive && !(box_yb(c) > h)) malformed("P3: positive clause " + std::to_string(c.index) + " is not above the variables");
        if (!c.positive && !(box_yt(c) < 0.0)) malformed("P3: negative clause " + std::to_string(c.index) + " is not below the variables");
    }
    for (std::size_t i = 0; i < raw.clauses.size(); ++i)
        for (std::size_t j = i + 1; j < raw.clauses.size(); ++j) {
            const auto &a = raw.clauses[i], &b = raw.clauses[j];
            if (box_xl(a) <= box_xr(b) && box_xl(b) <= box_xr(a) && box_yb(a) <= box_yt(b) && box_yb(b) <= box_yt(a))
                malformed("P5: clause boxes " + std::to_string(a.index) + " and " + std::to_string(b.index) + " intersect");
        }
    for (std::size_t i = 0; i < raw.edges.size(); ++i) {
        const auto& e = raw.edges[i];
        const RepVariable* v = find_var(raw, e.var);
        const RepClause* c = find_clause(raw, e.clause);
        std::string id = "edge " + std::to_string(e.var) + "-" + std::to_string(e.clause);
        if (!v || !c) malformed("P4: " + id + " references an unknown box");
        if (!near(e.from.x, e.to.x)) malformed("P4: " + id + " is not vertical");
        double x = e.from.x;
        if (x < v->xl || x > v->xr) malformed("P4: " + id + " leaves its variable box");
        if (x < box_xl(*c) || x > box_xr(*c)) malformed("P4: " + id + " misses its clause box");
        double y0 = c->positive ? h : box_yt(*c), y1 = c->positive ? box_yb(*c) : 0.0;
        if (!near(e.from.y, c->positive ? h : 0.0) || !near(e.to.y, c->positive ? box_yb(*c) : box_yt(*c)))
            malformed("P4: " + id + " does not join the facing box sides");
        for (const auto& o : raw.clauses) {
            if (o.index == c->index) continue;
            if (x >= box_xl(o) && x <= box_xr(o) && box_yb(o) <= y1 && y0 <= box_yt(o))
                malformed("P5: " + id + " crosses clause box " + std::to_string(o.index));
        }
        for (std::size_t j = i + 1; j < raw.edges.size(); ++j) {
            const auto& f = raw.edges[j];
            if (!near(f.from.x, x)) continue;
            if (f.var == e.var && f.clause == e.clause) continue;  // padding duplicate
            const RepClause* d = find_clause(raw, f.clause);
            if (d && d->positive == c->positive) malformed("P5: edges at x=" + std::to_string(x) + " overlap");
        }
    }
}

void check_p_properties(const MonotoneRectRep& raw, const Formula& padded) {
    check_p_properties(raw);
    for (int v = 1; v <= padded.num_vars; ++v)
        if (!find_var(raw, v)) malformed("P2: variable " + std::to_string(v) + " has no box");
    complete_edges(raw, padded);
}

// ---------------------------------------------------------------------------------------------
// Automatic raw layouts

MonotoneRectRep auto_layout(const Formula& padded) {
    struct Info {
        int idx;
        bool positive;
        int lo, hi;
        std::vector<int> vars;  // sorted literal variables
        int level = 0;
    };
    std::vector<Info> cl;
    for (std::size_t i = 0; i < padded.clauses.size(); ++i) {
        Info in;
        in.idx = static_cast<int>(i);
        in.positive = padded.clauses[i].front() > 0;
        for (int lit : padded.clauses[i]) in.vars.push_back(std::abs(lit));
        std::sort(in.vars.begin(), in.vars.end());
        in.lo = in.vars.front();
        in.hi = in.vars.back();
        cl.push_back(in);
    }
    auto point = [](const Info& a) { return a.lo == a.hi; };
    // Containment as drawn: point clauses sit outside clauses that start or end at their variable.
    auto inside = [&](const Info& b, const Info& a) {
        if (&a == &b || a.positive != b.positive) return false;
        if (point(b) && point(a)) return a.lo == b.lo && a.idx > b.idx;
        if (point(b)) return a.lo < b.lo && b.lo < a.hi;
        return a.lo <= b.lo && b.hi <= a.hi && !(a.lo == b.lo && a.hi == b.hi);
    };
    for (const auto& a : cl)
        for (const auto& b : cl) {
            if (&a == &b || a.positive != b.positive) continue;
            if (!point(a) && !point(b) && a.lo == b.lo && a.hi == b.hi)
                malformed("clauses " + std::to_string(a.idx) + " and " + std::to_string(b.idx) + " span the same variables");
            bool cross = (a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) || (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi);
            if (cross) malformed("clauses " + std::to_string(a.idx) + " and " + std::to_string(b.idx) + " interleave");
            if (inside(b, a) && !point(b))
                for (int v : a.vars)
                    if (b.lo < v && v < b.hi)
                        malformed("clause " + std::to_string(a.idx) + " has an edge inside clause " + std::to_string(b.idx));
        }
    // Levels: one more than the highest contained clause.
    std::vector<int> order(cl.size());
    for (std::size_t i = 0; i < cl.size(); ++i) order[i] = static_cast<int>(i);
    std::function<int(int)> level = [&](int i) {
        if (cl[i].level > 0) return cl[i].level;
        int lv = 1;
        for (std::size_t j = 0; j < cl.size(); ++j)
            if (inside(cl[j], cl[i])) lv = std::max(lv, level(static_cast<int>(j)) + 1);
        return cl[i].level = lv;
    };
    for (std::size_t i = 0; i < cl.size(); ++i) level(static_cast<int>(i));

    // Edge order per (variable, side).
    MonotoneRectRep r;
    const double h = 1.0;
    std::map<std::pair<int, bool>, std::vector<std::pair<int, int>>> at;  // (var, side) -> (clause, occurrence)
    for (int v = 1; v <= padded.num_vars; ++v)
        for (bool side : {true, false}) {
            std::vector<int> left, pass, right, pts;
            for (std::size_t i = 0; i < cl.size(); ++i) {
                const Info& c = cl[i];
                if (c.positive != side || std::find(c.vars.begin(), c.vars.end(), v) == c.vars.end()) continue;
                if (point(c)) pts.push_back(static_cast<int>(i));
                else if (c.hi == v) left.push_back(static_cast<int>(i));
                else if (c.lo == v) right.push_back(static_cast<int>(i));
                else pass.push_back(static_cast<int>(i));
            }
            auto size = [&](int i) { return cl[i].hi - cl[i].lo; };
            std::sort(left.begin(), left.end(), [&](int a, int b) { return size(a) < size(b); });
            std::sort(right.begin(), right.end(), [&](int a, int b) { return size(a) > size(b); });
            std::sort(pts.begin(), pts.end(), [&](int a, int b) { return cl[a].idx > cl[b].idx; });  // outermost first
            auto& seq = at[{v, side}];
            auto emit_all = [&](int i) {
                int k = static_cast<int>(std::count(cl[i].vars.begin(), cl[i].vars.end(), v));
                for (int t = 0; t < k; ++t) seq.push_back({i, t});
            };
            for (int i : left) emit_all(i);
            // Nested point clauses: outer first edge, inner block, outer remaining edges.
            std::function<void(std::size_t)> nest = [&](std::size_t k) {
                if (k == pts.size()) return;
                seq.push_back({pts[k], 0});
                nest(k + 1);
                seq.push_back({pts[k], 1});
                seq.push_back({pts[k], 2});
            };
            nest(0);
            for (int i : pass) emit_all(i);
            for (int i : right) emit_all(i);
        }
    std::size_t widest = 1;
    for (auto& [key, seq] : at) widest = std::max(widest, seq.size());
    double pitch = static_cast<double>(widest) + 2.0;
    for (int v = 1; v <= padded.num_vars; ++v) r.variables.push_back({v, pitch * v, pitch * v + widest + 1.0, 0.0, h});
    std::map<int, std::vector<double>> xs;
    for (auto& [key, seq] : at)
        for (std::size_t k = 0; k < seq.size(); ++k) {
            int i = seq[k].first;
            double x = pitch * key.first + 1.0 + static_cast<double>(k);
            xs[i].push_back(x);
            RepEdge e;
            e.var = key.first;
            e.clause = cl[i].idx;
            e.from = {x, key.second ? h : 0.0};
            e.to = {x, key.second ? h + 2.0 * cl[i].level : -2.0 * cl[i].level};
            r.edges.push_back(e);
        }
    for (std::size_t i = 0; i < cl.size(); ++i) {
        auto [lo, hi] = std::minmax_element(xs[static_cast<int>(i)].begin(), xs[static_cast<int>(i)].end());
        double yb = cl[i].positive ? h + 2.0 * cl[i].level : -2.0 * cl[i].level - h;
        r.clauses.push_back(axis_box(cl[i].idx, cl[i].positive, *lo, *hi, yb, yb + h));
    }
    std::sort(r.clauses.begin(), r.clauses.end(), [](const RepClause& a, const RepClause& b) { return a.index < b.index; });
    check_p_properties(r, padded);
    return r;
}

// ---------------------------------------------------------------------------------------------
// Transformation

Point shear_point(Point p, double y_line, int dir) {
    double d = dir > 0 ? p.y - y_line : y_line - p.y;
    if (d <= 0.0) return p;
    return {p.x + d / std::sqrt(3.0), p.y};
}

MonotoneRectRep transform_representation(const MonotoneRectRep& raw, const Formula& padded) {
    check_p_properties(raw, padded);
    return transform_representation(complete_edges(raw, padded));
}

MonotoneRectRep transform_representation(const MonotoneRectRep& raw) {
    check_p_properties(raw);
    std::map<int, int> per_clause;
    for (const auto& e : raw.edges) ++per_clause[e.clause];
    for (const auto& c : raw.clauses)
        if (per_clause[c.index] != 3) malformed("P4: clause " + std::to_string(c.index) + " needs exactly three edges");

    auto vars = raw.variables;
    std::sort(vars.begin(), vars.end(), [](const RepVariable& a, const RepVariable& b) { return a.xl < b.xl; });
    std::map<int, bool> positive;
    for (const auto& c : raw.clauses) positive[c.index] = c.positive;

    // Slot offsets (relative to the box's left side) per edge.
    std::vector<int> offset(raw.edges.size(), 0);
    int need = 0;
    for (const auto& v : vars)
        for (bool side : {true, false}) {
            std::vector<int> ids;
            for (std::size_t i = 0; i < raw.edges.size(); ++i)
                if (raw.edges[i].var == v.var && positive[raw.edges[i].clause] == side) ids.push_back(static_cast<int>(i));
            std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return raw.edges[a].from.x < raw.edges[b].from.x; });
            int off = 0;
            for (std::size_t k = 0; k < ids.size(); ++k) {
                if (k > 0) off += raw.edges[ids[k]].clause == raw.edges[ids[k - 1]].clause ? 4 : 2;
                offset[ids[k]] = off;
            }
            need = std::max(need, off / 2 + 1);
        }
    int delta = std::max(3, need);
    const double ytop = 2.0 * (delta - 1) * kRow;

    // Truth-edge columns, boxes [X+1-delta, X+delta].
    std::map<int, int> column;
    int x = delta - 1;
    for (const auto& v : vars) {
        column[v.var] = x;
        x += 2 * delta - 1 + kBoxGap;
    }
    // Levels from the raw vertical order, per side.
    std::set<double> pos_levels, neg_levels;
    for (const auto& c : raw.clauses) (c.positive ? pos_levels : neg_levels).insert(c.positive ? box_yb(c) : -box_yt(c));
    auto rows_of = [&](const RepClause& c) {
        const auto& s = c.positive ? pos_levels : neg_levels;
        double key = c.positive ? box_yb(c) : -box_yt(c);
        int rank = static_cast<int>(std::distance(s.begin(), s.find(key)));
        return kFirstLevelRows + kLevelRows * rank;
    };

    // Intermediate layout: vertical edges, boxes; then the shear.
    MonotoneRectRep out;
    out.delta = delta;
    for (const auto& v : vars) {
        int X = column[v.var];
        out.variables.push_back({v.var, double(X + 1 - delta), double(X + delta), -ytop, ytop});
    }
    std::map<int, std::vector<double>> edge_x;
    for (std::size_t i = 0; i < raw.edges.size(); ++i) {
        const auto& e = raw.edges[i];
        const RepClause* c = find_clause(raw, e.clause);
        double ex = column[e.var] + 1 - delta + offset[i];
        double yb = ytop + rows_of(*c) * kRow;
        RepEdge o;
        o.var = e.var;
        o.clause = e.clause;
        o.from = {ex, c->positive ? ytop : -ytop};
        o.to = {ex, c->positive ? yb : -yb};
        out.edges.push_back(o);
        edge_x[e.clause].push_back(ex);
    }
    for (const auto& c : raw.clauses) {
        auto& xs = edge_x[c.index];
        std::sort(xs.begin(), xs.end());
        double base = ytop + rows_of(c) * kRow;
        double top = base + 4.0 * kRow;
        RepClause o = c.positive ? axis_box(c.index, true, xs.front(), xs.back() + 1.0, base, top)
                                 : axis_box(c.index, false, xs.front(), xs.back() + 1.0, -top, -base);
        out.clauses.push_back(o);
    }
    auto shear = [&](Point p) { return p.y > ytop ? shear_point(p, ytop, 1) : shear_point(p, -ytop, -1); };
    for (auto& c : out.clauses)
        for (auto& p : c.corners) p = shear(p);
    for (auto& e : out.edges) {
        e.from = shear(e.from);
        e.to = shear(e.to);
    }
    std::sort(out.clauses.begin(), out.clauses.end(), [](const RepClause& a, const RepClause& b) { return a.index < b.index; });
    check_d_properties(out);
    return out;
}

void check_d_properties(const MonotoneRectRep& rep) {
    auto on_lattice = [](Point p) {
        double j = p.y / kRow;
        return near_int(j) && near_int(p.x - std::round(j) / 2.0);
    };
    auto lattice_fail = [](const std::string& what, Point p) {
        malformed("D1: " + what + " at (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is off the grid");
    };
    int delta = rep.delta;
    if (delta < 2) malformed("D3: delta must be at least 2");
    const double ytop = 2.0 * (delta - 1) * kRow;
    double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
    for (const auto& v : rep.variables) {
        for (Point p : {Point{v.xl, v.yb}, Point{v.xr, v.yt}})
            if (!on_lattice(p)) lattice_fail("variable " + std::to_string(v.var) + " corner", p);
        if (!near(v.xr - v.xl, 2.0 * delta - 1.0)) malformed("D3: variable " + std::to_string(v.var) + " has width " + std::to_string(v.xr - v.xl));
        if (!near(v.yt - v.yb, 2.0 * std::sqrt(3.0) * (delta - 1)))
            malformed("D3: variable " + std::to_string(v.var) + " has the wrong height");
        if (!near(v.yb, -ytop)) malformed("D3: variable " + std::to_string(v.var) + " is off the common bottom line");
        minx = std::min(minx, v.xl);
        maxx = std::max(maxx, v.xr);
    }
    for (const auto& c : rep.clauses) {
        std::string id = "clause " + std::to_string(c.index);
        for (Point p : c.corners) {
            if (!on_lattice(p)) lattice_fail(id + " corner", p);
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        Point bl = c.corners[0], br = c.corners[1], tr = c.corners[2], tl = c.corners[3];
        if (!near(bl.y, br.y) || !near(tl.y, tr.y)) malformed("D4: " + id + " has non-horizontal sides");
        if (!near(tl.y - bl.y, 2.0 * std::sqrt(3.0))) malformed("D4: " + id + " has the wrong height");
        double slope = (tl.x - bl.x) * (c.positive ? 1.0 : -1.0);
        if (!near(slope, 2.0) || !near(tr.x - br.x, tl.x - bl.x)) malformed("D4: " + id + " lateral sides are not at 60 degrees");
        if (br.x - bl.x < 8.0 - kTol || !near(br.x - bl.x, tr.x - tl.x)) malformed("D4: " + id + " horizontal sides are shorter than 8");
        if (c.positive && !(bl.y > ytop)) malformed("D4: " + id + " is not above the variables");
        if (!c.positive && !(tl.y < -ytop)) malformed("D4: " + id + " is not below the variables");
        // D7 on the side facing the variables.
        Point left = c.positive ? bl : tl, right = c.positive ? br : tr;
        std::vector<double> ps;
        for (const auto& e : rep.edges)
            if (e.clause == c.index) {
                if (!near(e.to.y, left.y)) malformed("D7: an edge of " + id + " misses its base");
                ps.push_back(e.to.x);
            }
        if (ps.size() != 3) malformed("D7: " + id + " has " + std::to_string(ps.size()) + " edges");
        std::sort(ps.begin(), ps.end());
        if (!near(ps[0], left.x)) malformed("D7: first edge of " + id + " is not at the base corner");
        if (ps[1] - ps[0] < 3.0 - kTol) malformed("D7: " + id + " first gap below 3");
        if (ps[2] - ps[1] < 4.0 - kTol) malformed("D7: " + id + " second gap below 4");
        if (!near(right.x - ps[2], 1.0)) malformed("D7: " + id + " last edge is not one unit from the corner");
    }
    for (const auto& e : rep.edges) {
        std::string id = "edge " + std::to_string(e.var) + "-" + std::to_string(e.clause);
        if (!on_lattice(e.from)) lattice_fail(id + " start", e.from);
        if (!on_lattice(e.to)) lattice_fail(id + " end", e.to);
        double dx = e.to.x - e.from.x, dy = e.to.y - e.from.y;
        if (!(dx > 0) || !near(std::abs(dy), std::sqrt(3.0) * dx)) malformed("D5: " + id + " does not have slope 60 degrees");
        const RepVariable* v = find_var(rep, e.var);
        if (!v) malformed("D6: " + id + " has no variable box");
        double off = e.from.x - v->xl;
        if (!near_int(off / 2.0) || off < -kTol || off > 2.0 * delta - 2.0 + kTol)
            malformed("D6: " + id + " is not at an even offset inside its box");
        if (!near(std::abs(e.from.y), ytop)) malformed("D6: " + id + " does not start on the variable side");
    }
    // Polynomial area: the grid bounding box grows at most quadratically with the layout.
    double items = static_cast<double>(rep.variables.size() + rep.clauses.size() + 1);
    double span = std::max(maxx - minx, maxy - miny);
    if (span > 64.0 * delta * items * items) malformed("D2: layout area is not polynomially bounded");
}

}  // namespace fepr
