#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fepr/checker.hpp"
#include "fepr/reduction.hpp"
#include "fepr/two_sat.hpp"

namespace fepr {

Point LatticePoint::point() const { return {a / 2.0, j * std::sqrt(3.0) / 2.0}; }

namespace {

using LP = LatticePoint;
using Cell = std::array<LP, 3>;
using LEdge = std::pair<LP, LP>;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

Cell U(int a, int j) { return {LP{a, j}, LP{a + 2, j}, LP{a + 1, j + 1}}; }
Cell D(int a, int j) { return {LP{a, j}, LP{a - 1, j + 1}, LP{a + 1, j + 1}}; }

LEdge edge_key(LP p, LP q) { return p < q ? LEdge{p, q} : LEdge{q, p}; }

// Lattice placement (a, j) -> (a + da, s * (j + dj)), s = -1 when mirrored.
struct Xf {
    int da = 0, dj = 0;
    bool mirror = false;
    LP operator()(LP p) const {
        int j = p.j + dj;
        return {p.a + da, mirror ? -j : j};
    }
    Cell operator()(const Cell& c) const { return {(*this)(c[0]), (*this)(c[1]), (*this)(c[2])}; }
    LEdge operator()(const LEdge& e) const { return {(*this)(e.first), (*this)(e.second)}; }
    // Translate in local coordinates first.
    Xf shifted(int a, int j) const { return {da + a, dj + j, mirror}; }
};

struct LeafSpec {
    LEdge e;
    LeafKind kind;
    LP w2_end;  // scalene only
    std::string tag;
};

struct FlagSpec {
    LP b, c;
    bool mirrored;
    std::string tag;
};

// Accumulates lattice cells and leaves; vertices at equal lattice points are identified, and each
// frame edge keeps the first leaf put on it.
class Builder {
public:
    void cell(const Cell& c, const std::string& tag, const std::string& name = {}) {
        auto key = sorted(c);
        if (cell_index_.count(key)) throw std::logic_error("lattice cell used twice: " + tag);
        cell_index_[key] = cells_.size();
        cells_.push_back(c);
        cell_tags_.push_back(tag);
        if (!name.empty()) named_cells_[name] = c;
    }
    void leaf(LP p, LP q, const std::string& tag) { leaf_impl(p, q, LeafKind::transmission, {}, tag); }
    void scalene(LP p, LP q, LP w2_end, const std::string& tag) { leaf_impl(p, q, LeafKind::scalene, w2_end, tag); }
    void shared_leaf(const Cell& x, const Cell& y, const std::string& tag) {
        std::vector<LP> common;
        for (LP p : x)
            if (std::find(y.begin(), y.end(), p) != y.end()) common.push_back(p);
        if (common.size() != 2) throw std::logic_error("cells do not share an edge: " + tag);
        leaf(common[0], common[1], tag);
    }
    void extra_edge(LP p, LP q) { extra_.insert(edge_key(p, q)); }
    void flag(LP b, LP c, bool mirrored, const std::string& tag) { flags_.push_back({b, c, mirrored, tag}); }
    void attach(const std::string& name, LEdge e) { attach_[name] = e; }
    void note(std::string line) { notes_.push_back(std::move(line)); }

    // Cells in order, a leaf on every consecutive shared edge.
    void chain(const std::vector<Cell>& cs, const std::string& tag) {
        for (const auto& c : cs) cell(c, tag);
        for (std::size_t i = 1; i < cs.size(); ++i) shared_leaf(cs[i - 1], cs[i], tag);
    }

    Gadget build() const;

private:
    static Cell sorted(Cell c) {
        std::sort(c.begin(), c.end());
        return c;
    }
    void leaf_impl(LP p, LP q, LeafKind kind, LP w2_end, const std::string& tag) {
        auto key = edge_key(p, q);
        if (leaf_index_.count(key)) return;
        leaf_index_[key] = leaves_.size();
        leaves_.push_back({key, kind, w2_end, tag});
    }

    std::vector<Cell> cells_;
    std::vector<std::string> cell_tags_;
    std::map<Cell, std::size_t> cell_index_;
    std::map<std::string, Cell> named_cells_;
    std::vector<LeafSpec> leaves_;
    std::map<LEdge, std::size_t> leaf_index_;
    std::set<LEdge> extra_;
    std::vector<FlagSpec> flags_;
    std::map<std::string, LEdge> attach_;
    std::vector<std::string> notes_;
};

Gadget Builder::build() const {
    std::map<LP, int> id;
    for (const auto& c : cells_)
        for (LP p : c) id.emplace(p, 0);
    for (const auto& e : extra_) {
        id.emplace(e.first, 0);
        id.emplace(e.second, 0);
    }
    int n = 0;
    for (auto& [p, v] : id) v = n++;
    const int frame_n = n;

    std::set<std::pair<int, int>> frame_edges;
    auto add_frame = [&](LP p, LP q) {
        int u = id.at(p), v = id.at(q);
        frame_edges.emplace(std::min(u, v), std::max(u, v));
    };
    for (const auto& c : cells_) {
        add_frame(c[0], c[1]);
        add_frame(c[1], c[2]);
        add_frame(c[0], c[2]);
    }
    for (const auto& e : extra_) add_frame(e.first, e.second);

    std::vector<RawEdge> raw;
    for (auto [u, v] : frame_edges) raw.emplace_back(u, v, kW1);

    Gadget gd;
    for (const auto& s : leaves_) {
        auto it_u = id.find(s.e.first), it_v = id.find(s.e.second);
        if (it_u == id.end() || it_v == id.end()) throw std::logic_error("leaf off the frame: " + s.tag);
        int u = it_u->second, v = it_v->second, w = n++;
        double lu = kW2, lv = kW2;
        if (s.kind == LeafKind::scalene) (s.w2_end == s.e.first ? lv : lu) = kW3;
        raw.emplace_back(u, w, lu);
        raw.emplace_back(v, w, lv);
        gd.leaves.push_back({std::min(u, v), std::max(u, v), w, s.kind, s.tag});
    }
    for (const auto& f : flags_) {
        FlagInfo info;
        info.mirrored = f.mirrored;
        info.tag = f.tag;
        auto it = leaf_index_.find(edge_key(f.b, f.c));
        if (it == leaf_index_.end()) throw std::logic_error("flag edge carries no leaf: " + f.tag);
        int a = gd.leaves[it->second].apex, b = id.at(f.b), c = id.at(f.c);
        int d = n, ff = n + 1, g = n + 2, h = n + 3, i = n + 4, l = n + 5, m = n + 6, nn = n + 7;
        n += 8;
        info.v = {a, b, c, d, ff, g, h, i, l, m, nn};
        const std::vector<RawEdge> fe = {
            {d, b, kW4},  {d, c, kW4},  {ff, d, kW2}, {ff, c, kW2}, {g, d, kW4}, {g, c, kW4},
            {h, g, kW1},  {h, c, kW1},  {i, h, kW3},  {i, g, kW1},  {l, i, kW3}, {l, g, kW1},
            {m, h, kW3},  {m, c, kW1},  {nn, m, kW3}, {nn, c, kW1},
        };
        raw.insert(raw.end(), fe.begin(), fe.end());
        gd.flags.push_back(info);
    }

    gd.g = validate_2tree(n, raw);
    gd.frame.assign(n, Point{kNaN, kNaN});
    gd.lattice.assign(n, LP{});
    for (auto [p, v] : id) {
        gd.frame[v] = p.point();
        gd.lattice[v] = p;
    }
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        Triple t{id.at(cells_[k][0]), id.at(cells_[k][1]), id.at(cells_[k][2])};
        std::sort(t.begin(), t.end());
        gd.frame_triangles.push_back(t);
        gd.frame_tags.push_back(cell_tags_[k]);
    }
    for (const auto& [name, c] : named_cells_) {
        Triple t{id.at(c[0]), id.at(c[1]), id.at(c[2])};
        std::sort(t.begin(), t.end());
        gd.cells[name] = t;
    }
    for (const auto& [name, e] : attach_) {
        int u = id.at(e.first), v = id.at(e.second);
        gd.attachments[name] = {std::min(u, v), std::max(u, v)};
    }
    gd.metadata = notes_;
    gd.metadata.push_back("frame_vertices " + std::to_string(frame_n));
    return gd;
}

// ---------------------------------------------------------------------------------------------
// Gadget pieces written into a builder under a lattice placement.

// 60-degree strip of k cells whose first cell has its base at LP(a0, j0).
std::vector<Cell> strip_cells(int a0, int j0, int k) {
    std::vector<Cell> cs;
    for (int t = 0; t < k; ++t) {
        int r = t / 2;
        cs.push_back(t % 2 == 0 ? U(a0 + r, j0 + r) : D(a0 + r + 2, j0 + r));
    }
    return cs;
}

// Straight transmission of k cells: IN on the first base, OUT on the last top.
void add_strip_transmission(Builder& B, const Xf& x, int a0, int j0, int k, const std::string& tag,
                            LEdge* in = nullptr, LEdge* out = nullptr) {
    auto local = strip_cells(a0, j0, k);
    std::vector<Cell> cs;
    for (const auto& c : local) cs.push_back(x(c));
    B.chain(cs, tag);
    LEdge ein = x(LEdge{LP{a0, j0}, LP{a0 + 2, j0}});
    const Cell& last = local.back();
    LEdge eout = x(LEdge{last[1], last[2]});
    B.leaf(ein.first, ein.second, tag);
    B.leaf(eout.first, eout.second, tag);
    if (in) *in = ein;
    if (out) *out = eout;
}

struct SplitEdges {
    LEdge in, out1, out2;
    Cell s, t1, t2;
};

SplitEdges add_split(Builder& B, const Xf& x, const std::string& tag) {
    const Cell s = U(0, 0), l2 = D(0, 0), l3 = U(-1, 1), l4 = D(-1, 1), r2 = D(2, 0), r3 = U(1, 1), r4 = D(3, 1);
    for (const Cell& c : {s, l2, l3, l4, r2, r3, r4}) B.cell(x(c), tag);
    const LP top = x(LP{1, 1});
    B.leaf(x(LP{0, 0}), x(LP{2, 0}), tag);
    B.scalene(x(LP{0, 0}), top, top, tag);
    B.scalene(x(LP{2, 0}), top, top, tag);
    B.shared_leaf(x(l2), x(l3), tag);
    B.shared_leaf(x(l3), x(l4), tag);
    B.leaf(x(LP{-2, 2}), x(LP{0, 2}), tag);
    B.shared_leaf(x(r2), x(r3), tag);
    B.shared_leaf(x(r3), x(r4), tag);
    B.leaf(x(LP{2, 2}), x(LP{4, 2}), tag);
    return {x(LEdge{LP{0, 0}, LP{2, 0}}), x(LEdge{LP{-2, 2}, LP{0, 2}}), x(LEdge{LP{2, 2}, LP{4, 2}}),
            x(s), x(l4), x(r4)};
}

struct VariableParts {
    LEdge truth;
    Cell s_upper, s_lower;
    std::vector<LEdge> top, bottom;
    std::vector<Cell> top_t, bottom_t;
};

// Variable around the truth edge LP(0,0)-(2,0) of the placement `base` (not mirrored).
VariableParts add_variable(Builder& B, const Xf& base, int delta, const std::string& tag) {
    if (delta < 2) throw BadParameter("variable gadget needs delta >= 2");
    VariableParts vp;
    for (int half = 0; half < 2; ++half) {
        Xf hx = half == 0 ? base : Xf{base.da, -base.dj, true};
        const std::string htag = tag + (half == 0 ? ".upper" : ".lower");
        std::vector<LEdge> slots(delta);
        std::vector<Cell> slot_cells(delta);
        for (int i = delta - 1; i >= 1; --i) {
            int q = delta - 1 - i;
            auto se = add_split(B, hx.shifted(-2 * q, 2 * q), htag + ".s" + std::to_string(i));
            if (i == delta - 1) (half == 0 ? vp.s_upper : vp.s_lower) = se.s;
            if (i == 1) {
                slots[0] = se.out1;
                slot_cells[0] = se.t1;
                slots[1] = se.out2;
                slot_cells[1] = se.t2;
            } else {
                LEdge out;
                add_strip_transmission(B, hx, -2 * q + 2, 2 * q + 2, 4 * (i - 1), htag + ".t" + std::to_string(i), nullptr, &out);
                slots[i] = out;
                auto local = strip_cells(-2 * q + 2, 2 * q + 2, 4 * (i - 1));
                slot_cells[i] = hx(local.back());
            }
        }
        (half == 0 ? vp.top : vp.bottom) = slots;
        (half == 0 ? vp.top_t : vp.bottom_t) = slot_cells;
    }
    vp.truth = base(LEdge{LP{0, 0}, LP{2, 0}});
    return vp;
}

struct ClauseParts {
    std::array<LEdge, 3> in, out;
    std::array<Cell, 3> s, t;
    int a1 = 0, a3 = 0;
};

// Components selected by `mask` (bit k for C_{k+1}); local e2 = LP(0,0)-(2,0).
ClauseParts add_clause(Builder& B, const Xf& x, int alpha, int beta, const std::string& tag, unsigned mask = 7) {
    if (alpha < 0 || beta < 0 || alpha % 2 || beta % 2) throw BadParameter("clause offsets must be even and non-negative");
    ClauseParts cp;
    const int a1 = -6 - alpha, a3 = 8 + beta;
    cp.a1 = a1;
    cp.a3 = a3;

    std::vector<Cell> c1 = {U(a1, 0), D(a1 + 2, 0), U(a1 + 1, 1), D(a1 + 3, 1)};
    for (int t = 0; t < alpha / 2; ++t) {
        c1.push_back(U(a1 + 3 + 2 * t, 1));
        c1.push_back(D(a1 + 5 + 2 * t, 1));
    }
    c1.push_back(U(-3, 1));
    c1.push_back(D(-1, 1));

    std::vector<Cell> c2 = {U(0, 0), D(2, 0)};

    std::vector<Cell> c3 = {U(a3, 0), D(a3, 0), U(a3 - 1, 1), D(a3 - 1, 1), U(a3 - 2, 2), D(a3 - 2, 2)};
    for (int t = 0; t < beta / 2; ++t) {
        c3.push_back(U(a3 - 4 - 2 * t, 2));
        c3.push_back(D(a3 - 4 - 2 * t, 2));
    }
    c3.push_back(U(4, 2));
    c3.push_back(D(4, 2));

    const std::array<std::vector<Cell>*, 3> comps = {&c1, &c2, &c3};
    const std::array<LEdge, 3> ins = {LEdge{LP{a1, 0}, LP{a1 + 2, 0}}, LEdge{LP{0, 0}, LP{2, 0}},
                                      LEdge{LP{a3, 0}, LP{a3 + 2, 0}}};
    const std::array<LEdge, 3> outs = {LEdge{LP{-2, 2}, LP{0, 2}}, LEdge{LP{1, 1}, LP{3, 1}},
                                       LEdge{LP{4, 2}, LP{3, 3}}};
    for (int k = 0; k < 3; ++k) {
        cp.in[k] = x(ins[k]);
        cp.out[k] = x(outs[k]);
        cp.s[k] = x(comps[k]->front());
        cp.t[k] = x(comps[k]->back());
        if (!(mask >> k & 1)) continue;
        const std::string ctag = tag + ".c" + std::to_string(k + 1);
        std::vector<Cell> cs;
        for (const auto& c : *comps[k]) cs.push_back(x(c));
        B.leaf(cp.in[k].first, cp.in[k].second, ctag);
        B.chain(cs, ctag);
        B.leaf(cp.out[k].first, cp.out[k].second, ctag);
    }
    if (mask & 1) B.flag(x(LP{-2, 2}), x(LP{0, 2}), x.mirror, tag + ".flag");
    return cp;
}

Triple ids_of_cell(const std::map<LP, int>& index, const Cell& c) {
    Triple t{index.at(c[0]), index.at(c[1]), index.at(c[2])};
    std::sort(t.begin(), t.end());
    return t;
}

std::map<LP, int> lattice_index(const Gadget& gd) {
    std::map<LP, int> m;
    for (int v = 0; v < gd.g.n; ++v)
        if (gd.is_frame_vertex(v)) m[gd.lattice[v]] = v;
    return m;
}

void name_clause_cells(Gadget& gd, const std::map<LP, int>& index, const ClauseParts& cp, const std::string& prefix,
                       unsigned mask) {
    for (int k = 0; k < 3; ++k) {
        if (!(mask >> k & 1)) continue;
        std::string s = std::to_string(k + 1);
        gd.cells[prefix + "s" + s] = ids_of_cell(index, cp.s[k]);
        gd.cells[prefix + "t" + s] = ids_of_cell(index, cp.t[k]);
    }
}

void add_convention_notes(Builder& B) {
    B.note("convention lattice x=a/2 y=j*sqrt(3)/2");
    B.note("convention lengths w1=" + std::to_string(kW1) + " w2=" + std::to_string(kW2) + " w3=" + std::to_string(kW3) +
           " w4=" + std::to_string(kW4));
    B.note("convention truth true<=>truth leaf apex inside the lower split frame");
    B.note("convention split scalene w2 leg at the split apex");
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Gadget methods

int Gadget::leaf_on(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (std::size_t i = 0; i < leaves.size(); ++i)
        if (leaves[i].u == u && leaves[i].v == v) return static_cast<int>(i);
    return -1;
}

bool Gadget::is_frame_vertex(int v) const {
    return v >= 0 && v < static_cast<int>(frame.size()) && std::isfinite(frame[v].x);
}

WeightedTwoTree Gadget::frame_graph(std::vector<int>* ids) const {
    std::vector<int> to_local(g.n, -1), to_global;
    for (int v = 0; v < g.n; ++v)
        if (is_frame_vertex(v)) {
            to_local[v] = static_cast<int>(to_global.size());
            to_global.push_back(v);
        }
    std::vector<RawEdge> raw;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        if (to_local[u] >= 0 && to_local[v] >= 0) raw.emplace_back(to_local[u], to_local[v], g.length[e]);
    }
    if (ids) *ids = to_global;
    return validate_2tree(static_cast<int>(to_global.size()), raw);
}

// ---------------------------------------------------------------------------------------------
// Gadget constructors

Gadget make_transmission(int k, TransmissionVariant variant) {
    if (k < 2 || k % 2) throw BadParameter("transmission needs an even number of frames, at least 2");
    Builder B;
    add_convention_notes(B);
    auto cs = strip_cells(0, 0, k);
    B.chain(cs, "transmission");
    LEdge in = variant.in_slanted ? LEdge{LP{0, 0}, LP{1, 1}} : LEdge{LP{0, 0}, LP{2, 0}};
    const Cell& last = cs.back();  // D(k/2 + 1, k/2 - 1)
    LEdge out = variant.out_slanted ? LEdge{last[0], last[2]} : LEdge{last[1], last[2]};
    B.leaf(in.first, in.second, "transmission");
    B.leaf(out.first, out.second, "transmission");
    B.attach("in", in);
    B.attach("out", out);
    Gadget gd = B.build();
    auto index = lattice_index(gd);
    gd.cells["s"] = ids_of_cell(index, cs.front());
    gd.cells["t"] = ids_of_cell(index, cs.back());
    return gd;
}

Gadget make_split() {
    Builder B;
    add_convention_notes(B);
    auto se = add_split(B, Xf{}, "split");
    B.attach("in", se.in);
    B.attach("out1", se.out1);
    B.attach("out2", se.out2);
    Gadget gd = B.build();
    auto index = lattice_index(gd);
    gd.cells["s"] = ids_of_cell(index, se.s);
    gd.cells["t1"] = ids_of_cell(index, se.t1);
    gd.cells["t2"] = ids_of_cell(index, se.t2);
    return gd;
}

Gadget make_variable(int delta) {
    Builder B;
    add_convention_notes(B);
    auto vp = add_variable(B, Xf{}, delta, "variable");
    B.attach("truth", vp.truth);
    for (int s = 0; s < delta; ++s) {
        B.attach("top" + std::to_string(s), vp.top[s]);
        B.attach("bot" + std::to_string(s), vp.bottom[s]);
    }
    Gadget gd = B.build();
    auto index = lattice_index(gd);
    auto ids_of = [&](const Cell& c) { return ids_of_cell(index, c); };
    gd.cells["s_upper"] = ids_of(vp.s_upper);
    gd.cells["s_lower"] = ids_of(vp.s_lower);
    for (int s = 0; s < delta; ++s) {
        gd.cells["top_t" + std::to_string(s)] = ids_of(vp.top_t[s]);
        gd.cells["bot_t" + std::to_string(s)] = ids_of(vp.bottom_t[s]);
    }
    gd.metadata.push_back("delta " + std::to_string(delta));
    return gd;
}

Gadget make_flag() {
    Builder B;
    add_convention_notes(B);
    B.extra_edge(LP{-2, 0}, LP{0, 0});
    B.leaf(LP{-2, 0}, LP{0, 0}, "flag");
    B.flag(LP{-2, 0}, LP{0, 0}, false, "flag");
    B.attach("bc", LEdge{LP{-2, 0}, LP{0, 0}});
    return B.build();
}

std::array<Gadget, 3> make_clause(int alpha, int beta) {
    std::array<Gadget, 3> out;
    for (int k = 0; k < 3; ++k) {
        Builder B;
        add_convention_notes(B);
        auto cp = add_clause(B, Xf{}, alpha, beta, "clause", 1u << k);
        B.attach("in", cp.in[k]);
        B.attach("out", cp.out[k]);
        out[k] = B.build();
        auto index = lattice_index(out[k]);
        out[k].cells["s"] = ids_of_cell(index, cp.s[k]);
        out[k].cells["t"] = ids_of_cell(index, cp.t[k]);
        out[k].metadata.push_back("component C" + std::to_string(k + 1));
    }
    return out;
}

Gadget make_clause_harness(int alpha, int beta) {
    Builder B;
    add_convention_notes(B);
    auto cp = add_clause(B, Xf{}, alpha, beta, "clause");
    for (int k = 0; k < 3; ++k) {
        std::string s = std::to_string(k + 1);
        B.attach("in" + s, cp.in[k]);
        B.attach("out" + s, cp.out[k]);
    }
    for (int a : {cp.a1, 0, cp.a3}) {
        B.cell(D(a + 1, -1), "harness");
        B.cell(U(a + 1, -1), "harness");
    }
    for (int b = cp.a1 + 2; b <= cp.a3 + 2; b += 2) {
        B.cell(D(b, -2), "harness");
        if (b < cp.a3 + 2) B.cell(U(b, -2), "harness");
    }
    Gadget gd = B.build();
    name_clause_cells(gd, lattice_index(gd), cp, "", 7);
    return gd;
}

ReductionAngles reduction_angles() {
    auto deg = [](double rad) { return rad * 180.0 / std::numbers::pi; };
    // Angle opposite side `o` in a triangle with the other sides p, q.
    auto opp = [](double o, double p, double q) { return std::acos((p * p + q * q - o * o) / (2.0 * p * q)); };
    ReductionAngles r{};
    r.bcd = deg(opp(kW4, kW1, kW4));
    r.bca = deg(opp(kW2, kW1, kW2));
    r.fcd = deg(opp(kW2, kW4, kW2));
    r.hcg = deg(opp(kW1, kW4, kW1));
    r.chm = deg(opp(kW1, kW1, kW3));
    r.lambda = deg(opp(kW3, kW1, kW1));
    r.split_small = deg(opp(kW3, kW1, kW2));
    r.split_base = deg(opp(kW2, kW1, kW3));
    r.transmission_base = r.bca;
    return r;
}

// ---------------------------------------------------------------------------------------------
// Full reduction

HardInstance reduce(const Formula& formula) {
    Formula padded = pad_monotone(formula);
    auto raw = auto_layout(padded);
    return reduce(formula, transform_representation(raw, padded));
}

HardInstance reduce(const Formula& formula, const MonotoneRectRep& rep) {
    Formula padded = pad_monotone(formula);
    check_d_properties(rep);
    const int delta = rep.delta;
    const double row = std::sqrt(3.0) / 2.0;
    const int jtop = 2 * (delta - 1);
    auto as_int = [](double v, const char* what) {
        double r = std::round(v);
        if (std::abs(v - r) > 1e-6) throw MalformedRepresentation(std::string("D1: ") + what + " is off the grid");
        return static_cast<int>(r);
    };

    Builder B;
    add_convention_notes(B);
    B.note("delta " + std::to_string(delta));

    // Variables: truth column X = xl + delta - 1.
    std::map<int, int> column;
    for (const auto& v : rep.variables) column[v.var] = as_int(v.xl, "variable box") + delta - 1;
    std::map<int, VariableParts> vparts;
    for (const auto& [var, X] : column) {
        vparts[var] = add_variable(B, Xf{2 * X, 0, false}, delta, "v" + std::to_string(var));
        B.note("variable " + std::to_string(var) + " truth_x " + std::to_string(X));
    }
    // Ladders along row 0 between neighbouring truth edges.
    std::vector<int> xs;
    for (const auto& [var, X] : column) xs.push_back(X);
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 1; k < xs.size(); ++k) {
        int lo = 2 * xs[k - 1] + 2, hi = 2 * xs[k] - 2;
        for (int b = lo; b <= hi; b += 2) {
            if (b > lo) B.cell(D(b, 0), "ladder");
            B.cell(U(b, 0), "ladder");
        }
    }

    // Transmissions from the slots to the clause bases.
    std::map<int, std::vector<std::pair<int, int>>> clause_feeds;  // clause -> (lattice a of base, var)
    for (const auto& e : rep.edges) {
        const RepClause* c = nullptr;
        for (const auto& cc : rep.clauses)
            if (cc.index == e.clause) c = &cc;
        if (!c) throw MalformedRepresentation("edge to a missing clause");
        bool pos = c->positive;
        int xe = as_int(e.from.x, "edge start");
        int m = as_int((std::abs(e.to.y) - std::abs(e.from.y)) / row, "edge length");
        Xf x{0, 0, !pos};
        std::string tag = "e" + std::to_string(e.var) + "-" + std::to_string(e.clause);
        add_strip_transmission(B, x, 2 * xe, jtop, 2 * m, tag);
        clause_feeds[e.clause].emplace_back(2 * xe + m, e.var);
    }

    HardInstance inst;
    inst.layout = rep;
    inst.formula = padded;
    std::map<int, ClauseParts> cparts;
    for (const auto& c : rep.clauses) {
        auto feeds = clause_feeds[c.index];
        std::sort(feeds.begin(), feeds.end());
        if (feeds.size() != 3) throw MalformedRepresentation("D7: clause needs three edges");
        int p1 = feeds[0].first, p2 = feeds[1].first, p3 = feeds[2].first;
        int alpha = p2 - p1 - 6, beta = p3 - p2 - 8;
        int jb = as_int(std::abs(c.positive ? c.corners[0].y : c.corners[3].y) / row, "clause base");
        Xf x{p2, jb, !c.positive};
        cparts[c.index] = add_clause(B, x, alpha, beta, "c" + std::to_string(c.index));
        B.note("clause " + std::to_string(c.index) + (c.positive ? " + " : " - ") + "alpha " + std::to_string(alpha) +
               " beta " + std::to_string(beta));
    }

    inst.gadget = B.build();
    Gadget& gd = inst.gadget;
    auto index = lattice_index(gd);
    auto id = [&](LP p) { return index.at(p); };

    inst.truth_leaf.assign(padded.num_vars + 1, -1);
    inst.truth_cell.assign(padded.num_vars + 1, Triple{-1, -1, -1});
    for (const auto& [var, vp] : vparts) {
        std::string p = "v" + std::to_string(var) + ".";
        int u = id(vp.truth.first), v = id(vp.truth.second);
        gd.attachments[p + "truth"] = {std::min(u, v), std::max(u, v)};
        gd.cells[p + "s_upper"] = ids_of_cell(index, vp.s_upper);
        gd.cells[p + "s_lower"] = ids_of_cell(index, vp.s_lower);
        if (var >= 0 && var <= padded.num_vars) {
            inst.truth_leaf[var] = gd.leaf_on(u, v);
            inst.truth_cell[var] = gd.cells[p + "s_lower"];
        }
    }
    for (const auto& c : rep.clauses) {
        const auto& cp = cparts[c.index];
        std::string p = "c" + std::to_string(c.index) + ".";
        name_clause_cells(gd, index, cp, p, 7);
        std::array<int, 3> outs{}, vars{};
        std::array<Triple, 3> cells{};
        auto feeds = clause_feeds[c.index];
        std::sort(feeds.begin(), feeds.end());
        for (int k = 0; k < 3; ++k) {
            outs[k] = gd.leaf_on(id(cp.out[k].first), id(cp.out[k].second));
            cells[k] = ids_of_cell(index, cp.t[k]);
            vars[k] = feeds[k].second;
        }
        if (static_cast<int>(inst.clause_outputs.size()) <= c.index) {
            inst.clause_outputs.resize(c.index + 1);
            inst.clause_output_cells.resize(c.index + 1);
            inst.clause_vars.resize(c.index + 1);
        }
        inst.clause_outputs[c.index] = outs;
        inst.clause_output_cells[c.index] = cells;
        inst.clause_vars[c.index] = vars;
    }
    return inst;
}

// ---------------------------------------------------------------------------------------------
// Leaf placement by 2SAT

namespace {

struct SegRef {
    int p, q;  // vertex ids (q may equal -1 for a free obstacle)
    Point a, b;
};

// Edges meeting at a shared vertex may touch there; any other contact is a conflict.
bool seg_conflict(const SegRef& s, const SegRef& t) {
    bool adjacent = s.p >= 0 && (s.p == t.p || s.p == t.q || (s.q >= 0 && (s.q == t.p || s.q == t.q)));
    auto rel = classify_segments({s.a, s.b}, {t.a, t.b});
    if (rel == SegmentRelation::disjoint) return false;
    if (!adjacent) return true;
    return rel != SegmentRelation::touch;
}

struct Box {
    double x0, y0, x1, y1;
};
Box box_of(Point a, Point b) { return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)}; }

class Grid {
public:
    explicit Grid(double cell) : cell_(cell) {}
    template <class F>
    void cells(const Box& b, F&& f) const {
        long long i0 = key(b.x0), i1 = key(b.x1), j0 = key(b.y0), j1 = key(b.y1);
        for (long long i = i0; i <= i1; ++i)
            for (long long j = j0; j <= j1; ++j) f((i << 32) ^ (j & 0xffffffffLL));
    }
    void insert(const Box& b, int item) {
        cells(b, [&](long long k) { map_[k].push_back(item); });
    }
    template <class F>
    void query(const Box& b, F&& f) const {
        cells(b, [&](long long k) {
            auto it = map_.find(k);
            if (it != map_.end())
                for (int x : it->second) f(x);
        });
    }

private:
    long long key(double v) const { return static_cast<long long>(std::floor((v + 1e-9) / cell_)); }
    double cell_;
    std::unordered_map<long long, std::vector<int>> map_;
};

}  // namespace

std::optional<Realization> place_leaves(const Gadget& gd, const Realization& fixed, const LeafPlacementOptions& opt) {
    const auto& g = gd.g;
    auto finite = [&](int v) { return v >= 0 && v < static_cast<int>(fixed.size()) && std::isfinite(fixed[v].x); };
    const int L = static_cast<int>(gd.leaves.size());

    std::vector<SegRef> fixed_segs;
    for (auto [u, v] : g.edges)
        if (finite(u) && finite(v)) fixed_segs.push_back({u, v, fixed[u], fixed[v]});
    for (auto [a, b] : opt.obstacles) fixed_segs.push_back({-1, -1, a, b});
    Grid fixed_grid(1.0);
    for (std::size_t i = 0; i < fixed_segs.size(); ++i)
        fixed_grid.insert(box_of(fixed_segs[i].a, fixed_segs[i].b), static_cast<int>(i));

    // Placement 2*i + s: s = 0 left, 1 right.
    std::vector<Point> apex(2 * L);
    std::vector<char> usable(2 * L, 1);
    for (int i = 0; i < L; ++i) {
        const auto& lf = gd.leaves[i];
        if (!finite(lf.u) || !finite(lf.v)) return std::nullopt;
        double lu = g.len(lf.u, lf.apex), lv = g.len(lf.v, lf.apex);
        apex[2 * i] = place_apex(fixed[lf.u], fixed[lf.v], lu, lv, Side::left);
        apex[2 * i + 1] = place_apex(fixed[lf.u], fixed[lf.v], lu, lv, Side::right);
    }
    auto legs = [&](int pl) {
        const auto& lf = gd.leaves[pl / 2];
        return std::array<SegRef, 2>{SegRef{lf.u, lf.apex, fixed[lf.u], apex[pl]},
                                     SegRef{lf.v, lf.apex, fixed[lf.v], apex[pl]}};
    };
    auto tri_box = [&](int pl) {
        const auto& lf = gd.leaves[pl / 2];
        Box b = box_of(fixed[lf.u], fixed[lf.v]);
        Point p = apex[pl];
        return Box{std::min(b.x0, p.x), std::min(b.y0, p.y), std::max(b.x1, p.x), std::max(b.y1, p.y)};
    };

    TwoSatFormula f;
    f.num_vars = L;
    auto lit = [](int pl) { return Literal{pl / 2, pl % 2 == 0}; };
    for (auto [leaf, left] : opt.forced) f.add_unit(Literal{leaf, left});

    for (int pl = 0; pl < 2 * L; ++pl) {
        auto lg = legs(pl);
        bool bad = false;
        fixed_grid.query(tri_box(pl), [&](int s) {
            if (bad) return;
            for (const auto& leg : lg)
                if (seg_conflict(leg, fixed_segs[s])) bad = true;
        });
        if (bad) {
            usable[pl] = 0;
            f.add_unit(!lit(pl));
        }
    }
    Grid place_grid(1.0);
    for (int pl = 0; pl < 2 * L; ++pl)
        if (usable[pl]) place_grid.insert(tri_box(pl), pl);
    std::set<std::pair<int, int>> seen;
    for (int pl = 0; pl < 2 * L; ++pl) {
        if (!usable[pl]) continue;
        auto lp = legs(pl);
        place_grid.query(tri_box(pl), [&](int other) {
            if (other / 2 <= pl / 2) return;
            if (!seen.emplace(pl, other).second) return;
            auto lo = legs(other);
            bool hit = false;
            for (const auto& x : lp)
                for (const auto& y : lo)
                    if (!hit && seg_conflict(x, y)) hit = true;
            if (hit) f.add_clause(!lit(pl), !lit(other));
        });
    }
    auto sol = solve_2sat(f);
    if (!sol) return std::nullopt;
    Realization r = fixed;
    r.resize(g.n, Point{kNaN, kNaN});
    for (int i = 0; i < L; ++i) r[gd.leaves[i].apex] = apex[2 * i + ((*sol)[i] ? 0 : 1)];
    return r;
}

// ---------------------------------------------------------------------------------------------
// Witness drawing

namespace {

// All planar drawings of one flag with b, c fixed (the leaf on b-c excluded), checked against the
// nearby fixed segments.
std::vector<std::array<Point, 8>> flag_candidates(const Gadget& gd, const FlagInfo& fl, const Realization& fixed) {
    const auto& g = gd.g;
    const int b = fl.v[1], c = fl.v[2];
    const int d = fl.v[3], f = fl.v[4], gg = fl.v[5], h = fl.v[6], i = fl.v[7], l = fl.v[8], m = fl.v[9], n = fl.v[10];
    // (new vertex, base p, base q) in placement order.
    const std::array<std::array<int, 3>, 8> steps = {{{d, b, c}, {f, d, c}, {gg, d, c}, {h, gg, c},
                                                      {i, h, gg}, {l, i, gg}, {m, h, c}, {n, m, c}}};
    std::vector<SegRef> near;
    Point pc = fixed[c];
    for (auto [u, v] : g.edges) {
        if (!std::isfinite(fixed[u].x) || !std::isfinite(fixed[v].x)) continue;
        if (std::min(dist(fixed[u], pc), dist(fixed[v], pc)) > 6.0) continue;
        near.push_back({u, v, fixed[u], fixed[v]});
    }
    std::vector<std::pair<int, int>> flag_edges;
    for (const auto& st : steps) {
        flag_edges.emplace_back(st[0], st[1]);
        flag_edges.emplace_back(st[0], st[2]);
    }
    std::vector<std::array<Point, 8>> out;
    for (int mask = 0; mask < 256; ++mask) {
        std::unordered_map<int, Point> pos;
        auto P = [&](int v) { return pos.count(v) ? pos.at(v) : fixed[v]; };
        for (int k = 0; k < 8; ++k) {
            const auto& st = steps[k];
            pos[st[0]] = place_apex(P(st[1]), P(st[2]), g.len(st[1], st[0]), g.len(st[2], st[0]),
                                    (mask >> k & 1) ? Side::left : Side::right);
        }
        std::vector<SegRef> segs;
        for (auto [x, y] : flag_edges) segs.push_back({x, y, P(x), P(y)});
        bool ok = true;
        for (std::size_t s = 0; s < segs.size() && ok; ++s) {
            for (std::size_t t = s + 1; t < segs.size() && ok; ++t) ok = !seg_conflict(segs[s], segs[t]);
            for (std::size_t t = 0; t < near.size() && ok; ++t) ok = !seg_conflict(segs[s], near[t]);
        }
        if (!ok) continue;
        std::array<Point, 8> pts;
        for (int k = 0; k < 8; ++k) pts[k] = pos.at(steps[k][0]);
        out.push_back(pts);
    }
    return out;
}

}  // namespace

Realization witness_realization(const HardInstance& inst, const std::vector<bool>& assignment) {
    if (!satisfies(inst.formula, assignment)) throw std::invalid_argument("assignment does not satisfy the formula");
    const Gadget& gd = inst.gadget;
    Realization fixed = gd.frame;

    LeafPlacementOptions opt;
    for (int v = 1; v < static_cast<int>(inst.truth_leaf.size()); ++v) {
        int leaf = inst.truth_leaf[v];
        if (leaf < 0) continue;
        const auto& lf = gd.leaves[leaf];
        const Triple& cell = inst.truth_cell[v];
        int third = -1;
        for (int x : cell)
            if (x != lf.u && x != lf.v) third = x;
        bool cell_left = orientation(fixed[lf.u], fixed[lf.v], fixed[third]) > 0;
        bool value = v < static_cast<int>(assignment.size()) && assignment[v];
        opt.forced.emplace_back(leaf, value ? cell_left : !cell_left);
    }

    std::optional<Realization> best;
    for (const auto& fl : gd.flags) {
        auto cands = flag_candidates(gd, fl, fixed);
        bool placed = false;
        for (const auto& pts : cands) {
            Realization trial = fixed;
            for (int k = 0; k < 8; ++k) trial[fl.v[3 + k]] = pts[k];
            auto r = place_leaves(gd, trial, opt);
            if (!r) continue;
            fixed = trial;
            best = r;
            placed = true;
            break;
        }
        if (!placed) throw std::runtime_error("no drawing found for " + fl.tag);
    }
    if (!best) best = place_leaves(gd, fixed, opt);
    if (!best) throw std::runtime_error("no leaf placement found");
    return *best;
}

std::string provenance_text(const HardInstance& inst) {
    const Gadget& gd = inst.gadget;
    std::ostringstream os;
    os << "provenance 1\n";
    for (const auto& m : gd.metadata) os << "meta " << m << "\n";
    for (std::size_t k = 0; k < gd.frame_triangles.size(); ++k) {
        const auto& t = gd.frame_triangles[k];
        os << "frame " << t[0] << " " << t[1] << " " << t[2] << " " << gd.frame_tags[k] << "\n";
    }
    for (const auto& lf : gd.leaves)
        os << "leaf " << lf.u << " " << lf.v << " " << lf.apex << " "
           << (lf.kind == LeafKind::scalene ? "scalene" : "transmission") << " " << lf.tag << "\n";
    for (const auto& fl : gd.flags) {
        os << "flag";
        for (int v : fl.v) os << " " << v;
        os << " " << fl.tag << "\n";
    }
    for (const auto& [name, e] : gd.attachments) os << "attach " << name << " " << e.first << " " << e.second << "\n";
    for (int v = 1; v < static_cast<int>(inst.truth_leaf.size()); ++v)
        os << "truth " << v << " leaf " << inst.truth_leaf[v] << "\n";
    return os.str();
}

}  // namespace fepr
