#include "fepr/spq_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fepr/oracle.hpp"

namespace fepr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool has_edge(const UvRealization& r, int e) { return std::find(r.edges.begin(), r.edges.end(), e) != r.edges.end(); }

// Cycle rotated to start at `start` (unchanged if absent).
std::vector<int> from_vertex(const std::vector<int>& cyc, int start) {
    auto it = std::find(cyc.begin(), cyc.end(), start);
    if (it == cyc.end()) return cyc;
    std::vector<int> out(it, cyc.end());
    out.insert(out.end(), cyc.begin(), it);
    return out;
}

// Vertices met walking the cycle forward from a to b, both included.
std::vector<int> walk(const std::vector<int>& cyc, int a, int b) {
    std::vector<int> rot = from_vertex(cyc, a);
    std::vector<int> out;
    for (int x : rot) {
        out.push_back(x);
        if (x == b) break;
    }
    return out;
}

bool contains(const std::vector<int>& xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

// Crossing number test; points on the boundary count as outside.
bool strictly_inside(const Realization& r, const std::vector<int>& poly, Point p) {
    std::size_t k = poly.size();
    if (k < 3) return false;
    for (std::size_t i = 0; i < k; ++i) {
        Point a = r[poly[i]], b = r[poly[(i + 1) % k]];
        if (orientation(a, b, p) == 0 && std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
            std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12)
            return false;
    }
    bool in = false;
    for (std::size_t i = 0, j = k - 1; i < k; j = i++) {
        Point a = r[poly[i]], b = r[poly[j]];
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
    }
    return in;
}

bool pieces_conflict(const WeightedTwoTree& g, const Realization& r, const std::vector<int>& a,
                     const std::vector<int>& b) {
    for (int e : a)
        for (int f : b)
            if (e != f && edges_conflict(g, r, e, f)) return true;
    return false;
}

UvRealization single_edge(const WeightedTwoTree& g, int u, int v) {
    UvRealization r;
    r.u = u;
    r.v = v;
    r.coords.assign(g.n, Point{kNaN, kNaN});
    r.coords[u] = {0.0, 0.0};
    r.coords[v] = {g.len(u, v), 0.0};
    r.vertices = {u, v};
    r.edges = {g.edge_id(u, v)};
    r.outer = {u, v};
    return r;
}

int subtree_height(const SpqTree& t, int root) {
    int h = 0;
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [x, d] = stack.back();
        stack.pop_back();
        h = std::max(h, d);
        for (int c : t.nodes[x].children) stack.emplace_back(c, d + 1);
    }
    return h;
}

void invariant(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("spq invariant violated: " + what);
}

}  // namespace

std::vector<int> outer_boundary(const WeightedTwoTree& g, const Realization& r, const std::vector<int>& edges) {
    std::map<int, std::vector<int>> adj;
    for (int e : edges) {
        auto [a, b] = g.edges[e];
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    if (adj.empty()) return {};
    // Clockwise neighbour lists.
    for (auto& [x, lst] : adj)
        std::sort(lst.begin(), lst.end(), [&, x = x](int p, int q) {
            return direction(r[p] - r[x]) > direction(r[q] - r[x]);
        });
    int v0 = adj.begin()->first;
    for (auto& [x, lst] : adj)
        if (r[x].x < r[v0].x || (r[x].x == r[v0].x && r[x].y < r[v0].y)) v0 = x;
    int v1 = -1;
    double best = -10.0;
    for (int w : adj[v0]) {
        double a = std::atan2(r[w].y - r[v0].y, r[w].x - r[v0].x);
        if (a > best) {
            best = a;
            v1 = w;
        }
    }
    std::vector<int> cyc{v0};
    int prev = v0, cur = v1;
    for (std::size_t steps = 0; steps <= adj.size(); ++steps) {
        if (cur == v0) return cyc;
        if (contains(cyc, cur)) return {};
        cyc.push_back(cur);
        const auto& lst = adj[cur];
        auto it = std::find(lst.begin(), lst.end(), prev);
        int nxt = *(std::next(it) == lst.end() ? lst.begin() : std::next(it));
        prev = cur;
        cur = nxt;
    }
    return {};
}

std::optional<UvRealization> uv_view(const WeightedTwoTree& g, const Realization& r, int u, int v) {
    UvRealization out;
    out.u = u;
    out.v = v;
    out.coords = r;
    for (int x = 0; x < g.n; ++x) out.vertices.push_back(x);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) out.edges.push_back(e);
    out.outer = outer_boundary(g, r, out.edges);
    if (!contains(out.outer, u) || !contains(out.outer, v)) return std::nullopt;
    out.outer = from_vertex(out.outer, u);
    return out;
}

bool uv_equivalent(const WeightedTwoTree& g, const UvRealization& a, const UvRealization& b, double tol) {
    int pole = g.edge_id(a.u, a.v);
    if (pole < 0 || !has_edge(a, pole) || a.u != b.u || a.v != b.v || !has_edge(b, pole))
        throw PoleEdgeMissing("both drawings must contain the edge between their common poles");
    std::vector<int> oa = from_vertex(a.outer, a.u), ob = from_vertex(b.outer, b.u);
    if (oa != ob) return false;
    Point au = a.coords[a.u], bu = b.coords[b.u];
    double rot = direction(b.coords[b.v] - bu) - direction(a.coords[a.v] - au);
    double cs = std::cos(rot), sn = std::sin(rot);
    double scale = 1.0;
    for (int x : oa) scale = std::max(scale, dist(a.coords[x], au));
    for (int x : oa) {
        Point d = a.coords[x] - au;
        Point p = bu + Point{cs * d.x - sn * d.y, sn * d.x + cs * d.y};
        if (dist(p, b.coords[x]) > tol * scale) return false;
    }
    return true;
}

std::array<UvRealization, 2> combine(const WeightedTwoTree& g, const UvRealization& prev, int w,
                                     const UvRealization& sigma, const UvRealization& tau) {
    int u = prev.u, v = prev.v;
    Point pu = prev.coords[u], pv = prev.coords[v];
    std::array<UvRealization, 2> out;
    for (int k = 0; k < 2; ++k) {
        UvRealization& c = out[k];
        c = prev;
        // Left of u->v reads u, w, v clockwise.
        Point pw = place_apex(pu, pv, g.len(u, w), g.len(v, w), k == 0 ? Side::left : Side::right);
        c.coords[w] = pw;
        c.vertices.push_back(w);
        auto insert = [&](const UvRealization& piece, int a, int b) {
            Realization moved = align_to(piece.coords, a, b, c.coords[a], c.coords[b]);
            for (int x : piece.vertices) {
                if (x == a || x == b) continue;
                c.coords[x] = moved[x];
                c.vertices.push_back(x);
            }
            c.edges.insert(c.edges.end(), piece.edges.begin(), piece.edges.end());
        };
        insert(sigma, u, w);
        insert(tau, w, v);
        std::vector<int> cyc;
        auto append = [&cyc](const std::vector<int>& path) {
            for (int x : path)
                if (cyc.empty() || cyc.back() != x) cyc.push_back(x);
        };
        if (k == 0) {
            append(walk(prev.outer, v, u));
            append(walk(sigma.outer, u, w));
            append(walk(tau.outer, w, v));
        } else {
            append(walk(prev.outer, u, v));
            append(walk(tau.outer, v, w));
            append(walk(sigma.outer, w, u));
        }
        if (cyc.size() > 1 && cyc.back() == cyc.front()) cyc.pop_back();
        c.outer = from_vertex(cyc, u);
    }
    return out;
}

bool is_uv_external(const WeightedTwoTree& g, const UvRealization& r) {
    for (std::size_t i = 0; i < r.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < r.vertices.size(); ++j)
            if (same_point(r.coords[r.vertices[i]], r.coords[r.vertices[j]])) return false;
    for (std::size_t i = 0; i < r.edges.size(); ++i)
        for (std::size_t j = i + 1; j < r.edges.size(); ++j)
            if (edges_conflict(g, r.coords, r.edges[i], r.edges[j])) return false;
    auto outer = outer_boundary(g, r.coords, r.edges);
    return contains(outer, r.u) && contains(outer, r.v);
}

namespace {

std::vector<UvExternalSet> compute_sets(const WeightedTwoTree& g, const SpqTree& t, const SpqOptions& opt,
                                        SpqReport* report, bool keep) {
    using K = SpqNode::Kind;
    std::vector<UvExternalSet> sets(t.nodes.size());
    std::uint64_t combos = report ? report->combinations : 0;
    // Children always carry larger ids than their parent.
    for (int id = static_cast<int>(t.nodes.size()) - 1; id >= 0; --id) {
        const SpqNode& nd = t.nodes[id];
        if (nd.kind == K::S) continue;
        UvExternalSet& out = sets[id];
        out.node = id;
        out.u = nd.u;
        out.v = nd.v;
        if (nd.kind == K::Q) {
            out.members = {single_edge(g, nd.u, nd.v)};
            continue;
        }
        std::vector<UvRealization> cur = sets[nd.children[0]].members;
        for (std::size_t i = 1; i < nd.children.size(); ++i) {
            const SpqNode& s = t.nodes[nd.children[i]];
            const auto& rs = sets[s.children[0]].members;
            const auto& rt = sets[s.children[1]].members;
            combos += static_cast<std::uint64_t>(cur.size()) * rs.size() * rt.size();
            if (report) report->combinations = combos;
            if (combos > opt.budget)
                throw BudgetExceeded("more than " + std::to_string(opt.budget) + " candidate combinations");
            std::vector<UvRealization> next;
            std::map<std::vector<int>, std::vector<std::size_t>> by_outer;
            for (const UvRealization& prev : cur)
                for (const UvRealization& a : rs)
                    for (const UvRealization& b : rt)
                        for (UvRealization& cand : combine(g, prev, s.w, a, b)) {
                            // The three pieces are planar on their own.
                            std::vector<int> fresh;
                            for (int x : cand.vertices)
                                if (!contains(prev.vertices, x)) fresh.push_back(x);
                            bool ok = true;
                            for (int x : fresh)
                                for (int y : cand.vertices)
                                    if (x != y && same_point(cand.coords[x], cand.coords[y])) ok = false;
                            if (!ok) continue;
                            if (pieces_conflict(g, cand.coords, prev.edges, a.edges) ||
                                pieces_conflict(g, cand.coords, prev.edges, b.edges) ||
                                pieces_conflict(g, cand.coords, a.edges, b.edges))
                                continue;
                            std::vector<int> outer = outer_boundary(g, cand.coords, cand.edges);
                            if (!contains(outer, nd.u) || !contains(outer, nd.v)) continue;
                            outer = from_vertex(outer, nd.u);
                            if (opt.check_invariants) {
                                invariant(outer == cand.outer, "spliced outer face differs from the drawing");
                                for (int x : fresh)
                                    invariant(!strictly_inside(cand.coords, prev.outer, cand.coords[x]),
                                              "new component inside the previous drawing");
                            }
                            cand.outer = std::move(outer);
                            auto& bucket = by_outer[cand.outer];
                            bool dup = false;
                            for (std::size_t j : bucket)
                                if (uv_equivalent(g, next[j], cand)) {
                                    dup = true;
                                    break;
                                }
                            if (dup) continue;
                            bucket.push_back(next.size());
                            next.push_back(std::move(cand));
                        }
            cur = std::move(next);
            if (report) report->max_set_size = std::max(report->max_set_size, cur.size());
            if (cur.empty()) {
                if (report) report->failed_node = id;
                return sets;
            }
        }
        if (opt.check_invariants) {
            for (std::size_t a = 0; a < cur.size(); ++a) {
                invariant(is_uv_external(g, cur[a]), "member is not uv-external");
                for (std::size_t b = a + 1; b < cur.size(); ++b)
                    invariant(!uv_equivalent(g, cur[a], cur[b]), "set is not minimal");
            }
            double x = (std::pow(2.0, subtree_height(t, id)) - 1.0) / 3.0;
            invariant(std::log(static_cast<double>(cur.size())) <= x * std::log(2.0 * g.n) + 1e-9,
                      "set exceeds the size bound");
        }
        out.members = std::move(cur);
        if (keep) continue;
        for (std::size_t i = 1; i < nd.children.size(); ++i)
            for (int c : t.nodes[nd.children[i]].children) sets[c].members.clear();
        sets[nd.children[0]].members.clear();
    }
    return sets;
}

}  // namespace

std::vector<UvExternalSet> spq_sets(const WeightedTwoTree& g, const SpqTree& t, const SpqOptions& opt,
                                    SpqReport* report) {
    return compute_sets(g, t, opt, report, true);
}

std::optional<Realization> realize_spq(const WeightedTwoTree& g, SpqReport* report, const SpqOptions& opt) {
    int e_star = 0;
    for (int e = 1; e < static_cast<int>(g.edges.size()); ++e)
        if (g.length[e] > g.length[e_star]) e_star = e;
    SpqTree t = build_spq_tree(g, e_star);
    SpqReport local;
    SpqReport& rep = report ? *report : local;
    rep = SpqReport{};
    rep.e_star = e_star;
    rep.height = spq_height(t);
    auto sets = compute_sets(g, t, opt, &rep, false);
    if (rep.failed_node >= 0 || sets[t.root].members.empty()) return std::nullopt;
    Realization r = sets[t.root].members.front().coords;
    if (opt.check_invariants) invariant(static_cast<bool>(check_planar(g, r)), "root drawing is not planar");
    return r;
}

}  // namespace fepr
