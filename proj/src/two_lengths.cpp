#include "fepr/two_lengths.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <unordered_map>

#include "fepr/fixed_embedding.hpp"

namespace fepr {

namespace {

constexpr double kLenTol = 1e-9;

bool same_len(double a, double b) { return std::abs(a - b) <= kLenTol * std::max(a, b); }

// Interior angle opposite side z in a triangle with sides x, y, z.
double opposite_angle(double x, double y, double z) {
    return std::acos(std::clamp((x * x + y * y - z * z) / (2 * x * y), -1.0, 1.0));
}

int third_vertex(const Triple& t, int a, int b) { return t[0] + t[1] + t[2] - a - b; }

// Angles at a and b of triangle (a, b, c).
std::pair<double, double> base_angles(const WeightedTwoTree& g, int a, int b, int c) {
    double ab = g.len(a, b), ac = g.len(a, c), bc = g.len(b, c);
    return {opposite_angle(ab, ac, bc), opposite_angle(ab, bc, ac)};
}

bool fits_inside(const WeightedTwoTree& g, int a, int b, int inner, int outer) {
    auto [ai, bi] = base_angles(g, a, b, inner);
    auto [ao, bo] = base_angles(g, a, b, outer);
    const double tol = 1e-9;
    return ai < ao - tol && bi < bo - tol;
}

bool segs_conflict(int a, int b, Point pa, Point pb, int c, int d, Point pc, Point pd) {
    SegmentRelation rel = classify_segments({pa, pb}, {pc, pd});
    bool adjacent = a == c || a == d || b == c || b == d;
    if (adjacent) return rel == SegmentRelation::overlap || rel == SegmentRelation::proper_cross;
    return rel != SegmentRelation::disjoint;
}

struct Drawn {
    int a, b, c;
    Point pa, pb, pc;
};

Drawn drawn(const Framework& fr, const FrameworkDrawing& d, const LeafDrawings& ld, int i, bool v) {
    const LeafTriangle& L = fr.leaves[i];
    return {L.a, L.b, L.apex, d.coords[L.a], d.coords[L.b], ld.apex[v ? 1 : 0][i]};
}

bool drawings_conflict(const Drawn& x, const Drawn& y) {
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
            int s = p ? x.b : x.a, t = q ? y.b : y.a;
            Point ps = p ? x.pb : x.pa, pt = q ? y.pb : y.pa;
            if (segs_conflict(s, x.c, ps, x.pc, t, y.c, pt, y.pc)) return true;
        }
    return false;
}

bool drawing_hits_edge(const Drawn& x, int u, int v, Point pu, Point pv) {
    return segs_conflict(x.a, x.c, x.pa, x.pc, u, v, pu, pv) || segs_conflict(x.b, x.c, x.pb, x.pc, u, v, pu, pv);
}

long long cell_key(long long i, long long j) { return (i << 32) ^ (j & 0xffffffffLL); }

// Stable counting sort of `idx` by key(idx) in [0, range).
template <class Key>
void counting_sort(std::vector<int>& idx, long long range, Key key) {
    if (range > 4 * static_cast<long long>(idx.size()) + 64) {
        std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return key(x) < key(y); });
        return;
    }
    std::vector<int> count(static_cast<std::size_t>(range) + 1, 0);
    for (int x : idx) ++count[key(x) + 1];
    for (long long k = 0; k < range; ++k) count[k + 1] += count[k];
    std::vector<int> out(idx.size());
    for (int x : idx) out[count[key(x)]++] = x;
    idx.swap(out);
}

}  // namespace

std::vector<double> distinct_lengths(const WeightedTwoTree& g) {
    std::vector<double> ls = g.length;
    std::sort(ls.begin(), ls.end());
    std::vector<double> out;
    for (double l : ls)
        if (out.empty() || !same_len(out.back(), l)) out.push_back(l);
    return out;
}

Framework compute_framework(const WeightedTwoTree& g, double w1, double w2) {
    if (!(w1 > 0.0) || !(w1 < w2)) throw BadParameter("framework needs 0 < w1 < w2");
    for (double l : g.length)
        if (!same_len(l, w1) && !same_len(l, w2)) throw BadParameter("edge length outside {w1, w2}");
    Framework fr;
    fr.g = &g;
    fr.w1 = w1;
    fr.w2 = w2;
    fr.root = max_perimeter_cycle(g);
    DecompositionTree t = build_decomposition_tree(g, fr.root);
    for (std::size_t k = 0; k < t.size(); ++k) {
        std::size_t deg = t.children[k].size() + (t.parent[k] >= 0 ? 1 : 0);
        if (deg > kMaxTreeDegree) {
            throw DegreeBoundExceeded("decomposition-tree node " + std::to_string(k) + " has degree " +
                                      std::to_string(deg));
        }
    }
    std::vector<char> removed(g.triangles.size(), 0);
    std::vector<LeafTriangle> cand;
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (!t.children[k].empty()) continue;
        auto [a, b] = g.edges[t.shared_edge[k]];
        int c = t.apex[k];
        int par = t.tri[t.parent[k]];
        LeafTriangle L{t.tri[k], a, b, c, par, {}};
        auto consider = [&](int host) {
            if (fits_inside(g, a, b, c, third_vertex(g.triangles[host], a, b))) L.containers.push_back(host);
        };
        consider(par);
        for (int s : t.children[t.parent[k]])
            if (s != static_cast<int>(k) && t.shared_edge[s] == t.shared_edge[k]) consider(t.tri[s]);
        if (!L.containers.empty()) {
            removed[L.triangle] = 1;
            cand.push_back(std::move(L));
        }
    }
    for (LeafTriangle& L : cand) {
        std::erase_if(L.containers, [&](int h) { return removed[h] != 0; });
        std::sort(L.containers.begin(), L.containers.end());
    }
    fr.leaves = std::move(cand);
    std::sort(fr.leaves.begin(), fr.leaves.end(),
              [](const LeafTriangle& x, const LeafTriangle& y) { return x.apex < y.apex; });

    std::vector<char> gone(g.n, 0);
    for (const LeafTriangle& L : fr.leaves) gone[L.apex] = 1;
    fr.to_local.assign(g.n, -1);
    for (int v = 0; v < g.n; ++v)
        if (!gone[v]) {
            fr.to_local[v] = static_cast<int>(fr.to_original.size());
            fr.to_original.push_back(v);
        }
    std::vector<RawEdge> raw;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        if (gone[u] || gone[v]) continue;
        raw.emplace_back(fr.to_local[u], fr.to_local[v], g.length[e]);
    }
    fr.g_f = validate_2tree(static_cast<int>(fr.to_original.size()), raw);
    return fr;
}

bool check_consistency(const Framework& fr) {
    std::unordered_map<long long, int> per_edge;
    for (const LeafTriangle& L : fr.leaves)
        if (++per_edge[static_cast<long long>(L.a) * fr.g->n + L.b] > 2) return false;
    return true;
}

std::optional<FrameworkDrawing> realize_framework(const Framework& fr, const CheckOptions& opt) {
    auto emb = outerplane_embedding(fr.g_f);
    if (!emb) return std::nullopt;
    auto r = realize_fixed_embedding(fr.g_f, *emb, opt);
    if (!r) return std::nullopt;
    FrameworkDrawing d;
    d.embedding = std::move(*emb);
    d.coords.assign(fr.g->n, Point{});
    for (std::size_t v = 0; v < r->size(); ++v) d.coords[fr.to_original[v]] = (*r)[v];
    return d;
}

LeafDrawings leaf_drawings(const Framework& fr, const FrameworkDrawing& d) {
    const WeightedTwoTree& g = *fr.g;
    LeafDrawings ld;
    std::size_t k = fr.leaves.size();
    ld.apex[0].resize(k);
    ld.apex[1].resize(k);
    ld.outer.assign(k, 0);
    ld.other_side_triangle.assign(k, -1);
    for (std::size_t i = 0; i < k; ++i) {
        const LeafTriangle& L = fr.leaves[i];
        int p = third_vertex(g.triangles[L.parent], L.a, L.b);
        Point pa = d.coords[L.a], pb = d.coords[L.b];
        Side parent_side = orientation(pa, pb, d.coords[p]) > 0 ? Side::left : Side::right;
        Side other = parent_side == Side::left ? Side::right : Side::left;
        double la = g.len(L.a, L.apex), lb = g.len(L.b, L.apex);
        ld.apex[0][i] = place_apex(pa, pb, la, lb, parent_side);
        ld.apex[1][i] = place_apex(pa, pb, la, lb, other);
        for (int t : g.edge_triangles[g.edge_id(L.a, L.b)]) {
            if (t == L.parent) continue;
            const Triple& tv = g.triangles[t];
            if (fr.to_local[tv[0]] >= 0 && fr.to_local[tv[1]] >= 0 && fr.to_local[tv[2]] >= 0)
                ld.other_side_triangle[i] = t;
        }
        ld.outer[i] = ld.other_side_triangle[i] < 0;
    }
    return ld;
}

Realization solve_large_ratio(const Framework& fr, const FrameworkDrawing& d) {
    LeafDrawings ld = leaf_drawings(fr, d);
    Realization r = d.coords;
    std::unordered_map<long long, int> seen;
    for (std::size_t i = 0; i < fr.leaves.size(); ++i) {
        const LeafTriangle& L = fr.leaves[i];
        long long key = static_cast<long long>(L.a) * fr.g->n + L.b;
        bool value;
        if (auto it = seen.find(key); it != seen.end()) {
            value = true;  // second leaf on this edge: opposite side to the first
        } else {
            seen.emplace(key, static_cast<int>(i));
            bool two = false;
            for (std::size_t j = i + 1; j < fr.leaves.size(); ++j)
                if (fr.leaves[j].a == L.a && fr.leaves[j].b == L.b) two = true;
            value = two ? false : (L.containers.empty() || L.containers[0] != L.parent);
            if (!two && !L.containers.empty()) {
                // Prefer a tall container; the parent side when it qualifies.
                for (int h : L.containers) {
                    const Triple& tv = fr.g->triangles[h];
                    TriangleClass cls = classify_triangle(fr.g->len(tv[0], tv[1]), fr.g->len(tv[1], tv[2]),
                                                          fr.g->len(tv[0], tv[2]), fr.w1, fr.w2);
                    if (cls == TriangleClass::tall_isosceles) {
                        value = h != L.parent;
                        break;
                    }
                }
            }
        }
        r[L.apex] = ld.apex[value ? 1 : 0][i];
    }
    return r;
}

bool threshold_internal_conflict(double r, bool share_edge, TriangleClass container) {
    if (share_edge) return true;
    const double sqrt3 = std::sqrt(3.0);
    const double c15 = 2.0 * std::cos(std::numbers::pi / 12.0);
    const double tol = 1e-12;
    if (r <= sqrt3 + tol) return true;
    return container == TriangleClass::tall_isosceles && r <= c15 + tol;
}

InternalConflicts detect_internal_conflicts(const Framework& fr, const FrameworkDrawing& d, const LeafDrawings& ld) {
    const WeightedTwoTree& g = *fr.g;
    InternalConflicts out;
    std::unordered_map<int, std::vector<std::pair<int, bool>>> inside;  // container -> (leaf, value)
    for (std::size_t i = 0; i < fr.leaves.size(); ++i) {
        const LeafTriangle& L = fr.leaves[i];
        for (int h : L.containers) {
            bool value = h != L.parent;
            if (value && ld.other_side_triangle[i] != h) continue;
            inside[h].emplace_back(static_cast<int>(i), value);
        }
    }
    std::vector<int> hosts;
    for (auto& [h, lst] : inside) hosts.push_back(h);
    std::sort(hosts.begin(), hosts.end());
    double r = fr.ratio();
    for (int h : hosts) {
        const auto& lst = inside[h];
        const Triple& tv = g.triangles[h];
        TriangleClass cls =
            classify_triangle(g.len(tv[0], tv[1]), g.len(tv[1], tv[2]), g.len(tv[0], tv[2]), fr.w1, fr.w2);
        for (std::size_t x = 0; x < lst.size(); ++x)
            for (std::size_t y = x + 1; y < lst.size(); ++y) {
                auto [i, vi] = lst[x];
                auto [j, vj] = lst[y];
                const LeafTriangle& A = fr.leaves[i];
                const LeafTriangle& B = fr.leaves[j];
                bool share = A.a == B.a && A.b == B.b;
                bool geo = drawings_conflict(drawn(fr, d, ld, i, vi), drawn(fr, d, ld, j, vj));
                bool by_rule = threshold_internal_conflict(r, share, cls);
                LeafPair p{i, vi, j, vj, h};
                if (geo) out.pairs.push_back(p);
                if (by_rule) out.rule_pairs.push_back(p);
                if (geo != by_rule) {
                    out.disagreements.push_back("container " + std::to_string(h) + " (" + to_string(cls) +
                                                "), leaves " + std::to_string(A.apex) + " and " +
                                                std::to_string(B.apex) + ": geometry says " +
                                                (geo ? "conflict" : "no conflict") + " at r=" + std::to_string(r));
                }
            }
    }
    return out;
}

std::vector<Forbidden> detect_overlapping_conflicts(const Framework& fr, const FrameworkDrawing& d,
                                                    const LeafDrawings& ld) {
    const WeightedTwoTree& g = *fr.g;
    std::vector<Forbidden> out;
    for (std::size_t i = 0; i < fr.leaves.size(); ++i) {
        const LeafTriangle& L = fr.leaves[i];
        for (bool value : {false, true}) {
            int host = value ? ld.other_side_triangle[i] : L.parent;
            if (host < 0) continue;
            int p = third_vertex(g.triangles[host], L.a, L.b);
            Drawn x = drawn(fr, d, ld, static_cast<int>(i), value);
            if (drawing_hits_edge(x, L.a, p, d.coords[L.a], d.coords[p]) ||
                drawing_hits_edge(x, L.b, p, d.coords[L.b], d.coords[p]))
                out.push_back({static_cast<int>(i), value});
        }
    }
    return out;
}

ProximityGraph build_proximity_graph(const std::vector<Point>& pts, const std::vector<char>& kind, double w2) {
    ProximityGraph h;
    h.cell = 3.0 * w2;
    h.node_of.assign(pts.size(), -1);
    std::vector<int> verts;
    double minx = 0, miny = 0;
    bool first = true;
    for (std::size_t v = 0; v < pts.size(); ++v) {
        if (!kind[v]) continue;
        verts.push_back(static_cast<int>(v));
        if (first || pts[v].x < minx) minx = pts[v].x;
        if (first || pts[v].y < miny) miny = pts[v].y;
        first = false;
    }
    h.origin = {minx, miny};
    if (verts.empty()) return h;
    std::vector<long long> li(pts.size(), 0), lj(pts.size(), 0);
    long long maxi = 0, maxj = 0;
    for (int v : verts) {
        li[v] = static_cast<long long>(std::floor((pts[v].x - minx) / h.cell));
        lj[v] = static_cast<long long>(std::floor((pts[v].y - miny) / h.cell));
        maxi = std::max(maxi, li[v]);
        maxj = std::max(maxj, lj[v]);
    }
    // Order pi: by i, then j.
    counting_sort(verts, maxj + 1, [&](int v) { return lj[v]; });
    counting_sort(verts, maxi + 1, [&](int v) { return li[v]; });
    for (int v : verts) {
        std::pair<long long, long long> lab{li[v], lj[v]};
        if (h.label.empty() || h.label.back() != lab) {
            h.label.push_back(lab);
            h.members.emplace_back();
            h.leaf_members.emplace_back();
            h.framework_members.emplace_back();
        }
        int node = static_cast<int>(h.label.size()) - 1;
        h.node_of[v] = node;
        h.members[node].push_back(v);
        (kind[v] == 2 ? h.leaf_members : h.framework_members)[node].push_back(v);
    }
    int nn = static_cast<int>(h.label.size());
    auto I = [&](int x) { return h.label[x].first; };
    auto J = [&](int x) { return h.label[x].second; };
    struct Order {
        long long range1, range2;
        std::function<long long(int)> k1, k2;
        std::function<bool(int, int)> adjacent;
    };
    const std::vector<Order> orders = {
        {maxi + 1, maxj + 1, I, J, [&](int x, int y) { return I(x) == I(y) && J(y) - J(x) == 1; }},
        {maxj + 1, maxi + 1, J, I, [&](int x, int y) { return J(x) == J(y) && I(y) - I(x) == 1; }},
        {maxi + maxj + 1, maxi + 1, [&](int x) { return I(x) - J(x) + maxj; }, I,
         [&](int x, int y) { return I(y) - I(x) == 1 && J(y) - J(x) == 1; }},
        {maxi + maxj + 1, maxi + 1, [&](int x) { return I(x) + J(x); }, I,
         [&](int x, int y) { return I(y) - I(x) == 1 && J(y) - J(x) == -1; }},
    };
    for (const Order& o : orders) {
        std::vector<int> pi(nn);
        for (int x = 0; x < nn; ++x) pi[x] = x;
        counting_sort(pi, o.range2, o.k2);
        counting_sort(pi, o.range1, o.k1);
        for (int x = 0; x + 1 < nn; ++x)
            if (o.adjacent(pi[x], pi[x + 1])) h.edges.emplace_back(pi[x], pi[x + 1]);
    }
    return h;
}

OuterConflicts conflict_finder(const Framework& fr, const FrameworkDrawing& d, const LeafDrawings& ld,
                               ProximityGraph* graph_out) {
    const WeightedTwoTree& g = *fr.g;
    // Step 1: outer embeddings and the proximity graph.
    std::vector<Point> pts = d.coords;
    std::vector<char> kind(g.n, 0);
    std::vector<int> leaf_of(g.n, -1);
    for (int v = 0; v < g.n; ++v)
        if (fr.to_local[v] >= 0) kind[v] = 1;
    for (std::size_t i = 0; i < fr.leaves.size(); ++i) {
        if (!ld.outer[i]) continue;
        int c = fr.leaves[i].apex;
        pts[c] = ld.apex[1][i];
        kind[c] = 2;
        leaf_of[c] = static_cast<int>(i);
    }
    ProximityGraph h = build_proximity_graph(pts, kind, fr.w2);
    // Step 2: the two outer edges at each framework vertex.
    std::vector<std::array<int, 2>> outer_nbr(g.n, {-1, -1});
    const auto& cyc = d.embedding.outer;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
        int u = fr.to_original[cyc[k]];
        outer_nbr[u] = {fr.to_original[cyc[(k + cyc.size() - 1) % cyc.size()]],
                        fr.to_original[cyc[(k + 1) % cyc.size()]]};
    }
    OuterConflicts out;
    std::vector<char> fw_hit(fr.leaves.size(), 0);
    auto leaf_pair = [&](int u, int v) {
        if (u == v) return;
        int i = leaf_of[u], j = leaf_of[v];
        if (drawings_conflict(drawn(fr, d, ld, i, true), drawn(fr, d, ld, j, true)))
            out.external.emplace_back(std::min(i, j), std::max(i, j));
    };
    auto fw_pair = [&](int u, int v) {
        int j = leaf_of[v];
        if (fw_hit[j]) return;
        Drawn x = drawn(fr, d, ld, j, true);
        for (int w : outer_nbr[u])
            if (w >= 0 && drawing_hits_edge(x, u, w, d.coords[u], d.coords[w])) {
                fw_hit[j] = 1;
                return;
            }
    };
    // Steps 3-5: same node, then each proximity edge in both directions.
    for (std::size_t mu = 0; mu < h.label.size(); ++mu) {
        const auto& L = h.leaf_members[mu];
        for (std::size_t x = 0; x < L.size(); ++x)
            for (std::size_t y = x + 1; y < L.size(); ++y) leaf_pair(L[x], L[y]);
        for (int u : h.framework_members[mu])
            for (int v : L) fw_pair(u, v);
    }
    for (auto [mu, nu] : h.edges) {
        for (int u : h.leaf_members[mu])
            for (int v : h.leaf_members[nu]) leaf_pair(u, v);
        for (int u : h.framework_members[mu])
            for (int v : h.leaf_members[nu]) fw_pair(u, v);
        for (int u : h.framework_members[nu])
            for (int v : h.leaf_members[mu]) fw_pair(u, v);
    }
    std::sort(out.external.begin(), out.external.end());
    out.external.erase(std::unique(out.external.begin(), out.external.end()), out.external.end());
    for (std::size_t i = 0; i < fr.leaves.size(); ++i)
        if (fw_hit[i]) out.framework.push_back(static_cast<int>(i));
    if (graph_out) *graph_out = std::move(h);
    return out;
}

TwoSatFormula build_2sat(const Framework& fr, const ConflictSet& c) {
    TwoSatFormula f;
    f.num_vars = static_cast<int>(fr.leaves.size());
    for (const Forbidden& x : c.overlapping) f.add_unit({x.leaf, !x.value});
    for (int i : c.framework) f.add_unit({i, false});
    for (const auto* list : {&c.internal, &c.external})
        for (const LeafPair& p : *list) f.add_clause({p.i, !p.vi}, {p.j, !p.vj});
    return f;
}

namespace {

// Every crossing between a leaf drawing and the framework or another leaf drawing, found through a
// uniform grid around the apexes. Serves as a cross-check of the structured conflict detection.
ConflictSet geometric_conflicts(const Framework& fr, const FrameworkDrawing& d, const LeafDrawings& ld) {
    const WeightedTwoTree& g = *fr.g;
    const double cell = 3.0 * fr.w2;
    auto key_of = [&](Point p) {
        return cell_key(static_cast<long long>(std::floor(p.x / cell)), static_cast<long long>(std::floor(p.y / cell)));
    };
    std::unordered_map<long long, std::vector<int>> fw, lv;
    for (int v = 0; v < g.n; ++v)
        if (fr.to_local[v] >= 0) fw[key_of(d.coords[v])].push_back(v);
    std::size_t k = fr.leaves.size();
    for (std::size_t i = 0; i < k; ++i)
        for (int v = 0; v < 2; ++v) lv[key_of(ld.apex[v][i])].push_back(static_cast<int>(2 * i + v));
    ConflictSet out;
    for (std::size_t i = 0; i < k; ++i)
        for (int v = 0; v < 2; ++v) {
            Drawn x = drawn(fr, d, ld, static_cast<int>(i), v == 1);
            long long ci = static_cast<long long>(std::floor(x.pc.x / cell));
            long long cj = static_cast<long long>(std::floor(x.pc.y / cell));
            bool hit = false;
            for (long long di = -1; di <= 1; ++di)
                for (long long dj = -1; dj <= 1; ++dj) {
                    long long key = cell_key(ci + di, cj + dj);
                    if (auto it = fw.find(key); it != fw.end() && !hit)
                        for (int u : it->second) {
                            for (auto [w, e] : g.adj[u]) {
                                if (fr.to_local[w] < 0 || hit) continue;
                                hit = drawing_hits_edge(x, u, w, d.coords[u], d.coords[w]);
                            }
                            if (hit) break;
                        }
                    if (auto it = lv.find(key); it != lv.end())
                        for (int code : it->second) {
                            int j = code / 2;
                            bool vj = code % 2 == 1;
                            if (j <= static_cast<int>(i)) continue;
                            if (drawings_conflict(x, drawn(fr, d, ld, j, vj)))
                                out.internal.push_back({static_cast<int>(i), v == 1, j, vj, -1});
                        }
                }
            if (hit) out.overlapping.push_back({static_cast<int>(i), v == 1});
        }
    return out;
}

}  // namespace

std::optional<Realization> realize_uniform(const WeightedTwoTree& g, const CheckOptions& opt) {
    auto emb = outerplane_embedding(g);
    if (!emb) return std::nullopt;
    return realize_fixed_embedding(g, *emb, opt);
}

std::optional<Realization> realize_two_lengths(const WeightedTwoTree& g, TwoLengthReport* report,
                                               const CheckOptions& opt) {
    TwoLengthReport local;
    TwoLengthReport& rep = report ? *report : local;
    auto fail = [&](const char* stage) -> std::optional<Realization> {
        rep.stage = stage;
        return std::nullopt;
    };
    auto lens = distinct_lengths(g);
    if (lens.size() > 2) throw BadParameter("more than two distinct edge lengths");
    if (lens.size() == 1) {
        auto r = realize_uniform(g, opt);
        rep.stage = r ? "realized" : "uniform";
        return r;
    }
    Framework fr;
    try {
        fr = compute_framework(g, lens[0], lens[1]);
    } catch (const DegreeBoundExceeded&) {
        return fail("degree-bound");
    }
    rep.leaves = static_cast<int>(fr.leaves.size());
    if (!check_consistency(fr)) return fail("consistency");
    auto d = realize_framework(fr, opt);
    if (!d) return fail("framework");

    Realization out;
    if (fr.ratio() >= 2.0 * (1.0 - 1e-12)) {
        out = solve_large_ratio(fr, *d);
    } else {
        LeafDrawings ld = leaf_drawings(fr, *d);
        ConflictSet cs;
        InternalConflicts ic = detect_internal_conflicts(fr, *d, ld);
        rep.rule_disagreements = ic.disagreements;
        cs.internal = ic.pairs;
        cs.overlapping = detect_overlapping_conflicts(fr, *d, ld);
        OuterConflicts oc = conflict_finder(fr, *d, ld);
        cs.framework = oc.framework;
        for (auto [i, j] : oc.external) cs.external.push_back({i, true, j, true, -1});
        TwoSatFormula f = build_2sat(fr, cs);
        rep.residual_conflicts = 0;
        std::set<std::pair<int, bool>> units;
        std::set<std::array<int, 4>> pairs;
        for (const Forbidden& x : cs.overlapping) units.insert({x.leaf, x.value});
        for (int i : cs.framework) units.insert({i, true});
        for (const auto* list : {&cs.internal, &cs.external})
            for (const LeafPair& p : *list) {
                pairs.insert({p.i, p.vi, p.j, p.vj});
                pairs.insert({p.j, p.vj, p.i, p.vi});
            }
        ConflictSet extra = geometric_conflicts(fr, *d, ld);
        for (const Forbidden& x : extra.overlapping) {
            if (units.count({x.leaf, x.value})) continue;
            ++rep.residual_conflicts;
            f.add_unit({x.leaf, !x.value});
        }
        for (const LeafPair& p : extra.internal) {
            if (units.count({p.i, p.vi}) || units.count({p.j, p.vj}) || pairs.count({p.i, p.vi, p.j, p.vj})) continue;
            ++rep.residual_conflicts;
            f.add_clause({p.i, !p.vi}, {p.j, !p.vj});
        }
        rep.clauses = static_cast<int>(f.clauses.size());
        auto sol = solve_2sat(f);
        if (!sol) return fail("2sat");
        out = d->coords;
        for (std::size_t i = 0; i < fr.leaves.size(); ++i)
            out[fr.leaves[i].apex] = ld.apex[(*sol)[i] ? 1 : 0][i];
    }
    if (!check_planar(g, out, opt)) return fail("final-check");
    rep.stage = "realized";
    return out;
}

}  // namespace fepr
