#include "fepr/outerplanar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "fepr/oracle.hpp"

namespace fepr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAngleTol = 1e-9;

int third_of(const WeightedTwoTree& g, int tri, int a, int b) {
    const Triple& t = g.triangles[tri];
    return t[0] + t[1] + t[2] - a - b;
}

std::pair<int, int> shared_edge(const WeightedTwoTree& g, int t1, int t2) {
    const Triple& a = g.triangles[t1];
    std::vector<int> common;
    for (int v : a)
        if (std::find(g.triangles[t2].begin(), g.triangles[t2].end(), v) != g.triangles[t2].end()) common.push_back(v);
    return {common.at(0), common.at(1)};
}

// Interior angle at vertex p of triangle (p, q, r) from its edge lengths.
double corner(const WeightedTwoTree& g, int p, int q, int r) {
    double a = g.len(p, q), b = g.len(p, r), c = g.len(q, r);
    return std::acos(std::clamp((a * a + b * b - c * c) / (2 * a * b), -1.0, 1.0));
}

// Triangle (a, b, inner) fits inside (a, b, outer) when both are drawn on the same side of ab.
bool nests(const WeightedTwoTree& g, int a, int b, int inner, int outer) {
    return corner(g, a, b, inner) < corner(g, a, b, outer) - kAngleTol &&
           corner(g, b, a, inner) < corner(g, b, a, outer) - kAngleTol;
}

// Apex of triangle (a, b, w) on the same side of line ab as `ref`, or on the opposite side.
Point apex_relative(const WeightedTwoTree& g, const Realization& r, int a, int b, int w, int ref, bool same) {
    bool ref_left = orientation(r[a], r[b], r[ref]) > 0;
    Side s = (ref_left == same) ? Side::left : Side::right;
    return place_apex(r[a], r[b], g.len(a, w), g.len(b, w), s);
}

Point reflect_across(Point p, Point a, Point b) {
    Point d = b - a;
    double t = dot(p - a, d) / dot(d, d);
    Point foot = a + t * d;
    return foot + (foot - p);
}

// Moves the placed vertices of `part` so that edge (u, v) lands on its position in `target`, with
// `ref_part` on the requested side relative to `ref_target`.
void attach(Realization& target, const Realization& part, const std::vector<int>& verts, int u, int v, int ref_part,
            int ref_target, bool same_side) {
    Realization a = align_to(part, u, v, target[u], target[v]);
    bool want_left = (orientation(target[u], target[v], target[ref_target]) > 0) == same_side;
    bool is_left = orientation(a[u], a[v], a[ref_part]) > 0;
    for (int x : verts) {
        if (x == u || x == v) continue;
        target[x] = is_left == want_left ? a[x] : reflect_across(a[x], target[u], target[v]);
    }
}

// The 2-tree spanned by a set of triangles, relabelled densely.
struct SubTwoTree {
    WeightedTwoTree g;
    std::vector<int> to_orig;
    std::vector<int> to_local;
};

SubTwoTree sub_two_tree(const WeightedTwoTree& g, const std::vector<int>& tris) {
    SubTwoTree s;
    s.to_local.assign(g.n, -1);
    std::set<std::pair<int, int>> edges;
    for (int t : tris)
        for (int k = 0; k < 3; ++k) {
            int x = g.triangles[t][k], y = g.triangles[t][(k + 1) % 3];
            edges.insert({std::min(x, y), std::max(x, y)});
            for (int v : {x, y})
                if (s.to_local[v] < 0) {
                    s.to_local[v] = static_cast<int>(s.to_orig.size());
                    s.to_orig.push_back(v);
                }
        }
    std::vector<RawEdge> raw;
    for (auto [x, y] : edges) raw.emplace_back(s.to_local[x], s.to_local[y], g.len(x, y));
    s.g = validate_2tree(static_cast<int>(s.to_orig.size()), raw);
    return s;
}

// Planar, with edge e on the outer face.
bool e_outer_ok(const SubTwoTree& s, const Realization& coords, std::pair<int, int> e, const CheckOptions& opt) {
    Realization local(s.to_orig.size());
    for (std::size_t i = 0; i < local.size(); ++i) local[i] = coords[s.to_orig[i]];
    if (!check_planar(s.g, local, opt)) return false;
    auto emb = embedding_from_drawing(s.g, local);
    if (!emb) return false;
    int a = s.to_local[e.first], b = s.to_local[e.second];
    const auto& cyc = emb->outer;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        int x = cyc[i], y = cyc[(i + 1) % cyc.size()];
        if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
}

Realization unplaced(int n) { return Realization(n, Point{kNaN, kNaN}); }

void place_base(const WeightedTwoTree& g, Realization& r, int tri, std::pair<int, int> e) {
    auto [a, b] = e;
    int z = third_of(g, tri, a, b);
    r[a] = {0.0, 0.0};
    r[b] = {g.len(a, b), 0.0};
    r[z] = place_apex(r[a], r[b], g.len(a, z), g.len(b, z), Side::left);
}

}  // namespace

EOuterRealization e_optimal_incremental(const WeightedTwoTree& g, const TriangleChain& chain) {
    if (chain.tri.empty() || chain.shared.size() != chain.tri.size())
        throw BadParameter("chain needs one shared edge per triangle");
    EOuterRealization out;
    out.coords = unplaced(g.n);
    out.e = chain.shared.back();
    Realization& r = out.coords;
    MelkmanHull hull;
    std::vector<int> pushed;  // push index -> vertex
    auto push = [&](int v) {
        hull.push(r[v]);
        pushed.push_back(v);
        out.vertices.push_back(v);
    };
    auto hull_vertex = [&](std::size_t k) { return pushed[hull.deque_ids()[k]]; };
    auto snapshot = [&](std::pair<int, int> e, int step_case) {
        HullState st;
        for (int id : hull.boundary_ids()) st.hull.push_back(pushed[id]);
        const auto& dq = hull.deque_ids();
        std::size_t L = dq.size();
        int front = hull_vertex(0);
        int y = e.first == front ? e.second : e.second == front ? e.first : -1;
        st.beta = y >= 0 && L >= 4 && (hull_vertex(1) == y || hull_vertex(L - 2) == y);
        st.xi = st.beta ? -1 : front;
        st.step_case = step_case;
        out.states.push_back(std::move(st));
    };

    auto [a0, b0] = chain.shared[0];
    place_base(g, r, chain.tri[0], {a0, b0});
    push(third_of(g, chain.tri[0], a0, b0));
    push(a0);
    push(b0);
    snapshot(chain.shared[0], 0);

    for (std::size_t i = 1; i < chain.tri.size(); ++i) {
        auto [s, t] = chain.shared[i - 1];
        int prev = third_of(g, chain.tri[i - 1], s, t);
        int w = third_of(g, chain.tri[i], s, t);
        bool same = false;
        bool beta = out.states.back().beta;
        if (beta) {
            // Case 1: does the whole hull fit inside C_i drawn on its side?
            const auto& dq = hull.deque_ids();
            std::size_t L = dq.size();
            int last = hull_vertex(0);
            int other = last == s ? t : s;
            int n_last = -1, n_other = -1;
            if (hull_vertex(1) == other) {
                n_other = hull_vertex(2);
                n_last = hull_vertex(L - 2);
            } else if (hull_vertex(L - 2) == other) {
                n_other = hull_vertex(L - 3);
                n_last = hull_vertex(1);
            }
            if (n_last >= 0) {
                Point p = apex_relative(g, r, s, t, w, prev, true);
                same = angle_at(r[last], r[other], p) > angle_at(r[last], r[other], r[n_last]) + kAngleTol &&
                       angle_at(r[other], r[last], p) > angle_at(r[other], r[last], r[n_other]) + kAngleTol;
            }
        }
        r[w] = apex_relative(g, r, s, t, w, prev, same);
        push(w);
        snapshot(chain.shared[i], beta ? (same ? 11 : 12) : 2);
    }
    return out;
}

std::vector<int> outerpath_order(const WeightedTwoTree& g) {
    if (!is_outerplanar(g)) throw NotAnOuterpath("graph is not outerplanar");
    auto adj = dual_tree(g);
    int start = -1;
    for (std::size_t t = 0; t < adj.size(); ++t) {
        if (adj[t].size() > 2) throw NotAnOuterpath("dual tree node " + std::to_string(t) + " has degree 3");
        if (adj[t].size() <= 1 && start < 0) start = static_cast<int>(t);
    }
    std::vector<int> order;
    int prev = -1, cur = start;
    while (cur >= 0) {
        order.push_back(cur);
        int nxt = -1;
        for (int x : adj[cur])
            if (x != prev) nxt = x;
        prev = cur;
        cur = nxt;
    }
    return order;
}

std::optional<Realization> realize_outerpath(const WeightedTwoTree& g, OuterpathReport* report,
                                             const CheckOptions& opt) {
    std::vector<int> order = outerpath_order(g);
    std::size_t k = order.size();
    std::size_t x = 0;
    for (std::size_t i = 1; i < k; ++i)
        if (perimeter(g, order[i]) > perimeter(g, order[x]) + 1e-12) x = i;
    if (report) report->x = static_cast<int>(x);
    std::vector<std::pair<int, int>> e(k > 0 ? k - 1 : 0);
    for (std::size_t i = 0; i + 1 < k; ++i) e[i] = shared_edge(g, order[i], order[i + 1]);

    std::optional<EOuterRealization> left, right;
    if (x > 0) {
        TriangleChain c;
        for (std::size_t i = 0; i < x; ++i) {
            c.tri.push_back(order[i]);
            c.shared.push_back(e[i]);
        }
        left = e_optimal_incremental(g, c);
    }
    if (x + 1 < k) {
        TriangleChain c;
        for (std::size_t i = k - 1; i > x; --i) {
            c.tri.push_back(order[i]);
            c.shared.push_back(e[i - 1]);
        }
        right = e_optimal_incremental(g, c);
    }
    Realization base = unplaced(g.n);
    const Triple& cx = g.triangles[order[x]];
    place_base(g, base, order[x], {cx[0], cx[1]});
    // Fixed order: (different, different), (different, same), (same, different), (same, same).
    for (int combo = 0; combo < 4; ++combo) {
        bool same_left = combo & 2, same_right = combo & 1;
        if ((!left && same_left) || (!right && same_right)) continue;
        Realization r = base;
        if (left) {
            auto [u, v] = e[x - 1];
            attach(r, left->coords, left->vertices, u, v, third_of(g, order[x - 1], u, v),
                   third_of(g, order[x], u, v), same_left);
        }
        if (right) {
            auto [u, v] = e[x];
            attach(r, right->coords, right->vertices, u, v, third_of(g, order[x + 1], u, v),
                   third_of(g, order[x], u, v), same_right);
        }
        if (check_planar(g, r, opt)) {
            if (report) report->combination = combo;
            return r;
        }
    }
    return std::nullopt;
}

CaterpillarLayout outerpillar_layout(const WeightedTwoTree& g) {
    if (!is_outerplanar(g)) throw NotAnOuterpillar("graph is not outerplanar");
    auto adj = dual_tree(g);
    std::size_t m = adj.size();
    CaterpillarLayout lay;
    if (m <= 2) {
        for (std::size_t t = 0; t < m; ++t) lay.path.push_back(static_cast<int>(t));
        lay.leaf.assign(m, -1);
        return lay;
    }
    std::vector<char> spine(m, 0);
    for (std::size_t t = 0; t < m; ++t) spine[t] = adj[t].size() >= 2;
    int start = -1;
    for (std::size_t t = 0; t < m; ++t) {
        if (!spine[t]) continue;
        int deg = 0;
        for (int y : adj[t]) deg += spine[y];
        if (deg > 2) throw NotAnOuterpillar("dual tree is not a caterpillar");
        if (deg <= 1 && start < 0) start = static_cast<int>(t);
    }
    std::vector<int> sp;
    int prev = -1, cur = start;
    while (cur >= 0) {
        sp.push_back(cur);
        int nxt = -1;
        for (int y : adj[cur])
            if (spine[y] && y != prev) nxt = y;
        prev = cur;
        cur = nxt;
    }
    std::vector<char> used(m, 0);
    auto take_leaf = [&](int node) {
        for (int y : adj[node])
            if (!spine[y] && !used[y]) {
                used[y] = 1;
                return y;
            }
        return -1;
    };
    int p0 = take_leaf(sp.front());
    int pk = take_leaf(sp.back());
    lay.path.push_back(p0);
    for (int s : sp) lay.path.push_back(s);
    lay.path.push_back(pk);
    lay.leaf.assign(lay.path.size(), -1);
    for (std::size_t i = 1; i + 1 < lay.path.size(); ++i) {
        lay.leaf[i] = take_leaf(lay.path[i]);
        if (take_leaf(lay.path[i]) >= 0) throw NotAnOuterpillar("spine node carries too many leaves");
    }
    return lay;
}

namespace {

struct PillarChain {
    std::vector<int> tri;
    std::vector<int> leaf;
    std::vector<std::pair<int, int>> shared;
};

struct Candidate {
    Realization coords;
    std::vector<int> vertices;
};

std::vector<long long> outer_key(const SubTwoTree& s, const Realization& coords, std::pair<int, int> e) {
    Realization local(s.to_orig.size());
    for (std::size_t i = 0; i < local.size(); ++i) local[i] = coords[s.to_orig[i]];
    auto emb = embedding_from_drawing(s.g, local);
    std::vector<long long> best;
    if (!emb) return best;
    int a = s.to_local[e.first], b = s.to_local[e.second];
    for (int refl = 0; refl < 2; ++refl) {
        Realization al = align_to(local, a, b, {0, 0}, {dist(local[a], local[b]), 0}, refl == 1);
        std::vector<int> cyc = emb->outer;
        std::sort(cyc.begin(), cyc.end());
        std::vector<long long> key;
        for (int v : cyc) {
            key.push_back(s.to_orig[v]);
            key.push_back(std::llround(al[v].x * 1e7));
            key.push_back(std::llround(al[v].y * 1e7));
        }
        if (best.empty() || key < best) best = std::move(key);
    }
    return best;
}

// e-optimal sets along one side of the caterpillar; empty when the side admits no e-outer realization.
std::vector<Candidate> pillar_side(const WeightedTwoTree& g, const PillarChain& ch, std::vector<std::size_t>& sizes,
                                   const CheckOptions& opt) {
    Candidate base{unplaced(g.n), {}};
    auto [a0, b0] = ch.shared[0];
    place_base(g, base.coords, ch.tri[0], {a0, b0});
    base.vertices = {third_of(g, ch.tri[0], a0, b0), a0, b0};
    std::vector<Candidate> R{base};
    sizes.push_back(1);
    std::vector<int> tris{ch.tri[0]};
    for (std::size_t i = 1; i < ch.tri.size(); ++i) {
        auto [s, t] = ch.shared[i - 1];
        int ci = ch.tri[i], d = ch.leaf[i];
        int prev = third_of(g, ch.tri[i - 1], s, t);
        int w = third_of(g, ci, s, t);
        tris.push_back(ci);
        int p = -1, q = -1, wd = -1;
        if (d >= 0) {
            std::tie(p, q) = shared_edge(g, ci, d);
            wd = third_of(g, d, p, q);
            tris.push_back(d);
        }
        SubTwoTree sub = sub_two_tree(g, tris);
        std::pair<int, int> e = ch.shared[i];
        bool fits_a = nests(g, s, t, prev, w);
        bool fits_b = d < 0 || nests(g, p, q, wd, third_of(g, ci, p, q));
        auto extend = [&](const Candidate& c, bool same, bool d_inside) {
            Candidate n = c;
            n.coords[w] = apex_relative(g, n.coords, s, t, w, prev, same);
            n.vertices.push_back(w);
            if (d >= 0) {
                n.coords[wd] = apex_relative(g, n.coords, p, q, wd, third_of(g, ci, p, q), d_inside);
                n.vertices.push_back(wd);
            }
            return n;
        };
        std::vector<Candidate> next;
        // Step 1: the previous part and d_i both inside C_i.
        if (fits_a && fits_b)
            for (const Candidate& c : R) {
                Candidate n = extend(c, true, true);
                if (e_outer_ok(sub, n.coords, e, opt)) {
                    next.push_back(std::move(n));
                    break;
                }
            }
        if (next.empty()) {
            // Step 2: the previous part inside, d_i outside.
            if (d >= 0 && fits_a)
                for (const Candidate& c : R) {
                    Candidate n = extend(c, true, false);
                    if (e_outer_ok(sub, n.coords, e, opt)) {
                        next.push_back(std::move(n));
                        break;
                    }
                }
            // Step 3: the previous part outside C_i.
            std::set<std::vector<long long>> seen;
            for (const Candidate& c : next) seen.insert(outer_key(sub, c.coords, e));
            for (const Candidate& c : R) {
                Candidate n = extend(c, false, d >= 0 && fits_b);
                if (!e_outer_ok(sub, n.coords, e, opt)) continue;
                if (seen.insert(outer_key(sub, n.coords, e)).second) next.push_back(std::move(n));
            }
        }
        if (next.size() > i + 1) throw std::logic_error("e-optimal set exceeds its size bound");
        sizes.push_back(next.size());
        R = std::move(next);
        if (R.empty()) return R;
    }
    return R;
}

}  // namespace

std::optional<Realization> realize_outerpillar(const WeightedTwoTree& g, OuterpillarReport* report,
                                               const CheckOptions& opt) {
    CaterpillarLayout lay = outerpillar_layout(g);
    OuterpillarReport local;
    OuterpillarReport& rep = report ? *report : local;
    std::size_t k = lay.path.size();
    // The max-perimeter triangle, on the path or as a leaf d_x.
    std::size_t x = 0;
    double best = -1;
    for (std::size_t i = 0; i < k; ++i)
        for (int t : {lay.path[i], lay.leaf[i]})
            if (t >= 0 && perimeter(g, t) > best + 1e-12) {
                best = perimeter(g, t);
                x = i;
            }
    rep.x = static_cast<int>(x);
    std::vector<std::pair<int, int>> e(k > 0 ? k - 1 : 0);
    for (std::size_t i = 0; i + 1 < k; ++i) e[i] = shared_edge(g, lay.path[i], lay.path[i + 1]);

    std::vector<Candidate> left, right;
    if (x > 0) {
        PillarChain c;
        for (std::size_t i = 0; i < x; ++i) {
            c.tri.push_back(lay.path[i]);
            c.leaf.push_back(lay.leaf[i]);
            c.shared.push_back(e[i]);
        }
        left = pillar_side(g, c, rep.set_sizes_left, opt);
        if (left.empty()) return std::nullopt;
    }
    if (x + 1 < k) {
        PillarChain c;
        for (std::size_t i = k - 1; i > x; --i) {
            c.tri.push_back(lay.path[i]);
            c.leaf.push_back(lay.leaf[i]);
            c.shared.push_back(e[i - 1]);
        }
        right = pillar_side(g, c, rep.set_sizes_right, opt);
        if (right.empty()) return std::nullopt;
    }
    int cx = lay.path[x], dx = lay.leaf[x];
    Realization base = unplaced(g.n);
    const Triple& tv = g.triangles[cx];
    place_base(g, base, cx, {tv[0], tv[1]});
    int gp = -1, gq = -1, wd = -1;
    if (dx >= 0) {
        std::tie(gp, gq) = shared_edge(g, cx, dx);
        wd = third_of(g, dx, gp, gq);
    }
    std::vector<const Candidate*> ls, rs;
    for (const auto& c : left) ls.push_back(&c);
    for (const auto& c : right) rs.push_back(&c);
    if (ls.empty()) ls.push_back(nullptr);
    if (rs.empty()) rs.push_back(nullptr);
    for (const Candidate* lc : ls)
        for (const Candidate* rc : rs)
            for (int combo = 0; combo < 8; ++combo) {
                bool same_l = combo & 4, same_r = combo & 2, d_in = combo & 1;
                if ((!lc && same_l) || (!rc && same_r) || (dx < 0 && d_in)) continue;
                ++rep.combinations_tried;
                Realization r = base;
                if (dx >= 0) r[wd] = apex_relative(g, r, gp, gq, wd, third_of(g, cx, gp, gq), d_in);
                if (lc) {
                    auto [u, v] = e[x - 1];
                    attach(r, lc->coords, lc->vertices, u, v, third_of(g, lay.path[x - 1], u, v), third_of(g, cx, u, v),
                           same_l);
                }
                if (rc) {
                    auto [u, v] = e[x];
                    attach(r, rc->coords, rc->vertices, u, v, third_of(g, lay.path[x + 1], u, v), third_of(g, cx, u, v),
                           same_r);
                }
                if (check_planar(g, r, opt)) return r;
            }
    return std::nullopt;
}

}  // namespace fepr
