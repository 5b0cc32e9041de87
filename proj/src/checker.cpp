#include "fepr/checker.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace fepr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long long cell_key(long long i, long long j) { return (i << 32) ^ (j & 0xffffffffLL); }

std::string vname(int v) { return std::to_string(v); }

// Slope-based angle in (-pi, pi], used by the leftmost-vertex tests.
double slope_angle(Point from, Point to) { return std::atan2(to.y - from.y, to.x - from.x); }

}  // namespace

bool edges_conflict(const WeightedTwoTree& g, const Realization& r, int e, int f) {
    auto [a, b] = g.edges[e];
    auto [c, d] = g.edges[f];
    SegmentRelation rel = classify_segments({r[a], r[b]}, {r[c], r[d]});
    bool adjacent = a == c || a == d || b == c || b == d;
    if (adjacent) return rel == SegmentRelation::overlap || rel == SegmentRelation::proper_cross;
    return rel != SegmentRelation::disjoint;
}

CheckResult check_degenerate(const WeightedTwoTree& g, const Realization& r) {
    if (static_cast<int>(r.size()) != g.n) return CheckResult::fail("realization has wrong vertex count");
    double scale = 1.0;
    for (const Point& p : r) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return CheckResult::fail("non-finite coordinate");
        scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    }
    double cell = 4.0 * epsilon() * (1.0 + scale);
    std::unordered_map<long long, std::vector<int>> grid;
    grid.reserve(r.size() * 2);
    for (int v = 0; v < g.n; ++v) {
        long long i = static_cast<long long>(std::floor(r[v].x / cell));
        long long j = static_cast<long long>(std::floor(r[v].y / cell));
        for (long long di = -1; di <= 1; ++di)
            for (long long dj = -1; dj <= 1; ++dj) {
                auto it = grid.find(cell_key(i + di, j + dj));
                if (it == grid.end()) continue;
                for (int w : it->second)
                    if (same_point(r[v], r[w])) {
                        return CheckResult::fail("degenerate placement: vertices " + vname(w) + " and " + vname(v) +
                                                 " coincide");
                    }
            }
        grid[cell_key(i, j)].push_back(v);
    }
    return {};
}

CheckResult check_lengths(const WeightedTwoTree& g, const Realization& r, double rel_tol) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        double d = dist(r[u], r[v]);
        if (std::abs(d - g.length[e]) > rel_tol * g.length[e]) {
            return CheckResult::fail("edge " + vname(u) + "-" + vname(v) + " has length " + std::to_string(d) +
                                     " instead of " + std::to_string(g.length[e]));
        }
    }
    return {};
}

std::optional<std::pair<int, int>> find_crossing(const WeightedTwoTree& g, const Realization& r, CrossingMode mode) {
    int m = static_cast<int>(g.edges.size());
    if (mode == CrossingMode::automatic) mode = m <= 96 ? CrossingMode::pairwise : CrossingMode::grid;
    if (mode == CrossingMode::pairwise) {
        for (int e = 0; e < m; ++e)
            for (int f = e + 1; f < m; ++f)
                if (edges_conflict(g, r, e, f)) return std::make_pair(e, f);
        return std::nullopt;
    }
    double total = 0.0;
    for (int e = 0; e < m; ++e) total += dist(r[g.edges[e].first], r[g.edges[e].second]);
    double cell = std::max(total / std::max(m, 1), 1e-12);
    struct Box {
        long long i0, j0, i1, j1;
    };
    std::vector<Box> box(m);
    std::unordered_map<long long, std::vector<int>> grid;
    grid.reserve(static_cast<std::size_t>(m) * 2);
    double pad = epsilon() * 4.0 * (1.0 + cell);
    for (int e = 0; e < m; ++e) {
        Point a = r[g.edges[e].first], b = r[g.edges[e].second];
        Box bx{static_cast<long long>(std::floor((std::min(a.x, b.x) - pad) / cell)),
               static_cast<long long>(std::floor((std::min(a.y, b.y) - pad) / cell)),
               static_cast<long long>(std::floor((std::max(a.x, b.x) + pad) / cell)),
               static_cast<long long>(std::floor((std::max(a.y, b.y) + pad) / cell))};
        box[e] = bx;
        for (long long i = bx.i0; i <= bx.i1; ++i)
            for (long long j = bx.j0; j <= bx.j1; ++j) grid[cell_key(i, j)].push_back(e);
    }
    std::optional<std::pair<int, int>> best;
    for (auto& [key, list] : grid) {
        for (std::size_t x = 0; x < list.size(); ++x)
            for (std::size_t y = x + 1; y < list.size(); ++y) {
                int e = list[x], f = list[y];
                const Box& p = box[e];
                const Box& q = box[f];
                // Test each pair once: in the lowest common cell of the two boxes.
                if (cell_key(std::max(p.i0, q.i0), std::max(p.j0, q.j0)) != key) continue;
                if (edges_conflict(g, r, e, f)) {
                    auto cand = std::make_pair(std::min(e, f), std::max(e, f));
                    if (!best || cand < *best) best = cand;
                }
            }
    }
    return best;
}

Rotation rotation_from_drawing(const WeightedTwoTree& g, const Realization& r) {
    Rotation rot(g.n);
    for (int v = 0; v < g.n; ++v) {
        std::vector<std::pair<double, int>> ang;
        for (auto [w, e] : g.adj[v]) ang.emplace_back(-direction(r[w] - r[v]), w);
        std::sort(ang.begin(), ang.end());
        for (auto& [a, w] : ang) rot[v].push_back(w);
    }
    return rot;
}

int clockwise_next(const Rotation& rot, int v, int from) {
    const auto& lst = rot[v];
    for (std::size_t i = 0; i < lst.size(); ++i)
        if (lst[i] == from) return lst[(i + 1) % lst.size()];
    return -1;
}

bool is_face_of(const Rotation& rot, const std::vector<int>& cycle) {
    std::size_t k = cycle.size();
    if (k < 3) return false;
    for (std::size_t i = 0; i < k; ++i) {
        int a = cycle[i], b = cycle[(i + 1) % k], c = cycle[(i + 2) % k];
        if (clockwise_next(rot, b, a) != c) return false;
    }
    return true;
}

std::optional<std::vector<int>> outer_cycle_walk(const WeightedTwoTree& g, const Rotation& rot, const Realization& r) {
    int v0 = 0;
    for (int v = 1; v < g.n; ++v)
        if (r[v].x < r[v0].x || (r[v].x == r[v0].x && r[v].y < r[v0].y)) v0 = v;
    int v1 = -1;
    double best = -10.0;
    for (auto [w, e] : g.adj[v0]) {
        double a = slope_angle(r[v0], r[w]);
        if (a > best) {
            best = a;
            v1 = w;
        }
    }
    std::vector<int> cyc{v0};
    std::vector<char> seen(g.n, 0);
    seen[v0] = 1;
    int prev = v0, cur = v1;
    for (int steps = 0; steps <= g.n; ++steps) {
        if (cur == v0) return cyc;
        if (cur < 0 || seen[cur]) return std::nullopt;
        seen[cur] = 1;
        cyc.push_back(cur);
        int nxt = clockwise_next(rot, cur, prev);
        prev = cur;
        cur = nxt;
    }
    return std::nullopt;
}

std::optional<PlaneEmbedding> embedding_from_drawing(const WeightedTwoTree& g, const Realization& r) {
    PlaneEmbedding emb;
    emb.rotation = rotation_from_drawing(g, r);
    auto outer = outer_cycle_walk(g, emb.rotation, r);
    if (!outer) return std::nullopt;
    emb.outer = std::move(*outer);
    return emb;
}

CheckResult check_planar(const WeightedTwoTree& g, const Realization& r, const CheckOptions& opt) {
    if (auto d = check_degenerate(g, r); !d) return d;
    if (opt.verify_lengths)
        if (auto l = check_lengths(g, r, opt.length_tol); !l) return l;
    if (auto c = find_crossing(g, r, opt.crossing)) {
        auto [a, b] = g.edges[c->first];
        auto [x, y] = g.edges[c->second];
        return CheckResult::fail("edges " + vname(a) + "-" + vname(b) + " and " + vname(x) + "-" + vname(y) +
                                 " intersect");
    }
    return {};
}

CheckResult check_realization_embedding(const WeightedTwoTree& g, const PlaneEmbedding& emb, const Realization& r,
                                        const CheckOptions& opt) {
    if (auto d = check_degenerate(g, r); !d) return d;
    if (opt.verify_lengths)
        if (auto l = check_lengths(g, r, opt.length_tol); !l) return l;
    if (static_cast<int>(emb.rotation.size()) != g.n) return CheckResult::fail("rotation has wrong vertex count");
    for (int v = 0; v < g.n; ++v) {
        const auto& lst = emb.rotation[v];
        if (static_cast<int>(lst.size()) != g.degree(v)) return CheckResult::fail("rotation of " + vname(v) + " is not a permutation of its edges");
        std::vector<int> sorted_lst = lst;
        std::sort(sorted_lst.begin(), sorted_lst.end());
        for (std::size_t i = 0; i < sorted_lst.size(); ++i)
            if (sorted_lst[i] != g.adj[v][i].first)
                return CheckResult::fail("rotation of " + vname(v) + " is not a permutation of its edges");
        double base = direction(r[lst[0]] - r[v]);
        double last = 0.0;
        for (std::size_t i = 1; i < lst.size(); ++i) {
            double d = base - direction(r[lst[i]] - r[v]);
            if (d < 0) d += kTwoPi;
            if (d >= kTwoPi) d -= kTwoPi;
            double tol = 1e-12;
            if (d <= last + tol || d >= kTwoPi - tol) {
                return CheckResult::fail("rotation mismatch at vertex " + vname(v));
            }
            last = d;
        }
    }
    const auto& outer = emb.outer;
    if (outer.size() < 3) return CheckResult::fail("outer face is not a cycle");
    {
        std::vector<char> seen(g.n, 0);
        for (std::size_t i = 0; i < outer.size(); ++i) {
            int a = outer[i], b = outer[(i + 1) % outer.size()];
            if (a < 0 || a >= g.n || seen[a]) return CheckResult::fail("outer face is not a simple cycle");
            seen[a] = 1;
            if (g.edge_id(a, b) < 0) return CheckResult::fail("outer face uses a non-edge");
        }
    }
    if (!is_face_of(emb.rotation, outer)) return CheckResult::fail("outer cycle is not a face of the rotation system");
    std::size_t lm = 0;
    for (std::size_t i = 1; i < outer.size(); ++i) {
        Point p = r[outer[i]], q = r[outer[lm]];
        if (p.x < q.x || (p.x == q.x && p.y < q.y)) lm = i;
    }
    int v = outer[lm];
    int prev = outer[(lm + outer.size() - 1) % outer.size()];
    int next = outer[(lm + 1) % outer.size()];
    if (!(slope_angle(r[v], r[next]) > slope_angle(r[v], r[prev]))) {
        return CheckResult::fail("outer face test failed at leftmost vertex " + vname(v));
    }
    if (auto c = find_crossing(g, r, opt.crossing)) {
        auto [a, b] = g.edges[c->first];
        auto [x, y] = g.edges[c->second];
        return CheckResult::fail("edges " + vname(a) + "-" + vname(b) + " and " + vname(x) + "-" + vname(y) +
                                 " intersect");
    }
    return {};
}

CheckResult check_realization_rotation(const WeightedTwoTree& g, const Rotation& rot, const Realization& r,
                                       const CheckOptions& opt) {
    if (auto d = check_degenerate(g, r); !d) return d;
    if (static_cast<int>(rot.size()) != g.n) return CheckResult::fail("rotation has wrong vertex count");
    auto outer = outer_cycle_walk(g, rot, r);
    if (!outer) return CheckResult::fail("outer walk revisits a vertex");
    PlaneEmbedding emb{rot, *outer};
    return check_realization_embedding(g, emb, r, opt);
}

}  // namespace fepr
