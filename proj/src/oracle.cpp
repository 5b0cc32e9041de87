#include "fepr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fepr {

namespace {

void require_size(const WeightedTwoTree& g, int limit) {
    if (g.n > limit) {
        throw InstanceTooLarge("oracle is limited to n <= " + std::to_string(limit) + " (got " +
                               std::to_string(g.n) + ")");
    }
}

bool planar_pairwise(const WeightedTwoTree& g, const Realization& r) {
    return static_cast<bool>(check_degenerate(g, r)) && !find_crossing(g, r, CrossingMode::pairwise);
}

}  // namespace

DecompositionTree oracle_tree(const WeightedTwoTree& g) { return build_decomposition_tree(g, 0); }

void enumerate_realizations(const WeightedTwoTree& g, const std::function<bool(const OracleCandidate&)>& visit) {
    require_size(g, kOracleMaxN);
    DecompositionTree t = oracle_tree(g);
    int free_nodes = static_cast<int>(t.size()) - 1;
    unsigned long long total = 1ULL << free_nodes;
    OracleCandidate c;
    c.signs.assign(t.size(), 0);
    for (unsigned long long mask = 0; mask < total; ++mask) {
        // Node 1 is the most significant choice so the order matches the depth-first search.
        for (int k = 1; k <= free_nodes; ++k) c.signs[k] = (mask >> (free_nodes - k)) & 1ULL ? -1 : 1;
        c.coords = realize_signs(g, t, c.signs);
        c.planar = planar_pairwise(g, c.coords);
        if (!visit(c)) return;
    }
}

void for_each_planar_realization(const WeightedTwoTree& g, const DecompositionTree& t, const PlanarSearch& opts,
                                 const std::function<bool(const OracleCandidate&)>& visit) {
    require_size(g, opts.max_n);
    OracleCandidate c;
    c.signs.assign(t.size(), 0);
    c.coords = realize_signs(g, t, c.signs);  // root placement; apexes are overwritten below
    c.planar = true;
    std::vector<int> placed_edges;
    std::vector<int> placed_vertices;
    const Triple& rt = g.triangles[t.tri[0]];
    for (int v : rt) placed_vertices.push_back(v);
    placed_edges = {g.edge_id(rt[0], rt[1]), g.edge_id(rt[1], rt[2]), g.edge_id(rt[0], rt[2])};
    bool stop = false;
    std::size_t total = t.size();

    std::function<void(std::size_t)> dfs = [&](std::size_t k) {
        if (stop) return;
        if (k == total) {
            if (!visit(c)) stop = true;
            return;
        }
        auto [x, y] = g.edges[t.shared_edge[k]];
        int v = t.apex[k];
        int e1 = g.edge_id(x, v), e2 = g.edge_id(y, v);
        for (int s : {1, -1}) {
            c.signs[k] = s;
            c.coords[v] = place_apex(c.coords[x], c.coords[y], g.len(x, v), g.len(y, v), s > 0 ? Side::left : Side::right);
            bool ok = true;
            for (int w : placed_vertices)
                if (same_point(c.coords[v], c.coords[w])) {
                    ok = false;
                    break;
                }
            for (std::size_t i = 0; ok && i < placed_edges.size(); ++i) {
                int f = placed_edges[i];
                if (edges_conflict(g, c.coords, e1, f) || edges_conflict(g, c.coords, e2, f)) ok = false;
            }
            if (ok && opts.admissible && !opts.admissible(static_cast<int>(k), c.coords)) ok = false;
            if (!ok) continue;
            placed_vertices.push_back(v);
            placed_edges.push_back(e1);
            placed_edges.push_back(e2);
            dfs(k + 1);
            placed_vertices.pop_back();
            placed_edges.pop_back();
            placed_edges.pop_back();
            if (stop) return;
        }
        c.signs[k] = 0;
    };
    dfs(1);
}

std::optional<Realization> find_planar_realization(const WeightedTwoTree& g, const PlanarSearch& opts) {
    std::optional<Realization> out;
    for_each_planar_realization(g, oracle_tree(g), opts, [&](const OracleCandidate& c) {
        out = c.coords;
        return false;
    });
    return out;
}

BruteResult is_realizable_bruteforce(const WeightedTwoTree& g) {
    require_size(g, kOracleMaxN);
    BruteResult res;
    res.witness = find_planar_realization(g);
    res.realizable = res.witness.has_value();
    return res;
}

Realization align_to(const Realization& from, int a, int b, Point pa, Point pb, bool reflect) {
    Realization src = from;
    if (reflect)
        for (Point& p : src) p = reflect_x(p);
    double rot = direction(pb - pa) - direction(src[b] - src[a]);
    double cs = std::cos(rot), sn = std::sin(rot);
    Realization out(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        Point d = src[i] - src[a];
        out[i] = pa + Point{cs * d.x - sn * d.y, sn * d.x + cs * d.y};
    }
    return out;
}

bool congruent_on(const Realization& x, const Realization& y, const std::vector<int>& anchor, double tol,
                  bool allow_reflection) {
    if (x.size() != y.size() || anchor.size() < 2) return false;
    for (int refl = 0; refl <= (allow_reflection ? 1 : 0); ++refl) {
        Realization a = align_to(x, anchor[0], anchor[1], y[anchor[0]], y[anchor[1]], refl == 1);
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) ok = dist(a[i], y[i]) <= tol;
        if (ok) return true;
    }
    return false;
}

std::vector<Realization> enumerate_uv_external(const WeightedTwoTree& g, int u, int v) {
    require_size(g, kOracleUvMaxN);
    if (g.edge_id(u, v) < 0) throw BadParameter("u and v must be adjacent");
    std::vector<Realization> out;
    std::set<std::vector<long long>> seen;
    auto consider = [&](const Realization& r) {
        auto emb = embedding_from_drawing(g, r);
        if (!emb) return;
        const auto& outer = emb->outer;
        auto iu = std::find(outer.begin(), outer.end(), u);
        if (iu == outer.end() || std::find(outer.begin(), outer.end(), v) == outer.end()) return;
        Realization a = align_to(r, u, v, {0.0, 0.0}, {g.len(u, v), 0.0});
        std::vector<long long> key;
        std::size_t start = static_cast<std::size_t>(iu - outer.begin());
        for (std::size_t i = 0; i < outer.size(); ++i) {
            int w = outer[(start + i) % outer.size()];
            key.push_back(w);
            key.push_back(std::llround(a[w].x * 1e7));
            key.push_back(std::llround(a[w].y * 1e7));
        }
        if (seen.insert(key).second) out.push_back(std::move(a));
    };
    for_each_planar_realization(g, oracle_tree(g), {}, [&](const OracleCandidate& c) {
        consider(c.coords);
        Realization m = c.coords;
        for (Point& p : m) p = reflect_x(p);
        consider(m);
        return true;
    });
    return out;
}

}  // namespace fepr
